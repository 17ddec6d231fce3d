"""Adjan-Rabin presentation families, their verification oracles, and the
handle bookkeeping behind Markov's reduction to 4-manifold recognition."""

__version__ = "0.1.0"

from .words import Word, parse_word, render
from .presentations import Presentation, parse_presentation, render_presentation

__all__ = ["Word", "parse_word", "render", "Presentation", "parse_presentation", "render_presentation"]

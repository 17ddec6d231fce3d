"""Words in a free group over named generators.

A :class:`Word` is an immutable, always freely reduced tuple of
``(generator, sign)`` letters.  Concrete syntax::

    word   := factor { WS factor } | ""
    factor := atom [ "^" int ]
    atom   := NAME | "(" word ")" | "[" word "," word "]"

``[u,v]`` is the commutator ``u v u^-1 v^-1``.  Greek symbols are spelled
in ASCII: ``al`` (alpha), ``be`` (beta), ``ga`` (gamma).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import MissingImage, ParseError, UnknownGenerator

Letter = tuple[str, int]

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def free_reduce(letters: Iterable[Letter]) -> "Word":
    """Cancel adjacent inverse pairs until none remain (single stack pass)."""
    stack: list[Letter] = []
    for g, s in letters:
        if s not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {s!r}")
        if stack and stack[-1][0] == g and stack[-1][1] == -s:
            stack.pop()
        else:
            stack.append((g, s))
    return Word._raw(tuple(stack))


@dataclass(frozen=True, slots=True)
class Word:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple((g, int(s)) for g, s in self.letters)
        reduced = free_reduce(letters).letters if letters else ()
        object.__setattr__(self, "letters", reduced)

    @classmethod
    def _raw(cls, letters: tuple[Letter, ...]) -> "Word":
        # caller guarantees `letters` is freely reduced
        w = object.__new__(cls)
        object.__setattr__(w, "letters", letters)
        return w

    @classmethod
    def identity(cls) -> "Word":
        return cls._raw(())

    @classmethod
    def gen(cls, name: str, power: int = 1) -> "Word":
        s = 1 if power > 0 else -1
        return cls._raw(((name, s),) * abs(power))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else invert(self)
        out = Word.identity()
        for _ in range(abs(n)):
            out = concat(out, base)
        return out

    def generators(self) -> set[str]:
        return {g for g, _ in self.letters}

    def syllables(self) -> list[tuple[str, int]]:
        """Run-length form: maximal blocks ``(generator, exponent)``."""
        out: list[tuple[str, int]] = []
        for g, s in self.letters:
            if out and out[-1][0] == g:
                out[-1] = (g, out[-1][1] + s)
            else:
                out.append((g, s))
        return out

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Word({render(self)!r})"


def invert(w: Word) -> Word:
    return Word._raw(tuple((g, -s) for g, s in reversed(w.letters)))


def concat(u: Word, v: Word) -> Word:
    a, b = u.letters, v.letters
    k = 0
    n = min(len(a), len(b))
    while k < n and a[len(a) - 1 - k][0] == b[k][0] and a[len(a) - 1 - k][1] == -b[k][1]:
        k += 1
    return Word._raw(a[: len(a) - k] + b[k:])


def substitute(w: Word, images: Mapping[str, Word]) -> Word:
    """Apply the free-group homomorphism ``g -> images[g]`` to ``w``."""
    inverses: dict[str, Word] = {}
    out: list[Letter] = []
    for g, s in w.letters:
        try:
            img = images[g]
        except KeyError:
            raise MissingImage(g) from None
        if s < 0:
            if g not in inverses:
                inverses[g] = invert(img)
            img = inverses[g]
        out.extend(img.letters)
    return free_reduce(out)


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Return ``(core, conjugator)`` with ``w = conjugator * core * conjugator^-1``."""
    letters = w.letters
    i, j = 0, len(letters) - 1
    while i < j and letters[i][0] == letters[j][0] and letters[i][1] == -letters[j][1]:
        i += 1
        j -= 1
    return Word._raw(letters[i : j + 1]), Word._raw(letters[:i])


def exponent_sum(w: Word, alphabet: Sequence[str] | None = None) -> dict[str, int]:
    sums: Counter[str] = Counter()
    if alphabet is not None:
        for g in alphabet:
            sums[g] = 0
    for g, s in w.letters:
        sums[g] += s
    return dict(sums)


def commutator(u: Word, v: Word) -> Word:
    return concat(concat(u, v), concat(invert(u), invert(v)))


def conjugate(w: Word, by: Word) -> Word:
    """``by * w * by^-1``."""
    return concat(concat(by, w), invert(by))


def rotate(w: Word, k: int) -> Word:
    """Cyclic rotation (result re-reduced)."""
    if not w.letters:
        return w
    k %= len(w.letters)
    return free_reduce(w.letters[k:] + w.letters[:k])


def render(w: Word) -> str:
    parts = []
    for g, e in w.syllables():
        parts.append(g if e == 1 else f"{g}^{e}")
    return " ".join(parts)


# -- parser -----------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<int>-?\d+)|(?P<sym>[()\[\],^]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", position=start)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, alphabet: set[str] | None):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.alphabet = alphabet

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def expect(self, value: str):
        tok = self.peek()
        if tok is None or tok[1] != value:
            pos = tok[2] if tok else len(self.text)
            raise ParseError(f"expected {value!r}", position=pos)
        self.i += 1

    def word(self, stop: tuple[str, ...]) -> list[Letter]:
        out: list[Letter] = []
        while True:
            tok = self.peek()
            if tok is None or (tok[0] == "sym" and tok[1] in stop):
                return out
            out.extend(self.factor())

    def factor(self) -> list[Letter]:
        tok = self.peek()
        kind, value, pos = tok
        if kind == "name":
            self.i += 1
            if self.alphabet is not None and value not in self.alphabet:
                raise UnknownGenerator(value)
            atom = [(value, 1)]
        elif value == "(":
            self.i += 1
            atom = self.word(stop=(")",))
            self.expect(")")
        elif value == "[":
            self.i += 1
            u = self.word(stop=(",",))
            self.expect(",")
            v = self.word(stop=("]",))
            self.expect("]")
            ui = [(g, -s) for g, s in reversed(u)]
            vi = [(g, -s) for g, s in reversed(v)]
            atom = u + v + ui + vi
        else:
            raise ParseError(f"unexpected {value!r}", position=pos)
        tok = self.peek()
        if tok is not None and tok[1] == "^":
            self.i += 1
            tok = self.peek()
            if tok is None or tok[0] != "int":
                raise ParseError("expected integer exponent", position=tok[2] if tok else len(self.text))
            self.i += 1
            n = int(tok[1])
            base = atom if n >= 0 else [(g, -s) for g, s in reversed(atom)]
            atom = base * abs(n)
        return atom


def parse_word(text: str, alphabet: Iterable[str] | None = None) -> Word:
    """Parse ``text``; every identifier must lie in ``alphabet`` when one is given."""
    p = _Parser(text, set(alphabet) if alphabet is not None else None)
    letters = p.word(stop=())
    if p.i != len(p.tokens):
        kind, value, pos = p.tokens[p.i]
        raise ParseError(f"unexpected {value!r}", position=pos)
    return free_reduce(letters)

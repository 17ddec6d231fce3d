"""Finite presentations, Tietze elimination and the gcd certificates.

File format (UTF-8, ``#`` starts a comment)::

    gens: x1 x2
    rel: x1^2
    eq: x2^2 = x2^-1      # stored as L * R^-1
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from functools import reduce
from typing import Sequence

from .abelian import Infinite, extended_gcd, generator_orders
from .errors import (
    BadExponent,
    BadIndex,
    DuplicateGenerator,
    InvalidCertificate,
    NotSolvable,
    ParseError,
    UnknownGenerator,
)
from .words import NAME_RE, Word, concat, invert, parse_word, render, substitute


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        seen = set()
        for g in gens:
            if not NAME_RE.fullmatch(g):
                raise ParseError(f"bad generator name {g!r}")
            if g in seen:
                raise DuplicateGenerator(g)
            seen.add(g)
        rels = tuple(self.relators)
        for r in rels:
            for g in r.generators():
                if g not in seen:
                    raise UnknownGenerator(g)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", rels)

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def m(self) -> int:
        return len(self.relators)

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def __str__(self) -> str:
        return render_presentation(self)


def parse_presentation(text: str) -> Presentation:
    gens: list[str] | None = None
    relators: list[Word] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise ParseError("expected 'gens:', 'rel:' or 'eq:'", line=lineno)
        if gens is None:
            if key != "gens":
                raise ParseError("first line must be 'gens:'", line=lineno)
            gens = rest.split()
            seen = set()
            for g in gens:
                if not NAME_RE.fullmatch(g):
                    raise ParseError(f"bad generator name {g!r}", line=lineno)
                if g in seen:
                    raise DuplicateGenerator(g)
                seen.add(g)
            continue
        try:
            if key == "rel":
                relators.append(parse_word(rest, gens))
            elif key == "eq":
                lhs, eq, rhs = rest.partition("=")
                if not eq:
                    raise ParseError("'eq:' needs '='", line=lineno)
                relators.append(concat(parse_word(lhs, gens), invert(parse_word(rhs, gens))))
            elif key == "gens":
                raise ParseError("duplicate 'gens:' line", line=lineno)
            else:
                raise ParseError(f"unknown key {key!r}", line=lineno)
        except ParseError as exc:
            if exc.line is None:
                raise ParseError(str(exc), position=None, line=lineno) from None
            raise
    if gens is None:
        raise ParseError("missing 'gens:' line")
    return Presentation(tuple(gens), tuple(relators))


def render_presentation(P: Presentation) -> str:
    lines = ["gens: " + " ".join(P.generators)]
    lines += [f"rel: {render(r)}".rstrip() for r in P.relators]
    return "\n".join(lines) + "\n"


def solve_for(relator: Word, gen: str) -> Word:
    """Solve ``relator = 1`` for the single occurrence of ``gen``.

    The relator is rotated so that the ``gen`` letter comes first,
    ``gen^e * t``; then ``gen = t^-1`` for ``e = +1`` and ``gen = t`` for
    ``e = -1``.
    """
    positions = [k for k, (g, _) in enumerate(relator.letters) if g == gen]
    if len(positions) != 1:
        raise NotSolvable(f"{gen} occurs {len(positions)} times in relator {render(relator)!r}")
    k = positions[0]
    sign = relator.letters[k][1]
    rest = relator.letters[k + 1 :] + relator.letters[:k]
    t = Word(rest)
    return invert(t) if sign == 1 else t


def tietze_eliminate(P: Presentation, gen: str, rel_index: int) -> Presentation:
    """Remove ``gen`` using relator number ``rel_index`` (1-based)."""
    return tietze_eliminate_logged(P, gen, rel_index)[0]


def tietze_eliminate_logged(P: Presentation, gen: str, rel_index: int) -> tuple[Presentation, Word]:
    if gen not in P.generators:
        raise UnknownGenerator(gen)
    if not 1 <= rel_index <= P.m:
        raise BadIndex(f"relator index {rel_index} out of range 1..{P.m}")
    solved = solve_for(P.relators[rel_index - 1], gen)
    images = {g: Word.gen(g) for g in P.generators}
    images[gen] = solved
    gens = tuple(g for g in P.generators if g != gen)
    rels = tuple(substitute(r, images) for k, r in enumerate(P.relators) if k != rel_index - 1)
    return Presentation(gens, rels), solved


# -- coprime-orders condition ------------------------------------------------


@dataclass(frozen=True)
class Condition21Certificate:
    indices: tuple[int, ...]  # 0-based generator indices
    orders: tuple[int, ...]
    q_max: int
    bezout: tuple[int, ...]
    generators: tuple[str, ...] = field(default=())

    def verify(self, P: Presentation | None = None) -> None:
        """Raise :class:`InvalidCertificate` unless every certificate property holds."""
        if not self.indices:
            raise InvalidCertificate("empty index set")
        if len(self.indices) != len(self.orders) or len(self.bezout) != len(self.orders):
            raise InvalidCertificate("length mismatch")
        if list(self.indices) != sorted(set(self.indices)):
            raise InvalidCertificate("indices must be strictly increasing")
        if any(q < 1 for q in self.orders):
            raise InvalidCertificate("orders must be positive")
        if len(set(self.orders)) != len(self.orders):
            raise InvalidCertificate("orders not pairwise distinct")
        if self.q_max != max(self.orders):
            raise InvalidCertificate("q_max is not the maximum order")
        if sum(c * q for c, q in zip(self.bezout, self.orders)) != 1:
            raise InvalidCertificate("Bezout witness does not sum to 1")
        if len(self.orders) > 1:
            for k in range(len(self.orders)):
                rest = self.orders[:k] + self.orders[k + 1 :]
                if reduce(gcd, rest) == 1:
                    raise InvalidCertificate("index set is not minimal")
        if P is not None:
            orders = generator_orders(P)
            for i, q in zip(self.indices, self.orders):
                if i >= P.n or orders[i] != q:
                    raise InvalidCertificate(f"order of generator {i + 1} is {orders[i] if i < P.n else '?'}, not {q}")


def check_condition_21(P: Presentation) -> Condition21Certificate | None:
    """Smallest (then lexicographically first) set of finite-order generators with coprime orders.

    Returns ``None`` when no such set exists.
    """
    orders = generator_orders(P)
    finite = [i for i, q in enumerate(orders) if q is not Infinite]
    for size in range(1, len(finite) + 1):
        for idx in combinations(finite, size):
            qs = [orders[i] for i in idx]
            if reduce(gcd, qs) == 1:
                _, coeffs = extended_gcd(qs)
                cert = Condition21Certificate(
                    indices=tuple(idx),
                    orders=tuple(qs),
                    q_max=max(qs),
                    bezout=tuple(coeffs),
                    generators=tuple(P.generators[i] for i in idx),
                )
                cert.verify()
                return cert
    return None


@dataclass(frozen=True)
class CollapseCertificate:
    squared_orders: tuple[int, ...]
    bezout_sq: tuple[int, ...]

    def verify(self) -> bool:
        return sum(c * s for c, s in zip(self.bezout_sq, self.squared_orders)) == 1


def collapse_certificate(c: Condition21Certificate) -> CollapseCertificate:
    """Bezout witness for the squared orders, i.e. why ``a`` dies once ``b`` does."""
    c.verify()
    squares = [q * q for q in c.orders]
    g, coeffs = extended_gcd(squares)
    if g != 1:
        raise InvalidCertificate("squared orders are not coprime")
    cert = CollapseCertificate(tuple(squares), tuple(coeffs))
    assert cert.verify()
    return cert


def apply_exponent_substitution(
    P: Presentation,
    u: int,
    v: int,
    d: str,
    e: str,
    mu: Sequence[Word],
) -> Presentation:
    """Append ``mu_i d mu_i^-1 = d^u`` and ``mu_i^-1 e mu_i = e^v`` for ``i = 1, 2``."""
    if u <= 3 or v <= 3:
        raise BadExponent(f"exponents must exceed 3 (got u={u}, v={v})")
    if len(mu) != 2:
        raise ValueError("exactly two conjugating words are required")
    for g in (d, e):
        if g not in P.generators:
            raise UnknownGenerator(g)
    for w in mu:
        for g in w.generators():
            if g not in P.generators:
                raise UnknownGenerator(g)
    D, E = Word.gen(d), Word.gen(e)
    new = []
    for m in mu:
        new.append(concat(concat(concat(m, D), invert(m)), Word.gen(d, -u)))
    for m in mu:
        new.append(concat(concat(concat(invert(m), E), m), Word.gen(e, -v)))
    return Presentation(P.generators, P.relators + tuple(new))

"""Two-generator presentations ``P_w`` whose triviality encodes ``w = 1`` in a seed group.

Given a seed ``G = <x_1..x_n | r_1..r_m>`` whose first ``p`` generators have
coprime abelianized orders ``q_1..q_p`` and a word ``w``, ``Q_w`` adds
generators ``a, al, b, be`` and the relations

    (i)   a al a^-1           = b^2
    (ii)  al a al^-1          = b be b^-1
    (iii) a^-q_i x_i al^q_i   = be^-i b be^i          1 <= i <= p
    (iv)  a^-(q+i) x_i al^(q+i) = be^-i b be^i        p < i <= n
    (v)   [w, al^2]           = be^-(n+1) b be^(n+1)

Eliminating ``al``, ``be`` and then every ``x_i`` leaves ``P_w`` on ``a, b``
with ``m + 1`` relators.  ``P_w`` presents the trivial group exactly when
``w = 1`` in ``G``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import Condition21NotSatisfied, InvalidCertificate, UnknownGenerator
from .presentations import (
    Condition21Certificate,
    Presentation,
    check_condition_21,
    tietze_eliminate_logged,
)
from .words import Word, commutator, concat, invert, render, substitute

A, AL, B, BE = "a", "al", "b", "be"


def _conj_b(i: int) -> Word:
    """``be^-i b be^i``"""
    return concat(concat(Word.gen(BE, -i), Word.gen(B)), Word.gen(BE, i))


def rhs_basis_set(n: int) -> list[Word]:
    """Right-hand sides of (i)-(v): ``b^2, b be b^-1, be^-i b be^i (i = 1..n+1)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    out = [Word.gen(B, 2), concat(concat(Word.gen(B), Word.gen(BE)), Word.gen(B, -1))]
    out += [_conj_b(i) for i in range(1, n + 2)]
    return out


@dataclass(frozen=True)
class Reindexing:
    """Seed generator ``order[k]`` becomes ``x{k+1}`` in ``Q_w``."""

    order: tuple[str, ...]

    @property
    def images(self) -> dict[str, Word]:
        return {g: Word.gen(f"x{k + 1}") for k, g in enumerate(self.order)}

    def translate(self, w: Word) -> Word:
        return substitute(w, self.images)

    def lines(self) -> list[str]:
        return [f"x{k + 1} = {g}" for k, g in enumerate(self.order)]


def reindex(P: Presentation, cert: Condition21Certificate) -> tuple[Presentation, Reindexing, Condition21Certificate]:
    """Rename generators to ``x1..xn`` with the certificate's generators first."""
    cert.verify()
    first = [P.generators[i] for i in cert.indices]
    order = tuple(first + [g for g in P.generators if g not in first])
    rx = Reindexing(order)
    images = rx.images
    Px = Presentation(tuple(f"x{k + 1}" for k in range(P.n)), tuple(substitute(r, images) for r in P.relators))
    p = len(cert.indices)
    cx = Condition21Certificate(
        indices=tuple(range(p)),
        orders=cert.orders,
        q_max=cert.q_max,
        bezout=cert.bezout,
        generators=tuple(f"x{k + 1}" for k in range(p)),
    )
    return Px, rx, cx


def build_Qw(P: Presentation, w: Word, cert: Condition21Certificate) -> Presentation:
    """Add ``a, al, b, be`` and relations (i)-(v) to a seed already indexed as ``x1..xn``.

    ``cert`` must list the seed's first ``p`` generators.  Use
    :func:`reindex` first for arbitrary seeds.
    """
    cert.verify(P)
    p = len(cert.indices)
    if tuple(cert.indices) != tuple(range(p)):
        raise InvalidCertificate("certificate generators must come first; call reindex()")
    for g in w.generators():
        if g not in P.generators:
            raise UnknownGenerator(g)
    clash = {A, AL, B, BE} & set(P.generators)
    if clash:
        raise InvalidCertificate(f"seed generator names clash with {sorted(clash)}; call reindex()")
    n, q = P.n, cert.q_max
    a, al, b, be = (Word.gen(g) for g in (A, AL, B, BE))

    def rel(lhs: Word, rhs: Word) -> Word:
        return concat(lhs, invert(rhs))

    rels = list(P.relators)
    rels.append(rel(concat(concat(a, al), invert(a)), Word.gen(B, 2)))
    rels.append(rel(concat(concat(al, a), invert(al)), concat(concat(b, be), invert(b))))
    for i in range(1, n + 1):
        k = cert.orders[i - 1] if i <= p else q + i
        x = Word.gen(P.generators[i - 1])
        lhs = concat(concat(Word.gen(A, -k), x), Word.gen(AL, k))
        rels.append(rel(lhs, _conj_b(i)))
    rels.append(rel(commutator(w, Word.gen(AL, 2)), _conj_b(n + 1)))
    return Presentation(P.generators + (A, AL, B, BE), tuple(rels))


@dataclass(frozen=True)
class Elimination:
    generator: str
    relator_index: int  # 1-based, in the presentation current at that step
    solved: Word

    def line(self) -> str:
        return f"elim {self.generator} via rel {self.relator_index}: {self.generator} = {render(self.solved)}"


@dataclass(frozen=True)
class AdjanRabinOutput:
    Q_w: Presentation
    P_w: Presentation
    certificate: Condition21Certificate
    U: tuple[Word, ...]
    elimination_log: tuple[Elimination, ...]
    reindexing: Reindexing
    word: Word  # w translated to x1..xn


def eliminate_to_Pw(Q: Presentation, n: int, m: int) -> tuple[Presentation, list[Elimination]]:
    """al via (i), be via (ii), then x1..xn via their (iii)/(iv) relators."""
    log = []
    cur = Q
    # after each deletion the next defining relator sits at position m + 1
    for g in [AL, BE] + [f"x{i}" for i in range(1, n + 1)]:
        cur, solved = tietze_eliminate_logged(cur, g, m + 1)
        log.append(Elimination(g, m + 1, solved))
    return cur, log


def build_Pw(P: Presentation, w: Word, cert: Condition21Certificate | None = None) -> AdjanRabinOutput:
    if cert is None:
        cert = check_condition_21(P)
        if cert is None:
            raise Condition21NotSatisfied("no set of generators has coprime abelianized orders")
    for g in w.generators():
        if g not in P.generators:
            raise UnknownGenerator(g)
    Px, rx, cx = reindex(P, cert)
    wx = rx.translate(w)
    Q = build_Qw(Px, wx, cx)
    Pw, log = eliminate_to_Pw(Q, P.n, P.m)
    assert Pw.generators == (A, B) and Pw.m == P.m + 1
    return AdjanRabinOutput(
        Q_w=Q,
        P_w=Pw,
        certificate=cert,
        U=tuple(rhs_basis_set(P.n)),
        elimination_log=tuple(log),
        reindexing=rx,
        word=wx,
    )


def replay_eliminations(Q: Presentation, log) -> Presentation:
    """Re-apply logged substitutions to ``Q`` without re-solving anything."""
    cur = Q
    for step in log:
        images = {g: Word.gen(g) for g in cur.generators}
        images[step.generator] = step.solved
        idx = step.relator_index - 1
        gens = tuple(g for g in cur.generators if g != step.generator)
        rels = tuple(substitute(r, images) for k, r in enumerate(cur.relators) if k != idx)
        cur = Presentation(gens, rels)
    return cur

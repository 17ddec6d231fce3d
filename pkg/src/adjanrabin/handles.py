"""Handle bookkeeping for Markov's 5-manifolds and the 2-handle slide reduction.

For a presentation ``P = <x_1..x_n | r_1..r_k>``:

* ``V``    = B^5 with n 1-handles,
* ``N_P``  = V plus k 2-handles ``ga_j`` attached along ``r_j``,
* ``W_P``  = N_P plus n trivially attached 2-handles ``al_i``,
* ``W'_P`` = N_P plus ``al_1..al_(n-1)``.

Framings are always 0.  Nothing here does geometric topology: boundaries
are *predicted* from a caller-supplied triviality verdict.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import NamedTuple, Sequence

from .abelian import invariant_factors
from .errors import EmptyTuple, GcdNotOne, IllegalMove, InconsistentVerdict, ParseError
from .presentations import Presentation
from .words import Word, exponent_sum, render


class Stage(str, enum.Enum):
    V = "V"
    N_P = "N_P"
    W_P = "W_P"
    W_PRIME_P = "W'_P"


@dataclass(frozen=True)
class TwoHandle:
    label: str
    attaching_class: Word | None  # None: null-homotopic attaching circle
    framing: int = 0


@dataclass(frozen=True)
class HandleComplex:
    source_presentation: Presentation
    stage: Stage
    zero_handles: int
    one_handles: int
    two_handles: tuple[TwoHandle, ...]
    dim: int = 5

    @property
    def gamma_handles(self) -> tuple[TwoHandle, ...]:
        return tuple(h for h in self.two_handles if h.attaching_class is not None)

    @property
    def alpha_handles(self) -> tuple[TwoHandle, ...]:
        return tuple(h for h in self.two_handles if h.attaching_class is None)

    def euler_characteristic(self) -> int:
        return self.zero_handles - self.one_handles + len(self.two_handles)

    def report(self) -> str:
        k, a = len(self.gamma_handles), len(self.alpha_handles)
        lines = [
            f"stage: {self.stage.value}",
            f"handles: 0:{self.zero_handles} 1:{self.one_handles} 2:{k}+{a}",
        ]
        for h in self.two_handles:
            attach = "trivial" if h.attaching_class is None else render(h.attaching_class)
            lines.append(f"2-handle {h.label} framing {h.framing} along {attach}")
        return "\n".join(lines)


def build_stage(P: Presentation, stage: Stage) -> HandleComplex:
    gammas: tuple[TwoHandle, ...] = ()
    alphas: tuple[TwoHandle, ...] = ()
    if stage != Stage.V:
        gammas = tuple(TwoHandle(f"ga{j + 1}", r) for j, r in enumerate(P.relators))
    if stage == Stage.W_P:
        alphas = tuple(TwoHandle(f"al{i + 1}", None) for i in range(P.n))
    elif stage == Stage.W_PRIME_P:
        if P.n < 1:
            raise ValueError("W'_P needs at least one generator")
        alphas = tuple(TwoHandle(f"al{i + 1}", None) for i in range(P.n - 1))
    return HandleComplex(P, stage, 1, P.n, gammas + alphas)


def build_markov_complex(P: Presentation, reduced: bool) -> HandleComplex:
    """``W'_P`` when ``reduced`` else ``W_P``."""
    return build_stage(P, Stage.W_PRIME_P if reduced else Stage.W_P)


# -- slides ------------------------------------------------------------------


class Subtract(NamedTuple):
    r: int  # 1-based
    s: int

    def __str__(self) -> str:
        return f"sub {self.r} {self.s}"


class Permute(NamedTuple):
    perm: tuple[int, ...]  # new[i] = old[perm[i]], 1-based

    def __str__(self) -> str:
        return "perm " + " ".join(map(str, self.perm))


@dataclass(frozen=True)
class SlideSequence:
    initial: tuple[int, ...]
    moves: tuple[Subtract | Permute, ...]
    final: tuple[int, ...]

    @property
    def subtract_count(self) -> int:
        return sum(1 for m in self.moves if isinstance(m, Subtract))

    def serialize(self) -> str:
        lines = ["tuple " + ",".join(map(str, self.initial))]
        k = 0
        moves = self.moves
        while k < len(moves):
            m = moves[k]
            if isinstance(m, Subtract):
                run = 1
                while k + run < len(moves) and moves[k + run] == m:
                    run += 1
                lines.append(f"sub {m.r} {m.s} x{run}")
                k += run
            else:
                lines.append(str(m))
                k += 1
        return "\n".join(lines) + "\n"


def parse_slides(text: str) -> SlideSequence:
    initial = None
    moves: list[Subtract | Permute] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split("#", 1)[0].split()
        if not parts:
            continue
        try:
            if parts[0] == "tuple":
                initial = tuple(int(x) for x in parts[1].split(","))
            elif parts[0] == "sub":
                r, s = int(parts[1]), int(parts[2])
                n = int(parts[3].lstrip("x")) if len(parts) > 3 else 1
                moves.extend([Subtract(r, s)] * n)
            elif parts[0] == "perm":
                moves.append(Permute(tuple(int(x) for x in parts[1:])))
            else:
                raise ParseError(f"unknown slide directive {parts[0]!r}", line=lineno)
        except (IndexError, ValueError):
            raise ParseError("malformed slide line", line=lineno) from None
    if initial is None:
        raise ParseError("missing 'tuple' line")
    return SlideSequence(initial, tuple(moves), _replay(initial, moves))


def orient(values: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Flip signs so every entry is >= 0; returns the tuple and the flipped (1-based) indices."""
    flipped = tuple(j + 1 for j, v in enumerate(values) if v < 0)
    return tuple(abs(v) for v in values), flipped


def slide_reduce(values: Sequence[int]) -> SlideSequence:
    """Reduce ``(a_1..a_k)`` to ``(1, 0, ..., 0)`` by ``a_r -> a_r - a_s`` (``a_s <= a_r``) and one permutation.

    Repeatedly takes ``s`` at the smallest nonzero entry and subtracts it
    from every other nonzero entry until each falls below ``a_s``.
    """
    a = [int(x) for x in values]
    if not a:
        raise EmptyTuple("empty tuple")
    if any(x < 0 for x in a):
        raise ValueError("entries must be nonnegative; orient() first")
    if reduce(gcd, a) != 1:
        raise GcdNotOne(f"gcd of {tuple(a)} is {reduce(gcd, a)}")
    moves: list[Subtract | Permute] = []
    while sum(1 for x in a if x) > 1:
        s = min((j for j in range(len(a)) if a[j]), key=lambda j: (a[j], j))
        for r in range(len(a)):
            if r == s or not a[r]:
                continue
            while a[r] >= a[s]:
                a[r] -= a[s]
                moves.append(Subtract(r + 1, s + 1))
    pos = next(j for j in range(len(a)) if a[j])
    perm = list(range(1, len(a) + 1))
    perm[0], perm[pos] = perm[pos], perm[0]
    moves.append(Permute(tuple(perm)))
    final = tuple(a[p - 1] for p in perm)
    seq = SlideSequence(tuple(int(x) for x in values), tuple(moves), final)
    assert final == (1,) + (0,) * (len(a) - 1)
    return seq


def _replay(initial: Sequence[int], moves) -> tuple[int, ...]:
    a = list(initial)
    k = len(a)
    for step, m in enumerate(moves, start=1):
        if isinstance(m, Subtract):
            r, s = m.r - 1, m.s - 1
            if not (0 <= r < k and 0 <= s < k) or r == s:
                raise IllegalMove(f"bad indices r={m.r}, s={m.s}", step)
            if a[s] > a[r]:
                raise IllegalMove(f"a_s = {a[s]} exceeds a_r = {a[r]}", step)
            a[r] -= a[s]
        elif isinstance(m, Permute):
            if sorted(m.perm) != list(range(1, k + 1)):
                raise IllegalMove(f"{m.perm} is not a permutation of 1..{k}", step)
            a = [a[p - 1] for p in m.perm]
        else:
            raise IllegalMove(f"unknown move {m!r}", step)
    return tuple(a)


def replay_slides(seq: SlideSequence) -> tuple[int, ...]:
    """Apply the moves to ``seq.initial``, checking ``a_s <= a_r`` at every subtraction."""
    return _replay(seq.initial, seq.moves)


def slide_tuple(P: Presentation) -> tuple[int, ...]:
    """``[ga_j]`` in ``pi_1(S^1 x D^4) = Z`` after the first ``n - 1`` 1-handles are cancelled.

    That is the exponent sum of the last generator in each relator.
    """
    if P.n < 1:
        raise ValueError("presentation has no generators")
    last = P.generators[-1]
    return tuple(exponent_sum(r).get(last, 0) for r in P.relators)


# -- boundary prediction -----------------------------------------------------


class Verdict(str, enum.Enum):
    PROVED_TRIVIAL = "trivial"
    PROVED_NONTRIVIAL = "nontrivial"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class BoundaryDescriptor:
    kind: str  # "ConnectedSumS2xS2" or "Unknown"
    count: int | None
    pi1: Presentation
    H1_invariant_factors: tuple[int, ...]
    b2: int | None
    signature: int | None

    def __str__(self) -> str:
        if self.kind == "ConnectedSumS2xS2":
            return "S^4" if self.count == 0 else f"#{self.count}(S^2xS^2)"
        return "unknown"

    def report(self) -> str:
        h1 = " ".join(map(str, self.H1_invariant_factors)) or "trivial"
        unk = "unknown"
        return "\n".join(
            [
                f"boundary = {self}",
                f"boundary.h1 = {h1}",
                f"boundary.b2 = {unk if self.b2 is None else self.b2}",
                f"boundary.signature = {unk if self.signature is None else self.signature}",
            ]
        )


def predict_boundary(c: HandleComplex, triviality: Verdict | str) -> BoundaryDescriptor:
    verdict = Verdict(triviality)
    if c.stage not in (Stage.W_P, Stage.W_PRIME_P):
        raise ValueError(f"boundary prediction needs stage W_P or W'_P, not {c.stage.value}")
    P = c.source_presentation
    h1 = tuple(invariant_factors(P))
    if verdict == Verdict.PROVED_TRIVIAL:
        if h1:
            raise InconsistentVerdict(f"verdict 'trivial' but H1 has invariant factors {h1}")
        k = len(c.gamma_handles)
        count = k if c.stage == Stage.W_P else k - 1
        if count < 0:
            raise InconsistentVerdict("W'_P with no relators cannot have trivial fundamental group")
        return BoundaryDescriptor("ConnectedSumS2xS2", count, P, (), 2 * count, 0)
    return BoundaryDescriptor("Unknown", None, P, h1, None, None)

"""Nielsen reduction of finite subsets of a free group.

A set is replaced, one elementary move at a time, by sets that are smaller
in the Lyndon-Schupp order (length first, then the lexicographic order of
the half-words of ``u`` and ``u^-1``).  The end state is checked directly
against the Nielsen conditions N0, N1, N2; a set satisfying them freely
generates its subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .words import Word, concat, invert, render, substitute


@dataclass(frozen=True)
class NielsenMove:
    kind: str  # "left" (u_i <- u_j^e u_i), "right" (u_i <- u_i u_j^e), "drop" (remove trivial u_i)
    i: int
    j: int = -1
    sign: int = 1

    def __str__(self) -> str:
        if self.kind == "drop":
            return f"drop {self.i}"
        return f"{self.kind} {self.i} {self.j} {self.sign:+d}"


@dataclass(frozen=True)
class NielsenResult:
    is_basis: bool
    reduced_set: tuple[Word, ...]
    rank: int
    reduction_log: tuple[NielsenMove, ...]
    # input[k] as a word in symbols u0, u1, ... naming reduced_set entries
    expressions: tuple[Word, ...] = field(default=())


def _letter_key(letter):
    g, s = letter
    return (g, 0 if s > 0 else 1)


def _half(w: Word) -> tuple:
    n = len(w)
    return tuple(_letter_key(x) for x in w.letters[: (n + 1) // 2])


def order_key(w: Word) -> tuple:
    """Lyndon-Schupp preorder key; invariant under ``w -> w^-1``."""
    a, b = _half(w), _half(invert(w))
    return (len(w), min(a, b), max(a, b))


def _apply(elems: list[Word | None], move: NielsenMove) -> None:
    if move.kind == "drop":
        elems[move.i] = None
        return
    uj = elems[move.j] if move.sign > 0 else invert(elems[move.j])
    if move.kind == "left":
        elems[move.i] = concat(uj, elems[move.i])
    else:
        elems[move.i] = concat(elems[move.i], uj)


def _find_move(elems: list[Word | None]) -> NielsenMove | None:
    live = [k for k, u in enumerate(elems) if u is not None]
    live.sort(key=lambda k: (len(elems[k]), [_letter_key(x) for x in elems[k].letters], k))
    # pass 1: strictly length-reducing moves; pass 2: order-reducing moves
    for measure in (len, order_key):
        for i in reversed(live):
            ui = elems[i]
            cur = measure(ui)
            for j in live:
                if j == i:
                    continue
                for kind in ("left", "right"):
                    for sign in (1, -1):
                        uj = elems[j] if sign > 0 else invert(elems[j])
                        cand = concat(uj, ui) if kind == "left" else concat(ui, uj)
                        if measure(cand) < cur:
                            return NielsenMove(kind, i, j, sign)
    return None


def check_nielsen_conditions(words: Sequence[Word]) -> bool:
    """Direct check of N0, N1, N2 over all signed pairs and triples."""
    signed = []
    for k, u in enumerate(words):
        if not u:
            return False  # N0
        signed.append((k, 1, u))
        signed.append((k, -1, invert(u)))

    def inverse_pair(x, y):
        return x[0] == y[0] and x[1] == -y[1]

    for x, y in product(signed, repeat=2):
        if inverse_pair(x, y):
            continue
        xy = concat(x[2], y[2])
        if len(xy) < max(len(x[2]), len(y[2])):
            return False  # N1 (also catches xy = 1 for distinct elements)
    for x, y, z in product(signed, repeat=3):
        if inverse_pair(x, y) or inverse_pair(y, z):
            continue
        if len(concat(concat(x[2], y[2]), z[2])) <= len(x[2]) - len(y[2]) + len(z[2]):
            return False  # N2
    return True


def nielsen_reduce(S: Sequence[Word]) -> NielsenResult:
    elems: list[Word | None] = list(S)
    m = len(elems)
    # original k in terms of current slots
    exprs = [Word.gen(f"u{k}") for k in range(m)]
    log: list[NielsenMove] = []
    dropped = False
    while True:
        trivial = next((k for k, u in enumerate(elems) if u is not None and not u), None)
        if trivial is not None:
            move = NielsenMove("drop", trivial)
            exprs = [substitute(e, {f"u{trivial}": Word.identity()} | _ids(elems, trivial)) for e in exprs]
            dropped = True
        else:
            move = _find_move(elems)
            if move is None:
                break
            # new u_i = u_j^e u_i (or u_i u_j^e), so old u_i = u_j^-e new (or new u_j^-e)
            uj = Word.gen(f"u{move.j}", -move.sign)
            ui = Word.gen(f"u{move.i}")
            old = concat(uj, ui) if move.kind == "left" else concat(ui, uj)
            images = _ids(elems, None)
            images[f"u{move.i}"] = old
            exprs = [substitute(e, images) for e in exprs]
        _apply(elems, move)
        log.append(move)

    live = [k for k, u in enumerate(elems) if u is not None]
    reduced = tuple(elems[k] for k in live)
    if not check_nielsen_conditions(reduced):
        raise RuntimeError("Nielsen reduction stopped on a set that is not Nielsen-reduced")
    rename = {f"u{k}": Word.gen(f"u{r}") for r, k in enumerate(live)}
    exprs = [substitute(e, rename) for e in exprs]
    return NielsenResult(
        is_basis=not dropped and len(reduced) == m,
        reduced_set=reduced,
        rank=len(reduced),
        reduction_log=tuple(log),
        expressions=tuple(exprs),
    )


def _ids(elems, skip) -> dict[str, Word]:
    return {f"u{k}": Word.gen(f"u{k}") for k, u in enumerate(elems) if u is not None and k != skip}


def replay_nielsen(S: Sequence[Word], log: Sequence[NielsenMove]) -> tuple[Word, ...]:
    elems: list[Word | None] = list(S)
    for move in log:
        _apply(elems, move)
    return tuple(u for u in elems if u is not None)


def evaluate_expression(expr: Word, reduced: Sequence[Word]) -> Word:
    return substitute(expr, {f"u{k}": u for k, u in enumerate(reduced)})


def is_free_basis(S: Sequence[Word]) -> bool:
    return nielsen_reduce(S).is_basis


def describe(result: NielsenResult) -> str:
    lines = [f"basis = {'yes' if result.is_basis else 'no'}", f"rank = {result.rank}"]
    lines += [f"u{k} = {render(u)}" for k, u in enumerate(result.reduced_set)]
    return "\n".join(lines)

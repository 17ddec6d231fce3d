"""Todd-Coxeter coset enumeration over the trivial subgroup.

Cosets are numbered from 1 and never reused; entry 0 means undefined.
Columns come in pairs: ``2k`` is generator ``k`` and ``2k + 1`` its inverse.
Coincidences are processed with a union-find forest and a queue, following
the standard HLT/Felsch formulation in Holt's handbook.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .presentations import Presentation

DEFAULT_MAX_COSETS = 1_000_000


@dataclass
class EnumerationStats:
    defined: int = 0
    coincidences: int = 0
    deductions: int = 0
    steps: int = 0
    seconds: float = 0.0


@dataclass(frozen=True)
class Finite:
    order: int

    def __str__(self) -> str:
        return f"order = {self.order}"


@dataclass(frozen=True)
class BoundExceeded:
    max_cosets: int
    live_at_stop: int

    def __str__(self) -> str:
        return f"bound-exceeded at = {self.max_cosets}"


@dataclass
class EnumerationResult:
    outcome: Finite | BoundExceeded
    stats: EnumerationStats
    table: "CosetTable | None" = field(default=None, repr=False)

    @property
    def finite(self) -> bool:
        return isinstance(self.outcome, Finite)


class _Bound(Exception):
    pass


class CosetTable:
    def __init__(
        self,
        P: Presentation,
        max_cosets: int = DEFAULT_MAX_COSETS,
        callback: Callable[[EnumerationStats], object] | None = None,
        callback_every: int = 100_000,
    ):
        if max_cosets < 1:
            raise ValueError("max_cosets must be at least 1")
        self.presentation = P
        self.ncols = 2 * P.n
        index = {g: k for k, g in enumerate(P.generators)}
        self.relators = [[2 * index[g] + (0 if s > 0 else 1) for g, s in r.letters] for r in P.relators if r]
        self.max_cosets = max_cosets
        self.callback = callback
        self.callback_every = max(1, callback_every)
        # row 0 is padding so coset c occupies table[c * ncols : (c + 1) * ncols]
        self.table = [0] * (2 * self.ncols)
        self.parent = [0, 1]
        self.ncosets = 1
        self.live = 1
        self.stats = EnumerationStats(defined=1)
        self.deduction_stack: list[tuple[int, int]] | None = None

    # -- primitives ---------------------------------------------------------

    def rep(self, c: int) -> int:
        p = self.parent
        r = c
        while p[r] != r:
            r = p[r]
        while p[c] != r:
            p[c], c = r, p[c]
        return r

    def is_live(self, c: int) -> bool:
        return self.parent[c] == c

    def get(self, c: int, x: int) -> int:
        return self.table[c * self.ncols + x]

    def define(self, c: int, x: int) -> int:
        if self.ncosets >= self.max_cosets:
            raise _Bound
        self.ncosets += 1
        self.live += 1
        d = self.ncosets
        nc = self.ncols
        self.table.extend([0] * nc)
        self.parent.append(d)
        self.table[c * nc + x] = d
        self.table[d * nc + (x ^ 1)] = c
        st = self.stats
        st.defined += 1
        if self.deduction_stack is not None:
            self.deduction_stack.append((c, x))
        if self.callback is not None and st.defined % self.callback_every == 0:
            self.callback(st)
        return d

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        phi, psi = self.rep(k), self.rep(l)
        if phi != psi:
            mu, nu = min(phi, psi), max(phi, psi)
            self.parent[nu] = mu
            self.live -= 1
            queue.append(nu)

    def coincidence(self, alpha: int, beta: int) -> None:
        self.stats.coincidences += 1
        table, nc = self.table, self.ncols
        queue: list[int] = []
        self._merge(alpha, beta, queue)
        i = 0
        while i < len(queue):
            gamma = queue[i]
            i += 1
            for x in range(nc):
                delta = table[gamma * nc + x]
                if delta == 0:
                    continue
                xi = x ^ 1
                table[delta * nc + xi] = 0
                mu, nu = self.rep(gamma), self.rep(delta)
                mx = table[mu * nc + x]
                if mx:
                    self._merge(nu, mx, queue)
                else:
                    nxi = table[nu * nc + xi]
                    if nxi:
                        self._merge(mu, nxi, queue)
                    else:
                        table[mu * nc + x] = nu
                        table[nu * nc + xi] = mu
                        if self.deduction_stack is not None:
                            self.deduction_stack.append((mu, x))

    def scan(self, c: int, w: list[int], fill: bool) -> None:
        table, nc = self.table, self.ncols
        f, i = c, 0
        b, j = c, len(w) - 1
        while True:
            while i <= j:
                nxt = table[f * nc + w[i]]
                if not nxt:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                nxt = table[b * nc + (w[j] ^ 1)]
                if not nxt:
                    break
                b = nxt
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f * nc + w[i]] = b
                table[b * nc + (w[i] ^ 1)] = f
                self.stats.deductions += 1
                if self.deduction_stack is not None:
                    self.deduction_stack.append((f, w[i]))
                return
            if not fill:
                return
            self.define(f, w[i])

    # -- strategies ---------------------------------------------------------

    def hlt(self) -> None:
        nc = self.ncols
        c = 1
        while c <= self.ncosets:
            if self.parent[c] == c:
                for r in self.relators:
                    self.scan(c, r, fill=True)
                    self.stats.steps += 1
                    if self.parent[c] != c:
                        break
                if self.parent[c] == c:
                    for x in range(nc):
                        if self.parent[c] != c:
                            break
                        if not self.table[c * nc + x]:
                            self.define(c, x)
            c += 1

    def felsch(self) -> None:
        nc = self.ncols
        self.deduction_stack = []
        by_first: list[list[list[int]]] = [[] for _ in range(nc)]
        for r in self.relators:
            for k in range(len(r)):
                rot = r[k:] + r[:k]
                if rot not in by_first[rot[0]]:
                    by_first[rot[0]].append(rot)
        for r in self.relators:
            self.scan(1, r, fill=False)
        self._process_deductions(by_first)
        c = 1
        while c <= self.ncosets:
            if self.parent[c] == c:
                for x in range(nc):
                    if self.parent[c] != c:
                        break
                    if not self.table[c * nc + x]:
                        self.define(c, x)
                        self._process_deductions(by_first)
            c += 1

    def _process_deductions(self, by_first) -> None:
        stack = self.deduction_stack
        table, nc = self.table, self.ncols
        while stack:
            alpha, x = stack.pop()
            if self.parent[alpha] != alpha:
                continue
            for w in by_first[x]:
                self.scan(alpha, w, fill=False)
                self.stats.steps += 1
                if self.parent[alpha] != alpha:
                    break
            if self.parent[alpha] != alpha:
                continue
            beta = table[alpha * nc + x]
            if beta and self.parent[beta] == beta:
                for w in by_first[x ^ 1]:
                    self.scan(beta, w, fill=False)
                    self.stats.steps += 1
                    if self.parent[beta] != beta:
                        break

    # -- inspection ---------------------------------------------------------

    def live_cosets(self) -> list[int]:
        return [c for c in range(1, self.ncosets + 1) if self.parent[c] == c]

    def verify(self) -> bool:
        """Complete, inverse-consistent, and every relator closes at every live coset."""
        nc, table = self.ncols, self.table
        live = self.live_cosets()
        alive = set(live)
        for c in live:
            for x in range(nc):
                d = table[c * nc + x]
                if d not in alive or table[d * nc + (x ^ 1)] != c:
                    return False
        for c in live:
            for r in self.relators:
                f = c
                for x in r:
                    f = table[f * nc + x]
                if f != c:
                    return False
        return True

    def permutations(self) -> dict[str, list[int]]:
        """Action of each generator on live cosets, renumbered ``0..order-1``."""
        live = self.live_cosets()
        pos = {c: k for k, c in enumerate(live)}
        nc = self.ncols
        return {
            g: [pos[self.table[c * nc + 2 * k]] for c in live]
            for k, g in enumerate(self.presentation.generators)
        }


def enumerate_cosets(
    P: Presentation,
    max_cosets: int = DEFAULT_MAX_COSETS,
    strategy: str = "hlt",
    callback: Callable[[EnumerationStats], object] | None = None,
    callback_every: int = 100_000,
    keep_table: bool = False,
) -> EnumerationResult:
    """Enumerate cosets of the trivial subgroup, i.e. the elements of ``G_P``.

    Returns ``Finite(order)`` on completion, ``BoundExceeded`` once
    ``max_cosets`` cosets have been defined.  ``callback`` is called with the
    running stats every ``callback_every`` definitions; raising from it
    aborts the run.
    """
    strategy = strategy.lower()
    if strategy not in ("hlt", "felsch"):
        raise ValueError(f"unknown strategy {strategy!r}")
    t0 = time.perf_counter()
    ct = CosetTable(P, max_cosets, callback, callback_every)
    try:
        if P.n == 0:
            pass
        elif strategy == "hlt":
            ct.hlt()
        else:
            ct.felsch()
    except _Bound:
        ct.stats.seconds = time.perf_counter() - t0
        return EnumerationResult(BoundExceeded(max_cosets, ct.live), ct.stats, ct if keep_table else None)
    ct.stats.seconds = time.perf_counter() - t0
    if not ct.verify():
        raise RuntimeError("coset table failed post-hoc verification")
    return EnumerationResult(Finite(ct.live), ct.stats, ct if keep_table else None)

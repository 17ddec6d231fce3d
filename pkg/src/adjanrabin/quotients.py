"""Finite oracles: homomorphism counts into small permutation groups, and
the word problem in free products of finite cyclic groups."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Sequence

from .errors import UnknownGenerator
from .presentations import Presentation
from .words import Word

# -- finite targets ----------------------------------------------------------


@dataclass(frozen=True)
class FiniteTarget:
    name: str
    elements: tuple[tuple[int, ...], ...]  # permutations in one-line notation
    table: tuple[tuple[int, ...], ...]  # table[i][j] = index of elements[i] * elements[j]
    inverse: tuple[int, ...]
    identity: int

    @property
    def order(self) -> int:
        return len(self.elements)

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inverse[x], -k
        out = self.identity
        for _ in range(k):
            out = self.table[out][x]
        return out

    def check_group_axioms(self, samples: int | None = None) -> None:
        n = self.order
        rng = range(n)
        for i in rng:
            if self.table[i][self.inverse[i]] != self.identity or self.table[self.identity][i] != i:
                raise AssertionError(f"{self.name}: inverse/identity failure at {i}")
        triples = ((i, j, k) for i in rng for j in rng for k in rng)
        for count, (i, j, k) in enumerate(triples):
            if samples is not None and count >= samples:
                break
            t = self.table
            if t[t[i][j]][k] != t[i][t[j][k]]:
                raise AssertionError(f"{self.name}: associativity failure at {(i, j, k)}")


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # left-to-right: apply p, then q (matches reading words left to right)
    return tuple(q[p[i]] for i in range(len(p)))


def _sign(p: Sequence[int]) -> int:
    s = 1
    for i, j in combinations(range(len(p)), 2):
        if p[i] > p[j]:
            s = -s
    return s


def _from_permutations(name: str, perms: list[tuple[int, ...]]) -> FiniteTarget:
    perms = sorted(perms)
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(tuple(index[_compose(p, q)] for q in perms) for p in perms)
    ident = index[tuple(range(len(perms[0])))]
    inverse = tuple(row.index(ident) for row in table)
    return FiniteTarget(name, tuple(perms), table, inverse, ident)


@lru_cache(maxsize=None)
def target(name: str) -> FiniteTarget:
    """``S3``, ``A4``, ``S4`` or ``S5`` (case-insensitive), built from permutations."""
    key = name.upper()
    if key == "S3":
        return _from_permutations("S3", list(permutations(range(3))))
    if key == "S4":
        return _from_permutations("S4", list(permutations(range(4))))
    if key == "A4":
        return _from_permutations("A4", [p for p in permutations(range(4)) if _sign(p) == 1])
    if key == "S5":
        return _from_permutations("S5", list(permutations(range(5))))
    raise ValueError(f"unknown target group {name!r}")


TARGET_NAMES = ("S3", "A4", "S4", "S5")

# -- hom counting ------------------------------------------------------------


def _syllables(w: Word, index: dict[str, int]) -> tuple[tuple[int, int], ...]:
    return tuple((index[g], e) for g, e in w.syllables())


@dataclass
class _Plan:
    """Assignment order for generators; ``solve[k]`` derives generator k from a relator."""

    order: list[int]
    free: set[int]
    solve: dict[int, tuple[tuple[tuple[int, int], ...], int]]  # gen -> (rest syllables, sign)
    checks: list[list[tuple[tuple[int, int], ...]]]  # relators completed at each depth


def _solvable(rel: tuple[tuple[int, int], ...], gen: int, known: set[int]) -> bool:
    occ = [e for g, e in rel if g == gen]
    if len(occ) != 1 or abs(occ[0]) != 1:
        return False
    return all(g in known for g, _ in rel if g != gen)


def _closure(seed: set[int], rels, n: int) -> list[int] | None:
    known = set(seed)
    order: list[int] = []
    progress = True
    while progress and len(known) < n:
        progress = False
        for g in range(n):
            if g in known:
                continue
            if any(_solvable(r, g, known) for r in rels):
                known.add(g)
                order.append(g)
                progress = True
                break
    return order if len(known) == n else None


def _plan(P: Presentation, rels) -> _Plan:
    n = P.n
    if n == 0:
        return _Plan([], set(), {}, [[]])
    best = None
    if n <= 12:
        # smallest set of generators from which the rest can be solved
        for size in range(n + 1):
            for free in combinations(range(n), size):
                tail = _closure(set(free), rels, n)
                if tail is not None:
                    best = (list(free), tail)
                    break
            if best:
                break
    if best is None:
        best = (list(range(n)), [])
    free, tail = best
    order = free + tail
    solve = {}
    known = set(free)
    for g in tail:
        for r in rels:
            if _solvable(r, g, known):
                k = next(i for i, (h, _) in enumerate(r) if h == g)
                sign = r[k][1]
                rest = r[k + 1 :] + r[:k]
                solve[g] = (rest, sign)
                break
        known.add(g)
    pos = {g: d for d, g in enumerate(order)}
    checks: list[list] = [[] for _ in range(n)]
    for r in sorted(rels, key=lambda r: sum(abs(e) for _, e in r)):
        if not r:
            continue
        depth = max(pos[g] for g, _ in r)
        checks[depth].append(r)
    return _Plan(order, set(free), solve, checks)


def _eval(H: FiniteTarget, syl, images: list[int]) -> int:
    t = H.table
    x = H.identity
    for g, e in syl:
        y = images[g]
        if e < 0:
            y = H.inverse[y]
            e = -e
        for _ in range(e):
            x = t[x][y]
    return x


def _count_from(H: FiniteTarget, plan: _Plan, images: list[int], depth: int) -> int:
    if depth == len(plan.order):
        return 1
    g = plan.order[depth]
    if g in plan.solve:
        rest, sign = plan.solve[g]
        t = _eval(H, rest, images)
        candidates = (H.inverse[t] if sign == 1 else t,)
    else:
        candidates = range(H.order)
    total = 0
    ident = H.identity
    checks = plan.checks[depth]
    for c in candidates:
        images[g] = c
        if all(_eval(H, r, images) == ident for r in checks):
            total += _count_from(H, plan, images, depth + 1)
    images[g] = -1
    return total


def _count_branch(args) -> int:
    H_name, P, first_value = args
    H = target(H_name)
    plan, rels = _prepare(P)
    images = [-1] * P.n
    g = plan.order[0]
    images[g] = first_value
    if not all(_eval(H, r, images) == H.identity for r in plan.checks[0]):
        return 0
    return _count_from(H, plan, images, 1)


def _prepare(P: Presentation):
    index = {g: i for i, g in enumerate(P.generators)}
    rels = [_syllables(r, index) for r in P.relators]
    return _plan(P, rels), rels


def hom_count(P: Presentation, H: FiniteTarget | str, jobs: int = 1) -> int:
    """Exact ``|Hom(G_P, H)|``.

    Generators determined by a relator in which they occur once (given the
    already-assigned ones) are solved for instead of enumerated; every
    relator is checked as soon as all its generators have images.
    """
    if isinstance(H, str):
        H = target(H)
    plan, _ = _prepare(P)
    if P.n == 0:
        return 1
    if jobs > 1 and plan.order[0] in plan.free:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            args = [(H.name, P, v) for v in range(H.order)]
            return sum(pool.map(_count_branch, args))
    return _count_from(H, plan, [-1] * P.n, 0)


# -- free products of cyclic groups ------------------------------------------

Free = 0  # order marker for an infinite cyclic factor


@dataclass(frozen=True)
class CyclicFreeProduct:
    """Free product of cyclic groups, one factor per generator (order ``Free`` = Z)."""

    orders: tuple[int, ...]
    generators: tuple[str, ...] = ()

    def __post_init__(self):
        orders = tuple(int(q) for q in self.orders)
        for q in orders:
            if q != Free and q < 2:
                raise ValueError(f"finite factor orders must be >= 2, got {q}")
        gens = tuple(self.generators) or tuple(f"x{i + 1}" for i in range(len(orders)))
        if len(gens) != len(orders):
            raise ValueError("one order per generator required")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "generators", gens)

    def presentation(self) -> Presentation:
        rels = tuple(Word.gen(g, q) for g, q in zip(self.generators, self.orders) if q != Free)
        return Presentation(self.generators, rels)


def _balanced(e: int, q: int) -> int:
    if q == Free:
        return e
    r = e % q
    return r - q if r > q // 2 else r


@dataclass(frozen=True)
class WordProblemVerdict:
    trivial: bool
    normal_form: Word

    def __str__(self) -> str:
        return "trivial" if self.trivial else "nontrivial"


def wp_cyclic_free_product(product: CyclicFreeProduct, w: Word) -> WordProblemVerdict:
    """Syllable normal form; exponents reduced to ``(-q/2, q/2]``."""
    order = dict(zip(product.generators, product.orders))
    stack: list[list] = []
    for g, s in w.letters:
        if g not in order:
            raise UnknownGenerator(g)
        if stack and stack[-1][0] == g:
            stack[-1][1] = _balanced(stack[-1][1] + s, order[g])
            if stack[-1][1] == 0:
                stack.pop()
        else:
            e = _balanced(s, order[g])
            if e:
                stack.append([g, e])
    nf = Word(tuple((g, 1 if e > 0 else -1) for g, e in stack for _ in range(abs(e))))
    return WordProblemVerdict(not stack, nf)

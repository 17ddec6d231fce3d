"""Exact integer linear algebra on relator exponent matrices.

Everything here is Python ``int`` arithmetic; there is no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import TYPE_CHECKING, Sequence

from .words import exponent_sum

if TYPE_CHECKING:
    from .presentations import Presentation


class _Infinite:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinite"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinite, ())


Infinite = _Infinite()


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(map(int, r)) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        return [list(self.entries[i * self.cols : (i + 1) * self.cols]) for i in range(self.rows)]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        a, b = self.to_rows(), other.to_rows()
        out = [[sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)] for i in range(self.rows)]
        return IntMatrix.from_rows(out, other.cols)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in r) for r in self.to_rows())


def determinant(m: IntMatrix) -> int:
    """Fraction-free (Bareiss) determinant of a square matrix."""
    if m.rows != m.cols:
        raise ValueError("determinant of non-square matrix")
    n = m.rows
    a = m.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class SmithDecomposition:
    D: IntMatrix
    U: IntMatrix
    V: IntMatrix
    diag: tuple[int, ...]

    def verify(self, A: IntMatrix) -> bool:
        if (self.U @ A @ self.V) != self.D:
            return False
        if abs(determinant(self.U)) != 1 or abs(determinant(self.V)) != 1:
            return False
        d = self.diag
        return all(x >= 0 for x in d) and all(
            (d[i + 1] % d[i] == 0) if d[i] else d[i + 1] == 0 for i in range(len(d) - 1)
        )


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Return ``U, D, V`` with ``U @ A @ V == D`` and a divisibility chain on the diagonal.

    Pivot choice: the nonzero entry of least absolute value in the remaining
    block (row-major tie-break), reduced against its row and column by
    Euclidean steps.
    """
    m, n = A.rows, A.cols
    a = A.to_rows()
    U = IntMatrix.identity(m).to_rows()
    V = IntMatrix.identity(n).to_rows()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row dst += c * row src
        if c:
            a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
            U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, c):  # col dst += c * col src
        if c:
            for row in a:
                row[dst] += c * row[src]
            for row in V:
                row[dst] += c * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        dirty = True
            if dirty:
                # a remainder smaller than the pivot exists; make it the pivot
                cand = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # row and column cleared; enforce divisibility against the rest
            p = a[t][t]
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    diag = tuple(a[i][i] for i in range(min(m, n)))
    return SmithDecomposition(
        D=IntMatrix.from_rows(a, n),
        U=IntMatrix.from_rows(U, m),
        V=IntMatrix.from_rows(V, n),
        diag=diag,
    )


def abelianization_matrix(P: "Presentation") -> IntMatrix:
    rows = []
    for r in P.relators:
        sums = exponent_sum(r)
        rows.append([sums.get(g, 0) for g in P.generators])
    return IntMatrix.from_rows(rows, len(P.generators))


def invariant_factors(P: "Presentation") -> list[int]:
    """Cyclic decomposition of the abelianization: entries ``!= 1``, ``0`` for a free factor.

    The abelianization is ``Z/d_1 + ... + Z/d_r + Z^(n - r)``; units are
    dropped, so ``[]`` means the trivial group.
    """
    snf = smith_normal_form(abelianization_matrix(P))
    out = [d for d in snf.diag if d != 1]
    out += [0] * (len(P.generators) - len(snf.diag))
    return out


def element_order(snf: SmithDecomposition, vector: Sequence[int]):
    """Order of ``vector`` in ``Z^n / rowspan(A)`` given the Smith decomposition of ``A``."""
    V = snf.V.to_rows()
    n = snf.V.rows
    c = [sum(vector[k] * V[k][j] for k in range(n)) for j in range(n)]
    order = 1
    for j, cj in enumerate(c):
        if cj == 0:
            continue
        d = snf.diag[j] if j < len(snf.diag) else 0
        if d == 0:
            return Infinite
        order = lcm(order, d // gcd(d, cj))
    return order


def generator_orders(P: "Presentation") -> list:
    """Order of each generator's image in the abelianization (``Infinite`` if unbounded)."""
    snf = smith_normal_form(abelianization_matrix(P))
    n = len(P.generators)
    return [element_order(snf, [int(k == i) for k in range(n)]) for i in range(n)]


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def extended_gcd(values: Sequence[int]) -> tuple[int, list[int]]:
    """Left-fold extended Euclid: returns ``g`` and ``c`` with ``sum(c[i] * values[i]) == g``."""
    if not values:
        raise ValueError("gcd of an empty set is undefined")
    if any(v < 1 for v in values):
        raise ValueError("extended_gcd expects positive integers")
    g = values[0]
    coeffs = [1]
    for v in values[1:]:
        g, x, y = _egcd(g, v)
        coeffs = [c * x for c in coeffs] + [y]
    if sum(c * v for c, v in zip(coeffs, values)) != g:
        raise AssertionError("Bezout identity failed")
    return g, coeffs

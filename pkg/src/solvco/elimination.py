"""Exact linear algebra over Q(i).

Sparse vectors are cleared to Gaussian-integer coordinates and reduced
fraction-free (cross-multiplication plus content normalization).  Dense
determinants and ranks use Bareiss elimination.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .algebra import Gaussian

# Gaussian integers are plain (re, im) int tuples in the sparse kernel.


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def to_zi(vec: dict) -> dict:
    """Scale a sparse Gaussian-rational vector to Gaussian-integer coordinates."""
    den = 1
    for g in vec.values():
        den = _lcm(den, g.re.denominator)
        den = _lcm(den, g.im.denominator)
    out = {}
    for k, g in vec.items():
        re = g.re * den
        im = g.im * den
        if re or im:
            out[k] = (re.numerator, im.numerator)
    return _primitive(out)


def _primitive(vec: dict) -> dict:
    g = 0
    for re, im in vec.values():
        g = math.gcd(g, re, im)
        if g == 1:
            break
    if g > 1:
        vec = {k: (re // g, im // g) for k, (re, im) in vec.items()}
    return vec


def _mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


class SparseEchelon:
    """Incremental row echelon form of sparse Gaussian-integer vectors.

    Each stored row is keyed by its smallest coordinate index.
    """

    def __init__(self):
        self.rows: dict = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        v = dict(vec)
        rows = self.rows
        while v:
            p = min(v)
            row = rows.get(p)
            if row is None:
                return v
            a = row[p]
            b = v[p]
            # v <- a*v - b*row, which kills coordinate p
            out = {}
            for k, x in v.items():
                y = _mul(a, x)
                if y != (0, 0):
                    out[k] = y
            for k, x in row.items():
                y = _mul(b, x)
                z = out.get(k, (0, 0))
                z = (z[0] - y[0], z[1] - y[1])
                if z == (0, 0):
                    out.pop(k, None)
                else:
                    out[k] = z
            v = _primitive(out)
        return v

    def add(self, vec: dict) -> bool:
        """Insert a vector; True if it was independent of the stored rows."""
        v = self.reduce(vec)
        if not v:
            return False
        self.rows[min(v)] = v
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)


def sparse_rank(vectors: Sequence[dict]) -> int:
    ech = SparseEchelon()
    for v in vectors:
        if v:
            ech.add(to_zi(v) if _is_gaussian_vec(v) else v)
    return len(ech)


def _is_gaussian_vec(v: dict) -> bool:
    return bool(v) and isinstance(next(iter(v.values())), Gaussian)


# --- dense Bareiss -------------------------------------------------------

def _g(x) -> Gaussian:
    return x if isinstance(x, Gaussian) else Gaussian.coerce(x)


def bareiss(matrix: Sequence[Sequence]) -> tuple[int, Gaussian, list]:
    """Fraction-free Bareiss elimination on a copy of ``matrix``.

    Returns (rank, last nonzero pivot, echelon rows).  For a square full-rank
    matrix the last pivot equals the determinant up to the sign of row swaps;
    use :func:`determinant` for the signed value.
    """
    rank, prev, rows, _sign = _bareiss(matrix)
    return rank, prev, rows


def _bareiss(matrix):
    a = [[_g(x) for x in row] for row in matrix]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    prev = Gaussian(1)
    r = 0
    sign = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sign = -sign
        pr = a[r]
        p = pr[c]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            for j in range(c + 1, ncols):
                row[j] = (p * row[j] - f * pr[j]) / prev
            row[c] = Gaussian(0)
        prev = p
        r += 1
        if r == nrows:
            break
    return r, prev, a, sign


def rank(matrix: Sequence[Sequence]) -> int:
    if not matrix or not matrix[0]:
        return 0
    return _bareiss(matrix)[0]


def _zi_exact_div(a, b):
    # a / b in Z[i], known to be exact
    n = b[0] * b[0] + b[1] * b[1]
    re = a[0] * b[0] + a[1] * b[1]
    im = a[1] * b[0] - a[0] * b[1]
    if re % n or im % n:
        raise ArithmeticError("internal: inexact Gaussian-integer division in Bareiss")
    return (re // n, im // n)


def rank_zi(matrix: Sequence[Sequence]) -> int:
    """Dense rank over Q(i) via Bareiss on Gaussian-integer rows.

    Each row is scaled to Gaussian-integer entries first (row scaling keeps
    the rank), so every step is integer arithmetic.
    """
    if not matrix or not matrix[0]:
        return 0
    rows = []
    for row in matrix:
        vec = to_zi({j: _g(x) for j, x in enumerate(row) if _g(x)})
        if vec:
            rows.append([vec.get(j, (0, 0)) for j in range(len(row))])
    ncols = len(matrix[0])
    prev = (1, 0)
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != (0, 0)), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        p = pr[c]
        for i in range(r + 1, len(rows)):
            row = rows[i]
            f = row[c]
            for j in range(c + 1, ncols):
                x = _mul(p, row[j])
                y = _mul(f, pr[j])
                row[j] = _zi_exact_div((x[0] - y[0], x[1] - y[1]), prev)
            row[c] = (0, 0)
        prev = p
        r += 1
        if r == len(rows):
            break
    return r


def determinant(matrix: Sequence[Sequence]) -> Gaussian:
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Gaussian(1)
    r, prev, _, sign = _bareiss(matrix)
    if r < n:
        return Gaussian(0)
    return prev * sign


def inverse(matrix: Sequence[Sequence]) -> list:
    """Gauss-Jordan inverse over Q(i)."""
    n = len(matrix)
    a = [[_g(x) for x in row] + [Gaussian(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = a[c][c].inverse()
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    inner = len(b)
    return [[sum((_g(a[i][k]) * _g(b[k][j]) for k in range(inner)), Gaussian(0))
             for j in range(len(b[0]))] for i in range(len(a))]


def transpose(a: Sequence[Sequence]) -> list:
    return [list(col) for col in zip(*a)]


def is_positive_definite(sym: Sequence[Sequence]) -> bool:
    """Exact LDL^T test for a real symmetric rational matrix."""
    n = len(sym)
    a = []
    for row in sym:
        r = []
        for x in row:
            g = _g(x)
            if g.im:
                raise ValueError("matrix is not real")
            r.append(g.re)
        a.append(r)
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    for k in range(n):
        piv = a[k][k]
        if piv <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f:
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
    return True


def identity(n: int) -> list:
    return [[Gaussian(int(i == j)) for j in range(n)] for i in range(n)]


def as_fraction_matrix(a) -> list:
    out = []
    for row in a:
        r = []
        for x in row:
            g = _g(x)
            if g.im:
                raise ValueError("matrix is not real")
            r.append(Fraction(g.re))
        out.append(r)
    return out

"""Independent reference implementations used only by the tests.

Nothing here imports the package's elimination or exterior-algebra kernels.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations


def perm_sign(seq) -> int:
    """Sign of the permutation sorting ``seq`` (inversion count); 0 on repeats."""
    if len(set(seq)) != len(seq):
        return 0
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def wedge_tuples(a: dict, b: dict) -> dict:
    """Wedge of forms stored as {sorted index tuple: scalar}."""
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            seq = ka + kb
            s = perm_sign(seq)
            if s:
                key = tuple(sorted(seq))
                out[key] = out.get(key, 0) + s * va * vb
    return {k: v for k, v in out.items() if v}


# --- polynomials as coefficient lists, lowest degree first ----------------------------

def _padd(p, q):
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]


def _pmul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return out


def leibniz_char_poly(M) -> list[int]:
    """det(xI - M) by the full permutation expansion; highest degree first."""
    n = len(M)
    total = [0]
    for perm in permutations(range(n)):
        term = [perm_sign(list(perm))]
        for i in range(n):
            j = perm[i]
            entry = [-M[i][j], 1] if i == j else [-M[i][j]]
            term = _pmul(term, entry)
        total = _padd(total, term)
    while len(total) > 1 and total[-1] == 0:
        total.pop()
    return list(reversed(total))


def leibniz_det(M):
    n = len(M)
    total = 0
    for perm in permutations(range(n)):
        prod = perm_sign(list(perm))
        for i in range(n):
            prod *= M[i][perm[i]]
        total += prod
    return total


def fraction_rank(rows) -> int:
    """Plain Gaussian elimination over Fractions."""
    a = [[Fraction(x) for x in r] for r in rows]
    r = 0
    cols = len(a[0]) if a else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r

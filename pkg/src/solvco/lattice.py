"""Integer and real-quadratic matrices, and exact group arithmetic on lattice elements."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .algebra import QuadNumber


class LatticeError(ValueError):
    pass


# --- integer matrices -------------------------------------------------------

def _square(M) -> int:
    n = len(M)
    if any(len(row) != n for row in M):
        raise LatticeError("matrix is not square")
    return n


def det_int(M: Sequence[Sequence[int]]) -> int:
    """Bareiss determinant of an integer matrix."""
    n = _square(M)
    a = [list(map(int, row)) for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def char_poly(M: Sequence[Sequence[int]]) -> list[int]:
    """Coefficients of det(xI - M), highest degree first (Faddeev-LeVerrier)."""
    n = _square(M)
    A = [[Fraction(x) for x in row] for row in M]
    coeffs = [Fraction(1)]
    Mk = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        prod = [[sum(A[i][t] * Mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        Mk = [[prod[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
        AM = [[sum(A[i][t] * Mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(AM[i][i] for i in range(n)) / k
        coeffs.append(c)
    out = []
    for x in coeffs:
        if x.denominator != 1:
            raise ArithmeticError("non-integral characteristic coefficient")
        out.append(int(x))
    return out


def poly_mul(p: Sequence[int], q: Sequence[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def poly_str(p: Sequence[int], var: str = "x") -> str:
    deg = len(p) - 1
    parts = []
    for i, c in enumerate(p):
        e = deg - i
        if not c:
            continue
        mag = abs(c)
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        body = (str(mag) if mag != 1 or not mono else "") + mono
        parts.append(("-" if c < 0 else "+") + body)
    s = "".join(parts).lstrip("+")
    return s or "0"


def in_special_linear(M) -> bool:
    return det_int(M) == 1


# --- quadratic matrices -------------------------------------------------------

def _q(x, d: int) -> QuadNumber:
    if isinstance(x, QuadNumber):
        if x.d != d:
            raise LatticeError(f"discriminant mismatch: sqrt({x.d}) vs sqrt({d})")
        return x
    if isinstance(x, str):
        return QuadNumber.parse(x, d)
    return QuadNumber(Fraction(x), 0, d)


def matrix_discriminant(*mats) -> int:
    ds = {x.d for M in mats for row in M for x in row if isinstance(x, QuadNumber) and x.b}
    if len(ds) > 1:
        raise LatticeError(f"matrices mix discriminants {sorted(ds)}")
    if ds:
        return ds.pop()
    ds = {x.d for M in mats for row in M for x in row if isinstance(x, QuadNumber)}
    return min(ds) if ds else 5


def quad_matrix(rows, d: int | None = None) -> list:
    """Build a QuadMatrix from numbers or strings like "(-sqrt(5)-3)/2"."""
    if d is None:
        found = set()
        for row in rows:
            for x in row:
                if isinstance(x, str) and ("sqrt" in x or "√" in x):
                    found.add(QuadNumber.parse(x).d)
                elif isinstance(x, QuadNumber) and x.b:
                    found.add(x.d)
        if len(found) > 1:
            raise LatticeError(f"entries mix discriminants {sorted(found)}")
        d = found.pop() if found else 5
    return [[_q(x, d) for x in row] for row in rows]


def quad_matmul(A, B, d: int) -> list:
    inner = len(B)
    if any(len(row) != inner for row in A):
        raise LatticeError("dimension mismatch in product")
    return [[sum((_q(A[i][k], d) * _q(B[k][j], d) for k in range(inner)), QuadNumber(0, 0, d))
             for j in range(len(B[0]))] for i in range(len(A))]


def quad_rank(A, d: int) -> int:
    a = [[_q(x, d) for x in row] for row in A]
    r = 0
    rows = len(a)
    cols = len(a[0]) if rows else 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c].inverse()
        for i in range(r + 1, rows):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def verify_conjugation(P, M, D) -> bool:
    """P M == D P exactly (so P M P^-1 = D without inverting P)."""
    n = len(M)
    for X, name in ((P, "P"), (D, "D")):
        if len(X) != n or any(len(row) != n for row in X):
            raise LatticeError(f"{name} must be {n}x{n}")
    _square(M)
    d = matrix_discriminant(P, D)
    return quad_matmul(P, M, d) == quad_matmul(D, P, d)


def _squarefree_split(m: int) -> tuple[int, int]:
    """m = k^2 * d with d square-free."""
    k, d = 1, m
    f = 2
    while f * f <= d:
        while d % (f * f) == 0:
            d //= f * f
            k *= f
        f += 1
    return k, d


def diagonalize_2x2(M) -> tuple[list, list]:
    """Left eigenvector matrix P and D = diag(mu+, mu-) with P M = D P."""
    if _square(M) != 2:
        raise LatticeError("diagonalize_2x2 needs a 2x2 matrix")
    (a, b), (c, dd) = M
    t = a + dd
    if det_int(M) != 1:
        raise LatticeError("matrix must have determinant 1")
    if t <= 2:
        raise LatticeError(f"trace {t} <= 2: eigenvalues are not distinct positive reals")
    disc = t * t - 4
    if isqrt(disc) ** 2 == disc:
        raise LatticeError("eigenvalues are rational; no quadratic field")
    k, d = _squarefree_split(disc)
    mu_p = QuadNumber(Fraction(t, 2), Fraction(k, 2), d)
    mu_m = mu_p.conjugate()
    zero = QuadNumber(0, 0, d)

    def left_vec(mu):
        if c != 0:
            return [QuadNumber(c, 0, d), mu - a]
        return [mu - dd, QuadNumber(b, 0, d)]

    P = [left_vec(mu_p), left_vec(mu_m)]
    D = [[mu_p, zero], [zero, mu_m]]
    if not verify_conjugation(P, M, D):
        raise ArithmeticError("internal: eigenvector check failed")
    return P, D


def trace_family_matrix(n: int) -> list:
    return [[1, 1], [n - 2, n - 1]]


SPLIT3_M = [[5, 1, 3], [3, 1, 2], [-4, -1, -2]]
SPLIT3_P = [["(-sqrt(5)-3)/2", "-sqrt(5)/5", "(-2*sqrt(5)-5)/5"],
               ["(sqrt(5)-3)/2", "sqrt(5)/5", "(2*sqrt(5)-5)/5"],
               ["3", "0", "3"]]
SPLIT3_D = [["(sqrt(5)+3)/2", "0", "0"], ["0", "(-sqrt(5)+3)/2", "0"], ["0", "0", "1"]]
PAIRED4_M = [[2, 3, -3, 0], [-10, 14, -12, 3], [-11, 12, -10, 3], [-4, 11, -10, 2]]


# --- group elements -------------------------------------------------------------

@dataclass(frozen=True)
class ComplexQuad:
    """x + i y with x, y in one real quadratic field."""

    re: QuadNumber
    im: QuadNumber

    def __add__(self, o: ComplexQuad) -> ComplexQuad:
        return ComplexQuad(self.re + o.re, self.im + o.im)

    def __neg__(self) -> ComplexQuad:
        return ComplexQuad(-self.re, -self.im)

    def scale(self, r: QuadNumber) -> ComplexQuad:
        return ComplexQuad(self.re * r, self.im * r)

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"i*({self.im})"
        return f"{self.re} + i*({self.im})"


@dataclass(frozen=True)
class GroupElement:
    """(w, z) in C x_rho C^n.

    w = w_re + i*tau*w_tau with integer w_re (so rho(w) = D^{w_re} stays exact);
    tau is kept formal.  z is a tuple of ComplexQuad.
    """

    w_re: int
    w_tau: Fraction
    z: tuple

    def translation(self) -> tuple:
        return tuple(str(x) for x in self.z)


class SemidirectGroup:
    """The group law (w', z') * (w, z) = (w' + w, rho(w') z + z') with rho(w) = D^{Re w}."""

    def __init__(self, diag: Sequence):
        d = matrix_discriminant([list(diag)])
        self.d = d
        self.diag = [_q(x, d) for x in diag]
        for x in self.diag:
            if x.norm() not in (1, -1):
                raise LatticeError(f"diagonal entry {x} is not a unit; rho(w) would leave the lattice ring")

    def element(self, w_re: int = 0, w_tau=0, z=None) -> GroupElement:
        if not isinstance(w_re, int):
            raise LatticeError("the real part of w must be an integer lattice step")
        n = len(self.diag)
        zero = QuadNumber(0, 0, self.d)
        if z is None:
            z = [ComplexQuad(zero, zero)] * n
        zz = []
        for x in z:
            if isinstance(x, ComplexQuad):
                zz.append(x)
            else:
                re, im = x
                zz.append(ComplexQuad(_q(re, self.d), _q(im, self.d)))
        if len(zz) != n:
            raise LatticeError(f"need {n} z-coordinates")
        return GroupElement(w_re, Fraction(w_tau), tuple(zz))

    def identity(self) -> GroupElement:
        return self.element()

    def rho(self, w_re: int) -> list:
        if not isinstance(w_re, int):
            raise LatticeError("rho is exact only at integer steps")
        return [x ** w_re for x in self.diag]

    def compose(self, g: GroupElement, h: GroupElement) -> GroupElement:
        """g * h."""
        r = self.rho(g.w_re)
        z = tuple(hz.scale(ri) + gz for ri, hz, gz in zip(r, h.z, g.z))
        return GroupElement(g.w_re + h.w_re, g.w_tau + h.w_tau, z)

    def inverse(self, g: GroupElement) -> GroupElement:
        r = self.rho(-g.w_re)
        z = tuple((-gz).scale(ri) for ri, gz in zip(r, g.z))
        return GroupElement(-g.w_re, -g.w_tau, z)

    def power(self, g: GroupElement, k: int) -> GroupElement:
        out = self.identity()
        base = g if k >= 0 else self.inverse(g)
        for _ in range(abs(k)):
            out = self.compose(out, base)
        return out

    def word(self, factors: Sequence[tuple]) -> GroupElement:
        """Product of (element, exponent) pairs, left to right."""
        out = self.identity()
        for g, k in factors:
            out = self.compose(out, self.power(g, k))
        return out


def splitting_generators() -> tuple[SemidirectGroup, dict]:
    P = quad_matrix(SPLIT3_P)
    D = quad_matrix(SPLIT3_D)
    grp = SemidirectGroup([D[i][i] for i in range(3)])
    zero = QuadNumber(0, 0, grp.d)
    gens = {"g0": grp.element(1, 0), "h0": grp.element(0, 1)}
    for j in range(3):
        col = [P[i][j] for i in range(3)]
        gens[f"g{j + 1}"] = grp.element(0, 0, [(x, zero) for x in col])
        gens[f"h{j + 1}"] = grp.element(0, 0, [(zero, x) for x in col])
    return grp, gens


# Stated words for the new generators (exponents of g1, g2, g3; same for h)
SPLITTING_WORDS = {
    "1": [("3", 1), ("2", 1), ("1", -1)],
    "2": [("2", 1)],
    "3": [("3", 3), ("2", -1), ("1", -2)],
}

# Printed translation parts (x-part for g', imaginary part for h')
SPLITTING_EXPECTED = {
    "1": ["(-sqrt(5)+5)/10", "(sqrt(5)+5)/10", "0"],
    "2": ["-sqrt(5)/5", "sqrt(5)/5", "0"],
    "3": ["0", "0", "3"],
}


def word_matrix() -> list[list[int]]:
    rows = []
    for key in ("1", "2", "3"):
        row = [0, 0, 0]
        for g, k in SPLITTING_WORDS[key]:
            row[int(g) - 1] += k
        rows.append(row)
    return rows


def verify_splitting_example() -> dict:
    """Recompute the primed generators of the split 3x3 lattice and compare with the printed values."""
    grp, gens = splitting_generators()
    d = grp.d
    checks = {}

    def record(name, elem, w_re, w_tau, expected_re, expected_im):
        exp_z = tuple(ComplexQuad(_q(r, d), _q(i, d)) for r, i in zip(expected_re, expected_im))
        ok = elem.w_re == w_re and elem.w_tau == w_tau and elem.z == exp_z
        checks[name] = {"w": _w_str(elem), "translation": [str(x) for x in elem.z], "matches": ok}

    record("g0_prime", gens["g0"], 1, 0, ["0"] * 3, ["0"] * 3)
    record("h0_prime", gens["h0"], 0, 1, ["0"] * 3, ["0"] * 3)
    for key, word in SPLITTING_WORDS.items():
        exp = SPLITTING_EXPECTED[key]
        zeros = ["0"] * 3
        g = grp.word([(gens[f"g{i}"], k) for i, k in word])
        h = grp.word([(gens[f"h{i}"], k) for i, k in word])
        record(f"g{key}_prime", g, 0, 0, exp, zeros)
        record(f"h{key}_prime", h, 0, 0, zeros, exp)
    W = word_matrix()
    det = det_int(W)
    return {
        "generators": checks,
        "all_match": all(c["matches"] for c in checks.values()),
        "word_matrix": W,
        "word_matrix_det": det,
        "unimodular": det in (1, -1),
    }


def _w_str(e: GroupElement) -> str:
    parts = []
    if e.w_re:
        parts.append(str(e.w_re))
    if e.w_tau:
        parts.append(f"{e.w_tau}*i*tau")
    return " + ".join(parts) or "0"


# --- lattice parameters for the product family ------------------------------------

@dataclass(frozen=True)
class LatticeSpec:
    kvec: tuple

    @property
    def mu(self) -> list[str]:
        return [f"2*{k}*pi/lam" for k in self.kvec]


def mu_weights(kvec: Sequence[int]) -> dict:
    """Certificate that each imaginary generator acts trivially.

    The exponent (-1)^{i-1} lam mu_i equals (-1)^{i-1} 2 pi k_i, an integer
    multiple of 2 pi; the residue stored is that multiple mod 1, i.e. 0.
    """
    kvec = tuple(kvec)
    if not kvec:
        raise LatticeError("empty k-vector")
    for i, k in enumerate(kvec, start=1):
        if not isinstance(k, int) or isinstance(k, bool):
            raise LatticeError(f"k_{i} must be an integer, got {k!r}")
        if k == 0:
            raise LatticeError(f"k_{i} = 0 gives mu_{i} = 0: the imaginary translations degenerate")
    multiples = [(-1) ** (i - 1) * k for i, k in enumerate(kvec, start=1)]
    residues = [Fraction(x) % 1 for x in multiples]
    return {
        "spec": LatticeSpec(kvec),
        "mu": LatticeSpec(kvec).mu,
        "exponent_over_2pi": multiples,
        "residues": residues,
        "trivial": not any(residues),
    }

"""Invariant symplectic forms, Lefschetz maps and the Hard Lefschetz test."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import I, Coeff, Form, Gaussian, Weight, mask_indices, real_frame, substitute
from .cohomology import class_coordinates
from .elimination import (determinant, inverse, is_positive_definite, matmul, rank,
                          transpose)
from .model import GeneralizedNakamuraModel, ManifoldModel, ModelError, ProductModel

HALF = Fraction(1, 2)
I_HALF = Gaussian(0, HALF)


class SymplecticError(ValueError):
    """Invalid symplectic coefficients."""


class NotClosedError(ArithmeticError):
    pass


class DegenerateError(ArithmeticError):
    def __init__(self, msg, kernel=None):
        super().__init__(msg)
        self.kernel = kernel or []


# --- partitions -----------------------------------------------------------

@dataclass(frozen=True)
class Partition:
    pairs: tuple
    leftover: int | None = None

    def as_dict(self) -> dict:
        return {"pairs": [list(p) for p in self.pairs], "leftover": self.leftover}


def _weights(lambdas) -> list[Weight]:
    return [w if isinstance(w, Weight) else Weight.parse(w) for w in lambdas]


def find_partition(lambdas) -> Partition | None:
    """Lexicographically least pairing with opposite weights (plus a zero leftover if n is odd).

    Indices are 1-based.  Backtracking always treats the smallest unused index
    first and tries its partners in increasing order before the leftover slot.
    """
    ws = _weights(lambdas)
    n = len(ws)
    used = [False] * n
    pairs: list = []

    def go(leftover):
        i = next((k for k in range(n) if not used[k]), None)
        if i is None:
            return leftover
        used[i] = True
        for j in range(i + 1, n):
            if not used[j] and (ws[i] + ws[j]).is_zero():
                used[j] = True
                pairs.append((i + 1, j + 1))
                res = go(leftover)
                if res is not False:
                    return res
                pairs.pop()
                used[j] = False
        if n % 2 == 1 and leftover is None and ws[i].is_zero():
            res = go(i + 1)
            if res is not False:
                return res
        used[i] = False
        return False

    res = go(None)
    if res is False:
        return None
    return Partition(tuple(pairs), res)


def all_partitions(n: int):
    """Every pairing of 1..n (plus one leftover when n is odd); brute-force helper."""
    def go(rest):
        if not rest:
            yield [], None
            return
        if len(rest) % 2 == 1:
            for k, x in enumerate(rest):
                others = rest[:k] + rest[k + 1:]
                for pairs, left in go_even(others):
                    yield pairs, x
            return
        yield from go_even(rest)

    def go_even(rest):
        if not rest:
            yield [], None
            return
        a = rest[0]
        for k in range(1, len(rest)):
            b = rest[k]
            for pairs, _ in go_even(rest[1:k] + rest[k + 1:]):
                yield [(a, b)] + pairs, None

    yield from go(list(range(1, n + 1)))


def brute_force_partition(lambdas) -> bool:
    ws = _weights(lambdas)
    for pairs, left in all_partitions(len(ws)):
        if all((ws[i - 1] + ws[j - 1]).is_zero() for i, j in pairs) and (
                left is None or ws[left - 1].is_zero()):
            return True
    return False


# --- coefficient specs ------------------------------------------------------

@dataclass
class SymplecticSpec:
    """Coefficients of the invariant symplectic family.

    Generalized Nakamura: C on phi0^phib0, (A, B) per pair, D on the leftover.
    Product: C_k per phi^k, B_i per psi pair.
    """

    C: object = 1
    D: object = 1
    A: object = None          # default A for every pair
    B: object = None          # default B for every pair
    pair_coeffs: dict = field(default_factory=dict)   # (i, j) -> (A, B)
    C_k: list | None = None
    B_i: list | None = None
    partition: Partition | None = None

    @classmethod
    def from_json(cls, data: dict | None) -> SymplecticSpec:
        data = data or {}
        known = {"C", "D", "A", "B", "pairs", "C_k", "B_i"}
        extra = set(data) - known
        if extra:
            raise SymplecticError(f"unknown omega coefficient(s): {sorted(extra)}")
        spec = cls()
        g = Gaussian.parse
        if "C" in data:
            spec.C = g(str(data["C"]))
        if "D" in data:
            spec.D = g(str(data["D"]))
        if "A" in data:
            spec.A = g(str(data["A"]))
        if "B" in data:
            spec.B = g(str(data["B"]))
        for key, val in (data.get("pairs") or {}).items():
            try:
                i, j = (int(x) for x in str(key).split(","))
            except ValueError:
                raise SymplecticError(f"pair key must look like '1,2', got {key!r}") from None
            spec.pair_coeffs[(i, j)] = (g(str(val.get("A", 0))), g(str(val.get("B", 0))))
        if "C_k" in data:
            spec.C_k = [g(str(x)) for x in data["C_k"]]
        if "B_i" in data:
            spec.B_i = [g(str(x)) for x in data["B_i"]]
        return spec

    def ab(self, pair) -> tuple:
        if pair in self.pair_coeffs:
            return self.pair_coeffs[pair]
        if self.A is None and self.B is None:
            return Gaussian(0), Gaussian(1)
        return Gaussian.coerce(self.A or 0), Gaussian.coerce(self.B or 0)


def _real(x, what: str) -> Gaussian:
    x = Gaussian.coerce(x)
    if x.im:
        raise SymplecticError(f"{what} must be real, got {x}")
    return x


def build_symplectic(model: ManifoldModel, spec: SymplecticSpec | None = None) -> Form:
    """The invariant 2-form of the family; closedness is asserted, non-degeneracy is not."""
    spec = spec or SymplecticSpec()
    if isinstance(model, GeneralizedNakamuraModel):
        w = _build_gn(model, spec)
    elif isinstance(model, ProductModel):
        w = _build_product(model, spec)
    else:
        raise ModelError("unsupported model")
    if model.d(w):
        raise NotClosedError("constructed form is not closed")
    return w


def _build_gn(model: GeneralizedNakamuraModel, spec: SymplecticSpec) -> Form:
    part = spec.partition or find_partition(model.lambdas)
    if part is None:
        raise SymplecticError("no pairing with opposite weights exists; no invariant symplectic form")
    for pair in spec.pair_coeffs:
        if pair not in part.pairs:
            raise SymplecticError(f"coefficients given for {pair}, which is not a pair of {part.pairs}")
    C = _real(spec.C, "C")
    w = model.mono(["phi0", "phib0"], I_HALF * C)
    for (i, j) in part.pairs:
        if not (((model.lambdas[i - 1] + model.lambdas[j - 1])).is_zero()):
            raise SymplecticError(f"pair ({i},{j}) does not have opposite weights")
        a, b = spec.ab((i, j))
        if not a and not b:
            raise SymplecticError(f"pair ({i},{j}): A and B are both zero")
        pi, pj, qi, qj = f"phi{i}", f"phi{j}", f"phib{i}", f"phib{j}"
        w = w + (model.mono([pi, pj], a) + model.mono([pi, qj], b)
                 + model.mono([qi, pj], b.conjugate()) + model.mono([qi, qj], a.conjugate())) * HALF
    if part.leftover is not None:
        D = _real(spec.D, "D")
        l = part.leftover
        w = w + model.mono([f"phi{l}", f"phib{l}"], I_HALF * D)
    return w


def _build_product(model: ProductModel, spec: SymplecticSpec) -> Form:
    n, m = model.n, model.m
    C_k = spec.C_k if spec.C_k is not None else [spec.C] * (2 * n)
    B_i = spec.B_i if spec.B_i is not None else [Gaussian(1)] * m
    if len(C_k) != 2 * n:
        raise SymplecticError(f"need {2 * n} C_k values, got {len(C_k)}")
    if len(B_i) != m:
        raise SymplecticError(f"need {m} B_i values, got {len(B_i)}")
    w = Form.zero(model.gens)
    for k, c in enumerate(C_k, start=1):
        c = _real(c, f"C_{k}")
        w = w + model.mono([f"phi{k}", f"phib{k}"], I_HALF * c)
    for i, b in enumerate(B_i):
        b = Gaussian.coerce(b)
        if not b:
            raise SymplecticError(f"B_{i} must be nonzero (psi pair {2 * i + 1},{2 * i + 2})")
        o, e = 2 * i + 1, 2 * i + 2
        w = w + (model.mono([f"psi{o}", f"psib{e}"], b)
                 + model.mono([f"psib{o}", f"psi{e}"], b.conjugate())) * HALF
    return w


def twisted_omega(model: ProductModel) -> Form:
    """The non-invariant form i/2 (phi^{1 1b} + phi^{2 2b}) + 1/2 (F psi^{12} + Fbar psib^{12})."""
    if not isinstance(model, ProductModel) or (model.n, model.m) != (1, 1):
        raise ModelError("this form lives on the (n, m) = (1, 1) product model")
    F = model.F_char()
    Fb = tuple(-x for x in F)
    return (model.mono(["phi1", "phib1"], I_HALF) + model.mono(["phi2", "phib2"], I_HALF)
            + model.mono(["psi1", "psi2"], HALF, F) + model.mono(["psib1", "psib2"], HALF, Fb))


# --- non-degeneracy -----------------------------------------------------------

def top_power_nonzero(model: ManifoldModel, w: Form) -> bool:
    return bool(w.power(model.complex_dim))


def antisymmetric_matrix(gens, w: Form) -> list:
    """Matrix W with w = sum_{a<b} W[a][b] e^a ^ e^b; characters evaluated at the base point."""
    n = len(gens)
    mat = [[Gaussian(0)] * n for _ in range(n)]
    for (_, mask), c in w.terms.items():
        if mask.bit_count() != 2:
            raise ValueError("not a 2-form")
        a, b = mask_indices(mask)
        v = c.constant()
        mat[a][b] = mat[a][b] + v
        mat[b][a] = mat[b][a] - v
    return mat


def kernel_directions(model: ManifoldModel, w: Form) -> list[str]:
    """Generators along which the form is degenerate (base-point kernel, dual labels)."""
    mat = antisymmetric_matrix(model.gens, w)
    n = len(mat)
    full = rank(mat)
    if full == n:
        return []
    out = []
    for i in range(n):
        if not any(mat[i]):
            out.append(model.gens.names[i])
    return out or [f"rank {full} < {n}"]


def check_symplectic(model: ManifoldModel, w: Form) -> None:
    if model.d(w):
        raise NotClosedError("form is not closed")
    if not top_power_nonzero(model, w):
        ker = kernel_directions(model, w)
        raise DegenerateError(f"form is degenerate: top power vanishes; kernel along {ker}", ker)


# --- Lefschetz ----------------------------------------------------------------

def lefschetz_map(model: ManifoldModel, w: Form, k: int, source_degree: int) -> list:
    """Matrix of [a] -> [w^k ^ a] from H^j to H^{j+2k} in the listed bases (columns = sources)."""
    if model.d(w):
        raise NotClosedError("form is not closed")
    src = model.admissible_basis(source_degree)
    tgt = model.admissible_basis(source_degree + 2 * k)
    wk = w.power(k)
    cols = [class_coordinates(model, wk.wedge(e.form(model.gens)), tgt) for e in src]
    return [[cols[c][r] for c in range(len(src))] for r in range(len(tgt))]


def lefschetz_matrix(model: ManifoldModel, w: Form, k: int) -> list:
    N = model.complex_dim
    if not 0 <= k <= N:
        raise ModelError(f"k must lie in 0..{N}")
    return lefschetz_map(model, w, k, N - k)


@dataclass
class HLCReport:
    per_k: dict
    holds: bool

    def as_dict(self) -> dict:
        return {"holds": self.holds,
                "per_k": {str(k): v for k, v in sorted(self.per_k.items())}}


def check_hlc(model: ManifoldModel, w: Form) -> HLCReport:
    check_symplectic(model, w)
    N = model.complex_dim
    per_k = {}
    for k in range(1, N + 1):
        mat = lefschetz_matrix(model, w, k)
        rows = len(mat)
        cols = len(model.admissible_basis(N - k))
        square = rows == cols
        det = determinant(mat) if square and rows else (Gaussian(1) if square else None)
        per_k[k] = {"source_dim": cols, "target_dim": rows, "square": square,
                    "det": str(det) if det is not None else None,
                    "bijective": bool(square and det)}
    return HLCReport(per_k, all(v["bijective"] for v in per_k.values()))


# --- existence and the brute-force oracle --------------------------------------

def invariant_symplectic_exists(model: GeneralizedNakamuraModel) -> dict:
    if not isinstance(model, GeneralizedNakamuraModel):
        raise ModelError("the partition criterion applies to generalized Nakamura models")
    part = find_partition(model.lambdas)
    return {"exists": part is not None, "witness": part}


def generic_top_power(model: ManifoldModel) -> Coeff:
    """Top-degree coefficient of the generic closed invariant 2-form sum t_b * b over the H^2 basis."""
    basis = [e for e in model.admissible_basis(2) if not e.char]
    w = Form.zero(model.gens)
    for idx, e in enumerate(basis):
        w = w + e.form(model.gens, Coeff.symbol(f"t{idx}"))
    top = w.power(model.complex_dim)
    if not top:
        return Coeff()
    ((_, c),) = top.terms.items()
    return c


def oracle_symplectic_exists(model: ManifoldModel) -> bool:
    return bool(generic_top_power(model))


# --- exactness witness ---------------------------------------------------------

def exactness_witness(model: ProductModel, coefficient: Coeff | None = None) -> dict:
    """theta = c * phi^1 phib^1 ... phi^{2n} psi^1 psib^1 ... psi^{2m-1} psib^{2m-1}.

    The default c is 1/((2m-1) lam); verified means d(theta) == phi.
    """
    if not isinstance(model, ProductModel):
        raise ModelError("the exactness witness lives on product models")
    n, m = model.n, model.m
    if coefficient is None:
        coefficient = Coeff.symbol("lam", -1, Fraction(1, 2 * m - 1))
    names = []
    for k in range(1, 2 * n + 1):
        names += [f"phi{k}", f"phib{k}"]
    psi = []
    for j in range(1, 2 * m):
        psi += [f"psi{j}", f"psib{j}"]
    phi = model.mono(names + psi)
    theta = model.mono(names[:-1] + psi, coefficient)
    dtheta = model.d(theta)
    ratio = None
    if dtheta and len(dtheta.terms) == 1 and set(dtheta.terms) == set(phi.terms):
        (key,) = phi.terms
        ratio = dtheta.terms[key].ratio(phi.terms[key])
    return {"theta": theta, "phi": phi, "dtheta": dtheta, "verified": dtheta == phi,
            "ratio": ratio, "coefficient": coefficient}


# --- compatibility -------------------------------------------------------------

def _coframe_matrix(coframe: Sequence[Form], real_gens, images) -> list:
    rows = []
    for f in coframe:
        g = substitute(f, images, real_gens) if images is not None else f
        row = [Gaussian(0)] * len(real_gens)
        for (ch, mask), c in g.terms.items():
            if mask.bit_count() != 1:
                raise ValueError("coframe entries must be 1-forms")
            row[mask_indices(mask)[0]] = c.constant()
        rows.append(row)
    return rows


def complex_structure_matrix(coframe: Sequence[Form]) -> tuple:
    """Real frame, and the real matrix J with J^*(gamma) = i gamma on the (1,0)-coframe."""
    gens = coframe[0].gens
    real_gens, images = real_frame(gens)
    same = real_gens is gens
    C = _coframe_matrix(coframe, real_gens, None if same else images)
    n2 = len(real_gens)
    if 2 * len(C) != n2:
        raise ValueError("a (1,0)-coframe needs half as many forms as real directions")
    full = C + [[x.conjugate() for x in row] for row in C]
    diag = [[Gaussian(0)] * n2 for _ in range(n2)]
    for i in range(n2):
        diag[i][i] = I if i < len(C) else -I
    try:
        inv = inverse(full)
    except ZeroDivisionError:
        raise ValueError("coframe and its conjugate are not independent") from None
    J = matmul(inv, matmul(diag, full))
    if any(x.im for row in J for x in row):
        raise ValueError("induced J is not real")
    return real_gens, images if not same else None, J


def check_compatibility(model_or_gens, w: Form, coframe: Sequence[Form]) -> dict:
    """tamed: w(u, Ju) > 0; compatible: J-invariant and w(., J.) positive definite."""
    real_gens, images, J = complex_structure_matrix(coframe)
    wr = substitute(w, images, real_gens) if images is not None else w
    om = antisymmetric_matrix(real_gens, wr)
    if any(x.im for row in om for x in row):
        raise ValueError("form is not real")
    invariant = matmul(transpose(J), matmul(om, J)) == om
    g = matmul(om, J)
    sym = [[(g[i][j] + g[j][i]) * HALF for j in range(len(g))] for i in range(len(g))]
    tamed = is_positive_definite(sym)
    symmetric = all(g[i][j] == g[j][i] for i in range(len(g)) for j in range(len(g)))
    compatible = invariant and symmetric and tamed
    return {"tamed": tamed, "compatible": compatible, "J_invariant": invariant}

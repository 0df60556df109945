"""Solvmanifold models as differential graded algebras with character data."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from fractions import Fraction
from typing import Sequence

from .algebra import (
    Coeff,
    Form,
    Gaussian,
    GeneratorSet,
    Weight,
    char_add,
    mask_indices,
    normalize_char,
    real_frame,
    substitute,
)

GN = "generalized_nakamura"
PRODUCT = "product"


class ModelError(ValueError):
    """Invalid model parameters or an operation unsupported for a model kind."""


class StructureEquations:
    """Exterior d determined by d of each generator, extended by Leibniz.

    ``linear[i]``, when given for every generator, is the 1-form l_i with
    d(g_i) = l_i ^ g_i.  Then d(monomial) = (sum of l_i) ^ monomial, which is
    the fast path used by both manifold families.  ``char_dlog`` maps a
    character tuple to the closed 1-form d(log chi).
    """

    def __init__(self, gens: GeneratorSet, dgen: Sequence[Form],
                 linear: Sequence[Form] | None = None, char_dlog=None):
        if len(dgen) != len(gens):
            raise ModelError("need exactly one structure equation per generator")
        for f in dgen:
            if f and f.degrees() != {2}:
                raise ModelError("d of a generator must be a 2-form")
        self.gens = gens
        self.dgen = tuple(dgen)
        self.linear = tuple(linear) if linear is not None else None
        self._char_dlog = char_dlog
        self._cache: dict[int, Form] = {}
        self._zero = Form.zero(gens)

    def d_monomial(self, mask: int) -> Form:
        hit = self._cache.get(mask)
        if hit is not None:
            return hit
        gens = self.gens
        if self.linear is not None:
            total = self._zero
            for i in mask_indices(mask):
                total = total + self.linear[i]
            out = total.wedge(Form.from_mask(gens, mask)) if total else self._zero
        else:
            out = self._zero
            idx = mask_indices(mask)
            for pos, i in enumerate(idx):
                if not self.dgen[i]:
                    continue
                before = sum(1 << j for j in idx[:pos])
                after = sum(1 << j for j in idx[pos + 1:])
                term = Form.from_mask(gens, before).wedge(self.dgen[i]).wedge(Form.from_mask(gens, after))
                out = out + (term if pos % 2 == 0 else -term)
        self._cache[mask] = out
        return out

    def char_dlog(self, char: tuple) -> Form:
        if not char:
            return self._zero
        if self._char_dlog is None:
            raise ModelError("this complex carries no characters")
        return self._char_dlog(char)

    def d(self, a: Form) -> Form:
        if a.gens != self.gens:
            raise ModelError("form lives over a different generator set")
        out: dict = {}
        for (char, mask), c in a.terms.items():
            t = self.d_monomial(mask)
            if char:
                t = t + self.char_dlog(char).wedge(Form.from_mask(self.gens, mask))
            for (c2, m2), v in t.terms.items():
                key = (char_add(char, c2), m2)
                w = v * c
                prev = out.get(key)
                if prev is not None:
                    w = prev + w
                if w:
                    out[key] = w
                elif prev is not None:
                    del out[key]
        return Form(self.gens, out)

    def delbar(self, a: Form) -> Form:
        if not a:
            return a
        bds = a.bidegrees()
        if len(bds) != 1:
            raise ModelError(f"form is not of pure bidegree: {sorted(bds)}")
        p, q = bds.pop()
        return self.d(a).component(p, q + 1)

    def partial(self, a: Form) -> Form:
        if not a:
            return a
        bds = a.bidegrees()
        if len(bds) != 1:
            raise ModelError(f"form is not of pure bidegree: {sorted(bds)}")
        p, q = bds.pop()
        return self.d(a).component(p + 1, q)

    def check_d_squared_on_generators(self) -> None:
        for i, name in enumerate(self.gens.names):
            dd = self.d(self.dgen[i]) if self.dgen[i] else self._zero
            if dd:
                raise ModelError(f"d^2 != 0 on generator {name}: {dd}")


@dataclass(frozen=True)
class WeightedMonomial:
    """A monomial times a character; the character () is the identity."""

    char: tuple
    mask: int

    def form(self, gens: GeneratorSet, coeff=1) -> Form:
        return Form.from_mask(gens, self.mask, coeff, self.char)


class ManifoldModel(StructureEquations):
    """Common fields of the two families.  Construct via the factory functions."""

    kind: str
    complex_dim: int
    symbols: tuple

    def __init__(self, kind, gens, dgen, linear, char_dlog, complex_dim, symbols):
        super().__init__(gens, dgen, linear, char_dlog)
        self.kind = kind
        self.complex_dim = complex_dim
        self.symbols = tuple(symbols)

    @property
    def real_dim(self) -> int:
        return 2 * self.complex_dim

    def gen(self, name: str, coeff=1) -> Form:
        return Form.gen(self.gens, name, coeff)

    def mono(self, names: Sequence[str], coeff=1, char=()) -> Form:
        return Form.monomial(self.gens, names, coeff, char)

    def one(self) -> Form:
        return Form.scalar(self.gens, 1)

    def check_degree(self, k: int) -> None:
        if not isinstance(k, int) or k < 0 or k > self.real_dim:
            raise ModelError(f"degree {k} out of range 0..{self.real_dim}")

    def is_trivial(self, char: tuple) -> bool:
        return not char

    def sector_key(self, char: tuple, mask: int):
        """Key of the d-invariant sector containing char * monomial."""
        raise NotImplementedError

    def zero_sector(self, char: tuple, mask: int) -> bool:
        raise NotImplementedError

    def admissible_basis(self, k: int) -> list[WeightedMonomial]:
        raise NotImplementedError

    def candidate_chars(self) -> list[tuple]:
        return [()]

    def describe(self) -> dict:
        raise NotImplementedError


class GeneralizedNakamuraModel(ManifoldModel):
    """Quotient of C x_rho C^n with weights lambda_1..lambda_n (sum zero)."""

    def __init__(self, lambdas: Sequence[Weight]):
        lambdas = [w if isinstance(w, Weight) else Weight.parse(w) for w in lambdas]
        if not lambdas:
            raise ModelError("need at least one weight")
        s = len(lambdas[0])
        if s == 0 or any(len(w) != s for w in lambdas):
            raise ModelError("all weights must live in the same nonzero-dimensional weight space")
        total = Weight.zero(s)
        for w in lambdas:
            total = total + w
        if not total.is_zero():
            raise ModelError(f"weights must sum to zero, got sum {list(map(str, total.coords))}")
        n = len(lambdas)
        symbols = tuple(f"lam{t + 1}" for t in range(s))
        gens = GeneratorSet.holomorphic([f"phi{i}" for i in range(n + 1)])
        base = Form.gen(gens, "phi0") + Form.gen(gens, "phib0")
        linear = [Form.zero(gens)] * (2 * n + 2)
        for i, w in enumerate(lambdas, start=1):
            factor = base * (w.to_coeff(symbols) * Fraction(-1, 2))
            linear[i] = factor
            linear[i + n + 1] = factor
        dgen = [linear[i].wedge(Form.from_mask(gens, 1 << i)) for i in range(2 * n + 2)]
        super().__init__(GN, gens, dgen, linear, None, n + 1, symbols)
        self.lambdas = tuple(lambdas)
        self.n = n
        self.weight_dim = s
        # weight attached to each generator index (phi0 and its conjugate carry zero)
        zero = Weight.zero(s)
        self.gen_weight = tuple([zero] + list(lambdas) + [zero] + list(lambdas))
        self.check_d_squared_on_generators()

    def c_weight(self, mask: int) -> Weight:
        """Multiset sum of the weights of the indices in the monomial."""
        total = Weight.zero(self.weight_dim)
        for i in mask_indices(mask):
            total = total + self.gen_weight[i]
        return total

    def sector_key(self, char, mask):
        return self.c_weight(mask).coords

    def zero_sector(self, char, mask):
        return not char and self.c_weight(mask).is_zero()

    def admissible_basis(self, k: int) -> list[WeightedMonomial]:
        """Monomials with vanishing c-weight, optionally times phi0 and/or phib0."""
        self.check_degree(k)
        n = self.n
        z0, zb0 = 1 << 0, 1 << (n + 1)
        out = []
        for mask in self.gens.masks_of_degree(k):
            rest = mask & ~(z0 | zb0)
            if self.c_weight(rest).is_zero():
                out.append(WeightedMonomial((), mask))
        return out

    def describe(self) -> dict:
        return {"kind": GN, "weights": [[str(c) for c in w] for w in self.lambdas]}


class ProductModel(ManifoldModel):
    """Quotient of C^{2n} x_rho C^{2m} with the single eigenvalue logarithm lam."""

    def __init__(self, n: int, m: int, kvec: Sequence[int] | None = None):
        if not (isinstance(n, int) and isinstance(m, int)) or n < 1 or m < 1:
            raise ModelError(f"n and m must be positive integers, got ({n!r}, {m!r})")
        if kvec is None:
            kvec = [1] * (2 * n)
        kvec = tuple(kvec)
        if len(kvec) != 2 * n or any(not isinstance(k, int) or k == 0 for k in kvec):
            raise ModelError(f"kvec must hold {2 * n} nonzero integers, got {list(kvec)}")
        phis = [f"phi{i}" for i in range(1, 2 * n + 1)]
        psis = [f"psi{j}" for j in range(1, 2 * m + 1)]
        gens = GeneratorSet.holomorphic(phis + psis)
        lam = Coeff.symbol("lam")
        self.n, self.m, self.kvec = n, m, kvec
        self._gens_tmp = gens
        eta = self.eta_form(gens)
        eta_bar = eta.conjugate()
        half = 2 * n + 2 * m
        linear = [Form.zero(gens)] * (2 * half)
        for j in range(1, 2 * m + 1):
            i = gens.index(f"psi{j}")
            ib = gens.conj[i]
            if j % 2 == 1:
                linear[i] = eta * (-lam)
                linear[ib] = eta_bar * (-lam)
            else:
                linear[i] = eta_bar * lam
                linear[ib] = eta * lam
        dgen = [linear[i].wedge(Form.from_mask(gens, 1 << i)) for i in range(2 * half)]
        super().__init__(PRODUCT, gens, dgen, linear, self._dlog, half, ("lam",))
        # character making char * generator closed: dlog(char) = -linear
        r = 2 * n
        canon = []
        for i in range(2 * half):
            canon.append(self._char_of_linear(linear[i], r))
        self.gen_char = tuple(canon)
        self._phi_forms = [Form.gen(gens, p) for p in phis]
        self._phib_forms = [f.conjugate() for f in self._phi_forms]
        self.psi_mask = sum(1 << gens.index(p) for p in psis) | sum(
            1 << gens.conj[gens.index(p)] for p in psis)
        self.check_d_squared_on_generators()

    @staticmethod
    def eta_form(gens: GeneratorSet) -> Form:
        """phi1 + phib2 + phi3 + phib4 + ..."""
        out = Form.zero(gens)
        i = 1
        while f"phi{i}" in gens._index:
            name = f"phi{i}" if i % 2 == 1 else f"phib{i}"
            out = out + Form.gen(gens, name)
            i += 1
        return out

    def _char_of_linear(self, lin: Form, r: int) -> tuple:
        if not lin:
            return ()
        a = [Fraction(0)] * r
        b = [Fraction(0)] * r
        for (_, mask), c in lin.terms.items():
            (i,) = mask_indices(mask)
            # lin = -lam * (char 1-form), so the exponent is -c/lam
            val = -(c / Coeff.symbol("lam")).constant()
            if val.im:
                raise ModelError("non-real character exponent")
            name = self.gens.names[i]
            idx = int(name.lstrip("phib")) - 1
            if name.startswith("phib"):
                b[idx] = val.re
            else:
                a[idx] = val.re
        return normalize_char(a + b)

    def _dlog(self, char: tuple) -> Form:
        r = 2 * self.n
        out = Form.zero(self.gens)
        lam = Coeff.symbol("lam")
        for i in range(r):
            if char[i]:
                out = out + self._phi_forms[i] * (lam * char[i])
            if char[r + i]:
                out = out + self._phib_forms[i] * (lam * char[r + i])
        return out

    def is_trivial(self, char: tuple) -> bool:
        """a_i + b_i = 0 for real unit steps; k_i (a_i - b_i) integral for imaginary steps."""
        if not char:
            return True
        r = 2 * self.n
        for i in range(r):
            a, b = char[i], char[r + i]
            if a + b != 0:
                return False
            if (self.kvec[i] * (a - b)).denominator != 1:
                return False
        return True

    def psi_char(self, mask: int) -> tuple:
        """Product of the generator characters over the psi/psib part of a monomial."""
        out = ()
        for i in mask_indices(mask & self.psi_mask):
            out = char_add(out, self.gen_char[i])
        return out

    def sector_key(self, char, mask):
        return (char, mask & self.psi_mask)

    def zero_sector(self, char, mask):
        return char == self.psi_char(mask)

    def candidate_chars(self) -> list[tuple]:
        """Distinct lattice-trivial characters among the psi-part characters."""
        seen = {}
        psi_idx = mask_indices(self.psi_mask)
        for k in range(len(psi_idx) + 1):
            for combo in combinations(psi_idx, k):
                ch = ()
                for i in combo:
                    ch = char_add(ch, self.gen_char[i])
                if self.is_trivial(ch) and ch not in seen:
                    seen[ch] = None
        return sorted(seen, key=lambda c: (len(c) > 0, c))

    def admissible_basis(self, k: int) -> list[WeightedMonomial]:
        self.check_degree(k)
        out = []
        for mask in self.gens.masks_of_degree(k):
            ch = self.psi_char(mask)
            if self.is_trivial(ch):
                out.append(WeightedMonomial(ch, mask))
        return out

    # Dolbeault characters beta_j (psi^j) and gamma_l (psib^l)
    def _beta(self, j: int) -> tuple:
        r = 2 * self.n
        a = [Fraction(0)] * r
        b = [Fraction(0)] * r
        for i in range(1, r + 1):
            if j % 2 == 1 and i % 2 == 0:
                a[i - 1], b[i - 1] = Fraction(-1), Fraction(1)
            elif j % 2 == 0 and i % 2 == 1:
                a[i - 1], b[i - 1] = Fraction(1), Fraction(-1)
        return normalize_char(a + b)

    def _gamma(self, l: int) -> tuple:
        r = 2 * self.n
        a = [Fraction(0)] * r
        b = [Fraction(0)] * r
        for i in range(1, r + 1):
            if l % 2 == 1 and i % 2 == 1:
                a[i - 1], b[i - 1] = Fraction(-1), Fraction(1)
            elif l % 2 == 0 and i % 2 == 0:
                a[i - 1], b[i - 1] = Fraction(1), Fraction(-1)
        return normalize_char(a + b)

    def dolbeault_char(self, mask: int) -> tuple:
        out = ()
        for i in mask_indices(mask):
            name = self.gens.names[i]
            if name.startswith("psib"):
                out = char_add(out, self._gamma(int(name[4:])))
            elif name.startswith("psi"):
                out = char_add(out, self._beta(int(name[3:])))
        return out

    def dolbeault_basis(self, p: int, q: int) -> list[WeightedMonomial]:
        N = self.complex_dim
        if not (0 <= p <= N and 0 <= q <= N):
            raise ModelError(f"bidegree ({p},{q}) out of range 0..{N}")
        out = []
        for mask in self.gens.masks_of_degree(p + q):
            if self.gens.bidegree(mask) == (p, q):
                out.append(WeightedMonomial(self.dolbeault_char(mask), mask))
        return out

    def F_char(self) -> tuple:
        """Character of psi1 ^ psi2: e^{lam(w1 - wb1 - w2 + wb2 ...)}."""
        return char_add(self.gen_char[self.gens.index("psi1")], self.gen_char[self.gens.index("psi2")])

    def describe(self) -> dict:
        return {"kind": PRODUCT, "n": self.n, "m": self.m, "kvec": list(self.kvec)}


def generalized_nakamura(lambdas) -> GeneralizedNakamuraModel:
    return GeneralizedNakamuraModel([w if isinstance(w, Weight) else Weight.parse(w) for w in lambdas])


def product_model(n: int, m: int, kvec=None) -> ProductModel:
    return ProductModel(n, m, kvec)


def d(model: StructureEquations, a: Form) -> Form:
    return model.d(a)


def delbar(model: StructureEquations, a: Form) -> Form:
    return model.delbar(a)


def admissible_basis(model: ManifoldModel, k: int) -> list[WeightedMonomial]:
    return model.admissible_basis(k)


def dolbeault_basis(model: ManifoldModel, p: int, q: int) -> list[WeightedMonomial]:
    if not isinstance(model, ProductModel):
        raise ModelError("Dolbeault bases are only available for product models")
    return model.dolbeault_basis(p, q)


# --- Lie algebra structure ------------------------------------------------

def structure_constants(model: StructureEquations):
    """Real basis names and brackets [X_b, X_c] = sum_a c^a_bc X_a as {(b, c): {a: Coeff}}.

    Uses d(e^a)(X_b, X_c) = -e^a([X_b, X_c]).
    """
    real, images = real_frame(model.gens)
    gens = model.gens
    dreal = []
    if real is gens:
        dreal = list(model.dgen)
    else:
        holo = [i for i, k in enumerate(gens.kinds) if k == "10"]
        for i in holo:
            dg, dgb = model.dgen[i], model.dgen[gens.conj[i]]
            dreal.append(substitute((dg + dgb) * Fraction(1, 2), images, real))
            dreal.append(substitute((dg - dgb) * Gaussian(0, Fraction(-1, 2)), images, real))
    brackets: dict = {}
    for a, f in enumerate(dreal):
        for (_, mask), c in f.terms.items():
            b, cc = mask_indices(mask)
            brackets.setdefault((b, cc), {})[a] = -c
    return real.names, brackets


def _bracket_span(brackets, left: set, right: set) -> set:
    out = set()
    for (b, c), vec in brackets.items():
        if (b in left and c in right) or (c in left and b in right):
            if len(vec) > 1:
                raise ModelError("bracket output is not a single basis vector; "
                                 "coordinate-subspace series unsupported")
            out |= set(vec)
    return out


def check_solvability(model: StructureEquations) -> dict:
    """Derived and lower central series dimensions of the real Lie algebra."""
    names, brackets = structure_constants(model)
    full = set(range(len(names)))
    derived = [len(full)]
    cur = full
    while cur:
        nxt = _bracket_span(brackets, cur, cur)
        if nxt == cur:
            break
        derived.append(len(nxt))
        cur = nxt
    lower = [len(full)]
    cur = full
    while cur:
        nxt = _bracket_span(brackets, full, cur)
        if nxt == cur:
            break
        lower.append(len(nxt))
        cur = nxt
    solvable = derived[-1] == 0
    nilpotent = lower[-1] == 0
    return {
        "dimension": len(full),
        "derived_series": derived,
        "lower_central_series": lower,
        "abelian": len(derived) == 1 or derived[1] == 0,
        "solvable": solvable,
        "solvable_steps": len(derived) - 1 if solvable else None,
        "nilpotent": nilpotent,
    }

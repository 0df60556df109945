"""Almost-complex coframes on the two families and the top-form identities behind their Kodaira dimension.

Everything here is formal: lam1, lam2 (or lam) stay symbols and all checks
are exact identities between forms.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import I, Coeff, Form, Gaussian, GeneratorSet, parse_rational, substitute
from .elimination import inverse, rank
from .model import ModelError, ProductModel, StructureEquations, product_model

HALF = Fraction(1, 2)


class CoframeError(ValueError):
    pass


# --- real coframe of the complex-dimension-5 Nakamura manifold ------------------

N5_NAMES = ["E0", "F0", "E1", "F1", "E2", "F2", "E3", "F3", "E4", "F4"]


def n5_real_coframe() -> StructureEquations:
    """dE^i = -l E^0 ^ E^i and dF^i = +l E^0 ^ F^i with l = lam1 (i = 1, 2) or lam2 (i = 3, 4)."""
    gens = GeneratorSet.real(N5_NAMES)
    e0 = Form.gen(gens, "E0")
    dgen = [Form.zero(gens), Form.zero(gens)]
    linear = [Form.zero(gens), Form.zero(gens)]
    for i in range(1, 5):
        lam = Coeff.symbol("lam1" if i <= 2 else "lam2")
        for kind, sgn in (("E", -1), ("F", 1)):
            lin = e0 * (lam * sgn)
            linear.append(lin)
            dgen.append(lin.wedge(Form.gen(gens, f"{kind}{i}")))
    eqs = StructureEquations(gens, dgen, linear)
    eqs.check_d_squared_on_generators()
    return eqs


# --- generic almost-complex coframe ------------------------------------------------

class AlmostComplexCoframe:
    """(1,0)-forms given as 1-forms over a base algebra with known d.

    ``images[i]`` is the i-th (1,0) generator over the base generators.  The
    conjugates are appended automatically; ``from_base`` inverts the change of
    coframe so d can be re-expressed and split by bidegree.
    """

    def __init__(self, base: StructureEquations, names: Sequence[str], images: Sequence[Form]):
        self.base = base
        self.gens = GeneratorSet.holomorphic(list(names))
        bgens = base.gens
        if len(images) != len(names):
            raise CoframeError("one image per (1,0) generator")
        if 2 * len(names) != len(bgens):
            raise CoframeError(f"{len(names)} (1,0)-forms cannot span {len(bgens)} real directions")
        conj_images = [self._conj_over_base(f) for f in images]
        full = [None] * len(self.gens)
        for i, name in enumerate(names):
            j = self.gens.index(name)
            full[j] = images[i]
            full[self.gens.conj[j]] = conj_images[i]
        self.to_images = full
        mat = [self._row(f) for f in full]
        self.matrix = mat
        if rank(mat) != len(mat):
            raise CoframeError("coframe and its conjugate are linearly dependent")
        inv = inverse(mat)
        # base generator b = sum_k inv[b][k] * new generator k
        self.from_images = []
        for b in range(len(bgens)):
            f = Form.zero(self.gens)
            for k in range(len(self.gens)):
                if inv[b][k]:
                    f = f + Form.from_mask(self.gens, 1 << k, inv[b][k])
            self.from_images.append(f)

    def _conj_over_base(self, f: Form) -> Form:
        bg = self.base.gens
        if all(k == "real" for k in bg.kinds):
            return Form(bg, {k: v.conjugate() for k, v in f.terms.items()})
        return f.conjugate()

    def _row(self, f: Form) -> list:
        row = [Gaussian(0)] * len(self.base.gens)
        for (ch, mask), c in f.terms.items():
            if ch or mask.bit_count() != 1:
                raise CoframeError("coframe entries must be untwisted 1-forms")
            row[mask.bit_length() - 1] = c.constant()
        return row

    def rank(self) -> int:
        return rank(self.matrix)

    def to_base(self, f: Form) -> Form:
        return substitute(f, self.to_images, self.base.gens)

    def from_base(self, f: Form) -> Form:
        return substitute(f, self.from_images, self.gens)

    def gen(self, name: str, coeff=1) -> Form:
        return Form.gen(self.gens, name, coeff)

    def mono(self, names, coeff=1) -> Form:
        return Form.monomial(self.gens, names, coeff)

    def d(self, f: Form) -> Form:
        return self.from_base(self.base.d(self.to_base(f)))

    def delbar(self, f: Form) -> Form:
        bds = f.bidegrees()
        if len(bds) != 1:
            raise ModelError(f"form is not of pure bidegree: {sorted(bds)}")
        p, q = bds.pop()
        return self.d(f).component(p, q + 1)

    def holomorphic_names(self) -> list[str]:
        return [n for n, k in zip(self.gens.names, self.gens.kinds) if k == "10"]


def integrability_check(coframe: AlmostComplexCoframe) -> bool:
    """No (0,2)-component in d of any (1,0) generator."""
    for name in coframe.holomorphic_names():
        if coframe.d(coframe.gen(name)).component(0, 2):
            return False
    return True


def nijenhuis_witnesses(coframe: AlmostComplexCoframe) -> dict:
    out = {}
    for name in coframe.holomorphic_names():
        part = coframe.d(coframe.gen(name)).component(0, 2)
        if part:
            out[name] = str(part)
    return out


# --- the deformation J_t --------------------------------------------------------

@dataclass(frozen=True)
class DeformationParams:
    t1: Fraction
    t2: Fraction

    def __init__(self, t1, t2):
        t1, t2 = parse_rational(t1), parse_rational(t2)
        if t1 * t1 + t2 * t2 == 1:
            raise CoframeError(f"t = ({t1}, {t2}) lies on the unit circle")
        object.__setattr__(self, "t1", t1)
        object.__setattr__(self, "t2", t2)

    @property
    def _den(self) -> Fraction:
        return self.t1 * self.t1 + self.t2 * self.t2 - 1

    @property
    def alpha(self) -> Fraction:
        return 2 * self.t2 / self._den

    @property
    def beta(self) -> Fraction:
        return ((1 - self.t1) ** 2 + self.t2 ** 2) / self._den

    @property
    def gamma(self) -> Fraction:
        """Solves -alpha^2 - gamma beta = 1."""
        return -(1 + self.alpha ** 2) / self.beta

    def block(self) -> list:
        return [[self.alpha, self.beta], [self.gamma, -self.alpha]]

    def block_squares_to_minus_identity(self) -> bool:
        (a, b), (c, d) = self.block()
        return [[a * a + b * c, a * b + b * d], [c * a + d * c, c * b + d * d]] == [[-1, 0], [0, -1]]


N5_T_NAMES = ["phit0", "phit1", "phit2", "phit3", "phit4"]


def n5_deformed_frame(t) -> tuple[AlmostComplexCoframe, DeformationParams]:
    p = t if isinstance(t, DeformationParams) else DeformationParams(*t)
    base = n5_real_coframe()
    g = base.gens
    imgs = []
    for i in range(4):
        imgs.append(Form.gen(g, f"E{i}") + Form.gen(g, f"F{i}", I))
    a, b = p.alpha, p.beta
    imgs.append(Form.gen(g, "E4", Gaussian(1, -a)) + Form.gen(g, "F4", Gaussian(0, -b)))
    return AlmostComplexCoframe(base, N5_T_NAMES, imgs), p


def n5_expected_equations(cf: AlmostComplexCoframe, p: DeformationParams) -> dict:
    """The five printed structure equations, built in the deformed coframe."""
    lam1, lam2 = Coeff.symbol("lam1"), Coeff.symbol("lam2")
    s = cf.gen("phit0") + cf.gen("phitb0")
    out = {"phit0": Form.zero(cf.gens)}
    for i, lam in ((1, lam1), (2, lam1), (3, lam2)):
        out[f"phit{i}"] = (cf.mono(["phit0", f"phitb{i}"]) + cf.mono(["phitb0", f"phitb{i}"])) * (lam * -HALF)
    a = p.alpha
    bracket = cf.gen("phitb4", Gaussian(1, -a)) + cf.gen("phit4", Gaussian(0, -a))
    out["phit4"] = s.wedge(bracket) * (lam2 * -HALF)
    return out


def n5_deformed_coframe(t) -> dict:
    """Build J_t's coframe and compare d of each generator with the printed equations."""
    cf, p = n5_deformed_frame(t)
    expected = n5_expected_equations(cf, p)
    eqs = {}
    for name in N5_T_NAMES:
        got = cf.d(cf.gen(name))
        eqs[name] = {"computed": str(got), "matches": got == expected[name]}
    return {"coframe": cf, "params": p, "alpha": p.alpha, "beta": p.beta, "gamma": p.gamma,
            "equations": eqs, "all_match": all(e["matches"] for e in eqs.values()),
            "independent": cf.rank() == len(cf.gens),
            "block_squares_to_minus_identity": p.block_squares_to_minus_identity()}


def delbar_top_form_n5(t, scale=1) -> dict:
    cf, p = n5_deformed_frame(t)
    top = cf.mono(N5_T_NAMES, scale)
    got = cf.delbar(top)
    coeff = Coeff.symbol("lam2", 1, Gaussian(0, p.alpha / 2)) * Coeff.coerce(scale)
    expected = cf.mono(["phitb0"] + N5_T_NAMES, coeff)
    return {"delbar": got, "expected": expected, "matches": got == expected,
            "alpha": p.alpha, "coefficient": str(coeff)}


def n5_holomorphic_coframe() -> AlmostComplexCoframe:
    """The complex coframe of the manifold in the real frame: E^1 + iE^2, F^1 + iF^2, ..."""
    base = n5_real_coframe()
    g = base.gens
    pairs = [("E0", "F0"), ("E1", "E2"), ("F1", "F2"), ("E3", "E4"), ("F3", "F4")]
    imgs = [Form.gen(g, x) + Form.gen(g, y, I) for x, y in pairs]
    return AlmostComplexCoframe(base, [f"phi{i}" for i in range(5)], imgs)


def n5_omega_tilde() -> Form:
    g = n5_real_coframe().gens
    w = Form.zero(g)
    for j in range(5):
        w = w + Form.monomial(g, [f"E{j}", f"F{j}"])
    return w


def n5_omega_tilde_complex(cf: AlmostComplexCoframe) -> Form:
    """i/2 phi^{0 0b} + 1/2 (phi^{1 2b} + phi^{1b 2} + phi^{3 4b} + phi^{3b 4})."""
    m = cf.mono
    return (m(["phi0", "phib0"], Gaussian(0, HALF))
            + (m(["phi1", "phib2"]) + m(["phib1", "phi2"]) + m(["phi3", "phib4"]) + m(["phib3", "phi4"])) * HALF)


# --- the structure 𝒥 on the product family ----------------------------------------

def jstructure_frame(n: int, m: int) -> tuple[AlmostComplexCoframe, ProductModel]:
    model = product_model(n, m)
    g = model.gens
    names, imgs = [], []
    for i in range(1, 2 * n + 1):
        names.append(f"alpha{i}")
        imgs.append(Form.gen(g, f"phi{i}"))
    for j in range(m):
        o, e = 2 * j + 1, 2 * j + 2
        names.append(f"beta{o}")
        imgs.append(Form.gen(g, f"psi{o}") + Form.gen(g, f"psi{e}", I))
        names.append(f"beta{e}")
        imgs.append(Form.gen(g, f"psib{o}") + Form.gen(g, f"psib{e}", I))
    return AlmostComplexCoframe(model, names, imgs), model


def _eta(cf: AlmostComplexCoframe, n: int) -> Form:
    out = Form.zero(cf.gens)
    for i in range(1, 2 * n + 1):
        out = out + cf.gen(f"alpha{i}" if i % 2 else f"alphab{i}")
    return out


def jstructure_expected(cf: AlmostComplexCoframe, n: int, m: int, scale=1) -> dict:
    lam = Coeff.symbol("lam", 1, HALF)
    eta = _eta(cf, n)
    etab = eta.conjugate()
    out = {}
    for j in range(m):
        o, e = 2 * j + 1, 2 * j + 2
        bo, be = cf.gen(f"beta{o}", scale), cf.gen(f"beta{e}", scale)
        bbo, bbe = cf.gen(f"betab{o}", Gaussian.coerce(scale).conjugate()), cf.gen(
            f"betab{e}", Gaussian.coerce(scale).conjugate())
        out[f"beta{o}"] = ((etab - eta).wedge(bo) - (eta + etab).wedge(bbe)) * lam
        out[f"beta{e}"] = ((etab + eta).wedge(bbo) * -1 + (eta - etab).wedge(be)) * lam
    return out


def jstructure_coframe(n: int, m: int) -> dict:
    cf, model = jstructure_frame(n, m)
    expected = jstructure_expected(cf, n, m)
    eqs = {}
    for name, exp in expected.items():
        got = cf.d(cf.gen(name))
        conj_ok = cf.d(cf.gen(name).conjugate()) == exp.conjugate()
        eqs[name] = {"computed": str(got), "matches": got == exp, "conjugate_matches": conj_ok,
                     "d_squared_zero": not cf.d(got)}
    for i in range(1, 2 * n + 1):
        eqs[f"alpha{i}"] = {"computed": str(cf.d(cf.gen(f"alpha{i}"))),
                            "matches": not cf.d(cf.gen(f"alpha{i}")),
                            "conjugate_matches": True, "d_squared_zero": True}
    return {"coframe": cf, "model": model, "equations": eqs,
            "all_match": all(e["matches"] and e["conjugate_matches"] and e["d_squared_zero"]
                             for e in eqs.values()),
            "independent": cf.rank() == len(cf.gens)}


def delbar_top_form_j(n: int, m: int, drop: str | None = None, scale=1) -> Form:
    """delbar of alpha^{1..2n} ^ beta^{1..2m} in the J-bidegree (optionally omitting one beta)."""
    cf, _ = jstructure_frame(n, m)
    names = [f"alpha{i}" for i in range(1, 2 * n + 1)] + [f"beta{j}" for j in range(1, 2 * m + 1)]
    if drop is not None:
        if drop not in names:
            raise CoframeError(f"{drop} is not a factor of the top form")
        names.remove(drop)
    return cf.delbar(cf.mono(names, scale))


def jstructure_omega_check(n: int, m: int) -> dict:
    """Default product symplectic form equals (i/2)(sum alpha alphab + sum beta betab)/2 scaled, and is compatible."""
    from .symplectic import build_symplectic, check_compatibility
    cf, model = jstructure_frame(n, m)
    w = build_symplectic(model)
    new = cf.from_base(w)
    expect = Form.zero(cf.gens)
    for name in cf.holomorphic_names():
        c = Gaussian(0, HALF) if name.startswith("alpha") else Gaussian(0, Fraction(1, 4))
        expect = expect + cf.mono([name, name.replace("alpha", "alphab").replace("beta", "betab")], c)
    coframe_forms = [cf.to_base(cf.gen(nm)) for nm in cf.holomorphic_names()]
    compat = check_compatibility(model, w, coframe_forms)
    return {"omega_in_new_coframe": str(new), "matches_unit_scaled_form": new == expect, **compat}


def product_holomorphic_coframe(n: int, m: int) -> AlmostComplexCoframe:
    model = product_model(n, m)
    names = [nm for nm, k in zip(model.gens.names, model.gens.kinds) if k == "10"]
    return AlmostComplexCoframe(model, names, [Form.gen(model.gens, nm) for nm in names])


def torus_coframe(dim: int = 2) -> AlmostComplexCoframe:
    names = []
    for i in range(dim):
        names += [f"x{i}", f"y{i}"]
    gens = GeneratorSet.real(names)
    base = StructureEquations(gens, [Form.zero(gens)] * len(names))
    imgs = [Form.gen(gens, f"x{i}") + Form.gen(gens, f"y{i}", I) for i in range(dim)]
    return AlmostComplexCoframe(base, [f"z{i}" for i in range(dim)], imgs)


KODAIRA_CITATIONS = {
    "n5_deformed": "kappa is -infinity unless alpha(t) lies in (2 pi / (k lam2)) Z for some k >= 1, in which case it is 0; "
                   "this depends on the transcendental lam2 and is reported, not computed",
    "product_J": "kappa = 0 for the non-integrable structure J on the product family; reported, not computed",
}

"""de Rham and Dolbeault cohomology by exact elimination.

Two independent routes compute Betti numbers:

* ``full``: the d matrix of the whole finite complex in each degree (every
  monomial, times every lattice-trivial candidate character for product
  models), reduced by sparse fraction-free elimination;
* ``sector``: the complex split into d-invariant sectors, each of which is a
  single weight linear form times a constant matrix, ranked by Bareiss.

Neither route looks at the admissible basis; :func:`betti_table` checks all
three counts against each other.
"""
from __future__ import annotations

import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb

from .algebra import Coeff, Form, Gaussian, Weight
from .elimination import SparseEchelon, rank_zi as dense_rank, to_zi
from .model import ManifoldModel, ModelError, ProductModel, WeightedMonomial

DEFAULT_MAX_DEGREE_DIM = 2_000_000


class DimensionCapError(ModelError):
    """A per-degree basis would exceed the SOLVCO_MAX_DEGREE_DIM safety cap."""


def max_degree_dim() -> int:
    raw = os.environ.get("SOLVCO_MAX_DEGREE_DIM")
    if raw is None:
        return DEFAULT_MAX_DEGREE_DIM
    try:
        val = int(raw)
    except ValueError:
        raise DimensionCapError(f"SOLVCO_MAX_DEGREE_DIM must be an integer, got {raw!r}") from None
    if val <= 0:
        raise DimensionCapError("SOLVCO_MAX_DEGREE_DIM must be positive")
    return val


def complex_size(model: ManifoldModel, k: int) -> int:
    return len(model.candidate_chars()) * comb(len(model.gens), k)


def _check_cap(model: ManifoldModel, k: int) -> None:
    size = complex_size(model, k)
    cap = max_degree_dim()
    if size > cap:
        raise DimensionCapError(
            f"degree {k} complex has {size} basis elements, above the cap {cap} (SOLVCO_MAX_DEGREE_DIM)")


def complex_basis(model: ManifoldModel, k: int) -> list[WeightedMonomial]:
    """Basis of the degree-k part of the finite character-twisted complex."""
    _check_cap(model, k)
    masks = model.gens.masks_of_degree(k)
    return [WeightedMonomial(ch, m) for ch in model.candidate_chars() for m in masks]


def _scaled_column(form: Form, index: dict, scalar: Coeff | None = None) -> dict:
    """Coordinates of ``form`` divided by one common scalar polynomial.

    Every d-image here is (one weight linear form) x (constant vector); the
    proportionality is asserted rather than assumed.
    """
    if not form:
        return {}
    if scalar is None:
        scalar = next(iter(form.terms.values()))
    out = {}
    for key, c in form.terms.items():
        g = c.ratio(scalar)
        if g is None:
            raise ArithmeticError(f"d-image is not a scalar multiple of {scalar}: {form}")
        try:
            out[index[key]] = g
        except KeyError:
            raise ArithmeticError(f"d-image leaves the complex: term {key}") from None
    return out


def d_rank_full(model: ManifoldModel, k: int) -> int:
    """Rank of d: C^k -> C^{k+1} over the full complex."""
    if k < 0 or k >= model.real_dim:
        return 0
    src = complex_basis(model, k)
    tgt = complex_basis(model, k + 1)
    index = {(w.char, w.mask): i for i, w in enumerate(tgt)}
    ech = SparseEchelon()
    for w in src:
        col = _scaled_column(model.d(w.form(model.gens)), index)
        if col:
            ech.add(to_zi(col))
    return len(ech)


def _sector_scalar(model: ManifoldModel, key) -> Coeff:
    if isinstance(model, ProductModel):
        ch, psi_mask = key
        lin = model.char_dlog(ch)
        for i in _bits(psi_mask):
            lin = lin + model.linear[i]
        return Coeff.symbol("lam") if lin else Coeff()
    return Weight(key).to_coeff(model.symbols)


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def sector_ranks(model: ManifoldModel) -> dict:
    """{(sector key, k): rank of the constant matrix D_w in degree k}."""
    by_sector: dict = defaultdict(lambda: defaultdict(list))
    for k in range(model.real_dim + 1):
        for w in complex_basis(model, k):
            by_sector[model.sector_key(w.char, w.mask)][k].append(w)
    out = {}
    for key, degs in by_sector.items():
        scalar = _sector_scalar(model, key)
        for k, elems in degs.items():
            if not scalar or k + 1 not in degs:
                out[(key, k)] = 0
                continue
            tgt = degs[k + 1]
            index = {(w.char, w.mask): i for i, w in enumerate(tgt)}
            cols = [_scaled_column(model.d(w.form(model.gens)), index, scalar) for w in elems]
            mat = [[col.get(i, Gaussian(0)) for col in cols] for i in range(len(tgt))]
            out[(key, k)] = dense_rank(mat)
    return out, by_sector


def betti_full(model: ManifoldModel, parallel: int | None = None) -> list[int]:
    top = model.real_dim
    degs = list(range(top))
    if parallel and parallel > 1:
        with ProcessPoolExecutor(max_workers=parallel) as ex:
            ranks = list(ex.map(d_rank_full, [model] * len(degs), degs))
    else:
        ranks = [d_rank_full(model, k) for k in degs]
    ranks.append(0)
    out = []
    for k in range(top + 1):
        dim = complex_size(model, k)
        out.append(dim - ranks[k] - (ranks[k - 1] if k else 0))
    return out


def betti_sector(model: ManifoldModel) -> list[int]:
    ranks, by_sector = sector_ranks(model)
    out = [0] * (model.real_dim + 1)
    for key, degs in by_sector.items():
        for k, elems in degs.items():
            out[k] += len(elems) - ranks[(key, k)] - ranks.get((key, k - 1), 0)
    return out


def betti_basis(model: ManifoldModel) -> list[int]:
    return [len(model.admissible_basis(k)) for k in range(model.real_dim + 1)]


class BettiMismatch(ArithmeticError):
    pass


def betti_table(model: ManifoldModel, method: str = "full", parallel: int | None = None,
                cross_check: bool = True) -> list[int]:
    """(b_0, ..., b_2N).  With ``cross_check`` the listed-basis count must agree."""
    if method == "full":
        b = betti_full(model, parallel)
    elif method == "sector":
        b = betti_sector(model)
    elif method == "basis":
        return betti_basis(model)
    else:
        raise ValueError(f"unknown method {method!r}")
    if cross_check:
        ref = betti_basis(model)
        if ref != b:
            raise BettiMismatch(f"{method} elimination gives {b}, listed basis gives {ref}")
    return b


@dataclass
class CohomologyBasis:
    degree: object
    elements: list
    representatives: list
    dimension: int
    meta: dict = field(default_factory=dict)


def de_rham(model: ManifoldModel, k: int) -> CohomologyBasis:
    """Basis of ker d / im d in degree k from the full complex.

    Representatives are closed complex elements chosen greedily in the
    deterministic basis order, skipping any that fall into image + chosen.
    """
    model.check_degree(k)
    cur = complex_basis(model, k)
    index = {(w.char, w.mask): i for i, w in enumerate(cur)}
    ech = SparseEchelon()
    if k > 0:
        for w in complex_basis(model, k - 1):
            col = _scaled_column(model.d(w.form(model.gens)), index)
            if col:
                ech.add(to_zi(col))
    image_rank = len(ech)
    kernel = 0
    reps = []
    if k < model.real_dim:
        nxt = complex_basis(model, k + 1)
        nindex = {(w.char, w.mask): i for i, w in enumerate(nxt)}
        kech = SparseEchelon()
        closed = []
        for i, w in enumerate(cur):
            col = _scaled_column(model.d(w.form(model.gens)), nindex)
            if col:
                kech.add(to_zi(col))
            else:
                closed.append((i, w))
        kernel = len(cur) - len(kech)
    else:
        closed = list(enumerate(cur))
        kernel = len(cur)
    dim = kernel - image_rank
    for i, w in closed:
        if len(reps) == dim:
            break
        if ech.add({i: (1, 0)}):
            reps.append(w)
    if len(reps) != dim:
        raise ArithmeticError(
            f"closed monomials span only {len(reps)} of {dim} classes in degree {k}")
    return CohomologyBasis(k, reps, [w.form(model.gens) for w in reps], dim,
                           {"kernel": kernel, "image": image_rank, "complex": len(cur)})


def cohomology_basis(model: ManifoldModel, k: int) -> list[WeightedMonomial]:
    """The listed basis (admissible / zero-weight monomials) in degree k."""
    return model.admissible_basis(k)


def verify_representatives(model: ManifoldModel, k: int, elements: list[WeightedMonomial]) -> bool:
    """Elements are closed and independent modulo the image of d."""
    cur = complex_basis(model, k)
    index = {(w.char, w.mask): i for i, w in enumerate(cur)}
    for w in elements:
        if model.d(w.form(model.gens)):
            return False
    ech = SparseEchelon()
    if k > 0:
        for w in complex_basis(model, k - 1):
            col = _scaled_column(model.d(w.form(model.gens)), index)
            if col:
                ech.add(to_zi(col))
    for w in elements:
        key = (w.char, w.mask)
        if key not in index or not ech.add({index[key]: (1, 0)}):
            return False
    return True


def class_coordinates(model: ManifoldModel, form: Form, basis: list[WeightedMonomial]) -> list[Gaussian]:
    """Coordinates of the class of a closed form against a listed basis.

    Components outside the zero sector lie in acyclic sectors (d there is
    wedge with a nonzero closed 1-form), so closed ones are exact and drop out.
    """
    if model.d(form):
        raise ArithmeticError("form is not closed")
    pos = {(w.char, w.mask): i for i, w in enumerate(basis)}
    out = [Gaussian(0)] * len(basis)
    for (ch, m), c in form.terms.items():
        if not model.zero_sector(ch, m):
            continue
        if (ch, m) not in pos:
            raise ArithmeticError(f"zero-sector term {model.gens.label(m)} is not in the basis")
        out[pos[(ch, m)]] = c.constant()
    return out


# --- Dolbeault ------------------------------------------------------------

PRINTED_HODGE = {
    (0, 0): 1,
    (1, 0): 4, (0, 1): 4,
    (2, 0): 6, (1, 1): 8, (0, 2): 6,
    (3, 0): 4, (2, 1): 12, (1, 2): 12, (0, 3): 4,
    (4, 0): 1, (3, 1): 16, (2, 2): 36, (1, 3): 16, (0, 4): 1,
}


def _require_product(model) -> ProductModel:
    if not isinstance(model, ProductModel):
        raise ModelError("Dolbeault data is only available for product models")
    return model


def delbar_rank(model: ProductModel, p: int, q: int) -> int:
    """Rank of delbar: B^{p,q} -> B^{p,q+1}; images must stay inside B."""
    if q >= model.complex_dim:
        return 0
    src = model.dolbeault_basis(p, q)
    tgt = model.dolbeault_basis(p, q + 1)
    index = {(w.char, w.mask): i for i, w in enumerate(tgt)}
    ech = SparseEchelon()
    for w in src:
        img = model.delbar(w.form(model.gens))
        col = _scaled_column(img, index)
        if col:
            ech.add(to_zi(col))
    return len(ech)


def hodge_numbers(model: ManifoldModel) -> dict:
    model = _require_product(model)
    N = model.complex_dim
    out = {}
    for p in range(N + 1):
        ranks = [delbar_rank(model, p, q) for q in range(N + 1)]
        for q in range(N + 1):
            dim = len(model.dolbeault_basis(p, q))
            out[(p, q)] = dim - ranks[q] - (ranks[q - 1] if q else 0)
    return out


def naive_counts(model: ManifoldModel) -> dict:
    """Number of all (p,q) monomials, ignoring characters."""
    model = _require_product(model)
    N = model.complex_dim
    return {(p, q): comb(N, p) * comb(N, q) for p in range(N + 1) for q in range(N + 1)}


def hodge_table(model: ManifoldModel) -> list[list[int]]:
    h = hodge_numbers(model)
    N = model.complex_dim
    return [[h[(p, q)] for q in range(N + 1)] for p in range(N + 1)]


def hodge_comparison(model: ManifoldModel) -> dict:
    """Computed h^{p,q} for p+q <= N next to the printed Hodge diamond values."""
    h = hodge_numbers(model)
    naive = naive_counts(model)
    rows = []
    applies = isinstance(model, ProductModel) and (model.n, model.m) == (1, 1)
    for (p, q), val in sorted(h.items(), key=lambda t: (t[0][0] + t[0][1], -t[0][0])):
        if p + q > model.complex_dim:
            continue
        printed = PRINTED_HODGE.get((p, q)) if applies else None
        rows.append({"p": p, "q": q, "computed": val, "naive_monomials": naive[(p, q)],
                     "printed": printed,
                     "discrepancy": printed is not None and printed != val})
    return {"entries": rows, "any_discrepancy": any(r["discrepancy"] for r in rows)}


@dataclass
class DdbarDefect:
    k: int
    sum_hodge: int
    betti: int

    @property
    def violated(self) -> bool:
        return self.sum_hodge > self.betti

    def as_dict(self) -> dict:
        return {"k": self.k, "sum_hodge": self.sum_hodge, "betti": self.betti,
                "violated": self.violated}


def ddbar_defect(model: ManifoldModel, k: int, betti: list[int] | None = None) -> DdbarDefect:
    model = _require_product(model)
    model.check_degree(k)
    N = model.complex_dim
    total = 0
    for p in range(0, k + 1):
        q = k - p
        if p <= N and q <= N:
            ranks_q = delbar_rank(model, p, q)
            ranks_prev = delbar_rank(model, p, q - 1) if q else 0
            total += len(model.dolbeault_basis(p, q)) - ranks_q - ranks_prev
    if betti is None:
        b = len(model.admissible_basis(k)) if k in (0, 1) else betti_table(model)[k]
        # b_0 and b_1 are cheap to confirm directly
        if k in (0, 1):
            full = de_rham(model, k).dimension
            if full != b:
                raise BettiMismatch(f"b_{k}: listed {b}, elimination {full}")
    else:
        b = betti[k]
    return DdbarDefect(k, total, b)

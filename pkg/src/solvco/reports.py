"""Worked-example reports: Betti tables, Hodge numbers, lattice checks, Lefschetz lists.

Every report is a plain dict of JSON-safe values.  Timing lives under the
``"timing"`` key only, so :func:`digest` can drop it.
"""
from __future__ import annotations

import hashlib
import json
import re
import time
from fractions import Fraction

from .algebra import Form, Gaussian, binomial
from .cohomology import (betti_table, cohomology_basis, ddbar_defect, hodge_comparison,
                         hodge_table, naive_counts)
from .lattice import (SPLIT3_D, SPLIT3_M, SPLIT3_P, PAIRED4_M, char_poly, det_int,
                      diagonalize_2x2, trace_family_matrix, in_special_linear, poly_mul, poly_str,
                      quad_matrix, quad_rank, verify_conjugation, verify_splitting_example)
from .model import ManifoldModel, ProductModel, generalized_nakamura, product_model
from .symplectic import build_symplectic, check_hlc, twisted_omega

# --- named models -----------------------------------------------------------------

NAMED_MODELS = {
    "nakamura3": {"kind": "generalized_nakamura", "weights": [["1"], ["-1"]]},
    "nakamura4": {"kind": "generalized_nakamura", "weights": [["1"], ["-1"], ["0"]]},
    "product_1_1": {"kind": "product", "n": 1, "m": 1},
}


def model_from_descriptor(desc: dict) -> ManifoldModel:
    if desc["kind"] == "generalized_nakamura":
        return generalized_nakamura(desc["weights"])
    if desc["kind"] == "product":
        return product_model(desc["n"], desc["m"], desc.get("kvec"))
    raise ValueError(f"unknown model kind {desc['kind']!r}")


# --- labels -------------------------------------------------------------------------

def char_label(model: ManifoldModel, char: tuple) -> str:
    if not char:
        return ""
    if isinstance(model, ProductModel):
        F = model.F_char()
        if char == F:
            return "F"
        if char == tuple(-x for x in F):
            return "Fbar"
    return "chi(" + ",".join(str(x) for x in char) + ")"


def element_label(model: ManifoldModel, char: tuple, mask: int) -> str:
    ch = char_label(model, char)
    mono = model.gens.label(mask) if mask else "1"
    return f"{ch}*{mono}" if ch else mono


# --- printed tables -------------------------------------------------------------------

# Generator lists as printed, one LaTeX string per degree.  The top degree is
# printed as a power of the symplectic form and carries no list.
PRINTED_TABLES = {
    "table1": {
        "model": "nakamura3",
        "betti": [1, 2, 5, 8, 5, 2, 1],
        "rows": {
            1: r"\varphi^{0}, \bar\varphi^{0}",
            2: r"\varphi^{0}\bar\varphi^{0}, \varphi^{1}\varphi^{2}, \bar\varphi^{1}\varphi^{2}, \varphi^{1}\bar\varphi^{2}, \bar\varphi^{1}\bar\varphi^{2}",
            3: r"\varphi^{0}\varphi^{1}\varphi^{2}, \varphi^{0}\bar\varphi^{1}\varphi^{2}, \varphi^{0}\varphi^{1}\bar\varphi^{2}, \varphi^{0}\bar\varphi^{1}\bar\varphi^{2}, \bar\varphi^{0}\varphi^{1}\varphi^{2}, \bar\varphi^{0}\bar\varphi^{1}\varphi^{2}, \bar\varphi^{0}\varphi^{1}\bar\varphi^{2}, \bar\varphi^{0}\bar\varphi^{1}\bar\varphi^{2}",
            4: r"\varphi^{0}\bar\varphi^{0}\varphi^{1}\varphi^{2}, \varphi^{0}\bar\varphi^{0}\bar\varphi^{1}\varphi^{2}, \varphi^{0}\bar\varphi^{0}\varphi^{1}\bar\varphi^{2}, \varphi^{0}\bar\varphi^{0}\bar\varphi^{1}\bar\varphi^{2}, \varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\varphi^{2}",
            5: r"\varphi^{0}\varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\varphi^{2}, \bar\varphi^{0}\varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\varphi^{2}",
        },
    },
    "table2": {
        "model": "nakamura4",
        "betti": [1, 4, 10, 20, 26, 20, 10, 4, 1],
        "rows": {
            1: r"\varphi^{0}, \bar\varphi^{0}, \varphi^{3}, \bar\varphi^{3}",
            2: r"\varphi^{0}\bar\varphi^{0}, \varphi^{0}\varphi^{3},\varphi^{0}\bar\varphi^{3}, \varphi^{3}\bar\varphi^{0},\bar\varphi^{0}\bar\varphi^{3}, \varphi^{3}\bar\varphi^{3}, \varphi^{1}\varphi^{2}, \bar\varphi^{1}\varphi^{2}, \varphi^{1}\bar\varphi^{2}, \bar\varphi^{1}\bar\varphi^{2}",
            3: r"\varphi^{0}\bar\varphi^{0}\varphi^{3}, \varphi^{0}\bar\varphi^{0}\bar\varphi^{3}, \varphi^{0}\varphi^{3}\bar\varphi^{3}, \bar\varphi^{0}\varphi^{3}\bar\varphi^{3}, \varphi^{0}\varphi^{1}\varphi^{2}, \varphi^{0}\bar\varphi^{1}\varphi^{2}, \varphi^{0}\varphi^{1}\bar\varphi^{2}, \varphi^{0}\bar\varphi^{1}\bar\varphi^{2}"
               r", \bar\varphi^{0}\varphi^{1}\varphi^{2}, \bar\varphi^{0}\bar\varphi^{1}\varphi^{2}, \bar\varphi^{0}\varphi^{1}\bar\varphi^{2}, \bar\varphi^{0}\bar\varphi^{1}\bar\varphi^{2}, \varphi^{3}\varphi^{1}\varphi^{2}, \varphi^{3}\bar\varphi^{1}\varphi^{2}"
               r", \varphi^{3}\varphi^{1}\bar\varphi^{2}, \varphi^{3}\bar\varphi^{1}\bar\varphi^{2}, \bar\varphi^{3}\varphi^{1}\varphi^{2}, \bar\varphi^{3}\bar\varphi^{1}\varphi^{2}, \bar\varphi^{3}\varphi^{1}\bar\varphi^{2}, \bar\varphi^{3}\bar\varphi^{1}\bar\varphi^{2}",
            4: r"\varphi^{0}\bar\varphi^{0}\varphi^{1}\varphi^{2}, \varphi^{0}\bar\varphi^{0}\bar\varphi^{1}\varphi^{2}, \varphi^{0}\bar\varphi^{0}\varphi^{1}\bar\varphi^{2}, \varphi^{0}\bar\varphi^{0}\bar\varphi^{1}\bar\varphi^{2}, \varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\varphi^{2}, \varphi^{3}\bar\varphi^{3}\varphi^{1}\varphi^{2}"
               r", \varphi^{3}\bar\varphi^{3}\bar\varphi^{1}\varphi^{2}, \varphi^{3}\bar\varphi^{3}\varphi^{1}\bar\varphi^{2}, \varphi^{3}\bar\varphi^{3}\bar\varphi^{1}\bar\varphi^{2},\varphi^{0}\varphi^{3}\varphi^{1}\varphi^{2}, \varphi^{0}\varphi^{3}\varphi^{1}\bar\varphi^{2}"
               r", \varphi^{0}\varphi^{3}\bar\varphi^{1}\varphi^{2}, \varphi^{0}\varphi^{3}\bar\varphi^{1}\bar\varphi^{2}, \varphi^{0}\bar\varphi^{3}\varphi^{1}\varphi^{2}, \varphi^{0}\bar\varphi^{3}\varphi^{1}\bar\varphi^{2}, \varphi^{0}\bar\varphi^{3}\bar\varphi^{1}\varphi^{2}"
               r", \varphi^{0}\bar\varphi^{3}\bar\varphi^{1}\bar\varphi^{2}, \bar\varphi^{0}\varphi^{3}\varphi^{1}\varphi^{2}, \bar\varphi^{0}\varphi^{3}\varphi^{1}\bar\varphi^{2}, \bar\varphi^{0}\varphi^{3}\bar\varphi^{1}\varphi^{2}, \bar\varphi^{0}\varphi^{3}\bar\varphi^{1}\bar\varphi^{2}"
               r", \bar\varphi^{0}\bar\varphi^{3}\varphi^{1}\varphi^{2}, \bar\varphi^{0}\bar\varphi^{3}\varphi^{1}\bar\varphi^{2}, \bar\varphi^{0}\bar\varphi^{3}\bar\varphi^{1}\varphi^{2}, \bar\varphi^{0}\bar\varphi^{3}\bar\varphi^{1}\bar\varphi^{2}, \varphi^{0}\bar\varphi^{0}\varphi^{3}\bar\varphi^{3}",
            5: r"\varphi^{0}\bar\varphi^{0}\varphi^{3}\varphi^{1}\varphi^{2}, \varphi^{0}\bar\varphi^{0}\varphi^{3}\bar\varphi^{1}\varphi^{2}, \varphi^{0}\bar\varphi^{0}\varphi^{3}\varphi^{1}\bar\varphi^{2}, \varphi^{0}\bar\varphi^{0}\varphi^{3}\bar\varphi^{1}\bar\varphi^{2}"
               r", \varphi^{0}\bar\varphi^{0}\bar\varphi^{3}\varphi^{1}\varphi^{2}, \varphi^{0}\bar\varphi^{0}\bar\varphi^{3}\bar\varphi^{1}\varphi^{2}, \varphi^{0}\bar\varphi^{0}\bar\varphi^{3}\varphi^{1}\bar\varphi^{2}, \varphi^{0}\bar\varphi^{0}\bar\varphi^{3}\bar\varphi^{1}\bar\varphi^{2}"
               r", \varphi^{0}\varphi^{3}\bar\varphi^{3}\varphi^{1}\varphi^{2}, \varphi^{0}\varphi^{3}\bar\varphi^{3}\bar\varphi^{1}\varphi^{2}, \varphi^{0}\varphi^{3}\bar\varphi^{3}\varphi^{1}\bar\varphi^{2}, \varphi^{0}\varphi^{3}\bar\varphi^{3}\bar\varphi^{1}\bar\varphi^{2}"
               r",\bar\varphi^{0}\varphi^{3}\bar\varphi^{3}\varphi^{1}\varphi^{2} \bar\varphi^{0}\varphi^{3}\bar\varphi^{3}\bar\varphi^{1}\varphi^{2}, \bar\varphi^{0}\varphi^{3}\bar\varphi^{3}\varphi^{1}\bar\varphi^{2}, \bar\varphi^{0}\varphi^{3}\bar\varphi^{3}\bar\varphi^{1}\bar\varphi^{2}"
               r", \varphi^{0}\varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\varphi^{2}, \bar\varphi^{0}\varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\varphi^{2},\varphi^{3}\varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\varphi^{2},\bar\varphi^{3}\varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\varphi^{2}",
            6: r"\varphi^{0}\bar\varphi^{0}\varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\varphi^{2}, \varphi^{0}\varphi^{3}\varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\varphi^{2},\varphi^{0}\bar\varphi^{3}\varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\varphi^{2}, \varphi^{3}\bar\varphi^{0}\varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\varphi^{2}"
               r", \bar\varphi^{0}\bar\varphi^{3}\varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\varphi^{2},\varphi^{3}\bar\varphi^{3}\varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\varphi^{2}, \varphi^{0}\bar\varphi^{0}\varphi^{3}\bar\varphi^{3}\varphi^{1}\varphi^{2}"
               r", \varphi^{0}\bar\varphi^{0}\varphi^{3}\bar\varphi^{3}\varphi^{1}\bar\varphi^{2}, \varphi^{0}\bar\varphi^{0}\varphi^{3}\bar\varphi^{3}\bar\varphi^{1}\varphi^{2}, \varphi^{0}\bar\varphi^{0}\varphi^{3}\bar\varphi^{3}\bar\varphi^{1}\bar\varphi^{2}",
            7: r"\varphi^{0}\bar\varphi^{0}\varphi^{3}\varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\varphi^{2}, \varphi^{0}\bar\varphi^{0}\bar\varphi^{3}\varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\varphi^{2}, \varphi^{0}\varphi^{3}\bar\varphi^{3}\varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\varphi^{2}, \bar\varphi^{0}\varphi^{3}\bar\varphi^{3}\varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\varphi^{2}",
        },
    },
    "table3": {
        "model": "product_1_1",
        "betti": [1, 4, 10, 20, 26, 20, 10, 4, 1],
        "rows": {
            1: r"\varphi^{1}, \bar\varphi^{1}, \varphi^{2}, \bar\varphi^{2}",
            2: r"\varphi^{1}\bar\varphi^{1}, \varphi^{1}\bar\varphi^{2}, \bar\varphi^{1}\varphi^{2}, \varphi^{1}\varphi^{2}, \bar\varphi^{1}\bar\varphi^{2}, \varphi^{2}\bar\varphi^{2}, \bar\psi^{1}\psi^{2}, \psi^{1}\bar\psi^{2},F\psi^{1}\psi^{2}, \bar F\bar\psi^{1}\bar\psi^{2}",
            3: r"\varphi^{1}\bar\varphi^{1}\varphi^{2}, \varphi^{1}\bar\varphi^{1}\bar\varphi^{2}, \varphi^{1}\varphi^{2}\bar\varphi^{2}, \bar\varphi^{1}\varphi^{2}\bar\varphi^{2}, F\varphi^{1}\psi^{1}\psi^{2},F\bar\varphi^{1}\psi^{1}\psi^{2},F\varphi^{2}\psi^{1}\psi^{2}"
               r", F\bar\varphi^{2}\psi^{1}\psi^{2}, \varphi^{1}\bar\psi^{1}\psi^{2},\bar\varphi^{1}\bar\psi^{1}\psi^{2},\varphi^{2}\bar\psi^{1}\psi^{2},\bar\varphi^{2}\bar\psi^{1}\psi^{2},\varphi^{1}\psi^{1}\bar\psi^{2}"
               r", \bar\varphi^{1}\psi^{1}\bar\psi^{2},\varphi^{2}\psi^{1}\bar\psi^{2},\bar\varphi^{2}\psi^{1}\bar\psi^{2} \bar F\varphi^{1}\bar\psi^{1}\bar\psi^{2},\bar F\bar\varphi^{1}\bar\psi^{1}\bar\psi^{2},\bar F\varphi^{2}\bar\psi^{1}\bar\psi^{2}, \bar F\bar\varphi^{2}\bar\psi^{1}\bar\psi^{2}",
            4: r"F\varphi^{1}\bar\varphi^{1}\psi^{1}\psi^{2}, F\varphi^{1}\varphi^{2}\psi^{1}\psi^{2},F\varphi^{1}\bar\varphi^{2}\psi^{1}\psi^{2},F\bar\varphi^{1}\varphi^{2}\psi^{1}\psi^{2}, F\bar\varphi^{1}\bar\varphi^{2}\psi^{1}\psi^{2}"
               r", F\varphi^{2}\bar\varphi^{2}\psi^{1}\psi^{2},\bar F\varphi^{1}\bar\varphi^{1}\bar\psi^{1}\bar\psi^{2}, \bar F\varphi^{1}\varphi^{2}\bar\psi^{1}\bar\psi^{2},\bar F\varphi^{1}\bar\varphi^{2}\bar\psi^{1}\bar\psi^{2},\bar F\bar\varphi^{1}\varphi^{2}\bar\psi^{1}\bar\psi^{2}"
               r", \bar F\bar\varphi^{1}\bar\varphi^{2}\bar\psi^{1}\bar\psi^{2},\bar F\varphi^{2}\bar\varphi^{2}\bar\psi^{1}\bar\psi^{2},\varphi^{1}\bar\varphi^{1}\bar\psi^{1}\psi^{2}, \varphi^{1}\varphi^{2}\bar\psi^{1}\psi^{2},\varphi^{1}\bar\varphi^{2}\bar\psi^{1}\psi^{2}"
               r", \bar\varphi^{1}\varphi^{2}\bar\psi^{1}\psi^{2}, \bar\varphi^{1}\bar\varphi^{2}\bar\psi^{1}\psi^{2},\varphi^{2}\bar\varphi^{2}\bar\psi^{1}\psi^{2}, \psi^{1}\bar\psi^{1}\psi^{2}\bar\psi^{2},\varphi^{1}\bar\varphi^{1}\psi^{1}\bar\psi^{2}"
               r", \varphi^{1}\varphi^{2}\psi^{1}\bar\psi^{2},\varphi^{1}\bar\varphi^{2}\psi^{1}\bar\psi^{2},\bar\varphi^{1}\varphi^{2}\psi^{1}\bar\psi^{2}, \bar\varphi^{1}\bar\varphi^{2}\psi^{1}\bar\psi^{2},\varphi^{2}\bar\varphi^{2}\psi^{1}\bar\psi^{2}, \varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\varphi^{2}",
            5: r"F\varphi^{1}\bar\varphi^{1}\varphi^{2}\psi^{1}\psi^{2}, F\varphi^{1}\bar\varphi^{1}\bar\varphi^{2}\psi^{1}\psi^{2}, F\varphi^{1}\varphi^{2}\bar\varphi^{2}\psi^{1}\psi^{2}, F\bar\varphi^{1}\varphi^{2}\bar\varphi^{2}\psi^{1}\psi^{2}, \varphi^{1}\bar\varphi^{1}\varphi^{2}\psi^{1}\bar\psi^{2}"
               r", \varphi^{1}\varphi^{2}\bar\varphi^{2}\psi^{1}\bar\psi^{2} ,\varphi^{1}\bar\varphi^{1}\bar\varphi^{2}\psi^{1}\bar\psi^{2}, \bar\varphi^{1}\varphi^{2}\bar\varphi^{2}\psi^{1}\bar\psi^{2},  \varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\psi^{1}\psi^{2},\varphi^{1}\varphi^{2}\bar\varphi^{2}\bar\psi^{1}\psi^{2}"
               r", \varphi^{1}\bar\varphi^{1}\bar\varphi^{2}\bar\psi^{1}\psi^{2}, \bar\varphi^{1}\varphi^{2}\bar\varphi^{2}\bar\psi^{1}\psi^{2}, \bar F\varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\psi^{1}\bar\psi^{2}, \bar F\varphi^{1}\bar\varphi^{1}\bar\varphi^{2}\bar\psi^{1}\bar\psi^{2}, \bar F\varphi^{1}\varphi^{2}\bar\varphi^{2}\bar \psi^{1}\bar \psi^{2}"
               r", \bar F\bar\varphi^{1}\varphi^{2}\bar\varphi^{2}\psi^{1}\bar\psi^{1}\bar\psi^{2},\varphi^{1}\psi^{1}\bar\psi^{1}\psi^{2}\bar\psi^{2}, \bar\varphi^{1}\psi^{1}\bar\psi^{1}\psi^{2}\bar\psi^{2}, \varphi^{2}\psi^{1}\bar\psi^{1}\psi^{2}\bar\psi^{2}, \bar\varphi^{2}\psi^{1}\bar\psi^{1}\psi^{2}\bar\psi^{2}",
            6: r"\varphi^{1}\bar\varphi^{1}\psi^{1}\bar\psi^{1}\psi^{2}\bar\psi^{2}, \varphi^{2}\bar\varphi^{2}\psi^{1}\bar\psi^{1}\psi^{2}\bar\psi^{2}, \varphi^{1}\bar\varphi^{2}\psi^{1}\bar\psi^{1}\psi^{2}\bar\psi^{2}, \bar\varphi^{1}\varphi^{2}\psi^{1}\bar\psi^{1}\psi^{2}\bar\psi^{2}"
               r", \varphi^{1}\varphi^{2}\psi^{1}\bar\psi^{1}\psi^{2}\bar\psi^{2}, \bar\varphi^{1}\bar\varphi^{2}\psi^{1}\bar\psi^{1}\psi^{2}\bar\psi^{2}, F\varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\varphi^{2}\psi^{1}\psi^{2}, \varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\varphi^{2}\psi^{1}\bar\psi^{2}"
               r", \varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\varphi^{2}\bar\psi^{1}\psi^{2}, \bar F \varphi^{1}\bar\varphi^{1}\varphi^{2}\bar\varphi^{2}\bar\psi^{1}\bar\psi^{2}",
            7: r"\varphi^{1}\bar\varphi^{1}\varphi^{2}\psi^{1}\bar\psi^{1}\psi^{2}\bar\psi^{2}, \varphi^{1}\bar\varphi^{1}\bar\varphi^{2}\psi^{1}\bar\psi^{1}\psi^{2}\bar\psi^{2}, \varphi^{1}\varphi^{2}\bar\varphi^{2}   \psi^{1}\bar\psi^{1}\psi^{2}\bar\psi^{2}, \bar\varphi^{1}\varphi^{2}\bar\varphi^{2}\psi^{1}\bar\psi^{1}\psi^{2}\bar\psi^{2}",
        },
    },
}

_TOKEN = re.compile(r"(\\bar\s*)?(?:(F)|\\(varphi|psi)\^\{(\d+)\})")


def parse_printed_generators(text: str) -> list[tuple[str | None, list[str]]]:
    """Split a printed generator list into (character label, generator names) items.

    A missing comma is recovered when a character symbol follows a factor or a
    generator repeats inside one item.
    """
    items = []
    for chunk in text.split(","):
        cur_char, cur = None, []
        for m in _TOKEN.finditer(chunk):
            bar, f, kind, idx = m.groups()
            if f:
                if cur or cur_char:
                    items.append((cur_char, cur))
                    cur = []
                cur_char = "Fbar" if bar else "F"
                continue
            name = ("phi" if kind == "varphi" else "psi") + ("b" if bar else "") + idx
            if name in cur:
                items.append((cur_char, cur))
                cur_char, cur = None, []
            cur.append(name)
        if cur or cur_char:
            items.append((cur_char, cur))
    return items


def _resolve_char(model: ManifoldModel, label: str | None) -> tuple:
    if label is None:
        return ()
    F = model.F_char()
    return F if label == "F" else tuple(-x for x in F)


def compare_printed_row(model: ManifoldModel, k: int, text: str) -> dict:
    """Compare a printed generator list with the computed monomial basis in degree k.

    Each computed class is a single character-weighted monomial, so two
    monomial lists span the same cohomology exactly when they agree as sets.
    """
    computed = {(w.char, w.mask) for w in cohomology_basis(model, k)}
    printed = set()
    malformed = []
    for label, names in parse_printed_generators(text):
        shown = ("Fbar*" if label == "Fbar" else "F*" if label else "") + "".join(names)
        if len(names) != k or len(set(names)) != k:
            malformed.append(shown)
            continue
        _, mask = model.gens.monomial(names)
        printed.add((_resolve_char(model, label), mask))
    missing = sorted(element_label(model, c, m) for c, m in computed - printed)
    extra = sorted(element_label(model, c, m) for c, m in printed - computed)
    return {
        "degree": k,
        "printed_count": len(printed) + len(malformed),
        "computed_count": len(computed),
        "missing_from_printed": missing,
        "not_in_computed": extra,
        "malformed_printed": malformed,
        "same_span": not missing and not extra and not malformed,
    }


def betti_report(model: ManifoldModel, parallel: int | None = None, degree: int | None = None,
                 name: str | None = None) -> dict:
    """Betti numbers by two independent routes plus the listed generators per degree."""
    t0 = time.perf_counter()
    full = betti_table(model, method="full", parallel=parallel, cross_check=False)
    t1 = time.perf_counter()
    basis = betti_table(model, method="basis", cross_check=False)
    t2 = time.perf_counter()
    degrees = range(len(full)) if degree is None else [degree]
    rows = []
    for k in degrees:
        gens = [element_label(model, w.char, w.mask) for w in cohomology_basis(model, k)]
        rows.append({"degree": k, "generators": gens, "b": full[k]})
    out = {
        "model": name or type(model).__name__,
        "describe": model.describe(),
        "betti": full,
        "betti_basis_route": basis,
        "routes_agree": full == basis,
        "rows": rows,
        "timing": {"full_seconds": round(t1 - t0, 3), "basis_seconds": round(t2 - t1, 3)},
    }
    return out


def table_report(key: str, parallel: int | None = None) -> dict:
    spec = PRINTED_TABLES[key]
    model = model_from_descriptor(NAMED_MODELS[spec["model"]])
    rep = betti_report(model, parallel=parallel, name=spec["model"])
    rep["printed_betti"] = spec["betti"]
    rep["betti_matches_printed"] = rep["betti"] == spec["betti"]
    rep["printed_rows"] = [compare_printed_row(model, k, text) for k, text in sorted(spec["rows"].items())]
    return rep


def markdown_betti(rep: dict) -> str:
    lines = [f"# de Rham cohomology of {rep['model']}", "",
             "| k | generators | b_k |", "|---|---|---|"]
    for row in rep["rows"]:
        gens = ", ".join(row["generators"])
        lines.append(f"| {row['degree']} | {gens} | {row['b']} |")
    lines.append("")
    lines.append(f"Two routes agree: {'yes' if rep['routes_agree'] else 'NO'}")
    if "printed_rows" in rep:
        bad = [r for r in rep["printed_rows"] if not r["same_span"]]
        lines.append(f"Printed Betti numbers match: {'yes' if rep['betti_matches_printed'] else 'NO'}")
        for r in bad:
            lines.append(f"- degree {r['degree']}: printed list differs "
                         f"(missing {r['missing_from_printed']}, extra {r['not_in_computed']}, "
                         f"malformed {r['malformed_printed']})")
    return "\n".join(lines) + "\n"


# --- Hodge numbers ----------------------------------------------------------------------

def hodge_report() -> dict:
    model = model_from_descriptor(NAMED_MODELS["product_1_1"])
    rep = hodge_comparison(model)
    rep["hodge"] = hodge_table(model)
    naive = naive_counts(model)
    N = model.complex_dim
    rep["naive"] = [[naive.get((p, q), 0) for q in range(N + 1)] for p in range(N + 1)]
    rep["ddbar"] = {}
    for (n, m) in ((1, 1), (1, 2), (2, 1)):
        pm = product_model(n, m)
        rep["ddbar"][f"{n},{m}"] = ddbar_defect(pm, 1).as_dict()
    return rep


def markdown_hodge(rep: dict) -> str:
    lines = ["# Hodge numbers of the (1,1) product model (p+q <= 4)", "",
             "| p | q | computed | naive monomials | printed | discrepancy |",
             "|---|---|---|---|---|---|"]
    for e in rep["entries"]:
        lines.append(f"| {e['p']} | {e['q']} | {e['computed']} | {e['naive_monomials']} | "
                     f"{e['printed']} | {'yes' if e['discrepancy'] else ''} |")
    return "\n".join(lines) + "\n"


# --- lattices ---------------------------------------------------------------------------

def trace_family_report(ns=range(3, 11)) -> dict:
    rows = []
    for n in ns:
        M = trace_family_matrix(n)
        P, D = diagonalize_2x2(M)
        cp = char_poly(M)
        rows.append({
            "n": n,
            "matrix": M,
            "char_poly": poly_str(cp),
            "char_poly_matches": cp == [1, -n, 1],
            "det": det_int(M),
            "eigenvalues": [str(D[0][0]), str(D[1][1])],
            "P": [[str(x) for x in row] for row in P],
            "conjugation": verify_conjugation(P, M, D),
        })
    return {"rows": rows, "all_pass": all(r["char_poly_matches"] and r["det"] == 1 and r["conjugation"]
                                          for r in rows)}


def splitting_report() -> dict:
    cp = char_poly(SPLIT3_M)
    P = quad_matrix(SPLIT3_P)
    D = quad_matrix(SPLIT3_D)
    split = verify_splitting_example()
    out = {
        "matrix": SPLIT3_M,
        "char_poly": poly_str(cp),
        "char_poly_matches": cp == [1, -4, 4, -1],
        "det": det_int(SPLIT3_M),
        "special_linear": in_special_linear(SPLIT3_M),
        "conjugation": verify_conjugation(P, SPLIT3_M, D),
    }
    out.update(split)
    # flattened aliases so each primed generator is a top-level key
    for name, chk in split["generators"].items():
        out[name] = chk
    return out


def paired4_report() -> dict:
    M = PAIRED4_M
    cp = char_poly(M)
    quad = [1, -4, 1]
    d = 3
    mu_p = quad_matrix([["2+sqrt(3)"]], d)[0][0]
    eig = {}
    for label, mu in (("2+sqrt(3)", mu_p), ("2-sqrt(3)", mu_p.conjugate())):
        shifted = [[quad_matrix([[M[i][j]]], d)[0][0] - (mu if i == j else 0) for j in range(4)]
                   for i in range(4)]
        r = quad_rank(shifted, d)
        eig[label] = {"rank_M_minus_mu": r, "eigenspace_dim": 4 - r}
    return {
        "matrix": M,
        "char_poly": poly_str(cp),
        "char_poly_matches": cp == poly_mul(quad, quad),
        "det": det_int(M),
        "special_linear": in_special_linear(M),
        "eigenspaces": eig,
        "diagonalizable": all(v["eigenspace_dim"] == 2 for v in eig.values()),
    }


# --- printed powers and Lefschetz images of the twisted form ------------------------------------------------------------

# Printed coefficients and monomials in a compact transcription.  Index "1b"
# means the conjugate generator; F and Fb are the two characters.
PRINTED_OMEGA_POWERS = {
    2: "-1/2 phi[1 1b 2 2b] + 1/2i F phi[1 1b] psi[1 2] + 1/2i Fb phi[1 1b] psi[1b 2b]"
       " + 1/2i F phi[2 2b] psi[1 2] + 1/2i Fb phi[2 2b] psi[1b 2b] + 1/2 psi[1 2 1b 2b]",
    3: "-3/2 F phi[1 1b 2 2b] psi[1 2] - 3/2 Fb phi[1 1b 2 2b] psi[1b 2b]"
       " + 3/2i phi[1 1b] psi[1 2 1b 2b] + 3/2i phi[2 2b] psi[1 2 1b 2b]",
}

PRINTED_LEFSCHETZ = {
    1: [
        ("phi[1 1b 2]", "1/2 F phi[1 1b 2] psi[1 2] + 1/2 Fb phi[1 1b 2] psi[1b 2b]"),
        ("phi[1 1b 2b]", "1/2 F phi[1 1b 2b] psi[1 2] + 1/2 Fb phi[1 1b 2b] psi[1b 2b]"),
        ("phi[1 2 2b]", "1/2 F phi[1 2 2b] psi[1 2] + 1/2 Fb phi[1 2 2b] psi[1b 2b]"),
        ("phi[1b 2 2b]", "1/2 F phi[1b 2 2b] psi[1 2] + 1/2 Fb phi[1b 2 2b] psi[1b 2b]"),
        ("F phi[1] psi[1 2]", "1/2i F phi[1 2 2b] psi[1 2] + 1/2 phi[1] psi[1 2 1b 2b]"),
        ("F phi[1b] psi[1 2]", "1/2i F phi[1b 2 2b] psi[1 2] + 1/2 phi[1b] psi[1 2 1b 2b]"),
        ("F phi[2] psi[1 2]", "1/2i F phi[1 1b 2] psi[1 2] + 1/2 phi[2] psi[1 2 1b 2b]"),
        ("F phi[2b] psi[1 2]", "1/2i F phi[1 1b 2b] psi[1 2] + 1/2 phi[2b] psi[1 2 1b 2b]"),
        ("phi[1] psi[1b 2]", "1/2i phi[1 2 2b] psi[1b 2]"),
        ("phi[1b] psi[1b 2]", "1/2i phi[1b 2 2b] psi[1b 2]"),
        ("phi[2] psi[1b 2]", "1/2i phi[1 1b 2] psi[1b 2]"),
        ("phi[2b] psi[1b 2]", "1/2i phi[1 1b 2b] psi[1b 2]"),
        ("phi[1] psi[1 2b]", "1/2i phi[1 2 2b] psi[1 2b]"),
        ("phi[1b] psi[1 2b]", "1/2i phi[1b 2 2b] psi[1 2b]"),
        ("phi[2] psi[1 2b]", "1/2i phi[1 1b 2] psi[1 2b]"),
        ("phi[2b] psi[1 2b]", "1/2i phi[1 1b 2b] psi[1 2b]"),
        ("Fb phi[1] psi[1b 2b]", "1/2i Fb phi[1 2 2b] psi[1b 2b] + 1/2 phi[1] psi[1 2 1b 2b]"),
        ("Fb phi[1b] psi[1b 2b]", "1/2i Fb phi[1b 2 2b] psi[1b 2b] + 1/2 phi[1b] psi[1 2 1b 2b]"),
        ("Fb phi[2] psi[1b 2b]", "1/2i Fb phi[1 1b 2] psi[1b 2b] + 1/2 phi[2] psi[1 2 1b 2b]"),
        ("Fb phi[2b] psi[1b 2b]", "1/2i Fb phi[1 1b 2b] psi[1b 2b] + 1/2 phi[2b] psi[1 2 1b 2b]"),
    ],
    2: [
        ("phi[1 1b]", "1/2i F phi[1 1b 2 2b] psi[1 2] + 1/2i Fb phi[1 1b 2 2b] psi[1b 2b]"
                      " + 1/2 phi[1 1b] psi[1 2 1b 2b]"),
        ("phi[1 2b]", "1/2 phi[1 2b] psi[1 2 1b 2b]"),
        ("phi[1b 2]", "1/2 phi[1b 2] psi[1 2 1b 2b]"),
        ("phi[1 2]", "1/2 phi[1 2] psi[1 2 1b 2b]"),
        ("phi[1b 2b]", "1/2 phi[1b 2b] psi[1 2 1b 2b]"),
        ("phi[2 2b]", "1/2i F phi[1 1b 2 2b] psi[1 2] + 1/2i Fb phi[1 1b 2 2b] psi[1b 2b]"
                      " + 1/2 phi[2 2b] psi[1 2 1b 2b]"),
        ("psi[1b 2]", "-1/2 phi[1 1b 2 2b] psi[1b 2]"),
        ("psi[1 2b]", "-1/2 phi[1 1b 2 2b] psi[1 2b]"),
        ("F psi[1 2]", "-1/2 phi[1 1b 2 2b] psi[1 2] + 1/2i Fb phi[1 1b] psi[1 2 1b 2b]"
                       " + 1/2i Fb phi[2 2b] psi[1 2 1b 2b]"),
        ("F psi[1b 2b]", "-1/2 phi[1 1b 2 2b] psi[1b 2b] + 1/2i F phi[1 1b] psi[1 2 1b 2b]"
                         " + 1/2i F phi[2 2b] psi[1 2 1b 2b]"),
    ],
    3: [
        ("phi[1]", "-3/2i phi[1 2 2b] psi[1 2 1b 2b]"),
        ("phi[1b]", "-3/2i phi[1b 2 2b] psi[1 2 1b 2b]"),
        ("phi[2]", "3/2i phi[1 1b 2] psi[1 2 1b 2b]"),
        ("phi[2b]", "3/2i phi[1 1b 2b] psi[1 2 1b 2b]"),
    ],
}

_GROUP = re.compile(r"(phi|psi)\[([^\]]*)\]")


def parse_transcribed(model: ProductModel, text: str) -> Form:
    """Parse the compact transcription, e.g. ``"-1/2i F phi[1 1b] psi[1 2]"``."""
    out = Form.zero(model.gens)
    # split into signed terms on " + " / " - " separators
    for sign, body in re.findall(r"(^|\s[+-]\s)([^+]+?)(?=\s[+-]\s|$)", text.strip()):
        tokens = body.split()
        coeff = Gaussian(1)
        if tokens and re.fullmatch(r"-?[\d/]*i?", tokens[0]) and tokens[0] not in ("", "-"):
            coeff = Gaussian.parse(tokens[0])
            tokens = tokens[1:]
        if sign.strip() == "-":
            coeff = -coeff
        char = ()
        if tokens and tokens[0] in ("F", "Fb"):
            char = _resolve_char(model, "F" if tokens[0] == "F" else "Fbar")
        names = []
        for kind, idx in _GROUP.findall(body):
            for j in idx.split():
                names.append(kind + ("b" + j[:-1] if j.endswith("b") else j))
        out = out + Form.monomial(model.gens, names, coeff, char)
    return out


def _compare_forms(computed: Form, printed: Form) -> dict:
    diff = computed - printed
    return {"computed": str(computed), "printed": str(printed), "matches": not diff,
            "difference": str(diff)}


def twisted_omega_report() -> dict:
    model = model_from_descriptor(NAMED_MODELS["product_1_1"])
    omega = twisted_omega(model)
    out = {"omega": str(omega), "powers": {}, "lefschetz": {}}
    for k, text in PRINTED_OMEGA_POWERS.items():
        out["powers"][str(k)] = _compare_forms(omega.power(k), parse_transcribed(model, text))
    for k, pairs in PRINTED_LEFSCHETZ.items():
        wk = omega.power(k)
        rows = []
        for src, img in pairs:
            s = parse_transcribed(model, src)
            row = _compare_forms(wk.wedge(s), parse_transcribed(model, img))
            row["source"] = src
            rows.append(row)
        out["lefschetz"][str(k)] = {"entries": rows, "all_match": all(r["matches"] for r in rows),
                                    "mismatches": [r["source"] for r in rows if not r["matches"]]}
    hlc = check_hlc(model, omega)
    out["hlc"] = hlc.as_dict() if hasattr(hlc, "as_dict") else {"holds": hlc.holds}
    out["omega_powers_match"] = all(v["matches"] for v in out["powers"].values())
    return out


def hlc_summary(model: ManifoldModel, omega: Form | None = None) -> dict:
    w = omega if omega is not None else build_symplectic(model)
    rep = check_hlc(model, w)
    return rep.as_dict() if hasattr(rep, "as_dict") else {"holds": rep.holds}


# --- almost-complex identities -----------------------------------------------------------

def kodaira_report() -> dict:
    from . import kodaira as K

    out = {"n5": {}, "jstructure": {}, "integrability": {}, "citations": K.KODAIRA_CITATIONS}
    for t in ((1, 1), (Fraction(1, 3), Fraction(1, 4)), (Fraction(1, 2), 0)):
        key = ",".join(str(Fraction(x)) for x in t)
        res = K.n5_deformed_coframe(t)
        top = K.delbar_top_form_n5(t)
        out["n5"][key] = {
            "alpha": str(res["alpha"]), "beta": str(res["beta"]), "gamma": str(res["gamma"]),
            "equations_hold": res["all_match"], "independent": res["independent"],
            "block_squares_to_minus_identity": res["block_squares_to_minus_identity"],
            "delbar_top_form": str(top["delbar"]), "delbar_matches": top["matches"],
        }
    for n, m in ((1, 1), (1, 2)):
        res = K.jstructure_coframe(n, m)
        out["jstructure"][f"{n},{m}"] = {
            "equations_hold": res["all_match"], "independent": res["independent"],
            "delbar_top_form": str(K.delbar_top_form_j(n, m)),
            "delbar_top_form_zero": not K.delbar_top_form_j(n, m),
        }
    out["integrability"] = {
        "n5_holomorphic": K.integrability_check(K.n5_holomorphic_coframe()),
        "product_holomorphic_1_1": K.integrability_check(K.product_holomorphic_coframe(1, 1)),
        "torus": K.integrability_check(K.torus_coframe(2)),
        "jstructure_1_1": K.integrability_check(K.jstructure_frame(1, 1)[0]),
    }
    return out


# --- serialization -------------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    if hasattr(x, "as_dict"):
        return _jsonable(x.as_dict())
    return str(x)


def to_json(doc) -> str:
    return json.dumps(_jsonable(doc), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def strip_timing(doc):
    if isinstance(doc, dict):
        return {k: strip_timing(v) for k, v in doc.items() if k != "timing"}
    if isinstance(doc, list):
        return [strip_timing(v) for v in doc]
    return doc


def digest(doc) -> str:
    return hashlib.sha256(to_json(strip_timing(_jsonable(doc))).encode()).hexdigest()


def hodge_expected_edges(N: int) -> list[int]:
    return [binomial(N, p) for p in range(N + 1)]

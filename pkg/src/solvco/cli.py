"""Command line: ``solvco betti|hlc|examples``.

Exit codes: 0 success, 2 input error, 3 failed mathematical check, 4 internal error.
"""
from __future__ import annotations

import json
import platform
import sys
import time
from importlib import resources
from pathlib import Path

import click
import jsonschema

from . import __version__
from .algebra import parse_rational
from .cohomology import BettiMismatch, hodge_table, naive_counts
from .lattice import LatticeError, char_poly, det_int, poly_str, quad_matrix, verify_conjugation
from .model import GeneralizedNakamuraModel, ModelError, ProductModel
from .reports import (PRINTED_TABLES, betti_report, digest, trace_family_report, splitting_report,
                      twisted_omega_report, paired4_report, hodge_report, kodaira_report,
                      markdown_betti, markdown_hodge, model_from_descriptor, table_report, to_json)
from .symplectic import (DegenerateError, NotClosedError, SymplecticError, SymplecticSpec,
                         build_symplectic, check_hlc, check_symplectic, twisted_omega,
                         find_partition, lefschetz_matrix)
from .elimination import determinant

EXIT_OK, EXIT_INPUT, EXIT_MATH, EXIT_INTERNAL = 0, 2, 3, 4

OMEGA_PRESETS = ("default", "example-5.3")

_ALLOWED = {"generalized_nakamura": ("weights",), "product": ("n", "m", "kvec")}


class InputError(Exception):
    pass


class MathFailure(Exception):
    pass


# --- descriptor handling -----------------------------------------------------------

def load_schema() -> dict:
    text = resources.files("solvco").joinpath("schema/model_descriptor.schema.json").read_text()
    return json.loads(text)


def load_descriptor(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    validate_descriptor(data)
    return data


def validate_descriptor(data) -> None:
    try:
        jsonschema.validate(data, load_schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        msg = exc.message
        if exc.validator == "not" and isinstance(data, dict):
            # the only negated clauses forbid fields of the other model kind
            bad = sorted(k for k in ("weights", "n", "m", "kvec") if k in data
                         and k not in _ALLOWED.get(data.get("kind"), ()))
            where, msg = ",".join(bad), f"not allowed for kind {data.get('kind')!r}"
        raise InputError(f"descriptor field {where}: {msg}") from exc
    # the pattern admits "1/0"; exact parsing catches it
    for i, w in enumerate(data.get("weights") or []):
        for j, x in enumerate(w):
            try:
                parse_rational(x)
            except ValueError as exc:
                raise InputError(f"descriptor field weights/{i}/{j}: {exc}") from exc


def build_model(desc: dict):
    try:
        return model_from_descriptor(desc)
    except (ModelError, LatticeError, ValueError) as exc:
        raise InputError(f"invalid model: {exc}") from exc


def resolve_omega(model, desc: dict, omega: str):
    if omega == "example-5.3":
        try:
            return twisted_omega(model), "example-5.3"
        except ModelError as exc:
            raise InputError(str(exc)) from exc
    overrides = dict(desc.get("symplectic") or {})
    if omega != "default":
        try:
            inline = json.loads(omega)
        except json.JSONDecodeError as exc:
            raise InputError(f"--omega must be one of {OMEGA_PRESETS} or a JSON object: {exc}") from exc
        if not isinstance(inline, dict):
            raise InputError("--omega JSON must be an object")
        overrides.update(inline)
    try:
        spec = SymplecticSpec.from_json(overrides)
        return build_symplectic(model, spec), "custom" if overrides else "default"
    except (SymplecticError, ValueError) as exc:
        raise InputError(f"invalid symplectic coefficients: {exc}") from exc


def lattice_report(desc: dict) -> dict | None:
    lat = desc.get("lattice")
    if not lat:
        return None
    out = {}
    try:
        if "M" in lat:
            M = [[int(x) for x in row] for row in lat["M"]]
            out["char_poly"] = poly_str(char_poly(M))
            out["det"] = det_int(M)
            if "P" in lat and "D" in lat:
                out["conjugation"] = verify_conjugation(quad_matrix(lat["P"]), M, quad_matrix(lat["D"]))
    except (LatticeError, ValueError) as exc:
        raise InputError(f"invalid lattice data: {exc}") from exc
    return out


def _meta(elapsed: float) -> dict:
    return {"solvco": __version__, "python": platform.python_version()}, {"seconds": round(elapsed, 3)}


# --- output ---------------------------------------------------------------------------

def emit(doc: dict, md: str | None, out: str | None, stem: str, fmt: str) -> None:
    text = to_json(doc)
    if out is None:
        if fmt in ("json", "both"):
            click.echo(text, nl=False)
        if fmt in ("md", "both") and md:
            click.echo(md, nl=False)
        return
    d = Path(out)
    try:
        d.mkdir(parents=True, exist_ok=True)
        if fmt in ("json", "both"):
            (d / f"{stem}.json").write_text(text, encoding="utf-8")
        if fmt in ("md", "both") and md:
            (d / f"{stem}.md").write_text(md, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write to {out}: {exc}") from exc


def run(fn):
    """Map exceptions to exit codes."""
    try:
        code = fn()
    except InputError as exc:
        click.echo(f"error: {exc}", err=True)
        code = EXIT_INPUT
    except (DegenerateError, NotClosedError, BettiMismatch, MathFailure) as exc:
        click.echo(f"check failed: {exc}", err=True)
        code = EXIT_MATH
    except (ModelError, SymplecticError) as exc:
        click.echo(f"error: {exc}", err=True)
        code = EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        click.echo(f"internal error: {type(exc).__name__}: {exc}", err=True)
        code = EXIT_INTERNAL
    sys.exit(code or EXIT_OK)


_format = click.option("--format", "fmt", type=click.Choice(["json", "md", "both"]), default="both",
                       show_default=True)
_out = click.option("--out", type=click.Path(file_okay=False), default=None,
                    help="Output directory (default: print to stdout).")
_parallel = click.option("--parallel", type=click.IntRange(min=1), default=None,
                         help="Worker processes; affects wall time only.")


@click.group()
@click.version_option(__version__, prog_name="solvco")
def main():
    """Exact cohomology and Hard Lefschetz checks on solvmanifold models."""


@main.command()
@click.argument("descriptor", type=click.Path())
@click.option("--degree", type=int, default=None, help="Only report this degree.")
@_parallel
@_out
@_format
def betti(descriptor, degree, parallel, out, fmt):
    """Betti numbers and cohomology generators of a model descriptor."""

    def go():
        t0 = time.perf_counter()
        desc = load_descriptor(descriptor)
        model = build_model(desc)
        if degree is not None and not 0 <= degree <= model.real_dim:
            raise InputError(f"--degree must lie in 0..{model.real_dim}")
        rep = betti_report(model, parallel=parallel, degree=degree, name=desc.get("name"))
        if not rep["routes_agree"]:
            raise BettiMismatch(f"routes disagree: {rep['betti']} vs {rep['betti_basis_route']}")
        versions, timing = _meta(time.perf_counter() - t0)
        doc = {"descriptor": desc, "betti": rep["betti"], "rows": rep["rows"],
               "reports": {"routes_agree": True}, "versions": versions,
               "timing": {**rep["timing"], **timing}}
        if isinstance(model, ProductModel):
            doc["hodge"] = hodge_table(model)
            naive = naive_counts(model)
            N = model.complex_dim
            doc["hodge_naive"] = [[naive.get((p, q), 0) for q in range(N + 1)] for p in range(N + 1)]
        lat = lattice_report(desc)
        if lat is not None:
            doc["reports"]["lattice"] = lat
        emit(doc, markdown_betti(rep), out, "betti", fmt)
        return EXIT_OK

    run(go)


@main.command()
@click.argument("descriptor", type=click.Path())
@click.option("--omega", default="default", show_default=True,
              help="Preset (default, example-5.3) or inline JSON coefficient overrides.")
@click.option("--degree", type=int, default=None, help="Only check L^k for this k.")
@_out
@_format
def hlc(descriptor, omega, degree, out, fmt):
    """Hard Lefschetz verdicts for a symplectic form on the model."""

    def go():
        t0 = time.perf_counter()
        desc = load_descriptor(descriptor)
        model = build_model(desc)
        w, label = resolve_omega(model, desc, omega)
        check_symplectic(model, w)
        N = model.complex_dim
        if degree is not None:
            if not 1 <= degree <= N:
                raise InputError(f"--degree must lie in 1..{N}")
            L = lefschetz_matrix(model, w, degree)
            square = bool(L) and len(L) == len(L[0])
            det = determinant(L) if square else None
            ok = square and bool(det)
            verdict = {"holds": ok, "per_k": {str(degree): {
                "source_dim": len(L[0]) if L else 0, "target_dim": len(L), "square": square,
                "det": str(det) if det is not None else None, "bijective": ok}}}
        else:
            verdict = check_hlc(model, w).as_dict()
        versions, timing = _meta(time.perf_counter() - t0)
        doc = {"descriptor": desc, "omega": {"preset": label, "form": str(w)}, "hlc": verdict,
               "versions": versions, "timing": timing}
        if isinstance(model, GeneralizedNakamuraModel):
            part = find_partition(model.lambdas)
            doc["partition"] = part.as_dict() if part else None
        md = ["# Hard Lefschetz check", "", f"omega: {label}", "", "| k | det L^k | bijective |",
              "|---|---|---|"]
        for k, v in verdict["per_k"].items():
            md.append(f"| {k} | {v['det']} | {'yes' if v['bijective'] else 'NO'} |")
        md.append("")
        md.append(f"HLC holds: {'yes' if verdict['holds'] else 'NO'}")
        emit(doc, "\n".join(md) + "\n", out, "hlc", fmt)
        if not verdict["holds"]:
            failing = [k for k, v in verdict["per_k"].items() if not v["bijective"]]
            raise MathFailure(f"L^k is not an isomorphism for k in {failing}")
        return EXIT_OK

    run(go)


@main.command()
@click.argument("outdir", type=click.Path(file_okay=False))
@_parallel
def examples(outdir, parallel):
    """Regenerate every worked-example table and report into OUTDIR."""

    def go():
        d = Path(outdir)
        try:
            d.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise InputError(f"cannot create {outdir}: {exc}") from exc
        written = {}

        def put(name, doc, md=None):
            emit(doc, md, outdir, name, "both" if md else "json")
            written[name] = digest(doc)

        for key in PRINTED_TABLES:
            rep = table_report(key, parallel=parallel)
            put(key, rep, markdown_betti(rep))
        fig = hodge_report()
        put("figure1", fig, markdown_hodge(fig))
        put("example51", trace_family_report())
        put("example52", splitting_report())
        put("example53", twisted_omega_report())
        put("example54", paired4_report())
        put("kodaira", kodaira_report())
        (d / "digests.json").write_text(to_json(written), encoding="utf-8")
        click.echo(f"wrote {len(written)} reports to {outdir}")
        return EXIT_OK

    run(go)


if __name__ == "__main__":
    main()

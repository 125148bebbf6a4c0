"""Command-line front end: ``daschur <verb> [options]``.

JSON goes to stdout (or ``--output``); CSV for ``export``.  Exit status is 0
on success, 1 on a domain error (reported as ``{"error": ...}``) and 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import basis, hardy, lattice, schur
from .errors import DomainError
from .exact import format_gaussian
from .serialize import (
    coefficient_poly_from_json,
    coefficient_poly_to_json,
    dumps,
    hardy_element_from_json,
    lattice_function_from_json,
    lattice_function_to_json,
    parse_point,
    problem_from_json,
    rational_element_to_json,
)

OUTPUT_DIR_ENV = "DASCHUR_OUTPUT_DIR"


def _load_json(source: str) -> dict:
    """Inline JSON (``{...}``) or a path to a JSON file."""
    text = source.strip()
    if not text.startswith("{"):
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise DomainError(f"cannot read {source}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"invalid JSON: {exc}") from None


def _input(args) -> dict:
    if args.json is not None:
        return _load_json(args.json)
    if args.file is not None:
        return _load_json(args.file)
    raise DomainError("no input: pass --file or --json")


def _points(text: str) -> list[lattice.LatticePoint]:
    return [parse_point(t) for t in text.split(",") if t.strip()]


def _window(text: str) -> lattice.Window:
    try:
        parts = [int(v) for v in text.split(",")]
    except ValueError:
        raise DomainError(f"window must be x_min,x_max,y_min,y_max, got {text!r}") from None
    if len(parts) != 4:
        raise DomainError(f"window must have four integers, got {text!r}")
    return lattice.Window(*parts)


def _complex(text: str) -> complex:
    try:
        re_, im = (float(v) for v in text.split(","))
    except ValueError:
        raise DomainError(f"expected re,im, got {text!r}") from None
    return complex(re_, im)


def _scalar_json(v, mode: str):
    if mode == lattice.EXACT:
        return format_gaussian(v)
    return [complex(v).real, complex(v).imag]


# -- verbs ----------------------------------------------------------------------


def cmd_basis(args):
    if args.eval is not None:
        p = parse_point(args.eval)
        return {"value": format_gaussian(basis.basis_poly(args.n)(p.x, p.y))}
    if args.window is not None:
        return lattice_function_to_json(basis.basis_poly(args.n).on_window(_window(args.window)))
    bp = basis.basis_poly(args.n)
    terms = [{"x_deg": i, "y_deg": j, "c": format_gaussian(c)} for (i, j), c in sorted(bp.terms.items())]
    return {"n": args.n, "terms": terms}


def cmd_check_da(args):
    f = lattice_function_from_json(_input(args))
    report = lattice.is_discrete_analytic(f)
    return {
        "analytic": report.analytic,
        "violations": [
            {
                "x": v.corner.x,
                "y": v.corner.y,
                "lhs": _scalar_json(v.lhs, f.mode),
                "rhs": _scalar_json(v.rhs, f.mode),
            }
            for v in report.violations
        ],
    }


def cmd_integrate(args):
    f = lattice_function_from_json(_input(args))
    path = lattice.LatticePath(_points(args.path))
    return {"value": _scalar_json(lattice.discrete_integral(f, path), f.mode)}


def cmd_z_op(args):
    f = lattice_function_from_json(_input(args))
    return lattice_function_to_json(lattice.z_operator(f))


def cmd_coeffs(args):
    f = lattice_function_from_json(_input(args))
    return coefficient_poly_to_json(basis.coefficients_from_lattice(f, args.N))


def cmd_convolve(args):
    a = coefficient_poly_from_json(_load_json(args.a))
    b = coefficient_poly_from_json(_load_json(args.b))
    return coefficient_poly_to_json(basis.convolve(a, b))


def cmd_genfun(args):
    z = parse_point(args.z)
    g = basis.generating_function(z)
    out = {
        "z": str(z),
        "num": [format_gaussian(c) for c in g.num.coeffs],
        "den": [format_gaussian(c) for c in g.den.coeffs],
    }
    if args.t is not None:
        v = basis.generating_function_eval(z, _complex(args.t))
        out["value"] = {"re": v.real, "im": v.imag}
    return out


def cmd_kernel(args):
    return hardy.kernel_eval(parse_point(args.w), parse_point(args.z), args.N, args.rho).to_json()


def cmd_gram(args):
    g = hardy.kernel_gram(_points(args.points), args.N, args.rho)
    res = hardy.psd_check(g, args.tol)
    return {"matrix": g.to_json(), "min_eigenvalue": res.min_eigenvalue, "trace": res.trace, "psd": res.psd}


def cmd_eval(args):
    f = hardy_element_from_json(_load_json(args.element))
    return hardy.evaluate_at_lattice(f, parse_point(args.z), args.N, args.rho).to_json()


def _candidate_from_json(source: str) -> schur.SchurCandidate:
    f = hardy_element_from_json(_load_json(source))
    if isinstance(f, basis.CoefficientPoly):
        f = hardy.RationalElement.from_poly(f.t_image())
    if not isinstance(f, hardy.RationalElement):
        raise DomainError("Schur candidates must be polynomial or rational elements")
    return schur.SchurCandidate(f)


def cmd_schur_check(args):
    cert = schur.schur_check(_candidate_from_json(args.element), args.samples)
    return cert.to_json()


def _blaschke_target(args):
    if args.sign is not None and args.lam is not None:
        raise DomainError("give either --sign or --lambda, not both")
    if args.sign is not None:
        return schur.blaschke_pm(args.sign), None
    if args.lam is None:
        raise DomainError("blaschke needs --sign or --lambda")
    prob = schur.InterpolationProblem(parse_point(args.lam))
    return schur.blaschke_lambda(prob), prob


def cmd_blaschke(args):
    cand, prob = _blaschke_target(args)
    out = {"element": rational_element_to_json(cand.element)}
    if prob is not None:
        out["lambda"] = {"x": prob.lam.x, "y": prob.lam.y}
        out["degree"] = prob.degree
    if args.verify:
        out["certificate"] = schur.schur_check(cand).to_json()
        if prob is not None:
            residuals = []
            for z in prob.rectangle:
                e = hardy.evaluate_at_lattice(cand.element, z, args.N, args.rho)
                residuals.append(
                    {"x": z.x, "y": z.y, **e.to_json(), "ok": abs(e.value) <= e.abs_error}
                )
            out["residuals"] = residuals
    return out


def _problem(args) -> tuple[schur.InterpolationProblem, int]:
    if args.problem is not None:
        return problem_from_json(_load_json(args.problem))
    if args.lam is None or args.N is None:
        raise DomainError("interpolate needs --problem or both --lambda and --N")
    return schur.InterpolationProblem(parse_point(args.lam)), args.N


def cmd_interpolate(args):
    prob, n = _problem(args)
    sols = schur.solve_basic_interpolation(prob, n)
    return {
        "lambda": {"x": prob.lam.x, "y": prob.lam.y},
        "N": n,
        "degree": prob.degree,
        "basis": [coefficient_poly_to_json(p) for p in sols],
    }


def cmd_member(args):
    p = coefficient_poly_from_json(_load_json(args.poly))
    prob = schur.InterpolationProblem(parse_point(args.lam))
    res = schur.ideal_membership(p, prob)
    return {
        "member": res.member,
        "quotient": coefficient_poly_to_json(res.quotient) if res.quotient is not None else None,
    }


# -- CSV exports -------------------------------------------------------------------


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in r])
    return buf.getvalue()


def export_table(what: str, args) -> str:
    if what == "basis-table":
        if args.max_n is None or args.window is None:
            raise DomainError("basis-table needs --max-n and --window")
        if args.max_n < 0:
            raise DomainError("--max-n must be nonnegative")
        return basis.BasisTable.build(args.max_n).to_csv(_window(args.window))
    if what == "kernel-heatmap":
        if args.w is None or args.window is None:
            raise DomainError("kernel-heatmap needs --w and --window")
        w = parse_point(args.w)
        rows = []
        for z in _window(args.window):
            e = hardy.kernel_eval(w, z, args.N, args.rho)
            rows.append((z.x, z.y, w.x, w.y, e.value.real, e.value.imag, e.abs_error))
        return _csv(["zx", "zy", "wx", "wy", "re", "im", "err"], rows)
    if what == "boundary-modulus":
        if args.element is not None:
            cand = _candidate_from_json(args.element)
        else:
            cand, _ = _blaschke_target(args)
        if args.samples < 1:
            raise DomainError("--samples must be positive")
        theta = 2 * np.pi * np.arange(args.samples) / args.samples
        t = np.exp(1j * theta)
        mod = np.abs(cand.t_image(t))
        return _csv(["theta", "modulus"], zip(map(float, theta), map(float, mod)))
    raise DomainError(f"unknown table {what!r}")


def cmd_export(args):
    return export_table(args.what, args)


# -- parser -----------------------------------------------------------------------------


def _add_input(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--file", help="path to a lattice-function JSON file")
    g.add_argument("--json", help="inline lattice-function JSON")


def _add_trunc(p, default_n=hardy.DEFAULT_N):
    p.add_argument("--N", type=int, default=default_n, help="truncation index")
    p.add_argument("--rho", type=float, default=hardy.DEFAULT_RHO, help="basis Cauchy radius")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="daschur", description=__doc__.splitlines()[0])
    parser.add_argument("--output", "-o", help="write the result here instead of stdout")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("basis", help="the basis polynomial z^(n)")
    p.add_argument("--n", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--eval", help="lattice point x+yi")
    g.add_argument("--window", help="x_min,x_max,y_min,y_max")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("check-da", help="Ferrand analyticity test")
    _add_input(p)
    p.set_defaults(func=cmd_check_da)

    p = sub.add_parser("integrate", help="discrete path integral")
    _add_input(p)
    p.add_argument("--path", required=True, help="comma-separated lattice points")
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("z-op", help="discrete antiderivative Z")
    _add_input(p)
    p.set_defaults(func=cmd_z_op)

    p = sub.add_parser("coeffs", help="coefficients (delta_x^n f)(0)")
    _add_input(p)
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("convolve", help="convolution product of coefficient polynomials")
    p.add_argument("--a", required=True, help="coefficient-poly JSON (inline or path)")
    p.add_argument("--b", required=True, help="coefficient-poly JSON (inline or path)")
    p.set_defaults(func=cmd_convolve)

    p = sub.add_parser("genfun", help="generating function G_z(t)")
    p.add_argument("--z", required=True)
    p.add_argument("--t", help="evaluate at re,im")
    p.set_defaults(func=cmd_genfun)

    p = sub.add_parser("kernel", help="reproducing kernel K_w(z)")
    p.add_argument("--w", required=True)
    p.add_argument("--z", required=True)
    _add_trunc(p)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("gram", help="kernel Gram matrix and PSD test")
    p.add_argument("--points", required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    _add_trunc(p)
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("eval", help="certified evaluation of a Hardy element")
    p.add_argument("--element", required=True, help="coefficient-poly or rational-element JSON")
    p.add_argument("--z", required=True)
    _add_trunc(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("schur-check", help="Schur / inner certification")
    p.add_argument("--element", required=True)
    p.add_argument("--samples", type=int, default=schur.DEFAULT_SAMPLES)
    p.set_defaults(func=cmd_schur_check)

    p = sub.add_parser("blaschke", help="Blaschke factor B_+/- or generator B_lambda")
    p.add_argument("--sign", choices=["+", "-"])
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--verify", action="store_true")
    _add_trunc(p, default_n=96)
    p.set_defaults(func=cmd_blaschke)

    p = sub.add_parser("interpolate", help="polynomial solutions vanishing on R_lambda")
    p.add_argument("--problem", help="problem JSON (inline or path)")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--N", type=int)
    p.set_defaults(func=cmd_interpolate)

    p = sub.add_parser("member", help="membership in the ideal of solutions")
    p.add_argument("--poly", required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("export", help="CSV tables")
    p.add_argument("what", choices=["basis-table", "kernel-heatmap", "boundary-modulus"])
    p.add_argument("--max-n", type=int)
    p.add_argument("--window")
    p.add_argument("--w")
    p.add_argument("--element")
    p.add_argument("--sign", choices=["+", "-"])
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--samples", type=int, default=4096)
    _add_trunc(p)
    p.set_defaults(func=cmd_export)
    return parser


def _write(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    path = Path(output)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.write_text(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
        text = result if isinstance(result, str) else dumps(result)
    except (DomainError, ValueError, ZeroDivisionError, ArithmeticError) as exc:
        sys.stdout.write(dumps({"error": str(exc)}))
        return 1
    try:
        _write(text, args.output)
    except OSError as exc:
        sys.stdout.write(dumps({"error": f"cannot write output: {exc.strerror}"}))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

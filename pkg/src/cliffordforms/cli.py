"""Command line interface: ``cliffordforms {verify,emit,planes,comass,catalog}``.

Exit codes: 0 success, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from .algebra import Hypercomplex, cd_multiply
from .clifford import CATALOG
from .comass import estimate_comass
from .exterior import hodge_star
from .forms import NAMED_FORMS, named_form, phi_spin7u1_normalized, phi_spin8
from .notation import to_latex
from .planes import (
    calibration_value,
    cayley_plane_in_line,
    octonionic_line,
    rational_unit_octonion,
    spin8_orbit_plane,
    transversal_cayley_plane,
)
from .suite import run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

FAMILIES = ("transversal-cayley", "spin8-orbit", "in-line")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def cmd_verify(args) -> int:
    res = run_suite(args.filter, args.data_dir)
    if not res.results:
        print(f"no check matches {args.filter!r}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        _emit_json(res.to_dict())
    else:
        for r in res.results:
            line = f"{r.status.upper():4}  {r.id}"
            print(line + (f"  ({r.detail})" if r.detail else ""))
        d = res.to_dict()
        print(f"{d['passed']} passed, {d['failed']} failed")
    return EXIT_OK if res.passed else EXIT_FAIL


def cmd_emit(args) -> int:
    if args.key not in NAMED_FORMS:
        print(f"unknown form {args.key!r}; known: {', '.join(NAMED_FORMS)}", file=sys.stderr)
        return EXIT_USAGE
    nf = named_form(args.key)
    f = nf.form
    if args.format == "latex":
        print(to_latex(f, fold=not args.full))
        return EXIT_OK
    data = f.to_dict()
    data["key"] = nf.key
    data["provenance"] = nf.provenance
    if args.fold and 2 * f.k == f.n and f and hodge_star(f) in (f, -f):
        data["terms"] = [t for t in data["terms"] if 1 in t["idx"]]
        data["star"] = "+" if hodge_star(f) == f else "-"
    _emit_json(data)
    return EXIT_OK


def _orthonormal_imaginary_pair(rng) -> tuple[Hypercomplex, Hypercomplex]:
    # rotate (i, j) by exact rotations in random coordinate planes of Im O
    u = [Fraction(0)] * 8
    w = [Fraction(0)] * 8
    u[1], w[2] = Fraction(1), Fraction(1)
    for _ in range(6):
        a, b = (int(x) for x in rng.choice(np.arange(1, 8), size=2, replace=False))
        c, s = (Fraction(3, 5), Fraction(4, 5)) if rng.integers(2) else (Fraction(5, 13), Fraction(12, 13))
        for v in (u, w):
            v[a], v[b] = c * v[a] - s * v[b], s * v[a] + c * v[b]
    return Hypercomplex(3, tuple(u)), Hypercomplex(3, tuple(w))


def _plane_record(P, key: str, value, **extra) -> dict:
    rec = {
        "frame": [[str(x) for x in v] for v in P.frame],
        "form": key,
        "value": str(value),
        "exact": P.exact,
    }
    rec.update(extra)
    return rec


def cmd_planes(args) -> int:
    rng = np.random.default_rng(args.seed)
    out = []
    for t in range(args.count):
        if args.family == "transversal-cayley":
            u = rational_unit_octonion(rng, imaginary=True)
            e1, e1p = rational_unit_octonion(rng), rational_unit_octonion(rng)
            P = transversal_cayley_plane(u, e1, e1p)
            out.append(_plane_record(P, "phi_spin8", calibration_value(phi_spin8(), P),
                                     u=[str(x) for x in u.coeffs]))
        elif args.family == "spin8-orbit":
            P = spin8_orbit_plane(rng)
            out.append(_plane_record(P, "phi_spin8", calibration_value(phi_spin8(), P)))
        else:
            slopes = (0, 1, None) if args.m is None else (args.m,)
            m = slopes[t % len(slopes)]
            u, w = _orthonormal_imaginary_pair(rng)
            x = rational_unit_octonion(rng)
            P = cayley_plane_in_line(octonionic_line(m), u, x, cd_multiply(x, w))
            out.append(_plane_record(P, "phi_spin7u1_normalized", calibration_value(phi_spin7u1_normalized(), P),
                                     m="inf" if m is None else str(m)))
    _emit_json({"family": args.family, "seed": args.seed, "planes": out})
    return EXIT_OK


def cmd_comass(args) -> int:
    if args.form not in NAMED_FORMS:
        print(f"unknown form {args.form!r}; known: {', '.join(NAMED_FORMS)}", file=sys.stderr)
        return EXIT_USAGE
    f = named_form(args.form).form
    if f.k != 4:
        print(f"comass is only estimated for 4-forms; {args.form} has degree {f.k}", file=sys.stderr)
        return EXIT_USAGE
    rep = estimate_comass(f, samples=args.samples, restarts=args.restarts, seed=args.seed, key=args.form)
    _emit_json(rep.to_dict())
    return EXIT_OK


def cmd_catalog(args) -> int:
    systems = [{"name": k, "n": v["n"], "rank": v["rank"]} for k, v in CATALOG.items()]
    forms = [{"key": k, "description": desc} for k, (_, desc) in NAMED_FORMS.items()]
    if args.json:
        _emit_json({"systems": systems, "forms": forms})
    else:
        for s in systems:
            print(f"{s['name']:14} n={s['n']:<3} rank={s['rank']}")
        for f in forms:
            print(f"{f['key']:24} {f['description']}")
    return EXIT_OK


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _slope(text: str):
    if text in ("inf", "infinity"):
        return None
    try:
        return Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"slope must be a rational or 'inf', got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cliffordforms", description="Exact Clifford-system calibrations and comass estimates.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run the identity suite")
    v.add_argument("--filter", help="glob (or substring) on check ids")
    v.add_argument("--data-dir", help="directory of golden files (default: shipped data)")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("emit", help="print a named form")
    e.add_argument("key")
    e.add_argument("format", choices=("latex", "json"))
    e.add_argument("--full", action="store_true", help="latex: do not fold with +star or bold blocks")
    e.add_argument("--fold", action="store_true", help="json: only terms containing index 1, plus a star flag")
    e.set_defaults(func=cmd_emit)

    pl = sub.add_parser("planes", help="generate planes of a calibrated family")
    pl.add_argument("--family", choices=FAMILIES, default="transversal-cayley")
    pl.add_argument("--count", "--samples", dest="count", type=_nonneg, default=10)
    pl.add_argument("--seed", type=int, default=0)
    pl.add_argument("--m", type=_slope, help="slope for the in-line family (rational or 'inf')")
    pl.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")
    pl.set_defaults(func=cmd_planes)

    c = sub.add_parser("comass", help="estimate the comass of a named 4-form")
    c.add_argument("--form", required=True)
    c.add_argument("--samples", type=_nonneg, default=100_000)
    c.add_argument("--restarts", type=_nonneg, default=64)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")
    c.set_defaults(func=cmd_comass)

    cat = sub.add_parser("catalog", help="list Clifford systems and named forms")
    cat.add_argument("--json", action="store_true")
    cat.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())

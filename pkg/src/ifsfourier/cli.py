"""Command-line frontend.

Subcommands: check-hadamard, cycles, spectrum, verify-onb, mu-hat,
attractor, harmonic, riesz, example.  Reports are JSON on stdout
(deterministic given config and seed: floats at 17 significant digits,
sorted keys); point clouds and grids go to CSV via --out.

Exit codes: 0 success, 1 check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import (
    chaos_game,
    check_duality,
    completeness_sum,
    estimate_h,
    find_w_cycles,
    generate_lambda,
    h_closed_form,
    mu_hat_detail,
    points_to_csv,
    verify_orthogonality,
    weight_from_digits,
)
from .config import ConfigError, SystemConfig, emit_config, parse_config
from .invariant import (
    concentration_curve,
    fourier_coefficient,
    riesz_branch_normalization,
    riesz_chain,
)
from .registry import EXAMPLES, example_names
from .report import dumps
from .system import frac_str
from .transfer import check_qmf

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2


def _entry_config(entry) -> SystemConfig:
    return SystemConfig(
        d=len(entry.R), R=[list(r) for r in entry.R],
        B=[list(b) for b in entry.B], L=[list(l) for l in entry.L],
        p_max=entry.p_max, lambda_levels=entry.lambda_levels, name=entry.name,
    )


def _load_system(args):
    if getattr(args, "example", None):
        name = args.example
        if name not in EXAMPLES:
            raise ConfigError("unknown example %r; known: %s" % (name, ", ".join(example_names())))
        entry = EXAMPLES[name]
        if entry.kind != "affine":
            raise ConfigError("example %r is not an affine system; use the riesz subcommand"
                              % name)
        cfg = _entry_config(entry)
    elif getattr(args, "config", None):
        with open(args.config) as fh:
            cfg = parse_config(fh.read(), name=args.config)
    else:
        raise ConfigError("one of --example or --config is required")
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    if getattr(args, "p_max", None) is not None:
        cfg.p_max = args.p_max
    if getattr(args, "levels", None) is not None:
        cfg.lambda_levels = args.levels
    return cfg, cfg.system()


def _coord_str(c) -> str:
    return frac_str(c) if isinstance(c, Fraction) else "%.17g" % float(c)


def _point_str(point) -> str:
    return ",".join(_coord_str(c) for c in point)


def _parse_point(text: str, d: int):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != d:
        raise ConfigError("point %r has dimension %d, expected %d" % (text, len(parts), d))
    vals = []
    for p in parts:
        vals.append(Fraction(p) if "/" in p else float(p))
    if all(isinstance(v, Fraction) or float(v).is_integer() for v in vals):
        return [Fraction(v) for v in vals]
    return [float(v) for v in vals]


def cmd_check_hadamard(args) -> int:
    _, sys_obj = _load_system(args)
    report = check_duality(sys_obj, integrality_horizon=args.horizon)
    print(dumps({"system": sys_obj.name or "config", "duality": report.to_dict()}), end="")
    return EXIT_OK if report.passes else EXIT_CHECK_FAILED


def cmd_cycles(args) -> int:
    cfg, sys_obj = _load_system(args)
    from .cycles import classify_w, enumerate_cycles

    cycles = [classify_w(c, sys_obj, sys_obj.cycle_tol)
              for c in enumerate_cycles(sys_obj, cfg.p_max)]
    if not args.all:
        cycles = [c for c in cycles if c.is_w_cycle]
    print(dumps({
        "system": sys_obj.name or "config",
        "p_max": cfg.p_max,
        "count": len(cycles),
        "cycles": [c.to_json_dict() for c in cycles],
    }), end="")
    return EXIT_OK


def _w_cycles_or_fail(sys_obj, p_max):
    cycles = find_w_cycles(sys_obj, p_max)
    if not cycles:
        print(dumps({"error": "no W-cycles found up to p_max", "p_max": p_max}), end="")
        return None
    return cycles


def cmd_spectrum(args) -> int:
    cfg, sys_obj = _load_system(args)
    cycles = _w_cycles_or_fail(sys_obj, cfg.p_max)
    if cycles is None:
        return EXIT_CHECK_FAILED
    spec = generate_lambda(sys_obj, cycles, cfg.lambda_levels, element_cap=args.cap)
    if args.out:
        spec.to_csv(args.out)
    elems = sorted(spec.elements)
    if args.count is not None:
        elems = elems[: args.count]
    print(dumps({
        "system": sys_obj.name or "config",
        "levels": spec.level,
        "count": len(spec.elements),
        "cap_hit": spec.cap_hit,
        "tz": "unverified hypothesis",
        "elements": [frac_str(e) for e in elems],
    }), end="")
    return EXIT_OK


def cmd_verify_onb(args) -> int:
    cfg, sys_obj = _load_system(args)
    cycles = _w_cycles_or_fail(sys_obj, cfg.p_max)
    if cycles is None:
        return EXIT_CHECK_FAILED
    spec = generate_lambda(sys_obj, cycles, cfg.lambda_levels)
    elems = sorted(spec.elements)[: args.window]
    gram = verify_orthogonality(sys_obj, elems, sys_obj.tail_tol)
    probes = [_parse_point(p, sys_obj.d) for p in args.x] or [[0.3] * sys_obj.d]
    completeness = {
        _point_str(p): completeness_sum(sys_obj, elems, [float(c) for c in p],
                                        sys_obj.tail_tol)
        for p in probes
    }
    report = {
        "system": sys_obj.name or "config",
        "window": len(elems),
        "max_offdiag": gram.max_offdiag,
        "argmax_pair": None if gram.argmax_pair is None else
        [frac_str(gram.argmax_pair[0]), frac_str(gram.argmax_pair[1])],
        "completeness_sum": completeness,
    }
    if args.grid:
        from .spectrum import grid_orthogonality

        report["grid"] = grid_orthogonality(
            sys_obj, [float(c) for c in probes[0]], span=args.grid_span
        ).to_dict()
    print(dumps(report), end="")
    return EXIT_OK


def cmd_mu_hat(args) -> int:
    _, sys_obj = _load_system(args)
    t = _parse_point(args.t, sys_obj.d)
    res = mu_hat_detail(sys_obj, t if len(t) > 1 else t[0], sys_obj.tail_tol)
    print(dumps({
        "t": _point_str(t),
        "value": res.value,
        "abs": abs(res.value),
        "n_factors": res.n_factors,
        "exact_zero": res.exact_zero,
    }), end="")
    return EXIT_OK


def cmd_attractor(args) -> int:
    cfg, sys_obj = _load_system(args)
    view = sys_obj.b_view if args.view == "B" else sys_obj.l_view
    pts = chaos_game(view, args.samples, cfg.seed, n_streams=args.threads)
    if args.out:
        points_to_csv(args.out, pts)
    print(dumps({
        "system": sys_obj.name or "config",
        "view": args.view,
        "samples": int(pts.shape[0]),
        "bbox_lo": pts.min(axis=0),
        "bbox_hi": pts.max(axis=0),
        "radius_bound": view.bounding_radius(),
        "out": args.out or None,
    }), end="")
    return EXIT_OK


def cmd_harmonic(args) -> int:
    cfg, sys_obj = _load_system(args)
    cycles = _w_cycles_or_fail(sys_obj, cfg.p_max)
    if cycles is None:
        return EXIT_CHECK_FAILED
    x = _parse_point(args.x, sys_obj.d)
    xf = [float(c) for c in x]
    weight = weight_from_digits(sys_obj.B)
    if args.words_out:
        from .pathspace import sample_paths

        ens = sample_paths(weight, sys_obj.l_view, xf, args.length,
                           min(args.paths, 10_000), cfg.seed)
        ens.words_to_csv(args.words_out)
    est = estimate_h(weight, sys_obj.l_view, xf, cycles, args.length, args.paths, cfg.seed)
    closed = [h_closed_form(sys_obj, xf, c, max(1, args.depth // c.period)) for c in cycles]
    qmf_dev = check_qmf(weight, sys_obj.l_view, n_probe=1000, seed=cfg.seed)
    report = est.to_dict(cycles)
    for row, cf in zip(report["per_cycle"], closed):
        row["closed_form"] = cf
    report.update({
        "system": sys_obj.name or "config",
        "x": _point_str(x),
        "closed_form_total": float(sum(closed)),
        "qmf_deviation": qmf_dev,
    })
    print(dumps(report), end="")
    return EXIT_OK


def cmd_riesz(args) -> int:
    dev = riesz_branch_normalization()
    chain = riesz_chain(args.steps, seed=args.seed or 0, n_chains=args.threads or 32)
    coeffs = {}
    for freq in args.fourier:
        value, stderr = fourier_coefficient(chain, freq, angular=True)
        coeffs[str(freq)] = {"value": value, "stderr": stderr}
    if args.out:
        curve = concentration_curve(chain.states)
        with open(args.out, "w", newline="") as fh:
            fh.write("q,mass\n")
            for q, mass in curve:
                fh.write("%.17g,%.17g\n" % (q, mass))
    print(dumps({
        "system": "riesz3",
        "steps": chain.n,
        "branch_normalization_deviation": dev,
        "nu_hat": coeffs,
        "out": args.out or None,
    }), end="")
    return EXIT_OK


def cmd_example(args) -> int:
    if args.name:
        if args.name not in EXAMPLES:
            raise ConfigError("unknown example %r" % args.name)
        entry = EXAMPLES[args.name]
        if entry.kind == "affine":
            print(emit_config(_entry_config(entry)), end="")
        else:
            print(dumps({"name": entry.name, "kind": entry.kind,
                         "description": entry.description}), end="")
        return EXIT_OK
    print(dumps({
        name: {"kind": e.kind, "description": e.description}
        for name, e in EXAMPLES.items()
    }), end="")
    return EXIT_OK


def _add_system_args(p, levels=False):
    p.add_argument("--example", help="registry system name")
    p.add_argument("--config", help="path to a config file")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--p-max", dest="p_max", type=int, default=None)
    if levels:
        p.add_argument("--levels", type=int, default=None)
    p.add_argument("--threads", type=int, default=1,
                   help="worker stream cap for sampling subcommands")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ifsfourier",
        description="Harmonic analysis of affine IFS Hadamard-duality systems.",
        epilog="CSV schemas: attractor points are one row per point with d "
               "columns x0..x{d-1}; spectra one row per frequency (decimal); "
               "riesz --out is a (q, mass) concentration curve. All floats "
               "are printed at 17 significant digits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-hadamard", help="verify a (B, L, R) duality system")
    _add_system_args(p)
    p.add_argument("--horizon", type=int, default=16,
                   help="integrality horizon for non-integer data")
    p.set_defaults(fn=cmd_check_hadamard)

    p = sub.add_parser("cycles", help="enumerate W-cycles exactly")
    _add_system_args(p)
    p.add_argument("--all", action="store_true", help="include non-W cycles")
    p.set_defaults(fn=cmd_cycles)

    p = sub.add_parser("spectrum", help="generate the candidate spectrum")
    _add_system_args(p, levels=True)
    p.add_argument("--cap", type=int, default=100_000)
    p.add_argument("--count", type=int, default=None, help="truncate printed elements")
    p.add_argument("--out", help="CSV output path")
    p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser("verify-onb", help="orthogonality and completeness of a window")
    _add_system_args(p, levels=True)
    p.add_argument("--window", type=int, default=50)
    p.add_argument("--x", action="append", default=[], help="completeness probe point")
    p.add_argument("--grid", action="store_true",
                   help="also analyze the quarter-integer frequency grid (d=1)")
    p.add_argument("--grid-span", type=int, default=100)
    p.set_defaults(fn=cmd_verify_onb)

    p = sub.add_parser("mu-hat", help="evaluate the Fourier transform of mu_B")
    _add_system_args(p)
    p.add_argument("--t", required=True, help="frequency, comma separated")
    p.set_defaults(fn=cmd_mu_hat)

    p = sub.add_parser("attractor", help="chaos-game attractor sample")
    _add_system_args(p)
    p.add_argument("--view", choices=("B", "L"), default="B")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--out", help="CSV output path")
    p.set_defaults(fn=cmd_attractor)

    p = sub.add_parser("harmonic", help="estimate the cycle harmonic functions h_C")
    _add_system_args(p)
    p.add_argument("--x", required=True, help="start point, comma separated")
    p.add_argument("--paths", type=int, default=100_000)
    p.add_argument("--length", type=int, default=64)
    p.add_argument("--depth", type=int, default=10, help="closed-form word depth")
    p.add_argument("--words-out", help="CSV path for raw sampled words (<= 10^4 paths)")
    p.set_defaults(fn=cmd_harmonic)

    p = sub.add_parser("riesz", help="scale-3 Riesz product chain on the circle")
    p.add_argument("--steps", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=32)
    p.add_argument("--fourier", type=int, nargs="*", default=[1, 6])
    p.add_argument("--out", help="CSV path for the concentration curve")
    p.set_defaults(fn=cmd_riesz)

    p = sub.add_parser("example", help="list registry examples or dump one config")
    p.add_argument("name", nargs="?", default=None)
    p.set_defaults(fn=cmd_example)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_BAD_INPUT if exc.code not in (0,) else 0
    try:
        return args.fn(args)
    except (ConfigError, FileNotFoundError, KeyError) as exc:
        print(dumps({"error": str(exc)}), end="", file=sys.stderr)
        return EXIT_BAD_INPUT
    except ValueError as exc:
        print(dumps({"error": str(exc)}), end="", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands::

    bivar variation --fn FN --interval LO,HI --k K [--pairing NAME] [...]
    bivar bvnorm --f F --h H --interval LO,HI --k K [--pairing NAME] [...]
    bivar check --suite {axioms,theorems,2g,all} [--trials N] [--seed N] [...]

Results go to stdout (JSON by default, CSV or pretty on request),
diagnostics to stderr.  Exit codes: 0 success/converged, 1 usage or
parse errors, 2 diverging, 3 budget exhausted, 4 check failures.
Identical argv and seed produce byte-identical stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .axioms import check_2G_axioms, check_pairing_axioms, check_variation_theorems
from .bv import BVFunction, bv_norm_with_details, bv_scale
from .errors import BivarError
from .functions import (
    Interval,
    catalog_ids,
    parse_constant_vector,
    parse_function,
    resolve_function,
)
from .spaces import PAIRING_FACTORIES, TwoNormPairing, pairing_by_name
from .variation import RefineConfig, estimate_variation


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # spec'd exit codes reserve 2 for "diverging"; argparse's default
    # error path exits 2, so route usage problems through exit 1 instead
    def error(self, message):  # noqa: D102
        raise _UsageError(message)


_DEFAULTS = {
    "pairing": None,
    "gain_tol": 1e-6,
    "max_points": 2 ** 20,
    "divergence_cap": 1e9,
    "divergence_levels": 8,
    "strategy": "dyadic",
    "output": "json",
    "seed": 0,
    "trials": 1000,
}

_CONFIG_KEYS = {
    "fn": str, "f": str, "h": str, "interval": str, "k": str,
    "pairing": str, "gain-tol": float, "max-points": int,
    "divergence-cap": float, "divergence-levels": int, "strategy": str,
    "output": str, "seed": int, "suite": str, "trials": int,
}


def _read_config_file(path: str) -> dict:
    values: dict = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise _UsageError(f"cannot read config file {path!r}: {exc}") from exc
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise _UsageError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, raw = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise _UsageError(f"{path}:{lineno}: unknown config key {key!r}")
        try:
            values[key.replace("-", "_")] = _CONFIG_KEYS[key](raw.strip())
        except ValueError as exc:
            raise _UsageError(f"{path}:{lineno}: bad value for {key!r}: {exc}") from exc
    return values


def _merged(args: argparse.Namespace) -> dict:
    """Built-in defaults, overridden by config file, overridden by flags."""
    merged = dict(_DEFAULTS)
    if getattr(args, "config", None):
        merged.update(_read_config_file(args.config))
    for key, value in vars(args).items():
        if value is not None and key not in ("command", "config"):
            merged[key] = value
    return merged


def _parse_interval(text: str) -> Interval:
    parts = text.split(",")
    if len(parts) != 2:
        raise _UsageError(f"--interval expects 'lo,hi', got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise _UsageError(f"--interval expects numbers, got {text!r}") from None
    return Interval(lo, hi)


def _pick_pairing(name: str | None, codomain_dim: int) -> TwoNormPairing:
    if name is not None:
        return pairing_by_name(name)
    if codomain_dim == 2:
        return pairing_by_name("euclidean-modulus")
    if codomain_dim == 1:
        return pairing_by_name("modulus-product")
    raise _UsageError(
        f"no built-in pairing for codomain dimension {codomain_dim}; use --pairing"
    )


def _refine_config(cfg: dict) -> RefineConfig:
    return RefineConfig(
        gain_tol=cfg["gain_tol"],
        max_points=cfg["max_points"],
        divergence_cap=cfg["divergence_cap"],
        divergence_levels=cfg["divergence_levels"],
        strategy=cfg["strategy"],
    )


def _emit(payload: dict, output: str, csv_rows) -> None:
    if output == "json":
        print(json.dumps(payload))
    elif output == "csv":
        header, rows = csv_rows
        print(header)
        for row in rows:
            print(",".join(str(x) for x in row))
    elif output == "pretty":
        print(json.dumps(payload, indent=2))
    else:
        raise _UsageError(f"unknown output format {output!r}")


_STATUS_EXIT = {"converged": 0, "diverging": 2, "budget_exhausted": 3}


def cmd_variation(args: argparse.Namespace) -> int:
    cfg = _merged(args)
    for flag in ("fn", "interval", "k"):
        if cfg.get(flag) is None:
            raise _UsageError(f"--{flag} is required")
    interval = _parse_interval(cfg["interval"])
    spec = resolve_function(cfg["fn"], domain=interval)
    pairing = _pick_pairing(cfg["pairing"], spec.codomain_dim)
    k = parse_constant_vector(cfg["k"])
    refine_cfg = _refine_config(cfg)
    est = estimate_variation(spec, pairing, k, refine_cfg)
    payload = est.as_dict(refine_cfg)
    _emit(payload, cfg["output"],
          ("level,points,sum", [(t.level, t.points, t.sum) for t in est.trace]))
    return _STATUS_EXIT[est.status]


def cmd_bvnorm(args: argparse.Namespace) -> int:
    cfg = _merged(args)
    for flag in ("f", "h", "interval", "k"):
        if cfg.get(flag) is None:
            raise _UsageError(f"--{flag} is required")
    interval = _parse_interval(cfg["interval"])
    f_spec = resolve_function(cfg["f"], domain=interval)
    h_spec = resolve_function(cfg["h"], domain=interval)
    if f_spec.codomain_dim != h_spec.codomain_dim:
        raise _UsageError(
            f"--f and --h codomain dimensions differ "
            f"({f_spec.codomain_dim} vs {h_spec.codomain_dim})"
        )
    pairing = _pick_pairing(cfg["pairing"], f_spec.codomain_dim)
    k = parse_constant_vector(cfg["k"])
    refine_cfg = _refine_config(cfg)

    est_f = estimate_variation(f_spec, pairing, k, refine_cfg)
    est_h = estimate_variation(h_spec, pairing, k, refine_cfg)
    statuses = (est_f.status, est_h.status)
    if statuses != ("converged", "converged"):
        payload = {"value": None, "Vf": est_f.value, "Vh": est_h.value,
                   "status_f": est_f.status, "status_h": est_h.status}
        _emit(payload, cfg["output"], ("value,Vf,Vh", [("", est_f.value, est_h.value)]))
        print(f"variation did not converge: f={est_f.status}, h={est_h.status}",
              file=sys.stderr)
        if "diverging" in statuses:
            return 2
        return 3

    f_bv = BVFunction(spec=f_spec, pairing=pairing, k=k, variation=est_f)
    h_bv = BVFunction(spec=h_spec, pairing=pairing, k=k, variation=est_h)
    payload = bv_norm_with_details(f_bv, h_bv)
    _emit(payload, cfg["output"],
          ("value,Vf,Vh", [(payload["value"], payload["Vf"], payload["Vh"])]))
    return 0


def _default_2g_functions(trials_cfg: RefineConfig | None = None) -> list[BVFunction]:
    interval = Interval(1.0, 2.0)
    pairing = pairing_by_name("euclidean-modulus")
    k = parse_constant_vector("sqrt(2)")
    linear = resolve_function("linear_ii", domain=interval)
    curved = parse_function("(i*t, i*t^2)", domain=interval)
    const = resolve_function("const_c", domain=interval)
    base = BVFunction.build(linear, pairing, k, trials_cfg)
    return [
        base,
        bv_scale(2, base),
        BVFunction.build(curved, pairing, k, trials_cfg),
        BVFunction.build(const, pairing, k, trials_cfg),
    ]


def cmd_check(args: argparse.Namespace) -> int:
    cfg = _merged(args)
    suite = cfg.get("suite")
    if suite not in ("axioms", "theorems", "2g", "all"):
        raise _UsageError(f"--suite must be one of axioms, theorems, 2g, all; got {suite!r}")
    trials, seed = cfg["trials"], cfg["seed"]
    if trials < 1:
        raise _UsageError(f"--trials must be positive, got {trials}")

    reports: list[tuple[str, object]] = []
    if suite in ("axioms", "all"):
        names = [cfg["pairing"]] if cfg["pairing"] else ["euclidean-modulus", "modulus-product"]
        for name in names:
            if name not in PAIRING_FACTORIES:
                raise _UsageError(f"unknown pairing {name!r}")
            pairing = pairing_by_name(name)
            report = check_pairing_axioms(
                pairing, symmetric=(pairing.dim_a == pairing.dim_b),
                trials=trials, seed=seed,
            )
            reports.append((f"axioms[{name}]", report))
    if suite in ("theorems", "all"):
        reports.append(
            ("theorems", check_variation_theorems(catalog_ids(), trials=trials, seed=seed))
        )
    if suite in ("2g", "all"):
        fs = _default_2g_functions()
        reports.append(("2g", check_2G_axioms(fs, trials=trials, seed=seed)))

    failures = sum(r.total_failures for _, r in reports)
    payload = {
        "suite": suite,
        "seed": seed,
        "failures": failures,
        "reports": [{"suite": name, **report.as_dict()} for name, report in reports],
    }
    rows = [
        (name, c.name, c.trials, c.failures)
        for name, report in reports
        for c in report.checks
    ]
    _emit(payload, cfg["output"], ("suite,check,trials,failures", rows))
    return 0 if failures == 0 else 4


def build_parser() -> _Parser:
    parser = _Parser(prog="bivar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: _Parser) -> None:
        p.add_argument("--output", choices=("json", "csv", "pretty"), default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--config", default=None, help="key=value file; flags override")

    def add_refine(p: _Parser) -> None:
        p.add_argument("--pairing", default=None, choices=sorted(PAIRING_FACTORIES))
        p.add_argument("--gain-tol", dest="gain_tol", type=float, default=None)
        p.add_argument("--max-points", dest="max_points", type=int, default=None)
        p.add_argument("--divergence-cap", dest="divergence_cap", type=float, default=None)
        p.add_argument("--divergence-levels", dest="divergence_levels", type=int, default=None)
        p.add_argument("--strategy", choices=("dyadic", "greedy"), default=None)

    pv = sub.add_parser("variation", help="estimate the 2-variation of a function")
    pv.add_argument("--fn", default=None, help="catalog id or expression in t")
    pv.add_argument("--interval", default=None, help="lo,hi")
    pv.add_argument("--k", default=None, help="constant expression, e.g. 'sqrt(2)'")
    add_refine(pv)
    add_common(pv)
    pv.set_defaults(func=cmd_variation)

    pb = sub.add_parser("bvnorm", help="symmetric two-norm of two BV functions")
    pb.add_argument("--f", default=None)
    pb.add_argument("--h", default=None)
    pb.add_argument("--interval", default=None)
    pb.add_argument("--k", default=None)
    add_refine(pb)
    add_common(pb)
    pb.set_defaults(func=cmd_bvnorm)

    pc = sub.add_parser("check", help="run the axiom/theorem harness")
    pc.add_argument("--suite", default=None)
    pc.add_argument("--trials", type=int, default=None)
    pc.add_argument("--pairing", default=None)
    add_common(pc)
    pc.set_defaults(func=cmd_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"bivar: error: {exc}", file=sys.stderr)
        return 1
    except BivarError as exc:
        print(f"bivar: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point.

Exit codes: 0 success / all criteria pass, 1 criteria failure, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import BesovError, ParameterError
from .fileio import read_function, write_function
from .grid import Grid
from .localization import Budget, LocalizationParams, besov_norm_localized, besov_norm_unif
from .params import SmoothnessParams, parse_exponent
from .experiments.report import jsonable, write_reports

CHARS = ("fourier", "difference", "wavelet")


class UsageError(Exception):
    pass


def _grid_arg(text):
    try:
        d, W, r = (int(t) for t in text.split(","))
        return Grid(d, W, r)
    except (ValueError, BesovError) as exc:
        raise argparse.ArgumentTypeError(f"--grid expects d,W,r ({exc})") from exc


def _params(ns):
    return SmoothnessParams(ns.s, parse_exponent(ns.p), parse_exponent(ns.q), ns.m)


def _breakdown(f, params, char):
    from .bands import besov_norm_fourier
    from .smoothness import besov_norm_difference
    from .wavelet import besov_norm_wavelet, analyze

    if char == "fourier":
        return besov_norm_fourier(f, params)
    if char == "difference":
        return besov_norm_difference(f, params)
    return besov_norm_wavelet(analyze(f), params)


def _emit(obj, out):
    text = json.dumps(jsonable(obj), indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    print(text)


def cmd_norm(ns):
    f = read_function(ns.file)
    params = _params(ns)
    if ns.v is not None:
        v = parse_exponent(ns.v)
        value = besov_norm_localized(f, LocalizationParams(params, v), ns.char)
        _emit({"characterization": ns.char, "localized": True, "v": v, **params.as_dict(), "total": value}, ns.out)
        return 0
    out = _breakdown(f, params, ns.char).to_dict()
    if ns.compare:
        other = _breakdown(f, params, ns.compare).total
        out["compare"] = {
            "characterization": ns.compare,
            "total": other,
            "ratio": out["total"] / other if other else None,
        }
    _emit(out, ns.out)
    return 0


def cmd_compare(ns):
    f = read_function(ns.file)
    params = _params(ns)
    totals = {c: _breakdown(f, params, c).total for c in CHARS}
    ratios = {f"{a}/{b}": (totals[a] / totals[b] if totals[b] else None)
              for i, a in enumerate(CHARS) for b in CHARS[i + 1:]}
    _emit({**params.as_dict(), "totals": totals, "ratios": ratios,
           "unif": besov_norm_unif(f, params)}, ns.out)
    return 0


def load_config(path):
    try:
        cfg = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    return cfg


def _grids_from(value):
    if value is None:
        return None
    from .experiments.suites import DEFAULT_GRIDS

    try:
        if isinstance(value, dict):
            return {k: Grid(*v) for k, v in value.items()}
        g = Grid(*value) if not isinstance(value, Grid) else value
    except (TypeError, BesovError) as exc:
        raise UsageError(f"invalid grid {value!r}: {exc}") from exc
    return {role: g for role in DEFAULT_GRIDS}


def _validate_params(items, grids):
    d = max((g.d for g in (grids or {}).values()), default=1)
    for item in items:
        p = SmoothnessParams(item["s"], parse_exponent(item["p"]), parse_exponent(item["q"]), item.get("m"))
        p.require_difference(d)
        if "v" in item:
            LocalizationParams(p, parse_exponent(item["v"]))


def cmd_experiment(ns):
    from .experiments.suites import ALIASES, SUITES, run_suite

    cfg = load_config(ns.config) if ns.config else {}
    suite = ns.suite or cfg.get("suite")
    if suite is None:
        raise UsageError(f"no suite given; available: {', '.join(SUITES)}")
    if ALIASES.get(suite, suite) not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; available: {', '.join(SUITES)}")
    seed = ns.seed if ns.seed is not None else int(cfg.get("seed", 0))
    grids = _grids_from(ns.grid if ns.grid is not None else cfg.get("grid"))
    budget = cfg.get("budget")
    if ns.budget is not None:
        budget = ns.budget
    if isinstance(budget, dict):
        budget = Budget(**budget)
    elif budget is not None:
        budget = Budget(n_random=int(budget))
    _validate_params(cfg.get("params", []), grids)
    out = ns.out or cfg.get("out") or "reports"

    result = run_suite(suite, seed=seed, grids=grids, budget=budget)
    csv_path, json_path = write_reports(result, out)
    for name, c in result.criteria.items():
        print(f"{'PASS' if c['pass'] else 'FAIL'} {name}")
    print(f"wrote {csv_path} and {json_path}")
    return 0 if result.passed else 1


def cmd_extremal(ns):
    from .experiments import generators as gen

    grid = ns.grid
    params = _params(ns)
    if ns.kind == "bump-train":
        count = ns.count
        f = gen.bump_train(grid, [1.0] * count, gen.train_spacing(grid, count, params.m))
        g = None
    else:
        levels = gen.plateau_levels(grid)
        if ns.levels:
            lo, hi = (int(t) for t in ns.levels.split(","))
            levels = [j for j in levels if lo <= j <= hi]
        if not levels:
            raise UsageError(f"no admissible wavelet levels on grid {grid}")
        if ns.kind == "lacunary":
            expo = params.s + grid.d / 2 - grid.d * params.inv_p
            alphas = {j: 2.0 ** (-j * expo) for j in levels}
            f = gen.lacunary_wavelet_series(grid, alphas, gen.level_cells(levels, 4))
            g = None
        else:
            f, g, _ = gen.multiplier_pair(grid, levels, [1.0] * len(levels), params)
    out = Path(ns.out)
    write_function(f, out)
    written = [str(out)]
    if g is not None:
        gpath = out.with_name(out.stem + "_g" + out.suffix)
        write_function(g, gpath)
        written.append(str(gpath))
    print("\n".join(written))
    return 0


def cmd_gen(ns):
    from .experiments.generators import standard_family

    out = Path(ns.out)
    out.mkdir(parents=True, exist_ok=True)
    index = []
    for n, (label, f) in enumerate(standard_family(ns.grid, ns.seed)):
        name = f"{n:02d}_{label}.bsvf"
        write_function(f, out / name)
        index.append({"file": name, "label": label})
    (out / "index.json").write_text(json.dumps({"grid": str(ns.grid), "seed": ns.seed, "members": index}, indent=2) + "\n")
    print(f"wrote {len(index)} functions to {out}")
    return 0


def _add_params(p, need_q=True):
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=need_q, default="2")
    p.add_argument("--m", type=int)


def build_parser():
    ap = argparse.ArgumentParser(prog="besovlab", description="Besov quasi-norms on periodic grids")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", help="norm of a stored function")
    p.add_argument("file")
    p.add_argument("--char", choices=CHARS, default="difference")
    _add_params(p)
    p.add_argument("--v", help="localized norm with this v")
    p.add_argument("--compare", choices=CHARS, help="second characterization; reports the ratio")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_norm)

    p = sub.add_parser("compare", help="all three characterizations and their ratios")
    p.add_argument("file")
    _add_params(p)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("experiment", help="run a named suite")
    p.add_argument("config", nargs="?", help="JSON config file")
    p.add_argument("--suite")
    p.add_argument("--grid", type=_grid_arg)
    p.add_argument("--seed", type=int)
    p.add_argument("--budget", type=int, help="random candidates for the multiplier sup search")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_experiment)

    p = sub.add_parser("extremal", help="write an extremal construction")
    p.add_argument("kind", choices=("bump-train", "lacunary", "multiplier-pair"))
    p.add_argument("--grid", type=_grid_arg, required=True)
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--levels", help="M,N level range")
    p.add_argument("--s", type=float, default=1.5)
    p.add_argument("--p", default="2")
    p.add_argument("--q", default="2")
    p.add_argument("--m", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_extremal)

    p = sub.add_parser("gen", help="write the standard test family")
    p.add_argument("--grid", type=_grid_arg, default=Grid(1, 64, 6))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_gen)
    return ap


def main(argv=None):
    ap = build_parser()
    ns = ap.parse_args(argv)
    try:
        return ns.fn(ns)
    except ParameterError as exc:
        hyp = f" ({exc.hypothesis})" if exc.hypothesis else ""
        print(f"error: {exc}{hyp}", file=sys.stderr)
        return 2
    except (UsageError, BesovError, KeyError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

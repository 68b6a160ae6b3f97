"""Command-line driver.

Parameters come from built-in defaults, then an optional YAML config file
(``--config``), then command-line flags; later sources win.  Every run
emits a JSON report with ``"schema": 1``.  Exit codes: 0 success,
2 invalid config or input, 3 verification failure, 4 instance too large.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

import yaml

from . import checks, obstruction, ramsey
from .homalg import (ModuleMap, ProductRing, Split, build_f_RS, check_retraction, check_smith,
                     has_left_inverse, indivisible_check, ring_from_name, smith_normal_form,
                     sym_truncation)
from .homalg.rings import UnivariatePolys
from .homalg.split import check_bezout_certificate, coker
from .linsolve import Feasible
from .nabla import (IsPolynomial, NoBound, TabulatedFunction, degree_detect, nabla_1d,
                    newton_interpolate, polynomiality_test)
from .scalars import QQ, format_scalar, parse_field, parse_scalar
from .tower import Tower

SCHEMA = 1
EXIT_OK, EXIT_CONFIG, EXIT_VERIFY, EXIT_TOO_LARGE = 0, 2, 3, 4


class ConfigError(ValueError):
    pass


DEFAULTS = {
    "nabla-check": {"field": "QQ", "nodes": None, "values": None, "h_file": None, "degree": 1},
    "interpolate": {"field": "QQ", "nodes": None, "values": None, "h_file": None},
    "tower-cert": {"nodes": [0, 1, 2], "degree": 1},
    "ramsey-find": {"coloring": None, "builtin": None, "params": {}, "q": None, "sizes": None,
                    "disjoint": False},
    "snf": {"ring": "ZZ", "matrix": None},
    "split-check": {"ring": "QQ[x]", "matrix": None, "degree_bound": None, "points": None},
    "indivisible": {"ring": "QQ[x]", "elements": None, "points": None, "idempotents": None},
    "sym-trunc": {"ring": "QQ[x]", "eta": ["1", "0"], "n_max": 3},
    "obstruction-run": {"n": 1, "D": 1, "nodes": None, "h": "tower", "h_file": None},
    "obstruction-sweep": {"n": 1, "D": [0, 1, 2], "sizes": [1, 2, 3, 4], "h": "tower",
                          "nodes": None, "mono_box": True},
    "verify-all": {"only": None},
}

LIMIT_DEFAULTS = {"max_n": 3, "max_grid": 8, "max_unknowns": 5000, "max_ramsey_ground": 12,
                  "max_matrix": 12}


# ---------------------------------------------------------------------------
# input helpers


def _list(value, name):
    if value is None:
        return None
    if isinstance(value, str):
        return [v.strip() for v in value.split(",") if v.strip()]
    if isinstance(value, (list, tuple)):
        return list(value)
    raise ConfigError(f"{name} must be a list or comma-separated string")


def _scalars(values, field, name):
    try:
        return [parse_scalar(str(v), field) for v in _list(values, name)]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad {name}: {exc}") from None


def _read_h_csv(path, field):
    """CSV with columns node,value (header optional)."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    table = {}
    for row in csv.reader(io.StringIO(text)):
        if not row or row[0].strip().startswith("#"):
            continue
        if row[0].strip().lower() == "node":
            continue
        if len(row) != 2:
            raise ConfigError(f"{path}: expected node,value rows, got {row}")
        try:
            table[parse_scalar(row[0].strip(), field)] = parse_scalar(row[1].strip(), field)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise ConfigError(f"{path}: {exc}") from None
    if not table:
        raise ConfigError(f"{path}: empty table")
    return table


def _line_table(cfg):
    F = parse_field(cfg["field"])
    if cfg.get("h_file"):
        table = _read_h_csv(cfg["h_file"], F)
        nodes = list(table)
        values = [table[s] for s in nodes]
    else:
        if cfg.get("nodes") is None or cfg.get("values") is None:
            raise ConfigError("give nodes and values, or h_file")
        nodes = _scalars(cfg["nodes"], F, "nodes")
        values = _scalars(cfg["values"], F, "values")
    if len(nodes) != len(values):
        raise ConfigError("need one value per node")
    if len(set(nodes)) != len(nodes):
        raise ConfigError("nodes must be distinct")
    return TabulatedFunction.line(nodes, values)


def _matrix(ring, data, name="matrix"):
    if data is None:
        raise ConfigError(f"missing {name}")
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{name} is not JSON: {exc}") from None
    try:
        rows = [[ring.parse(str(a)) for a in row] for row in data]
        return ModuleMap(ring, rows)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad {name}: {exc}") from None


def _ring(name):
    try:
        return ring_from_name(name)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _limit(limits, key, value, what):
    if value > limits[key]:
        raise obstruction.InstanceTooLarge(f"{what} = {value} exceeds {key} = {limits[key]}")


# ---------------------------------------------------------------------------
# commands; each returns (result dict, verified bool)


def cmd_nabla_check(cfg, limits, seed):
    f = _line_table(cfg)
    d = int(cfg["degree"])
    nodes = f.grid.nodes("s")
    if len(nodes) < d + 2:
        raise ConfigError(f"{len(nodes)} nodes cannot decide degree <= {d}")
    got = polynomiality_test(f, d)
    if isinstance(got, IsPolynomial):
        res = {"verdict": "polynomial", "interpolant": str(got.witness)}
        ok = all(got.witness.evaluate((s,)) == f[s] for s in nodes)
    else:
        res = {"verdict": "not polynomial", "nodes": [format_scalar(s) for s in got.witness],
               "nabla": format_scalar(got.value)}
        ok = bool(nabla_1d(lambda s: f[s], got.witness))
    res["degree_bound"] = d
    return res, ok


def cmd_interpolate(cfg, limits, seed):
    f = _line_table(cfg)
    nodes = f.grid.nodes("s")
    p = newton_interpolate(nodes, [f[s] for s in nodes], "x", f.field)
    deg = degree_detect(f)
    ok = all(p.evaluate((s,)) == f[s] for s in nodes)
    return {"interpolant": str(p), "degree": None if deg is NoBound else deg}, ok


def cmd_tower_cert(cfg, limits, seed):
    S = _scalars(cfg["nodes"], QQ, "nodes")
    _limit(limits, "max_grid", len(S), "|S|")
    t = Tower()
    try:
        w = t.nonpoly_certificate(S, int(cfg["degree"]))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    again = nabla_1d(Tower().register, w.nodes)
    return {"nodes": [format_scalar(s) for s in w.nodes], "witness": str(w.value),
            "stage": w.stage, "registry": t.dump()}, bool(again) and again == w.value


def cmd_ramsey_find(cfg, limits, seed):
    try:
        if cfg.get("coloring"):
            c = ramsey.load_coloring(Path(cfg["coloring"]).read_text())
        elif cfg.get("builtin"):
            params = dict(cfg.get("params") or {})
            if cfg["builtin"] == "random":
                params.setdefault("seed", seed)
            c = ramsey.builtin(cfg["builtin"], **params)
        else:
            raise ConfigError("give coloring (JSON file) or builtin")
    except OSError as exc:
        raise ConfigError(f"cannot read colouring: {exc}") from None
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise ConfigError(f"malformed colouring: {exc}") from None
    _limit(limits, "max_ramsey_ground", len(c.ground), "ground set size")
    res = {"ground": len(c.ground), "arity": c.arity, "box": c.box}
    if c.box:
        sizes = [int(v) for v in _list(cfg.get("sizes"), "sizes") or [2] * c.arity]
        got = ramsey.find_mono_box(c, sizes, bool(cfg.get("disjoint")))
        ok = isinstance(got, ramsey.Exhausted) or ramsey.verify_mono_box(
            c, got.sides, got.color, bool(cfg.get("disjoint")))
    else:
        q = int(cfg["q"]) if cfg.get("q") is not None else c.arity + 1
        got = ramsey.find_mono_subset(c, q)
        ok = isinstance(got, ramsey.Exhausted) or ramsey.verify_mono_subset(c, got.subset,
                                                                            got.color)
    res["result"] = got.to_json()
    return res, ok


def cmd_snf(cfg, limits, seed):
    R = _ring(cfg["ring"])
    if not R.euclidean:
        raise ConfigError(f"Smith normal form needs ZZ or k[x], not {R}")
    m = _matrix(R, cfg["matrix"])
    _limit(limits, "max_matrix", max(m.shape), "matrix dimension")
    sf = smith_normal_form(m)
    problems = check_smith(m, sf)
    return {"U": sf.U.to_json()["matrix"], "D": sf.D.to_json()["matrix"],
            "V": sf.V.to_json()["matrix"],
            "invariant_factors": [R.format(d) for d in sf.diagonal if d],
            "problems": problems}, not problems


def cmd_split_check(cfg, limits, seed):
    R = _ring(cfg["ring"])
    if cfg.get("points") is not None:
        if not isinstance(R, UnivariatePolys):
            raise ConfigError("points need a univariate ring")
        pts = _scalars(cfg["points"], R.field, "points")
        m = build_f_RS(R, [R.x - s for s in pts])
    else:
        m = _matrix(R, cfg["matrix"])
    _limit(limits, "max_matrix", max(m.shape), "matrix dimension")
    bound = cfg.get("degree_bound")
    if not R.euclidean and bound is None:
        raise ConfigError("multivariate split check needs degree_bound")
    got = has_left_inverse(m, None if bound is None else int(bound))
    if isinstance(got, Split):
        return {"verdict": "Split", "retraction": got.retraction.to_json()["matrix"],
                "map": m.to_json()["matrix"]}, check_retraction(m, got.retraction)
    res = {"verdict": "NoSplit", "reason": got.reason, "map": m.to_json()["matrix"]}
    if not R.euclidean:
        res["scope"] = f"retractions of total degree <= {bound} only"
    return res, True


def cmd_indivisible(cfg, limits, seed):
    if cfg.get("idempotents") is not None:
        spec = cfg["idempotents"]
        p, n = int(spec.get("p", 2)), int(spec["size"])
        R = ProductRing(p, n)
        elems = {s: tuple(0 if t == s else 1 for t in range(n)) for s in range(n)}
    else:
        R = _ring(cfg["ring"])
        if not isinstance(R, UnivariatePolys):
            raise ConfigError("indivisible needs a univariate ring or idempotents")
        if cfg.get("points") is not None:
            pts = _scalars(cfg["points"], R.field, "points")
            elems = {format_scalar(s): R.x - s for s in pts}
        else:
            raw = _list(cfg.get("elements"), "elements")
            if not raw:
                raise ConfigError("give elements, points or idempotents")
            elems = {str(e): R.parse(str(e)) for e in raw}
    try:
        v = indivisible_check(R, elems)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    ok = True
    for cert in v.certificates:
        a, b = (elems[s] for s in cert["pair"])
        u, w = (R.parse(c) for c in cert["coefficients"])
        ok &= check_bezout_certificate(R, a, b, (u, w))
    return {"passed": v.passed, "checks": v.checks, "certificates": v.certificates,
            "reason": v.reason}, ok


def cmd_sym_trunc(cfg, limits, seed):
    R = _ring(cfg["ring"])
    if not R.euclidean:
        raise ConfigError("Sym truncation needs ZZ or k[x]")
    eta = _matrix(R, [[e] for e in _list(cfg["eta"], "eta")], "eta")
    n_max = int(cfg["n_max"])
    _limit(limits, "max_matrix", n_max, "n_max")
    try:
        stages = sym_truncation(eta, n_max)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    M = coker(eta)
    out = [{"n": st.n, "sym_rank": st.sym_rank,
            "M_prime": st.cokernel.invariants().describe(R),
            "sym_M_next": st.sym_quotient.invariants().describe(R),
            "checks": st.checks, "exact": st.exact} for st in stages]
    first = stages[0].cokernel.isomorphic(M) if stages else True
    return {"stages": out, "M": M.invariants().describe(R), "M_prime_1_is_M": first}, \
        all(st.exact for st in stages) and first


def _obstruction_problem(cfg, seed):
    n = int(cfg["n"])
    D = int(cfg["D"])
    table = None
    if cfg.get("h_file"):
        table = _read_h_csv(cfg["h_file"], QQ)
    if cfg.get("nodes") is not None:
        nodes = _scalars(cfg["nodes"], QQ, "nodes")
    elif table is not None:
        nodes = list(table)
    else:
        raise ConfigError("give nodes or h_file")
    source = "table" if table is not None else cfg["h"]
    try:
        H = obstruction.make_h(source, nodes, seed, table)
        return obstruction.RetractionProblem(n, [nodes] * n, H, D), source
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"bad obstruction instance: {exc}") from None


def cmd_obstruction_run(cfg, limits, seed):
    p, source = _obstruction_problem(cfg, seed)
    obstruction.SizeLimits(limits["max_n"], limits["max_grid"], limits["max_unknowns"]).check(p)
    system = obstruction.compile(p)
    verdict = obstruction.solve(system)
    res = {"problem": p.to_json(), "h_source": source,
           "generic_modulo_seed": source == "random",
           "system": {"equations": system.shape[0], "unknowns": system.shape[1]}}
    res.update(obstruction.verdict_to_json(p, system, verdict))
    if isinstance(verdict, Feasible):
        ok = (system.satisfied_by(verdict.assignment)
              and obstruction.check_polynomial_identity(p, verdict.assignment))
    else:
        ok = system.check_certificate(verdict.certificate)
    if all(len(S) >= p.D + 2 for S in p.sample_sets):
        w = obstruction.nabla_witness(p)
        res["witness"] = format_scalar(w)
        ok &= not (w and isinstance(verdict, Feasible))
    return res, ok


def cmd_obstruction_sweep(cfg, limits, seed):
    nodes = _scalars(cfg["nodes"], QQ, "nodes") if cfg.get("nodes") is not None else None
    lim = obstruction.SizeLimits(limits["max_n"], limits["max_grid"], limits["max_unknowns"])
    try:
        rep = obstruction.sweep(int(cfg["n"]), [int(d) for d in _list(cfg["D"], "D")],
                                [int(s) for s in _list(cfg["sizes"], "sizes")], cfg["h"], seed,
                                nodes, lim, bool(cfg.get("mono_box", True)))
    except obstruction.InstanceTooLarge:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    rep.pop("elapsed", None)
    return rep, rep["all_consistent"]


def cmd_verify_all(cfg, limits, seed):
    only = _list(cfg.get("only"), "only")
    unknown = set(only or ()) - set(checks.CHECKS)
    if unknown:
        raise ConfigError(f"unknown checks {sorted(unknown)}")
    results = checks.verify_all(seed, only)
    return {"checks": results}, all(r["passed"] for r in results)


COMMANDS = {
    "nabla-check": cmd_nabla_check,
    "interpolate": cmd_interpolate,
    "tower-cert": cmd_tower_cert,
    "ramsey-find": cmd_ramsey_find,
    "snf": cmd_snf,
    "split-check": cmd_split_check,
    "indivisible": cmd_indivisible,
    "sym-trunc": cmd_sym_trunc,
    "obstruction-run": cmd_obstruction_run,
    "obstruction-sweep": cmd_obstruction_sweep,
    "verify-all": cmd_verify_all,
}


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML file; flags override its values")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--output", "-o", help="write the JSON report here (default stdout)")
    common.add_argument("--csv", help="also export the main table as CSV")
    common.add_argument("--no-timing", action="store_true",
                        help="omit wall-clock timing so reports are byte-identical")

    parser = argparse.ArgumentParser(prog="nablakit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, *flags):
        p = sub.add_parser(name, parents=[common])
        for flag, kw in flags:
            p.add_argument(flag, default=None, **kw)
        return p

    line = [("--field", {}), ("--nodes", {}), ("--values", {}), ("--h-file", {})]
    add("nabla-check", *line, ("--degree", {"type": int}))
    add("interpolate", *line)
    add("tower-cert", ("--nodes", {}), ("--degree", {"type": int}))
    add("ramsey-find", ("--coloring", {}), ("--builtin", {}), ("--params", {"type": json.loads}),
        ("--q", {"type": int}), ("--sizes", {}), ("--disjoint", {"action": "store_const",
                                                               "const": True}))
    add("snf", ("--ring", {}), ("--matrix", {}))
    add("split-check", ("--ring", {}), ("--matrix", {}), ("--degree-bound", {"type": int}),
        ("--points", {}))
    add("indivisible", ("--ring", {}), ("--elements", {}), ("--points", {}),
        ("--idempotents", {"type": int, "metavar": "SIZE"}))
    add("sym-trunc", ("--ring", {}), ("--eta", {}), ("--n-max", {"type": int}))
    add("obstruction-run", ("--n", {"type": int}), ("--D", {"type": int}), ("--nodes", {}),
        ("--h", {}), ("--h-file", {}))
    add("obstruction-sweep", ("--n", {"type": int}), ("--D", {}), ("--sizes", {}),
        ("--h", {}), ("--nodes", {}), ("--no-mono-box", {"action": "store_const",
                                                          "const": True}))
    add("verify-all", ("--only", {}))
    return parser


_COMMON = {"config", "seed", "output", "csv", "no_timing", "command"}


def resolve_config(args) -> dict:
    """defaults <- YAML file <- flags."""
    cmd = args.command
    cfg = dict(DEFAULTS[cmd])
    limits = dict(LIMIT_DEFAULTS)
    seed = 0
    if args.config:
        try:
            data = yaml.safe_load(Path(args.config).read_text()) or {}
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        except yaml.YAMLError as exc:
            raise ConfigError(f"config is not valid YAML: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config must be a mapping")
        if data.get("command", cmd) != cmd:
            raise ConfigError(f"config is for {data['command']!r}, not {cmd!r}")
        seed = data.get("seed", seed)
        limits.update(data.get("limits") or {})
        params = data.get("params", {k: v for k, v in data.items()
                                     if k not in ("command", "seed", "limits")})
        unknown = set(params) - set(cfg)
        if unknown:
            raise ConfigError(f"unknown parameters for {cmd}: {sorted(unknown)}")
        cfg.update(params)
    for key, value in vars(args).items():
        if key in _COMMON or value is None:
            continue
        if key == "no_mono_box":
            cfg["mono_box"] = False
        elif key == "idempotents":
            cfg["idempotents"] = {"size": value, "p": 2}
        else:
            cfg[key] = value
    if args.seed is not None:
        seed = args.seed
    if not isinstance(seed, int):
        raise ConfigError("seed must be an integer")
    unknown = set(limits) - set(LIMIT_DEFAULTS)
    if unknown:
        raise ConfigError(f"unknown limits {sorted(unknown)}")
    return {"command": cmd, "seed": seed, "params": cfg, "limits": limits}


def _csv_rows(command, result):
    if command == "obstruction-sweep":
        keys = ["grid_size", "D", "solver", "witness", "consistent"]
        return keys, [[r.get(k) for k in keys] for r in result["instances"]]
    if command == "verify-all":
        return ["check", "passed", "detail"], [[r["check"], r["passed"], r["detail"]]
                                               for r in result["checks"]]
    if command == "sym-trunc":
        keys = ["n", "sym_rank", "M_prime", "sym_M_next", "exact"]
        return keys, [[r[k] for k in keys] for r in result["stages"]]
    return None


def run(config: dict, timing: bool = True) -> tuple[dict, int]:
    start = time.perf_counter()
    cmd = config["command"]
    try:
        result, verified = COMMANDS[cmd](config["params"], config["limits"], config["seed"])
        status = EXIT_OK if verified else EXIT_VERIFY
        error = None if verified else "certificate re-verification failed"
    except obstruction.InstanceTooLarge as exc:
        result, verified, status, error = None, False, EXIT_TOO_LARGE, str(exc)
    except ConfigError as exc:
        result, verified, status, error = None, False, EXIT_CONFIG, str(exc)
    report = {"schema": SCHEMA, "command": cmd, "seed": config["seed"],
              "config": {"params": config["params"], "limits": config["limits"]},
              "status": status, "verified": verified, "result": result}
    if error:
        report["error"] = error
    if timing:
        report["timing"] = {"wall_seconds": round(time.perf_counter() - start, 6)}
    return report, status


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args)
    except ConfigError as exc:
        print(f"nablakit: invalid config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    report, status = run(config, timing=not args.no_timing)
    text = json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    if args.csv and report["result"] is not None:
        table = _csv_rows(config["command"], report["result"])
        if table:
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(table[0])
            w.writerows(table[1])
            Path(args.csv).write_text(buf.getvalue())
    if "error" in report:
        print(f"nablakit: {report['error']}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())

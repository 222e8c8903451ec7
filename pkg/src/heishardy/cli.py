"""Batch command-line interface: every computation as a reproducible run.

Commands
    dist        boundary distance (and nearest points) for one point
    beta        the torus radii constant beta(p, n) and its case data
    verify      superharmonicity certificates (torus W scan, gauge/CC sign scans)
    quotient    Hardy Rayleigh quotients / eps sweeps / uncertainty product
    hconcavity  weak H-concavity sampling and the gauge counterexample search

Global flags: --config <json>, --seed <int>, --out <path>, --format json|csv,
--threads <int>.  Precedence: command-line flags override config-file values
override defaults; the resolved configuration is echoed into every output
(minus execution-only keys such as threads and out, so reports are
byte-identical across thread counts).

Exit codes: 0 success/pass, 1 certificate or expectation failure, 2 invalid
configuration, 3 unsupported configuration, 4 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from .calculus import beta_details, cc_halfspace_laplacian, closed_form_plap_gauge, torus_certificate
from .distance import (
    HalfSpace,
    NearestPointResult,
    Torus,
    UnsupportedConfiguration,
    boundary_distance,
    domain_from_config,
    nearest_point_cc,
    nearest_point_gauge,
    nearest_point_torus_euclidean,
)
from .group import HeisenbergPoint
from .lab import (
    TestFunctionSpec,
    epsilon_sweep,
    h_concavity_counterexample_search,
    h_concavity_cube_scan,
    uncertainty_check,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_UNSUPPORTED = 3
EXIT_NONCONV = 4

# keys that describe the execution, not the computation; kept out of reports
_EXECUTION_KEYS = ("out", "format", "threads")


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _emit(records: list[dict], config: dict, fmt: str, out: str | None, command: str) -> None:
    config = {k: v for k, v in sorted(config.items()) if k not in _EXECUTION_KEYS and v is not None}
    if fmt == "json":
        text = json.dumps({"command": command, "config": config, "records": records}, indent=2)
        text += "\n"
    else:
        buf = io.StringIO()
        buf.write(f"# heishardy {command}\n")
        for k, v in config.items():
            buf.write(f"# {k}={v}\n")
        if records:
            cols = list(records[0].keys())
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(cols)
            for rec in records:
                writer.writerow([_fmt(rec.get(c, "")) for c in cols])
        text = buf.getvalue()
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_point(text: str, n: int) -> HeisenbergPoint:
    """Accept '1,0,3' Cartesian coordinates or the cylindrical form 'r=10,t=0'."""
    text = text.strip()
    if "=" in text:
        kv = {}
        for part in text.split(","):
            k, _, v = part.partition("=")
            kv[k.strip()] = float(v)
        if set(kv) != {"r", "t"}:
            raise ValueError("cylindrical point must be 'r=<val>,t=<val>'")
        x = np.zeros(n)
        x[0] = kv["r"]
        return HeisenbergPoint(x, np.zeros(n), kv["t"])
    vals = [float(v) for v in text.split(",")]
    if len(vals) != 2 * n + 1:
        raise ValueError(f"expected {2 * n + 1} coordinates for n={n}, got {len(vals)}")
    return HeisenbergPoint.from_coords(vals)


def _float_list(text: str) -> list[float]:
    return [float(v) for v in str(text).split(",") if str(v).strip()]


def _resolve(args: argparse.Namespace, defaults: dict) -> dict:
    """defaults < config file < explicit flags."""
    cfg = dict(defaults)
    if getattr(args, "config", None):
        with open(args.config) as fh:
            file_cfg = json.load(fh)
        if not isinstance(file_cfg, dict):
            raise ValueError("config file must hold a JSON object")
        cfg.update(file_cfg)
    for key in defaults:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    for key in ("seed", "out", "format", "threads"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    cfg.setdefault("seed", 0)
    cfg.setdefault("format", "json")
    return cfg


def _spec_from(cfg: dict, eps: float) -> TestFunctionSpec:
    return TestFunctionSpec(
        exponent_eps=eps,
        cutoff_inner=float(cfg["q1"]),
        cutoff_outer=float(cfg["q2"]),
    )


def _nearest_record(res: NearestPointResult) -> dict:
    return {
        "distance": res.distance,
        "multiplicity_tag": res.multiplicity_tag,
        "nearest_points": "; ".join(
            ",".join(_fmt(v) for v in p.coords()) for p in res.points[:4]
        ),
    }


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_dist(args) -> int:
    cfg = _resolve(
        args,
        {
            "domain": "halfspace",
            "metric": "gauge",
            "point": None,
            "n": 1,
            "R": 10.0,
            "rho": 1.0,
        },
    )
    if not cfg.get("point"):
        raise ValueError("dist requires --point")
    n = int(cfg["n"])
    xi = _parse_point(str(cfg["point"]), n) if isinstance(cfg["point"], str) else HeisenbergPoint.from_coords(cfg["point"])
    metric = str(cfg["metric"])
    if isinstance(cfg["domain"], dict):
        # declarative domain description from the config file
        domain = domain_from_config(cfg["domain"])
        dist = boundary_distance(domain, xi, metric)
        rec = {"distance": dist, "multiplicity_tag": "", "nearest_points": ""}
    elif cfg["domain"] == "halfspace":
        domain = HalfSpace.canonical(n)
        dist = boundary_distance(domain, xi, metric)
        if metric == "gauge" and xi.r > 0:
            rec = _nearest_record(nearest_point_gauge(xi))
        elif metric == "cc":
            rec = _nearest_record(nearest_point_cc(xi))
        elif metric == "euclidean":
            foot = xi.coords().copy()
            foot[-1] = 0.0
            rec = {
                "distance": dist,
                "multiplicity_tag": "unique",
                "nearest_points": ",".join(_fmt(v) for v in foot),
            }
        else:  # gauge distance from the axis: minimizer map not available
            rec = {"distance": dist, "multiplicity_tag": "undetermined", "nearest_points": ""}
        rec["distance"] = dist
    elif cfg["domain"] == "torus":
        domain = Torus(float(cfg["R"]), float(cfg["rho"]), n)
        dist = boundary_distance(domain, xi, metric)
        rec = _nearest_record(nearest_point_torus_euclidean(domain, xi))
    else:
        raise ValueError(f"unknown domain {cfg['domain']!r}")
    _emit([rec], cfg, cfg["format"], cfg.get("out"), "dist")
    return EXIT_OK


def cmd_beta(args) -> int:
    cfg = _resolve(args, {"p": 2.0, "n": 1})
    det = beta_details(float(cfg["p"]), int(cfg["n"]))
    rec = {
        "beta": det["beta"],
        "case": det["case"],
        "p0": det["p0"],
        "threshold": det["threshold"],
    }
    if det.get("a") is not None:
        rec["a"] = det["a"]
    _emit([rec], cfg, cfg["format"], cfg.get("out"), "beta")
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _resolve(
        args,
        {
            "domain": "torus",
            "metric": "gauge",
            "p": 2.0,
            "n": 1,
            "R": 10.0,
            "rho": 1.0,
            "grid": 200,
            "box": "0.1,5,0.1,5",
        },
    )
    grid = int(cfg["grid"])
    n = int(cfg["n"])
    p = float(cfg["p"])
    if cfg["domain"] == "torus":
        cert = torus_certificate(p, n, float(cfg["R"]), float(cfg["rho"]), grid)
        rec = cert.to_dict()
        if not cert.condition_ii:
            rec["reason"] = f"condition (ii): R >= {cert.beta:g} rho fails"
        elif not cert.condition_i:
            rec["reason"] = "condition (i): R >= rho + ((2n-1) rho/4)^(1/3) fails"
        passed = cert.passed
    elif cfg["domain"] == "halfspace":
        lo_r, hi_r, lo_t, hi_t = _float_list(str(cfg["box"]))
        r = np.linspace(lo_r, hi_r, grid)
        t = np.linspace(lo_t, hi_t, grid)
        R, T = np.meshgrid(r, t, indexing="ij")
        if cfg["metric"] == "gauge":
            vals = closed_form_plap_gauge(R, T, n, p)
            kind = f"gauge p-Laplacian sign scan (p={p:g}, n={n})"
        elif cfg["metric"] == "cc":
            rep = cc_halfspace_laplacian(R, T, n)
            vals = np.maximum(rep.exact, rep.bound)
            kind = f"cc Laplacian sign scan (n={n})"
        else:
            raise UnsupportedConfiguration("verify supports the gauge and cc metrics")
        worst = float(np.max(vals))
        scale = float(max(1.0, np.max(np.abs(vals))))
        passed = bool(worst <= 1e-12 * scale)
        rec = {
            "kind": kind,
            "grid_spec": f"{grid}x{grid} over [{lo_r:g},{hi_r:g}]x[{lo_t:g},{hi_t:g}]",
            "worst_value": worst,
            "passed": passed,
        }
    else:
        raise ValueError(f"unknown domain {cfg['domain']!r}")
    _emit([rec], cfg, cfg["format"], cfg.get("out"), "verify")
    return EXIT_OK if passed else EXIT_FAIL


def cmd_quotient(args) -> int:
    cfg = _resolve(
        args,
        {
            "domain": "halfspace",
            "metric": "gauge",
            "p": 2.0,
            "n": 1,
            "R": 10.0,
            "rho": 1.0,
            "eps_list": "0.2,0.1,0.05",
            "grid": "48,48",
            "q1": 1e-4,
            "q2": 0.3,
            "check": "quotient",
            "nonconv_tol": 0.02,
        },
    )
    n = int(cfg["n"])
    p = float(cfg["p"])
    grid_vals = [int(v) for v in _float_list(str(cfg["grid"]))]
    grid = (grid_vals[0], grid_vals[-1])
    eps_list = (
        _float_list(cfg["eps_list"])
        if isinstance(cfg["eps_list"], str)
        else [float(e) for e in cfg["eps_list"]]
    )
    if cfg["domain"] == "halfspace":
        domain = HalfSpace.canonical(n)
    elif cfg["domain"] == "torus":
        domain = Torus(float(cfg["R"]), float(cfg["rho"]), n)
    else:
        raise ValueError(f"unknown domain {cfg['domain']!r}")
    metric = str(cfg["metric"])
    tol = float(cfg["nonconv_tol"])
    records = []
    converged = True
    if cfg["check"] == "uncertainty":
        for eps in eps_list:
            rep = uncertainty_check(domain, metric, _spec_from(cfg, eps), n=n, grid=grid)
            rec = {
                "eps": eps,
                "lhs": rep.lhs,
                "rhs": rep.rhs,
                "ratio": rep.ratio,
                "est_error": rep.est_error,
            }
            if rep.est_error > tol * abs(rep.ratio):
                rec["flag"] = "non-converged"
                converged = False
            records.append(rec)
    else:
        reports = epsilon_sweep(
            domain, metric, p, eps_list, base=_spec_from(cfg, eps_list[0]), n=n, grid=grid
        )
        for rep in reports:
            rec = {
                "eps": rep.eps,
                "numerator": rep.numerator,
                "denominator": rep.denominator,
                "quotient": rep.quotient,
                "est_error": rep.est_error,
                "target": rep.target,
            }
            if rep.est_error > tol * abs(rep.quotient):
                rec["flag"] = "non-converged"
                converged = False
            records.append(rec)
    _emit(records, cfg, cfg["format"], cfg.get("out"), "quotient")
    return EXIT_OK if converged else EXIT_NONCONV


def cmd_hconcavity(args) -> int:
    cfg = _resolve(
        args,
        {
            "mode": "cube",
            "samples": 100000,
            "t_scale": 1e-3,
        },
    )
    if cfg["mode"] == "cube":
        scan = h_concavity_cube_scan(samples=int(cfg["samples"]), seed=int(cfg["seed"]))
        _emit([scan.to_dict()], cfg, cfg["format"], cfg.get("out"), "hconcavity")
        return EXIT_OK if scan.violations == 0 else EXIT_FAIL
    if cfg["mode"] == "counterexample":
        res = h_concavity_counterexample_search(t_scale=float(cfg["t_scale"]))
        _emit([res.to_dict()], cfg, cfg["format"], cfg.get("out"), "hconcavity")
        return EXIT_OK if res.found else EXIT_FAIL
    raise ValueError(f"unknown hconcavity mode {cfg['mode']!r}")


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--config", help="JSON config file; flags override its values")
    sp.add_argument("--seed", type=int, help="seed for all sampling (default 0)")
    sp.add_argument("--out", help="output path (default stdout)")
    sp.add_argument("--format", choices=("json", "csv"), help="output format (default json)")
    sp.add_argument("--threads", type=int, help="accepted for interface parity; evaluation is deterministic regardless")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="heishardy", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("dist", help="boundary distance for one point")
    sp.add_argument("--domain", choices=("halfspace", "torus"))
    sp.add_argument("--metric", choices=("euclidean", "gauge", "cc"))
    sp.add_argument("--point", help="'x..,y..,t' or 'r=..,t=..'")
    sp.add_argument("--n", type=int)
    sp.add_argument("--R", type=float)
    sp.add_argument("--rho", type=float)
    _add_common(sp)
    sp.set_defaults(func=cmd_dist)

    sp = sub.add_parser("beta", help="torus radii constant beta(p, n)")
    sp.add_argument("--p", type=float)
    sp.add_argument("--n", type=int)
    _add_common(sp)
    sp.set_defaults(func=cmd_beta)

    sp = sub.add_parser("verify", help="superharmonicity certificates")
    sp.add_argument("--domain", choices=("torus", "halfspace"))
    sp.add_argument("--metric", choices=("gauge", "cc"))
    sp.add_argument("--p", type=float)
    sp.add_argument("--n", type=int)
    sp.add_argument("--R", type=float)
    sp.add_argument("--rho", type=float)
    sp.add_argument("--grid", type=int)
    sp.add_argument("--box", help="r_lo,r_hi,t_lo,t_hi for half-space scans")
    _add_common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("quotient", help="Hardy quotients / uncertainty product")
    sp.add_argument("--domain", choices=("halfspace", "torus"))
    sp.add_argument("--metric", choices=("euclidean", "gauge", "cc"))
    sp.add_argument("--p", type=float)
    sp.add_argument("--n", type=int)
    sp.add_argument("--R", type=float)
    sp.add_argument("--rho", type=float)
    sp.add_argument("--eps", dest="eps_list", help="comma list, strictly decreasing")
    sp.add_argument("--grid", help="base grid 'nr,nt'")
    sp.add_argument("--q1", type=float, help="cutoff ramp start")
    sp.add_argument("--q2", type=float, help="cutoff ramp end")
    sp.add_argument("--check", choices=("quotient", "uncertainty"))
    _add_common(sp)
    sp.set_defaults(func=cmd_quotient)

    sp = sub.add_parser("hconcavity", help="weak H-concavity checks")
    sp.add_argument("--mode", choices=("cube", "counterexample"))
    sp.add_argument("--samples", type=int)
    sp.add_argument("--t-scale", dest="t_scale", type=float)
    _add_common(sp)
    sp.set_defaults(func=cmd_hconcavity)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedConfiguration as exc:
        print(f"unsupported configuration: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ValueError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

"""Batch command-line interface.

Machine-first output: results go to stdout as JSON lines (deterministic for a
given seed), a run manifest with the timestamp goes to stderr.  ``--table``
switches stdout to human-readable tables.

Exit codes: 0 success/certified, 2 usage error, 3 inconclusive statistics,
4 exact-value regression mismatch (or a certification in the unexpected
direction).
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__
from .exactnum import PiPolynomial
from .moments import (
    MomentQuery,
    UnsupportedQueryError,
    ball_fixed_moment,
    exact_moment,
    exact_ratio_bound,
    halfball_fixed_moment,
    plane_counterexample_report,
    q_ratio,
    table1_rows,
    tetrahedron_moment_k1,
)
from .montecarlo import (
    INCONCLUSIVE,
    LHS_GREATER,
    Ball,
    FixedPoint,
    HalfBall,
    Interval,
    NO_FIXED_POINT,
    certify_counterexample,
    estimate_moment,
    make_config,
    tetrahedron_facet_centroid,
    triangle_edge_midpoint,
    unit_area_triangle,
    unit_volume_tetrahedron,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3
EXIT_MISMATCH = 4

# Frozen regression values for the k = 3..10 triangle table (midpoint moment,
# free moment, ratio).  cmd_table1 exits nonzero if the closed forms drift.
TABLE1_EXPECTED = {
    3: ("1/375", "31/9000", "24/31"),
    4: ("13/21600", "1/900", "13/24"),
    5: ("151/987840", "1063/2469600", "755/2126"),
    6: ("1/23520", "403/2116800", "90/403"),
    7: ("83/6531840", "211/2268000", "2075/15192"),
    8: ("73/18144000", "13/264600", "511/6240"),
    9: ("1433/1073318400", "2593/93915360", "10031/207440"),
    10: ("647/1405071360", "697/42688800", "22645/802944"),
}

COUNTEREXAMPLE_SCENARIOS = ("halfball-d3", "tetra-d3", "halfball-d4-k1")


def _emit(record: dict, table: bool = False, renderer=None) -> None:
    if table and renderer is not None:
        print(renderer(record))
    else:
        print(json.dumps(record, sort_keys=True))


def _manifest(command: str, parameters: dict) -> None:
    manifest = {
        "manifest": {
            "command": command,
            "parameters": parameters,
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "version": __version__,
        }
    }
    print(json.dumps(manifest, sort_keys=True), file=sys.stderr)


def _load_config_file(path: str) -> dict:
    values: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"config line without '=': {raw.strip()!r}")
            key, _, val = line.partition("=")
            values[key.strip().replace("-", "_")] = val.strip().strip('"')
    return values


class _UsageError(Exception):
    pass


def _build_parser(defaults: dict) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sylvester",
        description="Exact and Monte Carlo moments of random simplex volumes in convex bodies.",
    )
    parser.add_argument("--config", help="key=value file supplying flag defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    def opt(p, flag, *, dest=None, type=str, default=None, **kw):
        dest = dest or flag.lstrip("-").replace("-", "_")
        if dest in defaults:
            default = type(defaults[dest]) if type is not None else defaults[dest]
        p.add_argument(flag, dest=dest, type=type, default=default, **kw)

    def add_output_flags(p):
        opt(p, "--digits", type=int, default=12, help="significant digits for decimals")
        p.add_argument("--table", action="store_true", help="human-readable table output")
        p.add_argument("--json", dest="table", action="store_false",
                       help="JSON-lines output (default)")

    p = sub.add_parser("table1", help="triangle moment table for k=3..10, checked against frozen values")
    add_output_flags(p)

    p = sub.add_parser("exact", help="exact closed-form moment for a query")
    opt(p, "--body", choices=["interval", "ball", "halfball", "triangle", "tetrahedron"])
    opt(p, "--fixed", default="none",
        choices=["none", "origin", "edge_midpoint", "facet_centroid"])
    opt(p, "--d", type=int)
    opt(p, "--k", type=int, default=1)
    opt(p, "--l", type=Fraction, default=None, help="interval length (fraction or decimal)")
    add_output_flags(p)

    p = sub.add_parser("mc", help="Monte Carlo estimate of a moment")
    opt(p, "--body", choices=["interval", "ball", "halfball", "triangle", "tetrahedron"])
    opt(p, "--fixed", default="none",
        choices=["none", "origin", "edge_midpoint", "facet_centroid"])
    opt(p, "--d", type=int)
    opt(p, "--k", type=int, default=1)
    opt(p, "--l", type=Fraction, default=None)
    opt(p, "--n", type=int, default=1_000_000)
    opt(p, "--seed", type=int, default=0)
    opt(p, "--chunk", type=int, default=250_000)
    opt(p, "--confidence", type=float, default=0.99)
    add_output_flags(p)

    p = sub.add_parser("counterexample", help="certify a named non-monotonicity scenario")
    p.add_argument("scenario", choices=COUNTEREXAMPLE_SCENARIOS)
    opt(p, "--n", type=int, default=10_000_000)
    opt(p, "--seed", type=int, default=0)
    opt(p, "--chunk", type=int, default=250_000)
    opt(p, "--confidence", type=float, default=0.99)
    add_output_flags(p)

    p = sub.add_parser("qscan", help="scan the q(d,k) bound series")
    opt(p, "--d", type=int, choices=[2, 3], default=2)
    opt(p, "--k-max", dest="k_max", type=int, default=20)
    add_output_flags(p)

    return parser


def _make_body_and_fixed(ns):
    body_kind = ns.body
    if body_kind is None:
        raise _UsageError("--body is required")
    fixed_kind = ns.fixed
    if body_kind == "interval":
        length = ns.l if ns.l is not None else Fraction(1)
        body = Interval(length=float(length))
        d = 1
    elif body_kind == "ball":
        if ns.d is None:
            raise _UsageError("--d is required for ball")
        body, d = Ball(ns.d), ns.d
    elif body_kind == "halfball":
        if ns.d is None:
            raise _UsageError("--d is required for halfball")
        body, d = HalfBall(ns.d), ns.d
    elif body_kind == "triangle":
        body, d = unit_area_triangle(), 2
    else:
        body, d = unit_volume_tetrahedron(), 3
    if ns.d is not None and ns.d != d:
        raise _UsageError(f"--d {ns.d} conflicts with body {body_kind} (d={d})")

    if fixed_kind == "none":
        fixed = NO_FIXED_POINT
    elif fixed_kind == "origin":
        if body_kind not in ("ball", "halfball"):
            raise _UsageError("--fixed origin is only valid for ball/halfball")
        fixed = FixedPoint((0.0,) * d)
    elif fixed_kind == "edge_midpoint":
        if body_kind != "triangle":
            raise _UsageError("--fixed edge_midpoint is only valid for triangle")
        fixed = triangle_edge_midpoint()
    else:
        if body_kind != "tetrahedron":
            raise _UsageError("--fixed facet_centroid is only valid for tetrahedron")
        fixed = tetrahedron_facet_centroid()
    return body, fixed, d


def cmd_table1(ns) -> int:
    _manifest("table1", {"digits": ns.digits})
    mismatches = []
    for row in table1_rows():
        expected = TABLE1_EXPECTED[row.k]
        got = (str(row.midpoint_moment), str(row.free_moment), str(row.ratio))
        record = row.to_json_dict()
        record["matches_expected"] = got == expected
        if got != expected:
            record["expected"] = {
                "midpoint_moment": expected[0],
                "free_moment": expected[1],
                "ratio": expected[2],
            }
            mismatches.append(record)
        _emit(record, ns.table, _render_table1_row)
    if mismatches:
        print(f"table1: {len(mismatches)} row(s) differ from frozen values", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _render_table1_row(r: dict) -> str:
    return (f"k={r['k']:>2}  midpoint={r['midpoint_moment']:>18}  "
            f"free={r['free_moment']:>18}  ratio={r['ratio']:>15} "
            f"(~{r['ratio_decimal']})")


def cmd_exact(ns) -> int:
    params = {"body": ns.body, "fixed": ns.fixed, "d": ns.d, "k": ns.k,
              "l": None if ns.l is None else str(ns.l), "digits": ns.digits}
    _manifest("exact", params)
    if ns.body is None:
        raise _UsageError("--body is required")
    d = ns.d if ns.d is not None else {"interval": 1, "triangle": 2, "tetrahedron": 3}.get(ns.body)
    if d is None:
        raise _UsageError(f"--d is required for body {ns.body}")
    try:
        query = MomentQuery(d=d, k=ns.k, body_kind=ns.body, fixed_kind=ns.fixed)
        value = exact_moment(query, l=ns.l)
    except (UnsupportedQueryError, ValueError) as exc:
        raise _UsageError(str(exc)) from exc
    record = {
        "query": dict(query.to_json_dict(), l=None if ns.l is None else str(ns.l)),
        "exact": value.to_json_dict(),
        "exact_str": str(value),
        "decimal": value.to_decimal(ns.digits),
    }
    _emit(record, ns.table,
          lambda r: f"{r['query']}  =  {r['exact_str']}  ~ {r['decimal']}")
    return EXIT_OK


def cmd_mc(ns) -> int:
    params = {"body": ns.body, "fixed": ns.fixed, "d": ns.d, "k": ns.k,
              "l": None if ns.l is None else str(ns.l),
              "n": ns.n, "seed": ns.seed, "chunk": ns.chunk,
              "confidence": ns.confidence}
    _manifest("mc", params)
    body, fixed, _ = _make_body_and_fixed(ns)
    try:
        config = make_config(k=ns.k, n_samples=ns.n, seed=ns.seed,
                             chunk_size=ns.chunk, confidence=ns.confidence)
        estimate = estimate_moment(body, fixed, config)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    record = estimate.to_json_dict()
    _emit(record, ns.table,
          lambda r: (f"mean={r['mean']:.9g}  se={r['std_error']:.3g}  "
                     f"ci=[{r['ci_low']:.9g}, {r['ci_high']:.9g}]  n={r['n']}"))
    return EXIT_OK


def _scenario_sides(name: str):
    if name == "halfball-d3":
        # free moment in the 3-half-ball exceeds the exact base-center moment
        return ((HalfBall(3), NO_FIXED_POINT, 1), halfball_fixed_moment(3, 1))
    if name == "tetra-d3":
        # exact free moment in the tetrahedron exceeds the facet-centroid estimate
        return (tetrahedron_moment_k1(),
                (unit_volume_tetrahedron(), tetrahedron_facet_centroid(), 1))
    # halfball-d4-k1: the d>=4 regime, where the first moment already fails
    # monotonicity: the free half-ball moment exceeds the base-center moment
    return ((HalfBall(4), NO_FIXED_POINT, 1), ball_fixed_moment(4, 1))


def cmd_counterexample(ns) -> int:
    params = {"scenario": ns.scenario, "n": ns.n, "seed": ns.seed,
              "chunk": ns.chunk, "confidence": ns.confidence}
    _manifest("counterexample", params)
    lhs, rhs = _scenario_sides(ns.scenario)
    try:
        config = make_config(k=1, n_samples=ns.n, seed=ns.seed,
                             chunk_size=ns.chunk, confidence=ns.confidence)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    verdict = certify_counterexample(lhs, rhs, config)
    certified = verdict.relation == LHS_GREATER
    record = {
        "scenario": ns.scenario,
        "expected_relation": LHS_GREATER,
        "certified": certified,
        "verdict": verdict.to_json_dict(),
    }
    _emit(record, ns.table,
          lambda r: (f"{r['scenario']}: relation={r['verdict']['relation']} "
                     f"(expected {r['expected_relation']}), "
                     f"confidence={r['verdict']['confidence']}"))
    if certified:
        return EXIT_OK
    if verdict.relation == INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_MISMATCH


def cmd_qscan(ns) -> int:
    params = {"d": ns.d, "k_max": ns.k_max}
    _manifest("qscan", params)
    if ns.k_max < 2:
        raise _UsageError("--k-max must be >= 2")
    first_below = None
    rows = []
    for k in range(1, ns.k_max + 1):
        q = q_ratio(ns.d, k)
        below = q < 1
        if below and first_below is None:
            first_below = k
        rows.append({"k": k, "q": str(q),
                     "q_decimal": PiPolynomial.from_rational(q).to_decimal(ns.digits),
                     "below_one": below})
    threshold = 4 if ns.d == 2 else 2
    monotone = all(
        q_ratio(ns.d, k + 1) < q_ratio(ns.d, k)
        for k in range(threshold, ns.k_max)
    )
    for row in rows:
        _emit(row, ns.table,
              lambda r: f"k={r['k']:>3}  q={r['q_decimal']:>16}  "
                        f"{'< 1' if r['below_one'] else '>= 1'}")
    summary = {
        "d": ns.d,
        "first_k_below_one": first_below,
        "monotone_decreasing_from": threshold,
        "monotone_verified": monotone,
        "plane_report": plane_counterexample_report(ns.k_max).to_json_dict()
        if ns.d == 2 else None,
    }
    if ns.d == 3:
        bound_k2 = exact_ratio_bound(3, 2)
        summary["ratio_bound_k2"] = bound_k2.to_json_dict()
        summary["ratio_bound_k2_is_one"] = bound_k2 == 1
        summary["ratio_bound_k3_decimal"] = exact_ratio_bound(3, 3).to_decimal(6)
    _emit(summary, ns.table, lambda r: f"summary: {json.dumps(r, sort_keys=True)}")
    return EXIT_OK


_COMMANDS = {
    "table1": cmd_table1,
    "exact": cmd_exact,
    "mc": cmd_mc,
    "counterexample": cmd_counterexample,
    "qscan": cmd_qscan,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    defaults: dict = {}
    if "--config" in argv:
        try:
            path = argv[argv.index("--config") + 1]
        except IndexError:
            print("--config requires a path", file=sys.stderr)
            return EXIT_USAGE
        try:
            defaults = _load_config_file(path)
        except (OSError, ValueError) as exc:
            print(f"cannot read config file: {exc}", file=sys.stderr)
            return EXIT_USAGE
    parser = _build_parser(defaults)
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return _COMMANDS[ns.command](ns)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()

"""Command-line front end.

Exit codes: 0 success, 1 domain error (infeasible input or failed
verification), 2 malformed input, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import classifier as cl
from . import diagram as dg
from . import framing as fr
from .errors import DomainError, ResourceError, StructureError
from .tangle import compile_expr, denominator_closure, numerator_closure, parse_expr

EXIT_OK, EXIT_DOMAIN, EXIT_MALFORMED, EXIT_RESOURCE = 0, 1, 2, 3


def _emit(payload: dict, as_json: bool, out) -> None:
    if as_json:
        out.write(json.dumps(payload, indent=2) + "\n")
        return
    for key, value in payload.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        out.write(f"{key}: {value}\n")


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise StructureError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise StructureError(f"{path} is not valid JSON: {exc}") from None


def _cmd_tangle_build(args, out):
    td = compile_expr(parse_expr(args.expr))
    payload = {
        "expression": str(parse_expr(args.expr)),
        "crossing_count": len(td.crossings),
        "string_pairing": [list(p) for p in td.string_pairing],
    }
    if args.pd or args.json:
        payload["pd"] = td.pd.to_json()
    _emit(payload, args.json, out)


def _cmd_tangle_closure(args, out):
    expr = parse_expr(args.expr)
    pd = denominator_closure(expr) if args.denominator else numerator_closure(expr)
    payload = {
        "expression": str(expr),
        "closure": "denominator" if args.denominator else "numerator",
        "component_count": dg.trace_components(pd).count,
        "pd": pd.to_json(),
    }
    _emit(payload, args.json, out)


def _load_pd(path) -> dg.PDCode:
    data = _read_json(path)
    if isinstance(data, list):
        data = {"crossings": data}
    if not isinstance(data, dict):
        raise StructureError("PD document must be an object or a list of crossings")
    return dg.PDCode.from_json(data)


def _cmd_knot_invariants(args, out):
    pd = _load_pd(args.pd)
    trace = dg.trace_components(pd)
    payload = {"crossing_count": len(pd.crossings), "component_count": trace.count}
    if pd.is_closed:
        od = dg.orient(pd)
        payload["writhe"] = dg.writhe(od)
        if args.jones:
            poly = dg.jones(od)
            payload["jones"] = poly.to_json()
            payload["jones_text"] = str(poly)
    _emit(payload, args.json, out)


def _cmd_knot_catalog(args, out):
    entries = [cl.catalog_entry(args.id)] if args.id else cl.build_catalog()
    payload = {"entries": []}
    for e in entries:
        item = e.to_json()
        item["component_count"] = dg.trace_components(e.pd).count
        if not args.pd:
            item.pop("pd")
        payload["entries"].append(item)
    if args.json:
        _emit(payload, True, out)
    else:
        for item in payload["entries"]:
            _emit(item, False, out)
            out.write("\n")


def _cmd_framing_eval(args, out):
    ctx = fr.FramingContext(args.n, args.s, args.eps, args.sigma)
    cert = fr.framing_certificate(ctx)
    cert.update(
        {
            "theta_montesinos": fr.theta_montesinos(ctx.n, ctx.s, ctx.eps),
            "twist_correction": fr.twist_correction(ctx.n, ctx.eps),
            "rotation_correction": fr.rotation_correction(ctx.n),
            "theta_mod_n": cert["theta"] % ctx.n,
        }
    )
    _emit(cert, args.json, out)


def _cmd_classify(args, out):
    report = cl.classification_report(args.n)
    if args.json:
        _emit(report, True, out)
        return
    out.write(f"n: {report['n']}\n")
    out.write(f"results: {len(report['results'])}\n")
    for r in report["results"]:
        sl = r["slope"]
        cert = r["certificate"]
        out.write(
            f"  {r['knot']}  slope {sl['p']}  boundary circles {sl['m']}  "
            f"theta {cert['theta']}  epsilon {cert['epsilon']}  gluings {','.join(cert['equivalent_gluings'])}\n"
        )
    out.write(f"rejected branches: {len(report['rejected'])}\n")


def _cmd_verify(args, out):
    data = _read_json(args.certificate)
    if isinstance(data, dict) and "results" in data:
        items = data["results"]
    elif isinstance(data, list):
        items = data
    else:
        items = [data]
    verdicts = [bool(cl.verify_certificate(item)) for item in items]
    _emit({"checked": len(verdicts), "valid": verdicts, "all_valid": all(verdicts)}, args.json, out)
    if not all(verdicts):
        raise _Failed()


class _Failed(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tanglesurg", description="Tangle calculus and toroidal-surgery classification.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(parent, name, func, help_text):
        q = parent.add_parser(name, help=help_text)
        q.add_argument("--json", action="store_true", help="emit JSON")
        q.set_defaults(func=func)
        return q

    tangle = sub.add_parser("tangle", help="build tangles and closures").add_subparsers(dest="action", required=True)
    q = add(tangle, "build", _cmd_tangle_build, "compile a tangle expression")
    q.add_argument("-e", "--expr", required=True)
    q.add_argument("--pd", action="store_true", help="include the PD code")
    q = add(tangle, "closure", _cmd_tangle_closure, "close a tangle into a link")
    q.add_argument("-e", "--expr", required=True)
    which = q.add_mutually_exclusive_group(required=True)
    which.add_argument("--numerator", action="store_true", help="join NW-SW and NE-SE")
    which.add_argument("--denominator", action="store_true", help="join NW-NE and SW-SE")

    knot = sub.add_parser("knot", help="knot diagrams and the catalog").add_subparsers(dest="action", required=True)
    q = add(knot, "invariants", _cmd_knot_invariants, "components, writhe and Jones of a PD file")
    q.add_argument("--pd", required=True, help="path to a PD JSON document ('-' for stdin)")
    q.add_argument("--jones", action="store_true")
    q = add(knot, "catalog", _cmd_knot_catalog, "the knots K1, K2, K3")
    q.add_argument("--id", choices=["K1", "K2", "K3"])
    q.add_argument("--pd", action="store_true", help="include PD codes")

    framing = sub.add_parser("framing", help="framing arithmetic").add_subparsers(dest="action", required=True)
    q = add(framing, "eval", _cmd_framing_eval, "weights, framing and track type for one side")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--s", type=int, required=True)
    q.add_argument("--eps", type=int, default=1)
    q.add_argument("--sigma", type=int, default=1)

    q = add(sub, "classify", _cmd_classify, "run the full case enumeration")
    q.add_argument("--n", type=int, default=4)
    q = add(sub, "verify", _cmd_verify, "re-check a classification result or report")
    q.add_argument("--certificate", required=True)
    return p


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code else EXIT_OK
    try:
        args.func(args, out)
    except _Failed:
        return EXIT_DOMAIN
    except StructureError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_MALFORMED
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except ResourceError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_RESOURCE
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

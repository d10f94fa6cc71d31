"""toricap command line.

Results go to stdout as JSON (or CSV where noted) with every rational written
as a "p/q" string. Exit status: 0 success, 2 bad input, 3 undecided
computation (step limits, inconclusive reductions).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

from . import bounds, capacities, packing, weights
from .domains import EllipsoidSpec, PolydiskSpec, ToricRegion2D, domain_to_json, parse_domain
from .errors import InvalidInput, NonTermination, UndecidedError
from .geometry import fmt, rational

EXIT_OK, EXIT_INPUT, EXIT_UNDECIDED = 0, 2, 3


class UsageError(InvalidInput):
    pass


def _rationals(text: str) -> list:
    return [rational(t) for t in text.split(",") if t.strip()]


def _decimal(q: Fraction, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = digits + 30
        value = Decimal(q.numerator) / Decimal(q.denominator)
        return str(value.quantize(Decimal(1).scaleb(-digits)))


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return fmt(obj)
    if isinstance(obj, (EllipsoidSpec, PolydiskSpec, ToricRegion2D)):
        return domain_to_json(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _add_decimals(doc: dict, digits) -> dict:
    if digits is None:
        return doc
    approx = {k: _decimal(v, digits) for k, v in doc.items() if isinstance(v, Fraction)}
    if approx:
        doc = dict(doc, decimal=approx)
    return doc


def _load_json(args) -> dict:
    if args.input is None:
        raise UsageError("--input FILE is required (use - for stdin)")
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input) as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from None


def _domain(args):
    if getattr(args, "eps", None) is not None:
        return parse_domain({"type": "veps", "eps": args.eps})
    doc = _load_json(args)
    if isinstance(doc, dict) and "domain" in doc:
        doc = doc["domain"]
    return parse_domain(doc)


def _region(domain) -> ToricRegion2D:
    if isinstance(domain, ToricRegion2D):
        return domain
    if domain.dim != 2:
        raise InvalidInput("this command needs a 2-d moment region")
    return domain.region()


def _need(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


# -- subcommands ---------------------------------------------------------------

def cmd_nk(args):
    axes = _rationals(_need(args.axes, "--axes"))
    return {"value": capacities.n_k(axes, _need(args.k, "--k"))}


def cmd_cap(args):
    domain = _domain(args)
    if args.engine == "ech":
        if isinstance(domain, ToricRegion2D) and domain.flags.concave:
            # a concave region has the ECH capacities of the ball union given by its weights
            domain = list(weights.weights_concave(domain, args.max_steps).weights)
        seq = capacities.ech_sequence(domain, args.kmax)
        return {"engine": "ech", "horizon": args.kmax, "values": list(seq)}
    k = _need(args.k, "--k")
    engine = args.engine
    if engine == "auto":
        convex = not isinstance(domain, ToricRegion2D) or domain.flags.convex
        engine = "convex" if convex else "concave"
    fn = capacities.ch_convex if engine == "convex" else capacities.ch_concave
    return {"engine": engine, "k": k, "value": fn(domain, k)}


def cmd_c2(args):
    domain = _domain(args)
    if isinstance(domain, PolydiskSpec):
        return {"value": bounds.c2_polydisk(domain.axes), "binding": "polydisk"}
    res = bounds.c2_convex_4d(_region(domain))
    return {"value": res.value, "a": res.a, "w": res.w, "binding": res.binding,
            "inner": res.inner, "inner_region": res.inner_region, "outer": res.outer}


def cmd_weights(args):
    omega = _region(_domain(args))
    seq = weights.weights_concave(omega, args.max_steps)
    return {"weights": list(seq.weights), "sum_sq": seq.sum_sq, "area": omega.area}


def _trace_doc(trace: packing.ReductionTrace) -> dict:
    return {"verdict": trace.verdict, "scale": trace.scale, "steps": len(trace.steps),
            "certificate": trace.certificate}


def _trace_csv(trace: packing.ReductionTrace) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["step", "before", "defect", "after"])
    for i, s in enumerate(trace.steps):
        writer.writerow([i, " ".join(map(str, s.before)), s.defect, " ".join(map(str, s.after))])
    final = trace.certificate.get("vector", ())
    writer.writerow([len(trace.steps), " ".join(map(str, final)), "", trace.verdict])
    return buf.getvalue()


def cmd_pack(args):
    if args.weights is not None:
        mu, ws = _need(args.mu, "--mu"), _rationals(args.weights)
    else:
        doc = _load_json(args)
        if not isinstance(doc, dict) or "mu" not in doc and args.mu is None:
            raise UsageError("pack input needs mu")
        mu = args.mu if args.mu is not None else doc["mu"]
        if "weights" in doc:
            ws = [rational(w) for w in doc["weights"]]
        elif "domain" in doc:
            ws = weights.weights_concave(_region(parse_domain(doc["domain"])), args.max_steps).weights
        else:
            raise UsageError("pack input needs weights or domain")
    inst = packing.PackingInstance(mu, tuple(ws))
    trace = packing.cremona_feasible(inst)
    if args.trace:
        return trace, _trace_csv(trace)
    ech = packing.ech_feasible(inst, args.kmax)
    doc = {"mu": inst.mu, "weights": list(inst.weights), **_trace_doc(trace),
           "ech": {"verdict": ech.verdict, "obstruction_k": ech.obstruction_k}}
    return trace, doc


def cmd_embed_ball(args):
    omega = _region(_domain(args))
    res = packing.embed_concave_into_ball(omega, _need(args.mu, "--mu"), args.max_steps)
    if args.trace:
        return res.trace, _trace_csv(res.trace)
    return res.trace, {"mu": res.mu, "weights": list(res.weights.weights), **_trace_doc(res.trace)}


def _veps_doc(rep: bounds.VepsReport) -> dict:
    return {"eps": rep.eps, "equal": rep.equal, "c2_min": rep.c2_min,
            "c2_max": rep.c2_max_upper if rep.equal else None,
            "c2_max_lower": rep.c2_max_lower, "c2_max_upper": rep.c2_max_upper,
            "regime": rep.regime, "certificate": rep.certificate}


def cmd_veps(args):
    return _veps_doc(bounds.veps_analysis(_need(args.eps, "--eps")))


def parse_grid(text: str) -> list:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError("--grid must look like start:stop:step")
    start, stop, step = (rational(p) for p in parts)
    if step <= 0 or stop < start:
        raise UsageError("--grid needs step > 0 and stop >= start")
    out, x = [], start
    while x <= stop:
        out.append(x)
        x += step
    return out


SCAN_COLUMNS = ("eps", "c2_min", "c2_max_lower", "c2_max_upper", "equal", "regime")


def cmd_scan_veps(args):
    rows = []
    for eps in parse_grid(_need(args.grid, "--grid")):
        rep = bounds.veps_analysis(eps)
        rows.append({"eps": rep.eps, "c2_min": rep.c2_min, "c2_max_lower": rep.c2_max_lower,
                     "c2_max_upper": rep.c2_max_upper, "equal": rep.equal, "regime": rep.regime})
    if args.format == "json":
        return {"rows": rows}
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SCAN_COLUMNS)
    for r in rows:
        writer.writerow(["" if r[c] is None else (str(r[c]).lower() if isinstance(r[c], bool) else str(r[c]))
                         for c in SCAN_COLUMNS])
    return buf.getvalue()


def cmd_gap(args):
    cert = bounds.polydisk_gap(_need(args.k, "--k"), _need(args.n, "--n"))
    return {"k": cert.k, "n": cert.n, "gap_proven": cert.gap_proven,
            "inequality_violated": cert.inequality_violated,
            "in_general_range": cert.in_general_range,
            "ratio": cert.ratio, "chain": list(cert.chain)}


def cmd_threshold(args):
    n = _need(args.n, "--n")
    doc = {"n": n, "threshold": bounds.highdim_veps_threshold(n)}
    if args.eps is not None:
        doc["gap_below"] = bounds.gap_below(args.eps, n)
    return doc


COMMANDS = {
    "nk": cmd_nk,
    "cap": cmd_cap,
    "c2": cmd_c2,
    "weights": cmd_weights,
    "pack": cmd_pack,
    "embed-ball": cmd_embed_ball,
    "veps": cmd_veps,
    "scan-veps": cmd_scan_veps,
    "gap": cmd_gap,
    "threshold": cmd_threshold,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--axes")
    common.add_argument("--k", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--eps")
    common.add_argument("--mu")
    common.add_argument("--weights", help="comma separated ball sizes (pack)")
    common.add_argument("--input", metavar="FILE", help="JSON input, - for stdin")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--decimals", type=int, metavar="N")
    common.add_argument("--trace", action="store_true", help="emit the reduction trace as CSV")
    common.add_argument("--grid", metavar="START:STOP:STEP")
    common.add_argument("--kmax", type=int, default=capacities.DEFAULT_HORIZON, help="ECH horizon")
    common.add_argument("--max-steps", type=int, default=weights.DEFAULT_MAX_STEPS)
    common.add_argument("--engine", choices=("auto", "convex", "concave", "ech"), default="auto")

    parser = argparse.ArgumentParser(prog="toricap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _emit(doc, args, out):
    if isinstance(doc, str):
        out.write(doc)
        return
    doc = _add_decimals(doc, args.decimals)
    out.write(json.dumps(_jsonable(doc), sort_keys=True) + "\n")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = "csv" if args.command == "scan-veps" else "json"
    try:
        result = COMMANDS[args.command](args)
    except UndecidedError as exc:
        err = {"kind": "nontermination" if isinstance(exc, NonTermination) else "undecided",
               "message": str(exc)}
        if getattr(exc, "residual_area", None) is not None:
            err["residual_area"] = exc.residual_area
        _emit({"error": err}, args, out)
        return EXIT_UNDECIDED
    except InvalidInput as exc:
        _emit({"error": {"kind": "invalid_input", "message": str(exc)}}, args, out)
        print(f"toricap: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if isinstance(result, tuple):
        trace, doc = result
        _emit(doc, args, out)
        return EXIT_UNDECIDED if trace.verdict == packing.INCONCLUSIVE else EXIT_OK
    _emit(result, args, out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: ``prscodes <subcommand> ...``.

Exit codes: 0 success, 2 usage error, 3 hypothesis or validation failure,
4 mismatch in ``reproduce``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import re
import sys
from importlib import resources
from typing import Optional, Sequence

from . import __version__
from .cyclo import cyclotomic_sets, delta_consecutive, format_delta, parse_delta
from .distance import (
    DistanceReport,
    bch_lower_bound,
    min_weight,
    random_upper_bound,
)
from .errors import CodingError, HypothesisFailed, ShapeError
from .galois import extension, prime_power
from .lincode import dual, subfield_subcode
from .prs import dual_basis, primary_basis, prs_code, rs_code
from .quantum import (
    EAQECCParams,
    affine_euclidean,
    affine_galois,
    index_of_min,
    propagate,
    recipe_asymmetric_prs,
    recipe_euclidean,
    recipe_galois_qecc,
    recipe_hermitian,
    recipe_trace_hermitian,
)
from .traceroots import dtr_dual_subcode, trace_points

log = logging.getLogger("prscodes")

EXIT_USAGE, EXIT_HYPOTHESIS, EXIT_MISMATCH = 2, 3, 4


class UsageError(Exception):
    pass


# -- argument helpers ------------------------------------------------------------------
def parse_field_text(text: str) -> tuple[int, int]:
    """``"81"``, ``"3^4"`` or ``"9^2"`` -> ``(order, default base)``."""
    m = re.fullmatch(r"\s*(\d+)\s*(?:\^\s*(\d+))?\s*", text)
    if not m:
        raise UsageError(f"cannot parse field {text!r}")
    base, exp = int(m.group(1)), int(m.group(2) or 1)
    try:
        p, _ = prime_power(base)
    except CodingError as e:
        raise UsageError(str(e)) from None
    order = base**exp
    return order, (base if m.group(2) else p)


def _pair_from(args):
    order, default_base = parse_field_text(args.field)
    q = args.base or default_base
    s = round(math.log(order, q)) if q > 1 else 0
    if q < 2 or q**s != order:
        raise UsageError(f"GF({order}) is not an extension of GF({q})")
    return extension(q, s)


def _ctx(args, pair):
    N = args.N or pair.ext.order
    return cyclotomic_sets(N, pair.q)


def _delta_text(args) -> Optional[str]:
    return args.delta or args.recipe


TRACE_RE = re.compile(r"^tr:(.*)$")


def parse_trace_recipe(text: str) -> dict:
    """``tr:q=2,l=4,at=13[,comp]``."""
    m = TRACE_RE.match(text.strip())
    if not m:
        raise UsageError(f"not a trace recipe: {text!r}")
    out = {"complementary": False}
    for part in m.group(1).split(","):
        part = part.strip()
        if part == "comp":
            out["complementary"] = True
            continue
        key, _, val = part.partition("=")
        if key not in ("q", "l", "at", "t") or not val.isdigit():
            raise UsageError(f"bad trace recipe field {part!r}")
        out[key] = int(val)
    if "q" not in out or "l" not in out or ("at" not in out and "t" not in out):
        raise UsageError("trace recipe needs q, l and at (or t)")
    return out


# -- output ------------------------------------------------------------------------------
def emit(obj, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj, default=_json_default) + "\n")
    elif fmt == "csv":
        rows = obj if isinstance(obj, list) else [obj]
        flat = [_flatten(r) for r in rows]
        keys: list[str] = []
        for r in flat:
            keys += [k for k in r if k not in keys]
        w = csv.DictWriter(out, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        w.writerows(flat)
    else:
        out.write(_text(obj) + "\n")


def _json_default(x):
    try:
        return int(x)
    except (TypeError, ValueError):
        return str(x)


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, (list, tuple)):
            out[key] = json.dumps(v, default=_json_default)
        else:
            out[key] = v
    return out


def _text(obj) -> str:
    if isinstance(obj, list):
        return "\n".join(_text(o) for o in obj)
    if isinstance(obj, dict):
        if "label" in obj:
            return str(obj["label"])
        return "\n".join(f"{k}: {json.dumps(v, default=_json_default)}" for k, v in obj.items())
    return str(obj)


def quantum_record(res: EAQECCParams, N: Optional[int] = None, delta: str = "") -> dict:
    d = res.to_dict()
    d["label"] = res.label()
    d["provenance"] = res.provenance
    if N is not None:
        d["N"] = N
    if delta:
        d["Delta"] = delta
    return d


# -- subcommands -----------------------------------------------------------------------
def cmd_cyclo(args, out) -> int:
    pair = _pair_from(args)
    ctx = _ctx(args, pair)
    rec = {
        "N": ctx.N,
        "q": ctx.q,
        "sets": [list(c.members) for c in ctx.sets],
        "A": list(ctx.A),
        "B": list(ctx.B),
    }
    text = _delta_text(args)
    if text:
        delta = parse_delta(ctx, text)
        rec["Delta"] = list(delta.members)
        rec["derived"] = delta.derives()
    if args.format == "text":
        lines = [f"I_{c.a} = {{{', '.join(map(str, c.members))}}}" for c in ctx.sets]
        lines.append(f"A = {rec['A']}")
        lines.append(f"B = {rec['B']}")
        if "derived" in rec:
            lines += [f"{k}: {v}" for k, v in rec["derived"].items()]
        out.write("\n".join(lines) + "\n")
    else:
        emit(rec, args.format, out)
    return 0


def _need_delta(args, ctx):
    text = _delta_text(args)
    if not text:
        raise UsageError("--delta (or --recipe) is required")
    return parse_delta(ctx, text)


def _code_record(C, extra: dict) -> dict:
    rec = {"n": C.n, "k": C.k, "field": C.field.descriptor}
    rec.update(extra)
    return rec


def cmd_build(args, out) -> int:
    pair = _pair_from(args)
    ctx = _ctx(args, pair)
    delta = _need_delta(args, ctx)
    C = rs_code(ctx.N, delta, pair.ext) if args.affine else prs_code(ctx.N, delta, pair.ext)
    rec = _code_record(C, {"Delta": format_delta(delta), "affine": args.affine})
    if args.show_matrix:
        rec["gen"] = C.gen.tolist()
    emit(rec, args.format, out)
    return 0


def cmd_subcode(args, out) -> int:
    pair = _pair_from(args)
    ctx = _ctx(args, pair)
    delta = _need_delta(args, ctx)
    C = subfield_subcode(prs_code(ctx.N, delta, pair.ext), pair)
    rec = _code_record(C, {"Delta": format_delta(delta)})
    if args.basis:
        rec["basis"] = [str(f) for f in primary_basis(delta, pair)]
    if args.show_matrix:
        rec["gen"] = C.gen.tolist()
    emit(rec, args.format, out)
    return 0


def cmd_dual(args, out) -> int:
    pair = _pair_from(args)
    ctx = _ctx(args, pair)
    delta = _need_delta(args, ctx)
    C = dual(subfield_subcode(prs_code(ctx.N, delta, pair.ext), pair))
    rec = _code_record(C, {"Delta": format_delta(delta)})
    if args.basis:
        rec["basis"] = [str(f) for f in dual_basis(delta, pair)]
    if args.show_matrix:
        rec["gen"] = C.gen.tolist()
    emit(rec, args.format, out)
    return 0


def cmd_distance(args, out) -> int:
    pair = _pair_from(args)
    ctx = _ctx(args, pair)
    delta = _need_delta(args, ctx)
    P = subfield_subcode(prs_code(ctx.N, delta, pair.ext), pair)
    C = dual(P) if args.code == "dual" else P
    if args.code == "dual":
        try:
            lower = bch_lower_bound(delta, "projective_primed")
        except ShapeError:
            lower = DistanceReport(1, "lower_bound", "bch")
    else:
        lower = DistanceReport(ctx.N - delta.d + 1, "lower_bound", "theorem")
    if args.distance == "bounds":
        rep = lower
    elif args.distance == "search":
        up = random_upper_bound(C, seed=args.seed, iters=args.iters)
        kind = "exact" if up.value == lower.value else "interval"
        rep = DistanceReport(lower.value, kind, "bch+random_search", witness=up.witness,
                             work=up.work, upper=None if kind == "exact" else up.value)
    else:
        rep = min_weight(C, method=args.method, budget=args.budget, threads=args.threads,
                         seed=args.seed, iters=min(args.iters, 50))
    rec = _code_record(C, {"Delta": format_delta(delta), "distance": rep.to_dict(),
                           "bound": lower.value})
    if not args.witness:
        rec["distance"].pop("witness", None)
    emit(rec, args.format, out)
    return 0


def build_quantum(kind: str, opts: dict, dist: dict) -> tuple[EAQECCParams, Optional[int], str]:
    """Run one recipe; ``opts`` holds recipe parameters, ``dist`` distance options."""
    if kind in ("css", "euclidean", "euclidean_affine"):
        q, s, N, t = opts["q"], opts["s"], opts["N"], opts["t"]
        fn = affine_euclidean if kind == "euclidean_affine" else recipe_euclidean
        return fn(q, s, N, t, **dist), N, f"consec:t={t}"
    if kind == "hermitian":
        return recipe_hermitian(opts["q"], opts["ell"], opts["N"], opts["t"], **dist), opts["N"], f"consec:t={opts['t']}"
    if kind in ("galois", "galois_affine"):
        q, N = opts["q"], opts["N"]
        ctx = cyclotomic_sets(N, q, opts.get("s"))
        delta = parse_delta(ctx, opts["delta"])
        if kind == "galois":
            return recipe_galois_qecc(q, N, delta, **dist), N, format_delta(delta)
        return affine_galois(q, N, delta.members_set, **dist), N, format_delta(delta)
    if kind == "asymmetric":
        res = recipe_asymmetric_prs(opts["q"], opts["s"], opts["N"], opts["d1"], opts["d2"], **dist)
        return res, opts["N"], f"d1={opts['d1']},d2={opts['d2']}"
    if kind == "trace":
        q, ell = opts["q"], opts["ell"]
        comp = opts.get("complementary", False)
        if "t" in opts:
            t = opts["t"]
        else:
            t = index_of_min(trace_points(q, ell, comp).cyclo(), opts["at"])
        res = recipe_trace_hermitian(q, ell, t, complementary=comp, **dist)
        return res, None, f"tr:q={q},l={ell},t={t}"
    raise UsageError(f"unknown construction {kind!r}")


def _t_from(ctx, text: Optional[str]) -> int:
    if not text:
        raise UsageError("--delta/--recipe is required (e.g. consec:t=5)")
    return parse_delta(ctx, text).t


def cmd_quantum(args, out) -> int:
    dist = _dist_opts(args)
    kind = args.construction
    text = _delta_text(args)
    if kind == "trace" or (text and text.startswith("tr:")):
        r = parse_trace_recipe(text or "")
        opts = {"q": r["q"], "ell": r["l"], "complementary": r["complementary"]}
        if "t" in r:
            opts["t"] = r["t"]
        else:
            opts["at"] = r["at"]
        kind = "trace"
    else:
        if not args.field:
            raise UsageError("--field is required")
        pair = _pair_from(args)
        N = args.N or pair.ext.order
        if kind in ("css", "euclidean", "euclidean_affine"):
            ctx = cyclotomic_sets(N, pair.q)
            opts = {"q": pair.q, "s": pair.s, "N": N, "t": _t_from(ctx, text)}
        elif kind == "hermitian":
            q = math.isqrt(pair.q)
            if q * q != pair.q:
                raise UsageError("hermitian needs --base equal to q^2")
            ctx = cyclotomic_sets(N, pair.q)
            opts = {"q": q, "ell": pair.s, "N": N, "t": _t_from(ctx, text)}
        elif kind in ("galois", "galois_affine"):
            if not text:
                raise UsageError("--delta is required")
            opts = {"q": pair.q, "s": pair.s, "N": N, "delta": text}
        elif kind == "asymmetric":
            if args.d1 is None or args.d2 is None:
                raise UsageError("asymmetric needs --d1 and --d2")
            opts = {"q": pair.q, "s": pair.s, "N": N, "d1": args.d1, "d2": args.d2}
        else:
            raise UsageError(f"unknown construction {kind!r}")
    log.info("running %s recipe with %s", kind, opts)
    res, N, label = build_quantum(kind, opts, dist)
    records = []
    steps = [args.propagate] if not args.chain else range(args.propagate + 1)
    for s in steps:
        p = propagate(res, s, "asym" if res.asymmetric else "sym") if s else res
        records.append(quantum_record(p, N, label))
    emit(records if len(records) > 1 else records[0], args.format, out)
    return 0


def _dist_opts(args) -> dict:
    mode = {"exact": "exact", "bounds": "bounds", "search": "search"}[args.distance]
    d = {"distance": mode, "seed": args.seed, "iters": args.iters, "threads": args.threads}
    if args.budget is not None:
        d["budget"] = args.budget
    return d


# -- reproduce ---------------------------------------------------------------------------
def load_examples() -> dict:
    data = resources.files("prscodes").joinpath("data/examples.json").read_text()
    return json.loads(data)


def run_check(check: dict) -> dict:
    """Compute the quantities a fixture check refers to."""
    run, a = check["run"], dict(check["args"])
    if run == "cyclo":
        order, _ = parse_field_text(a["field"])
        ctx = cyclotomic_sets(a["N"], a["base"])
        return {"sets": [list(c.members) for c in ctx.sets], "A": list(ctx.A), "B": list(ctx.B)}
    if run == "code":
        order, _ = parse_field_text(a["field"])
        q = a["base"]
        pair = extension(q, round(math.log(order, q)))
        ctx = cyclotomic_sets(a["N"], q)
        delta = parse_delta(ctx, a["delta"])
        P = subfield_subcode(prs_code(a["N"], delta, pair.ext), pair)
        C = dual(P) if a["which"] == "dual" else P
        got = {"n": C.n, "k": C.k}
        if a.get("distance"):
            got["d"] = min_weight(C).value
        if a.get("bch"):
            got["bch"] = bch_lower_bound(delta, "projective_primed").value
        return got
    if run == "trace":
        pts = trace_points(a["q"], a["ell"], a.get("complementary", False))
        ctx = pts.cyclo()
        delta = delta_consecutive(ctx, index_of_min(ctx, a["at"]))
        sub, rep = dtr_dual_subcode(pts, delta)
        return {"n": sub.n, "k": sub.k, "bound": rep.bch_bound, "identity": rep.identity_holds,
                "degenerate": rep.degenerate}
    if run == "quantum":
        kind = a.pop("recipe")
        steps = a.pop("propagate", 0)
        dist = {"distance": a.pop("distance", "bounds")}
        res, _, _ = build_quantum(kind, a, dist)
        if steps:
            res = propagate(res, steps, "asym" if res.asymmetric else "sym")
        got = {"n": res.n, "kappa": res.kappa, "c": res.c, "label": res.label()}
        if res.asymmetric:
            got["delta_z"], got["delta_x"] = res.delta_z.value, res.delta_x.value
        else:
            got["delta"] = res.delta.value
        if "dim_C" in res.certificate:
            got["dim_dual"] = res.n - res.certificate["dim_C"]
        return got
    raise ValueError(f"unknown check kind {run!r}")


def reproduce(example_id: str, out) -> bool:
    examples = load_examples()
    if example_id not in examples:
        raise UsageError(f"unknown example {example_id!r}; known: {', '.join(examples)}")
    ex = examples[example_id]
    ok_all = True
    out.write(f"{example_id}: {ex['title']}\n")
    for i, check in enumerate(ex["checks"]):
        got = run_check(check)
        exp = check["expect"]
        bad = {k: (exp[k], got.get(k)) for k in exp if got.get(k) != exp[k]}
        ok = not bad
        ok_all &= ok
        status = "ok" if ok else "MISMATCH"
        shown = {k: got.get(k) for k in exp}
        out.write(f"  [{status}] check {i + 1} ({check['source']}): {json.dumps(shown)}\n")
        if "published" in check:
            out.write(f"      published figures {json.dumps(check['published'])}; {check.get('note', '')}\n")
        for k, (e, g) in bad.items():
            out.write(f"      {k}: expected {e}, got {g}\n")
    return ok_all


def cmd_reproduce(args, out) -> int:
    if args.list:
        for k, v in load_examples().items():
            out.write(f"{k}\t{v['title']}\n")
        return 0
    if not args.example:
        raise UsageError("give an example id, 'all', or --list")
    ids = list(load_examples()) if args.example == "all" else [args.example]
    ok = True
    for ex in ids:
        log.info("reproducing %s", ex)
        ok &= reproduce(ex, out)
    return 0 if ok else EXIT_MISMATCH


# -- parser ------------------------------------------------------------------------------
def _common(p: argparse.ArgumentParser, field_required: bool = True) -> None:
    p.add_argument("--field", required=field_required, help="extension field, e.g. 81, 3^4 or 9^2")
    p.add_argument("--base", type=int, help="order q of the base field (default: the q of q^s, else p)")
    p.add_argument("--N", type=int, help="N with N-1 | q^s - 1 (default: field order)")
    p.add_argument("--delta", help="exponent set: 0,1,3 | consec:t=5 | range:d=14 | sets:0,1,4")
    p.add_argument("--recipe", help="alias of --delta; also tr:q=2,l=4,at=13[,comp]")
    p.add_argument("--format", choices=("json", "text", "csv"), default="text")


def _distance_flags(p: argparse.ArgumentParser, default: str) -> None:
    p.add_argument("--distance", choices=("exact", "bounds", "search"), default=default)
    p.add_argument("--budget", type=int, default=None, help="enumeration budget")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=30, help="random search iterations")
    env = os.environ.get("PRS_THREADS")
    p.add_argument("--threads", type=int, default=int(env) if env else None,
                   help="worker threads (default: PRS_THREADS or CPU count)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="prscodes", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cyclo", help="cyclotomic sets and derived exponent sets")
    _common(p)
    p.set_defaults(func=cmd_cyclo)

    p = sub.add_parser("build", help="evaluation code PRS(N, Δ) (or RS with --affine) over the extension")
    _common(p)
    p.add_argument("--affine", action="store_true")
    p.add_argument("--show-matrix", action="store_true")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("subcode", help="subfield subcode PRS(N, Δ)_q")
    _common(p)
    p.add_argument("--basis", action="store_true", help="print the trace polynomial basis")
    p.add_argument("--show-matrix", action="store_true")
    p.set_defaults(func=cmd_subcode)

    p = sub.add_parser("dual", help="dual of the subfield subcode")
    _common(p)
    p.add_argument("--basis", action="store_true", help="print the trace polynomial basis")
    p.add_argument("--show-matrix", action="store_true")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("distance", help="minimum distance of the subfield subcode or its dual")
    _common(p)
    p.add_argument("--code", choices=("subcode", "dual"), default="dual")
    p.add_argument("--method", choices=("auto", "exhaustive", "support"), default="auto")
    p.add_argument("--witness", action="store_true", help="include a minimum-weight codeword")
    _distance_flags(p, "exact")
    p.set_defaults(func=cmd_distance, budget_default=True)

    p = sub.add_parser("quantum", help="EAQECC parameters from a recipe")
    p.add_argument("construction",
                   choices=("css", "euclidean", "euclidean_affine", "hermitian", "galois",
                            "galois_affine", "asymmetric", "trace"))
    _common(p, field_required=False)
    p.add_argument("--d1", type=int)
    p.add_argument("--d2", type=int)
    p.add_argument("--propagate", type=int, default=0, help="apply the length-reduction rule this many times")
    p.add_argument("--chain", action="store_true", help="emit every step 0..--propagate")
    _distance_flags(p, "bounds")
    p.set_defaults(func=cmd_quantum)

    p = sub.add_parser("reproduce", help="replay a bundled example and compare with its fixture")
    p.add_argument("example", nargs="?", help="example id (see --list) or 'all'")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_reproduce)
    return ap


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    if getattr(args, "budget", None) is None and getattr(args, "budget_default", False):
        args.budget = 2**32
    try:
        return args.func(args, out)
    except UsageError as e:
        print(f"prscodes: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except HypothesisFailed as e:
        print(f"prscodes: hypothesis failed: {e.condition}" + (f" ({e.detail})" if e.detail else ""),
              file=sys.stderr)
        return EXIT_HYPOTHESIS
    except CodingError as e:
        print(f"prscodes: invalid input: {e}", file=sys.stderr)
        return EXIT_HYPOTHESIS


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run the CLI and capture stdout."""
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())

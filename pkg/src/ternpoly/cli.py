"""Command-line front end.

Every command writes newline-delimited JSON records to stdout.  Exit status
is 0 on success, 1 when a verification or audit fails, and 2 for bad input.
"""

from __future__ import annotations

import argparse
import csv
import json
import resource
import sys
import time
import tracemalloc
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from math import gcd

from . import __version__
from .audit import (
    L1_CAP,
    LEMMAS,
    NEEDS_T_ABOVE_1,
    _Tables,
    audit_lemma,
    audit_triples,
    check_L1,
    window_lemma_sweep,
)
from .engine import CoeffStream, coeff_array, profile_stream
from .errors import EngineFault, TernpolyError
from .modmath import DEFAULT_SEARCH_CAP
from .oracle import DEFAULT_DEGREE_CAP, is_self_reciprocal, profile_from_coeffs, q_poly_coeffs
from .solvers import (
    DEFAULT_ORACLE_CAP,
    build_witness,
    diameter_rule,
    find_p_for_odd_diameter,
    solve_height,
    verify_witness,
)
from .theorem3 import check_conforming, derive_params, predict_profile
from .triple import Triple

SCHEMA_VERSION = "1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# the one triple whose coefficient set is known in advance
PINNED = {(3, 5, 7): frozenset({-2, -1, 0, 1})}


@dataclass
class OutputRecord:
    command: str
    inputs: dict
    results: dict
    verified: bool | None = None
    timestamp: str | None = None
    schema_version: str = SCHEMA_VERSION

    _ORDER = ("schema_version", "command", "inputs", "results", "verified", "timestamp")

    def to_json(self) -> str:
        return json.dumps({k: getattr(self, k) for k in self._ORDER}, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "OutputRecord":
        d = json.loads(line)
        return cls(**{k: d[k] for k in cls._ORDER})


@dataclass
class Context:
    timestamps: bool = True
    cap_degree: int = DEFAULT_DEGREE_CAP
    oracle_cap: int = DEFAULT_ORACLE_CAP
    search_cap: int = DEFAULT_SEARCH_CAP
    jobs: int = 1
    out: object = None

    def emit(self, command, inputs, results, verified=None):
        stamp = datetime.now(timezone.utc).isoformat(timespec="seconds") if self.timestamps else None
        rec = OutputRecord(command, inputs, results, verified, stamp)
        out = self.out or sys.stdout
        out.write(rec.to_json() + "\n")
        out.flush()
        return rec


# --------------------------------------------------------------------------
# profile


def cmd_profile(args, ctx: Context) -> int:
    triple = Triple(args.p, args.q, args.r)
    inputs = {"triple": list(triple), "mode": args.mode, "emit_coeffs": args.emit_coeffs}
    results = {}
    verified = None
    coeffs = None
    if args.mode in ("engine", "both"):
        if args.emit_coeffs and args.mode == "engine":
            _write_coeffs(args.emit_coeffs, triple)
        results["engine"] = profile_stream(triple).as_dict()
    if args.mode in ("oracle", "both"):
        coeffs = q_poly_coeffs(triple, cap=ctx.cap_degree)
        results["oracle"] = profile_from_coeffs(coeffs).as_dict()
        if args.emit_coeffs:
            _write_coeffs(args.emit_coeffs, triple, coeffs.coefficients)
    if args.mode == "both":
        same = coeffs is not None and bool((coeff_array(triple) == coeffs.coefficients).all())
        verified = same and results["engine"] == results["oracle"]
    results["profile"] = results.get("engine") or results["oracle"]
    ctx.emit("profile", inputs, results, verified)
    return EXIT_FAIL if verified is False else EXIT_OK


def _write_coeffs(path, triple, values=None):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["m", "a_m"])
        if values is not None:
            w.writerows(enumerate(int(v) for v in values))
            return
        for start, block in CoeffStream(triple).blocks():
            w.writerows(zip(range(start, start + len(block)), block.tolist()))


# --------------------------------------------------------------------------
# predict


def cmd_predict(args, ctx: Context) -> int:
    p, t, q, r = args.p, args.t, args.q, args.r
    Triple(p, q, r)
    report = check_conforming(p, t, q, r, strict=args.strict)
    inputs = {"p": p, "t": t, "q": q, "r": r, "strict": args.strict, "verify": args.verify}
    if not report.conforming:
        ctx.emit("predict", inputs, {"status": report.status.value, "violations": list(report.violations)}, None)
        return EXIT_USAGE
    cls = predict_profile(p, t, q, r, strict=args.strict)
    results = {"status": report.status.value, "warnings": list(report.warnings), "prediction": cls.as_dict()}
    verified = None
    # outside the strict hypotheses the table is only a guess, so check it
    if args.verify or not args.strict:
        got = profile_stream((p, q, r))
        results["computed"] = got.as_dict()
        verified = (got.a_minus, got.a_plus) == (cls.predicted_a_minus, cls.predicted_a_plus)
    ctx.emit("predict", inputs, results, verified)
    return EXIT_FAIL if verified is False else EXIT_OK


# --------------------------------------------------------------------------
# solve


def cmd_solve(args, ctx: Context) -> int:
    inputs = {"kind": args.kind, "p": args.p, "target": args.target, "prime_r": args.prime_r, "verify": args.verify}
    if args.kind == "height":
        w = solve_height(args.p, args.target, prime_r=args.prime_r, cap=ctx.search_cap)
    else:
        if args.kind == "diameter-any-p":
            p, t = find_p_for_odd_diameter(args.target, cap=ctx.search_cap)
        else:
            p = args.p
            t = diameter_rule(p, args.target)
        if t is None:
            results = {"witness": None, "message": f"no rule applies for diameter {args.target} with p={p}"}
            ctx.emit("solve", inputs, results, None)
            return EXIT_OK
        w = build_witness(p, t, "diameter", args.target, prime_r=args.prime_r, cap=ctx.search_cap)
    results = {"witness": w.as_dict()}
    verified = None
    if args.verify:
        rep = verify_witness(w, oracle_cap=ctx.oracle_cap)
        results["witness"] = rep.witness.as_dict()
        results["verification"] = rep.as_dict()
        verified = rep.ok
    ctx.emit("solve", inputs, results, verified)
    return EXIT_FAIL if verified is False else EXIT_OK


# --------------------------------------------------------------------------
# verify-corpus


def corpus(pmax, qmax, rmax):
    """Pairwise coprime ``3 <= p < q < r`` with each below its bound."""
    for p in range(3, pmax + 1):
        for q in range(p + 1, qmax + 1):
            if gcd(p, q) != 1:
                continue
            for r in range(q + 1, rmax + 1):
                if gcd(p, r) == 1 and gcd(q, r) == 1:
                    yield (p, q, r)


def _negated_partner(p, q, r):
    """Least ``r' = -r (mod pq)`` exceeding ``max(p, q)``."""
    pq = p * q
    rp = (-r) % pq
    while rp <= max(p, q) or gcd(rp, pq) != 1:
        rp += pq
    return rp


def check_triple(triple, oracle_cap=DEFAULT_ORACLE_CAP) -> dict:
    """Run every invariant on one triple; returns the failures found."""
    p, q, r = triple
    t = Triple(p, q, r).sorted()
    fails = []
    coeffs = coeff_array(t)
    prof = profile_stream(t)
    if t.degree <= oracle_cap:
        if not (q_poly_coeffs(t, cap=oracle_cap).coefficients == coeffs).all():
            fails.append("oracle and engine differ")
    try:
        if profile_from_coeffs(coeffs) != prof:
            fails.append("profile mismatch between stream and array")
    except EngineFault as e:
        fails.append(str(e))
    if not is_self_reciprocal(coeffs):
        fails.append("not self-reciprocal")
    if coeffs[0] != 1:
        fails.append(f"a_0 = {coeffs[0]}")
    if int(coeffs.sum()) != 1:
        fails.append(f"coefficient sum {int(coeffs.sum())} != 1")
    if not 2 <= prof.diameter <= t.p:
        fails.append(f"diameter {prof.diameter} outside [2, {t.p}]")
    a, b, c = t
    shifted = profile_stream((a, b, c + a * b))
    if shifted.coeff_set != prof.coeff_set:
        fails.append("shift by pq changed the coefficient set")
    rp = _negated_partner(a, b, c)
    neg = profile_stream((a, b, rp))
    if neg.coeff_set != frozenset(-v for v in prof.coeff_set):
        fails.append(f"r' = {rp} did not negate the coefficient set")
    checks = ["oracle" if t.degree <= oracle_cap else "oracle-skipped", "shift", "negation"]
    # conforming and flat checks apply under any assignment of roles
    for x, y, z in ((a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)):
        if (z % (x * y)) in (1, x * y - 1):
            checks.append("flat")
            if prof.height != 1:
                fails.append(f"r = +-1 (mod pq) for roles {(x, y, z)} but height {prof.height}")
        tt = y % x
        if tt and gcd(tt, x) == 1:
            rep = check_conforming(x, tt, y, z, strict=True)
            if rep.conforming:
                checks.append("case-table")
                cls = predict_profile(x, tt, y, z)
                if (cls.predicted_a_minus, cls.predicted_a_plus) != (prof.a_minus, prof.a_plus):
                    fails.append(f"case table predicts {cls.as_dict()} for roles {(x, y, z)}")
    pinned = PINNED.get(t.as_tuple())
    if pinned is not None:
        checks.append("pinned")
        if prof.coeff_set != pinned:
            fails.append(f"pinned set {sorted(pinned)} != {sorted(prof.coeff_set)}")
    return {"triple": list(t), "profile": prof.as_dict(), "checks": checks, "failures": fails}


def cmd_verify_corpus(args, ctx: Context) -> int:
    if args.triple:
        triples = [tuple(Triple(*args.triple).sorted())]
    else:
        triples = list(corpus(args.pmax, args.qmax, args.rmax))
    inputs = {"pmax": args.pmax, "qmax": args.qmax, "rmax": args.rmax, "triple": args.triple}
    passed = failed = 0
    with ThreadPoolExecutor(max_workers=max(1, ctx.jobs)) as pool:
        for res in pool.map(lambda t: check_triple(t, ctx.oracle_cap), triples):
            ok = not res["failures"]
            passed += ok
            failed += not ok
            ctx.emit("verify-corpus", {"triple": res["triple"]}, res, ok)
    ctx.emit("verify-corpus", inputs, {"summary": {"triples": len(triples), "passed": passed, "failed": failed}}, failed == 0)
    return EXIT_OK if failed == 0 else EXIT_FAIL


# --------------------------------------------------------------------------
# audit


def _audit_one(triple, lemmas):
    """All requested conforming audits for one triple, sharing the tables."""
    tab = _Tables(triple)
    t = derive_params(triple[0], triple[1]).t
    out = []
    for lid in lemmas:
        if t == 1 and lid in NEEDS_T_ABOVE_1:
            height = profile_stream(triple).height
            out.append({
                "lemma": lid,
                "triple": list(triple),
                "passed": height == 1,
                "skipped": "stated for t > 1; t = 1 is the flat case",
                "height": height,
            })
            continue
        out.append(audit_lemma(triple, lid, tables=tab).as_dict())
    return out


def cmd_audit(args, ctx: Context) -> int:
    lemmas = list(dict.fromkeys(args.lemmas))
    unknown = [x for x in lemmas if x not in LEMMAS + ("L1",)]
    if unknown:
        raise ValueError(f"unknown lemma ids {unknown}; choose from {list(LEMMAS) + ['L1']}")
    inputs = {"lemmas": lemmas, "all_small": args.all_small, "max_degree": args.max_degree,
              "conforming": args.conforming, "triple": args.triple}
    ok = True
    if "L1" in lemmas:
        bad = [n for n in range(4, L1_CAP + 1) if not check_L1(n)]
        ok &= not bad
        ctx.emit("audit", inputs, {"lemma": "L1", "range": [4, L1_CAP], "failures": bad}, not bad)
    window = [x for x in lemmas if x in ("L5", "L6")]
    other = [x for x in lemmas if x not in ("L1", "L5", "L6")]
    if window and args.all_small:
        sweep = window_lemma_sweep(args.max_degree)
        for rep in (sweep.l5, sweep.l6):
            if rep.lemma_id in window:
                ok &= rep.passed
                ctx.emit("audit", inputs, rep.as_dict(), rep.passed)
    triples = []
    if args.triple:
        triples.append(tuple(args.triple))
    if args.conforming:
        triples.extend(t.as_tuple() for t in audit_triples(args.conforming))
    if not triples and not args.all_small and "L1" not in lemmas:
        raise ValueError("select triples with --triple, --conforming P or --all-small")
    for t in triples:
        for lid in window:
            rep = audit_lemma(t, lid)
            ok &= rep.passed
            ctx.emit("audit", inputs, rep.as_dict(), rep.passed)

    def run(t):
        p, q, r = t
        while r <= p * q:
            r += p * q
        return _audit_one((p, q, r), other)

    if other:
        with ThreadPoolExecutor(max_workers=max(1, ctx.jobs)) as pool:
            for reports in pool.map(run, triples):
                for rep in reports:
                    ok &= rep["passed"]
                    ctx.emit("audit", inputs, rep, rep["passed"])
    return EXIT_OK if ok else EXIT_FAIL


# --------------------------------------------------------------------------
# bench


def bench_triple(degree: int) -> Triple:
    """``{11, 127, r}`` with ``r`` the least coprime value reaching ``degree``."""
    p, q = 11, 127
    r = max(q + 1, -(-degree // ((p - 1) * (q - 1))) + 1)
    while gcd(r, p * q) != 1:
        r += 1
    return Triple(p, q, r)


def cmd_bench(args, ctx: Context) -> int:
    triple = bench_triple(int(args.degree))
    profile_stream((3, 5, 7))  # compile outside the timed region
    tracemalloc.start()
    t0 = time.perf_counter()
    prof = profile_stream(triple)
    elapsed = time.perf_counter() - t0
    _, peak = tracemalloc.get_traced_memory()
    tracemalloc.stop()
    results = {
        "triple": list(triple),
        "degree": triple.degree,
        "seconds": round(elapsed, 3),
        "steps_per_second": round((triple.degree + 1) / elapsed),
        "traced_peak_bytes": peak,
        "max_rss_kib": resource.getrusage(resource.RUSAGE_SELF).ru_maxrss,
        "profile": prof.as_dict(),
    }
    ctx.emit("bench", {"degree": int(args.degree)}, results, None)
    return EXIT_OK


# --------------------------------------------------------------------------
# argument handling


def _int(text):
    """Accept plain integers and forms like ``5e7``."""
    try:
        return int(text)
    except ValueError:
        v = float(text)
        if v != int(v):
            raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
        return int(v)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ternpoly", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--config", help="JSON file presetting cap_degree, oracle_cap, search_cap, jobs")
    ap.add_argument("--no-timestamp", action="store_true", help="omit the timestamp from records")
    ap.add_argument("--cap-degree", type=_int, help="largest degree the dense oracle will expand")
    ap.add_argument("--jobs", type=int, help="worker threads for corpus and audit runs")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("profile", help="extremes and coefficient set of one triple")
    sp.add_argument("p", type=int)
    sp.add_argument("q", type=int)
    sp.add_argument("r", type=int)
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--engine", dest="mode", action="store_const", const="engine")
    mode.add_argument("--oracle", dest="mode", action="store_const", const="oracle")
    mode.add_argument("--both", dest="mode", action="store_const", const="both")
    sp.set_defaults(mode="engine", func=cmd_profile)
    sp.add_argument("--emit-coeffs", metavar="PATH", help="write m,a_m rows to PATH")

    sp = sub.add_parser("predict", help="closed-form extremes for a conforming triple")
    for name in ("p", "t", "q", "r"):
        sp.add_argument(name, type=int)
    sp.add_argument("--strict", action=argparse.BooleanOptionalAction, default=True)
    sp.add_argument("--verify", action="store_true", help="also compute the profile and compare")
    sp.set_defaults(func=cmd_predict)

    sp = sub.add_parser("solve", help="build a triple with a given height or diameter")
    sp.add_argument("kind", choices=("height", "diameter", "diameter-any-p"))
    sp.add_argument("args", type=int, nargs="+", metavar="N", help="p and target, or just the target for diameter-any-p")
    sp.add_argument("--prime-r", action="store_true")
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--search-cap", type=_int)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("verify-corpus", help="run every invariant over a range of triples")
    sp.add_argument("pmax", type=int, nargs="?", default=0)
    sp.add_argument("qmax", type=int, nargs="?", default=0)
    sp.add_argument("rmax", type=int, nargs="?", default=0)
    sp.add_argument("--triple", type=int, nargs=3, metavar=("P", "Q", "R"))
    sp.set_defaults(func=cmd_verify_corpus)

    sp = sub.add_parser("audit", help="check the counting lemmas on triples or sweeps")
    sp.add_argument("lemmas", nargs="+", metavar="LEMMA", help=f"any of {', '.join(LEMMAS)}, L1")
    sp.add_argument("--all-small", action="store_true", help="L5/L6 over every triple up to --max-degree")
    sp.add_argument("--max-degree", type=_int, default=10**5)
    sp.add_argument("--conforming", type=int, metavar="P", help="the audit triples for this p")
    sp.add_argument("--triple", type=int, nargs=3, metavar=("P", "Q", "R"))
    sp.set_defaults(func=cmd_audit)

    sp = sub.add_parser("bench", help="time the streaming engine")
    sp.add_argument("--degree", type=_int, default=5 * 10**7)
    sp.set_defaults(func=cmd_bench)
    return ap


def _context(args) -> Context:
    ctx = Context(timestamps=not args.no_timestamp)
    if args.config:
        with open(args.config) as fh:
            conf = json.load(fh)
        for key in ("cap_degree", "oracle_cap", "search_cap", "jobs"):
            if key in conf:
                setattr(ctx, key, int(conf[key]))
    if args.cap_degree is not None:
        ctx.cap_degree = args.cap_degree
    if args.jobs is not None:
        ctx.jobs = args.jobs
    if getattr(args, "search_cap", None) is not None:
        ctx.search_cap = args.search_cap
    return ctx


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "solve":
        want = 1 if args.kind == "diameter-any-p" else 2
        if len(args.args) != want:
            ap.error(f"solve {args.kind} takes {want} integer argument(s)")
        args.p, args.target = (None, args.args[0]) if want == 1 else args.args
    try:
        ctx = _context(args)
        return args.func(args, ctx)
    except EngineFault as e:
        print(f"ternpoly: engine fault: {e}", file=sys.stderr)
        return EXIT_FAIL
    except (TernpolyError, ValueError, OSError) as e:
        print(f"ternpoly: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

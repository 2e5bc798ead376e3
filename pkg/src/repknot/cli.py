"""Command-line front end.

Every subcommand prints a JSON report with ``--json`` and a short text view
otherwise.  Exit codes: 0 for any completed computation (a refuted simplicity
check is a finding, not an error), 2 for usage and input errors, 3 when two
independent computations of the same quantity disagree.
"""
import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from . import cohomology as co
from . import dihedral as dh
from . import doublecover as dc
from . import variety as va
from .corpus import load_corpus
from .diagram import parse
from .errors import InternalInconsistency, RepknotError
from .presentation import determinant, invariants, wirtinger


class UsageError(Exception):
    pass


def _rounded(obj, digits=8):
    if isinstance(obj, float):
        return round(obj, digits) + 0.0
    if isinstance(obj, dict):
        return {k: _rounded(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_rounded(v, digits) for v in obj]
    return obj


def _diagram(args):
    if not args.input:
        raise UsageError("--input is required")
    return parse(args.input)


def _tolerances(args):
    return va.PROFILES[args.tolerance_profile]


def _classes(d, p, modulus=None):
    delta = modulus if modulus is not None else determinant(d, p)
    return delta, dh.enumerate_classes(p, delta)


def _scan(d, p, args):
    return va.scan(p, pin_meridian=args.pin_meridian, n_seeds=args.seeds,
                   rng_seed=args.rng, tol=_tolerances(args))


# ---------------------------------------------------------------------------
# subcommands; each returns a JSON-ready dict

def cmd_invariants(args):
    d = _diagram(args)
    return {"invariants": invariants(d, args.input).to_json()}


def cmd_dihedral(args):
    d = _diagram(args)
    p = wirtinger(d)
    delta, classes = _classes(d, p, args.modulus)
    out = {"delta": delta, "classes": [c.to_json() for c in classes]}
    if d.n_components == 2 and delta % 4 == 2:
        out["meridian_form"] = dh.meridian_form_check(
            classes[0] if classes else None, d, delta).to_json()
    return out


def cmd_scan(args):
    d = _diagram(args)
    return {"scan": _scan(d, wirtinger(d), args).to_json()}


def cmd_simplicity(args):
    d = _diagram(args)
    s = _scan(d, wirtinger(d), args)
    return {"scan": s.to_json(), "verdict": va.simplicity_verdict(s).to_json()}


def cmd_cohomology(args):
    d = _diagram(args)
    p = wirtinger(d)
    delta, classes = _classes(d, p, args.modulus)
    if not 0 <= args.klass < len(classes):
        raise UsageError(f"--class {args.klass} out of range: {len(classes)} classes")
    c = classes[args.klass]
    return {"class": c.to_json(), "cohomology": co.report(dh.lift_to_su2(c, p), p).to_json()}


def cmd_cover(args):
    d = _diagram(args)
    p = wirtinger(d)
    order, rank2 = dc.h1_sigma2(d)
    words, fillings = dc.even_subgroup_generators(p)
    out = {"h1_order": order, "mod2_rank": rank2,
           "generator_words": [list(w) for w in words],
           "filling_words": [list(w) for w in fillings], "abelian": None}
    rep = None
    if args.from_class is not None:
        _, classes = _classes(d, p, args.modulus)
        if not 0 <= args.from_class < len(classes):
            raise UsageError(f"--from-class {args.from_class} out of range")
        rep = dh.lift_to_su2(classes[args.from_class], p)
    elif args.from_scan is not None:
        clusters = _scan(d, p, args).clusters
        if not 0 <= args.from_scan < len(clusters):
            raise UsageError(f"--from-scan {args.from_scan} out of range")
        rep = clusters[args.from_scan].representative
    if rep is not None:
        if order == 0:
            raise UsageError("the map B needs det != 0")
        b = dc.b_map(rep, p)
        out["abelian"] = dc.is_abelian_so3(b)
        out["commutator_defect"] = float(f"{b.commutator_defect():.3e}")
    return out


def cmd_report(args):
    d = _diagram(args)
    p = wirtinger(d)
    out = {"invariants": invariants(d, args.input).to_json()}
    delta = out["invariants"]["det"]
    classes = dh.enumerate_classes(p, delta) if delta else []
    out["dihedral"] = {"delta": delta, "classes": [c.to_json() for c in classes]}
    out["cohomology"] = [co.report(dh.lift_to_su2(c, p), p).to_json() for c in classes]
    s = _scan(d, p, args)
    out["scan"] = s.to_json()
    out["verdict"] = va.simplicity_verdict(s).to_json()
    order, rank2 = dc.h1_sigma2(d)
    cover = {"h1_order": order, "mod2_rank": rank2}
    if order:
        cover["b_abelian"] = [dc.is_abelian_so3(dc.b_map(c.representative, p))
                              for c in s.irreducible()]
    out["cover"] = cover
    return out


def corpus_row(name, d, seeds=0, rng=0, tol=None):
    """Pass/fail flags for one corpus entry (None where a check does not apply)."""
    p = wirtinger(d)
    inv = invariants(d, name)
    row = {"name": name, "det": inv.det, "sigma": inv.sigma,
           "components": inv.n_components, "checks": dict(inv.checks)}
    _, rank2 = dc.h1_sigma2(d)
    row["checks"]["mod2_rank"] = rank2 == d.n_components - 1
    if inv.det:
        classes = dh.enumerate_classes(p, inv.det)
        row["classes"] = len(classes)
        if d.n_components == 1:
            row["checks"]["klassen_count"] = len(classes) == (inv.det - 1) // 2
        lifts = [dh.lift_to_su2(c, p) for c in classes]
        row["checks"]["lifts"] = all(r.residual < 1e-12 and va.is_binary_dihedral(r)
                                     for r in lifts)
        if seeds:
            s = va.scan(p, True, seeds, rng, tol)
            dihedral = [c.representative for c in s.clusters if c.classification == "dihedral"]
            row["checks"]["scan_matches_classes"] = _biject(lifts, dihedral)
            row["checks"]["b_nonabelian"] = all(
                not dc.is_abelian_so3(dc.b_map(c.representative, p), 1e-3)
                for c in s.clusters if c.classification == "other-irreducible")
    return row


def _biject(lifts, found, tol=1e-6):
    if len(lifts) != len(found):
        return False
    used = set()
    for r in lifts:
        match = [k for k, f in enumerate(found)
                 if k not in used and max(abs(r.character - f.character)) < tol]
        if not match:
            return False
        used.add(match[0])
    return True


def cmd_corpus(args):
    try:
        entries, diagnostics = load_corpus(args.file)
    except OSError as exc:
        raise UsageError(f"cannot read corpus: {exc}") from exc
    tol = _tolerances(args)

    def work(entry):
        try:
            return corpus_row(entry[0], entry[1], args.seeds if args.seeds_given else 0,
                              args.rng, tol)
        except InternalInconsistency:
            raise
        except RepknotError as exc:
            return {"name": entry[0], "error": f"{type(exc).__name__}: {exc}"}

    threads = va._thread_count()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(work, entries))
    else:
        rows = [work(e) for e in entries]
    return {"entries": rows,
            "diagnostics": [{"line": x.line, "text": x.text, "message": x.message}
                            for x in diagnostics]}


COMMANDS = {
    "invariants": cmd_invariants,
    "dihedral": cmd_dihedral,
    "scan": cmd_scan,
    "simplicity": cmd_simplicity,
    "cohomology": cmd_cohomology,
    "cover": cmd_cover,
    "report": cmd_report,
    "corpus": cmd_corpus,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="repknot",
        description="Meridian-traceless SU(2) representation invariants of knots and links.")
    parser.add_argument("--version", action="version", version=f"repknot {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="PD code 'X(a,b,c,d),...', 'U', or braid 'BR[n; w,...]'")
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--tolerance-profile", choices=sorted(va.PROFILES), default="default")
    common.add_argument("--modulus", type=int, help="label modulus (default: the determinant)")

    scanning = argparse.ArgumentParser(add_help=False)
    scanning.add_argument("--seeds", type=int, default=200, help="number of random seeds")
    scanning.add_argument("--rng", type=int, default=0, help="seed of the random generator")
    scanning.add_argument("--pin-meridian", action=argparse.BooleanOptionalAction, default=True,
                          help="hold the distinguished meridian at i (default on)")

    sub.add_parser("invariants", parents=[common], help="det, signature, Alexander polynomial")
    sub.add_parser("dihedral", parents=[common], help="exact binary dihedral classes")
    sub.add_parser("scan", parents=[common, scanning], help="numerical variety scan")
    sub.add_parser("simplicity", parents=[common, scanning], help="scan-based simplicity check")
    coh = sub.add_parser("cohomology", parents=[common], help="twisted H^1 of a dihedral class")
    coh.add_argument("--class", dest="klass", type=int, default=0, help="class index")
    cover = sub.add_parser("cover", parents=[common, scanning], help="branched double cover")
    source = cover.add_mutually_exclusive_group()
    source.add_argument("--from-class", type=int, help="use the lift of this dihedral class")
    source.add_argument("--from-scan", type=int, help="use this scan cluster")
    sub.add_parser("report", parents=[common, scanning], help="full pipeline")
    corpus = sub.add_parser("corpus", parents=[common, scanning],
                            help="pass/fail table over a corpus file")
    corpus.add_argument("--file", help="corpus file (default: the bundled corpus)")
    return parser


def _print_text(command, out):
    if command == "corpus":
        for row in out["entries"]:
            if "error" in row:
                print(f"{row['name']:<16} ERROR {row['error']}")
                continue
            flags = " ".join(f"{k}={'pass' if v else 'FAIL'}"
                             for k, v in sorted(row["checks"].items()) if v is not None)
            print(f"{row['name']:<16} det={row['det']:<4} sigma={row['sigma']:<4} {flags}")
        for x in out["diagnostics"]:
            print(f"line {x['line']}: {x['message']}", file=sys.stderr)
        return
    for key, value in out.items():
        if key in ("version", "timing", "input", "command"):
            continue
        print(f"{key}: {json.dumps(value, sort_keys=True)}")


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    raw = sys.argv[1:] if argv is None else argv
    args.seeds_given = any(a == "--seeds" or a.startswith("--seeds=") for a in raw)
    if getattr(args, "seeds", 1) < 1:
        print("error: --seeds must be at least 1", file=sys.stderr)
        return 2
    start = time.perf_counter()
    try:
        out = COMMANDS[args.command](args)
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (UsageError, RepknotError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    out = _rounded(out)
    out["command"] = args.command
    out["input"] = args.input
    out["version"] = __version__
    out["timing"] = round(time.perf_counter() - start, 3)
    if args.json:
        print(json.dumps(out, sort_keys=True, indent=2))
    else:
        _print_text(args.command, out)
    return 0


def main(argv=None):
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: analyze, construct, verify, corpus-run."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import AlgebraError, find_identity, is_commutative, is_square_dense
from .cohomology import h1_dual, is_cyclically_amenable
from .constructions import AmalgamResult
from .io import ParseError, load_descriptor, load_instance, write_construction
from .structure import characters, is_amenable, is_semisimple, radical
from .verify import DEFAULT_BUDGET, FAIL, REGISTRY, UnknownTheoremId, corpus_run, verify

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def analyze(inst) -> dict:
    a = inst.algebra if isinstance(inst, AmalgamResult) else inst
    one = find_identity(a)
    spec = characters(a)
    rad = radical(a)
    h = h1_dual(a)
    return {
        "dimension": a.dim,
        "labels": list(a.labels),
        "identity": None if one is None else [str(x) for x in one.coords],
        "commutative": bool(is_commutative(a)),
        "square_dense": is_square_dense(a),
        "radical_dim": rad.dim,
        "radical_basis": [[str(x) for x in v] for v in rad.basis],
        "semisimple": is_semisimple(a),
        "spectrum": spec.to_json(),
        "amenable": is_amenable(a),
        "h1_dual": h.h1_dim,
        "weakly_amenable": h.h1_dim == 0,
        "cyclically_amenable": is_cyclically_amenable(a),
    }


def format_analysis(rep: dict) -> str:
    spec = rep["spectrum"]
    chars = str(len(spec["characters"]))
    if not spec["complete"]:
        chars += f" found, incomplete ({spec['obstruction']})"
    lines = [
        ("dimension", rep["dimension"]),
        ("identity", _yes(rep["identity"] is not None)),
        ("commutative", _yes(rep["commutative"])),
        ("square-dense", _yes(rep["square_dense"])),
        ("radical dim", rep["radical_dim"]),
        ("semisimple", _yes(rep["semisimple"])),
        ("characters", chars),
        ("amenable", _yes(rep["amenable"])),
        ("dim H1(A, A*)", rep["h1_dual"]),
        ("weakly amenable", _yes(rep["weakly_amenable"])),
        ("cyclically amenable", _yes(rep["cyclically_amenable"])),
    ]
    width = max(len(k) for k, _ in lines)
    return "\n".join(f"{k + ':':<{width + 1}} {v}" for k, v in lines)


def _table(reports) -> str:
    rows = [("theorem", "instance", "status")] + [(r.theorem_id, r.instance, r.status) for r in reports]
    w0 = max(len(r[0]) for r in rows)
    w1 = max(len(r[1]) for r in rows)
    return "\n".join(f"{a:<{w0}}  {b:<{w1}}  {c}" for a, b, c in rows)


def cmd_analyze(args) -> int:
    rep = analyze(load_instance(args.file))
    print(json.dumps(rep, sort_keys=True) if args.json else format_analysis(rep))
    return EXIT_OK


def cmd_construct(args) -> int:
    r = load_descriptor(args.descriptor)
    for path in write_construction(r, args.output):
        print(path)
    for w in r.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.theorem_id not in REGISTRY:
        raise UnknownTheoremId(args.theorem_id)
    reports = []
    for f in args.files:
        reports.append(verify(args.theorem_id, load_instance(f), str(f), args.budget))
    reports.sort(key=lambda r: (r.theorem_id, r.instance))
    if args.json:
        print("\n".join(r.to_json() for r in reports))
    else:
        print(_table(reports))
        for r in reports:
            if r.status == FAIL:
                print(f"{r.instance}: {json.loads(r.to_json())['details']}")
    return EXIT_FAIL if any(r.status == FAIL for r in reports) else EXIT_OK


def cmd_corpus_run(args) -> int:
    run = corpus_run(args.corpus, args.budget)
    if args.json:
        sys.stdout.write(run.json_lines())
    else:
        print(_table(run.reports) if run.reports else "(no instances)")
        for name, msg in run.errors:
            print(f"error  {name}: {msg}")
        c = run.counts()
        print(f"\npass: {c['pass']}  fail: {c['fail']}  hypothesis-not-met: {c['hypothesis-not-met']}  errors: {len(run.errors)}")
    return run.exit_code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="amalgam", description="Exact computations on amalgamated algebras over Q.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="structure report for an algebra file or construction descriptor")
    a.add_argument("file", type=Path)
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("construct", help="evaluate a construction descriptor and write the result")
    c.add_argument("descriptor", type=Path)
    c.add_argument("-o", "--output", type=Path, required=True)
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check one statement on the given instances")
    v.add_argument("theorem_id", help="one of: " + ", ".join(sorted(REGISTRY)))
    v.add_argument("files", nargs="+", type=Path)
    v.add_argument("--json", action="store_true")
    v.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("corpus-run", help="run every statement over the corpus and generated constructions")
    r.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    r.add_argument("--json", action="store_true")
    r.add_argument("--corpus", type=Path, default=None, help="corpus directory (default: $AMALGAM_CORPUS or shipped)")
    r.set_defaults(func=cmd_corpus_run)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnknownTheoremId as e:
        print(f"error: unknown theorem id {e.args[0]!r}; known: {', '.join(sorted(REGISTRY))}", file=sys.stderr)
    except (ParseError, AlgebraError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

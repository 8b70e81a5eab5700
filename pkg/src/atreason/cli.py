"""Command line front end.

    atreason check FILE
    atreason translate FILE [--ground --depth D]
    atreason solve FILE [--plp] [--depth D]
    atreason ask FILE QUERY [QUERY ...] [--depth D] [--jobs N]
    atreason analyze FILE [--depth D]

Exit codes: 0 yes or success, 3 no, 2 undefined (no model or no answer
set), 1 usage or input error.  Every command accepts ``--format json``.
A FILE that does not exist is looked up among the bundled example
domains, so ``atreason ask shooting2.atd "-Alive after Shoot"`` works
from any directory.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path

from .analyzer import analyze
from .domain import DomainError, parse_domain, parse_query, validate_domain
from .logic import LogicError, ParseError, check_well_formed, ground_instantiate, parse_plp, render_plp
from .plp import NoAnswerSet, report
from .reasoner import NoModel, Reasoner
from .translate import TranslationError, ground, translate

EXIT_YES, EXIT_ERROR, EXIT_UNDEFINED, EXIT_NO = 0, 1, 2, 3


def resolve(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    bundled = resources.files("atreason") / "data" / p.name
    if bundled.is_file():
        return Path(str(bundled))
    raise FileNotFoundError(path)


def read(path: str) -> str:
    return resolve(path).read_text(encoding="utf-8")


def is_plp(path: str, flag: bool) -> bool:
    return flag or path.endswith(".plp")


def emit(args, payload, text):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


# -- commands

def cmd_check(args) -> int:
    src = read(args.file)
    if is_plp(args.file, args.plp):
        plp = parse_plp(src)
        wf = check_well_formed(plp)
        diags = [] if wf.ok else [f"rules {wf.pair[0]} < {wf.pair[1]} share the instance {wf.witness}"]
        name = args.file
    else:
        d = parse_domain(src)
        diags = [str(x) for x in validate_domain(d)]
        name = d.name
    emit(args, {"file": args.file, "ok": not diags, "diagnostics": diags},
         "\n".join(diags) if diags else f"{name}: ok")
    return EXIT_YES if not diags else EXIT_ERROR


def cmd_translate(args) -> int:
    d = parse_domain(read(args.file))
    t = translate(d)
    if args.ground:
        g, _ = ground(t, args.depth or 0)
        text = render_plp(g)
        payload = {"program": text, "rules": len(g.rules), "depth": args.depth or 0}
    else:
        text = render_plp(t.plp)
        payload = {"program": text, **t.to_json()}
        text += "% schema map\n" + json.dumps(payload["schema_map"], sort_keys=True)
    emit(args, payload, text.rstrip("\n"))
    return EXIT_YES


def _solve_payload(args):
    if is_plp(args.file, args.plp):
        plp = parse_plp(read(args.file))
        if not plp.program.is_ground():
            plp, _ = ground_instantiate(plp, depth=args.depth or 0)
        return report(plp)
    r = Reasoner(parse_domain(read(args.file)), args.depth or 0)
    return report(r.engine)


def cmd_solve(args) -> int:
    rep = _solve_payload(args)
    lines = []
    for k, red in enumerate(rep["reducts"], 1):
        gone = "; ".join("{" + ", ".join(s) + "}" for s in red["eliminated"]) or "none"
        lines.append(f"reduct {k}: {', '.join(red['rules'])}")
        lines.append(f"  eliminated: {gone}")
    for k, a in enumerate(rep["answer_sets"], 1):
        lines.append(f"answer set {k}: {{{', '.join(a)}}}")
    if not rep["answer_sets"]:
        lines.append("no answer set")
    emit(args, rep, "\n".join(lines))
    return EXIT_YES if rep["answer_sets"] else EXIT_UNDEFINED


def ask_one(path, query, depth):
    """Answer one query; module level so worker processes can run it."""
    d = parse_domain(read(path))
    q = parse_query(query, d)
    r = Reasoner(d, max(depth or 0, len(q.actions)))
    r.require_defined()
    value = r.value(q)
    return {"query": query, "entailed": value == "true", "value": value,
            "models": r.count_models(), "depth": r.depth}


def cmd_ask(args) -> int:
    if args.jobs > 1 and len(args.query) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(ask_one, [args.file] * len(args.query), args.query,
                                    [args.depth] * len(args.query)))
    else:
        results = [ask_one(args.file, q, args.depth) for q in args.query]
    payload = results[0] if len(results) == 1 else results
    text = "\n".join(
        (f"{x['query']}: " if len(results) > 1 else "")
        + ("true" if x["entailed"] else "false")
        + ("" if x["value"] != "unknown" else " (unknown)")
        for x in results
    )
    emit(args, payload, text)
    return EXIT_YES if all(x["entailed"] for x in results) else EXIT_NO


def cmd_analyze(args) -> int:
    d = parse_domain(read(args.file))
    rep = analyze(d, args.depth if args.depth is not None else 1)
    emit(args, rep.to_json(), rep.text())
    return EXIT_YES


COMMANDS = {"check": cmd_check, "translate": cmd_translate, "solve": cmd_solve,
            "ask": cmd_ask, "analyze": cmd_analyze}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="atreason", description="Reason about AT0/AT1/AT2 action domains.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--depth", type=int, default=None)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--plp", action="store_true", help="treat FILE as a prioritized logic program")
        return p

    common(sub.add_parser("check", help="parse and validate a domain or program"))
    common(sub.add_parser("translate", help="print the translated program")).add_argument(
        "--ground", action="store_true", help="ground at --depth")
    common(sub.add_parser("solve", help="print reducts and answer sets"))
    common(sub.add_parser("ask", help="decide value propositions")).add_argument("query", nargs="+")
    common(sub.add_parser("analyze", help="normality, monotonicity, temporal definiteness"))
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_YES
    if args.depth is not None and args.depth < 0:
        print("error: --depth must be non-negative", file=sys.stderr)
        return EXIT_ERROR
    try:
        return COMMANDS[args.command](args)
    except (NoModel, NoAnswerSet) as e:
        print(f"undefined: {e}", file=sys.stderr)
        return EXIT_UNDEFINED
    except FileNotFoundError as e:
        print(f"error: no such file {e}", file=sys.stderr)
        return EXIT_ERROR
    except (DomainError, ParseError, TranslationError, LogicError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

"""Batch front-end: verify / build-hodge / transfer / trees.

Exit codes: 0 all requested checks pass, 1 a check or construction failed,
2 the input file (or argument) is invalid.  Output is UTF-8 JSON, compact by
default, indented with --pretty; repeated runs on the same input are
byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .ainfinity import check_cyclic, check_form, check_stasheff
from .hodge import HodgeError, build_harmonious, verify
from .specfile import AlgebraInput, SpecFileError, load_algebra_file
from .transfer import MinimalModelError, minimal_model, transfer
from .trees import enumerate_trees, tree_plan

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


def _emit(doc: dict, args: argparse.Namespace) -> None:
    if getattr(args, "pretty", False):
        text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    else:
        text = json.dumps(doc, separators=(",", ":"), ensure_ascii=False) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _structure(inp: AlgebraInput, args: argparse.Namespace):
    cutoff = args.cutoff if args.cutoff is not None else inp.default_cutoff()
    return inp.structure(cutoff), cutoff


def cmd_verify(args: argparse.Namespace) -> int:
    inp = load_algebra_file(args.file)
    A, cutoff = _structure(inp, args)
    form_rep = check_form(inp.V, inp.B)
    stasheff_rep = check_stasheff(A)
    cyclic_rep = check_cyclic(A, inp.B)
    doc = {
        "cutoff": cutoff,
        "form": form_rep.as_dict(),
        "stasheff": stasheff_rep.as_dict(),
        "cyclic": cyclic_rep.as_dict(),
    }
    ok = form_rep.passed and stasheff_rep.passed and cyclic_rep.passed
    if inp.hodge is not None:
        hodge_rep = verify(inp.hodge, inp.V, inp.B)
        doc["hodge"] = hodge_rep.as_dict()
        ok = ok and hodge_rep.axioms_pass and (
            hodge_rep.harmonious or not inp.hodge.harmonious)
    doc["passed"] = ok
    _emit(doc, args)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_build_hodge(args: argparse.Namespace) -> int:
    inp = load_algebra_file(args.file)
    form_rep = check_form(inp.V, inp.B)
    if not form_rep.passed:
        _emit({"passed": False, "form": form_rep.as_dict(),
               "error": "form fails its identity checks"}, args)
        return EXIT_CHECK_FAILED
    try:
        H = build_harmonious(inp.V, inp.B)
    except HodgeError as exc:
        _emit({"passed": False, "error": str(exc)}, args)
        return EXIT_CHECK_FAILED
    report = verify(H, inp.V, inp.B)
    doc = {
        "passed": report.passes_harmonious,
        "hodge": H.as_dict(),
        "report": report.as_dict(),
    }
    _emit(doc, args)
    return EXIT_OK if report.passes_harmonious else EXIT_CHECK_FAILED


def cmd_transfer(args: argparse.Namespace) -> int:
    inp = load_algebra_file(args.file)
    A, cutoff = _structure(inp, args)
    require_harmonious = True
    if inp.require_harmonious is not None:
        require_harmonious = inp.require_harmonious
    if args.require_harmonious is not None:
        require_harmonious = args.require_harmonious

    try:
        H = inp.hodge if inp.hodge is not None else build_harmonious(inp.V, inp.B)
    except HodgeError as exc:
        _emit({"passed": False, "error": str(exc)}, args)
        return EXIT_CHECK_FAILED

    if require_harmonious:
        try:
            model, report = minimal_model(A, inp.B, H, cutoff)
        except MinimalModelError as exc:
            _emit({"passed": False, "error": str(exc), "report": exc.report}, args)
            return EXIT_CHECK_FAILED
        doc = {"passed": report.passed, "model": model.as_dict(), "report": report.as_dict()}
        _emit(doc, args)
        return EXIT_OK if report.passed else EXIT_CHECK_FAILED

    hodge_rep = verify(H, inp.V, inp.B)
    if not hodge_rep.axioms_pass:
        _emit({"passed": False, "error": f"Hodge data fails axioms: {hodge_rep.failures()}",
               "report": hodge_rep.as_dict()}, args)
        return EXIT_CHECK_FAILED
    ts = transfer(A, H, cutoff)
    doc = {
        "passed": True,
        "raw_transfer": {
            "cutoff": ts.cutoff,
            "operations": [
                {"n": n, "entries": [{"in": list(i), "out": o, "c": str(c)}
                                     for i, o, c in ts.ambient_ops[n].entry_list()]}
                for n in sorted(ts.ambient_ops)
            ],
        },
        "hodge_report": hodge_rep.as_dict(),
    }
    _emit(doc, args)
    return EXIT_OK


def cmd_trees(args: argparse.Namespace) -> int:
    if args.n < 2:
        print(f"error: leaf count must be at least 2, got {args.n}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    trees = enumerate_trees(args.n)
    doc: dict = {"n": args.n, "count": len(trees)}
    if args.list:
        doc["trees"] = [t.to_nested() for t in trees]
    if args.plans:
        doc["plans"] = [[list(stage) for stage in tree_plan(t)] for t in trees]
    _emit(doc, args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclic-ainfty",
        description="Exact Hodge decompositions and tree-sum minimal models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--output", metavar="PATH", help="write the JSON report here")
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="pretty", action="store_false", default=False,
                         help="compact JSON output (default)")
        fmt.add_argument("--pretty", dest="pretty", action="store_true",
                         help="indented JSON output")

    p_verify = sub.add_parser("verify", help="run form/associativity/cyclicity checks")
    p_verify.add_argument("file")
    p_verify.add_argument("--cutoff", type=int, default=None,
                          help="check arities up to N (default: highest present + 1, capped at 6)")
    common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_hodge = sub.add_parser("build-hodge", help="construct a harmonious decomposition")
    p_hodge.add_argument("file")
    common(p_hodge)
    p_hodge.set_defaults(func=cmd_build_hodge)

    p_transfer = sub.add_parser("transfer", help="compute the tree-sum minimal model")
    p_transfer.add_argument("file")
    p_transfer.add_argument("--cutoff", type=int, default=None)
    harm = p_transfer.add_mutually_exclusive_group()
    harm.add_argument("--require-harmonious", dest="require_harmonious",
                      action="store_true", default=None,
                      help="demand harmonious data and emit the minimal model (default)")
    harm.add_argument("--no-require-harmonious", dest="require_harmonious",
                      action="store_false",
                      help="emit the raw transferred structure on V instead")
    common(p_transfer)
    p_transfer.set_defaults(func=cmd_transfer)

    p_trees = sub.add_parser("trees", help="enumerate planar rooted trees")
    p_trees.add_argument("n", type=int)
    p_trees.add_argument("--list", action="store_true", help="include the tree list")
    p_trees.add_argument("--plans", action="store_true", help="include composition plans")
    common(p_trees)
    p_trees.set_defaults(func=cmd_trees)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())

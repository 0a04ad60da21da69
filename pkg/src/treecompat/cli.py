"""treecompat command line.

Exit codes: 0 compatible / valid, 1 incompatible / invalid, 2 error or budget.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .cuts import DEFAULT_MAX_CUT_VERTICES, DEFAULT_SEARCH_BUDGET, CutCertificate, as_cut
from .elig import build_elig
from .errors import BudgetExceeded, CapExceeded, InternalError, NewickError, TreeCompatError
from .generate import random_profile
from .graph_core import vertex_name
from .oracle import OracleBudget, brute_force_compatible
from .phylo_io import read_profile, serialize_newick
from .pipeline import display_blocks, solve
from .splits import format_splits, splits_of_tree

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2
DEFAULT_SEED = 0


@dataclass
class RunReport:
    verdict: str
    certificate_path: str | None = None
    supertree_path: str | None = None
    triangulation_path: str | None = None
    timings: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in ("compatible", "incompatible", "budget-exceeded"):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        has_paths = any((self.certificate_path, self.supertree_path, self.triangulation_path))
        if has_paths and self.verdict != "compatible":
            raise ValueError("artifact paths are only reported for compatible runs")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write(path, text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _describe(inc) -> str:
    edges = ", ".join(f"tree {t} edge {vertex_name(e)}" for t, e in inc.edges)
    return f"{inc.reason}: {edges}" if edges else inc.reason


def _solve(args, triangulate=True):
    p = read_profile(args.inputs)
    return solve(p, max_vertices=args.max_cut_vertices, budget=args.budget, triangulate=triangulate)


def _incompatible(sol) -> int:
    bad = sol.blocks[-1].incompatible
    print(f"incompatible: {_describe(bad)}")
    return EXIT_NO


def cmd_check(args) -> int:
    sol = _solve(args, triangulate=args.out_dir is not None)
    report = RunReport("compatible" if sol.compatible else "incompatible", timings=sol.timings)
    if sol.compatible:
        print(f"compatible: {len(sol.certificate_json()['cuts'])} cuts")
        if args.certificate:
            _write(args.certificate, dumps(sol.certificate_json()))
        if args.out_dir:
            out = Path(args.out_dir)
            out.mkdir(parents=True, exist_ok=True)
            report.certificate_path = str(out / "certificate.json")
            report.supertree_path = str(out / "supertree.nwk")
            report.triangulation_path = str(out / "triangulation.json")
            _write(report.certificate_path, dumps(sol.certificate_json()))
            _write(report.supertree_path, serialize_newick(sol.supertree) + "\n")
            _write(report.triangulation_path, dumps(sol.fill_json()))
        code = EXIT_OK
    else:
        code = _incompatible(sol)
    if args.report:
        _write(args.report, dumps(asdict(report)))
    return code


def cmd_supertree(args) -> int:
    sol = _solve(args, triangulate=False)
    if not sol.compatible:
        return _incompatible(sol)
    print(serialize_newick(sol.supertree))
    if args.splits:
        sys.stdout.write(format_splits(splits_of_tree(sol.supertree)))
    return EXIT_OK


def _graph_dot(blocks, what: str) -> str:
    if what == "display":
        return "".join(d.to_dot() for d in blocks)
    return "".join(build_elig(d).to_dot() for d in blocks)


def _dot(sol, what: str) -> str:
    if what in ("display", "elig"):
        return _graph_dot([b.display for b in sol.blocks], what)
    return "".join(b.triangulation.to_dot(b.display) for b in sol.blocks)


def cmd_triangulate(args) -> int:
    sol = _solve(args)
    if not sol.compatible:
        return _incompatible(sol)
    _write(args.dot, _dot(sol, args.emit))
    if args.fill:
        _write(args.fill, dumps(sol.fill_json()))
    return EXIT_OK


def _check_certificate(p, obj) -> str | None:
    """First failing condition of a merged certificate, or None."""
    if not isinstance(obj, dict) or not isinstance(obj.get("cuts"), list):
        raise ValueError("certificate must be an object with a 'cuts' list")
    blocks = display_blocks(p)
    names = [{vertex_name(v) for v in d.graph.vertices} for d in blocks]
    per_block = [[] for _ in blocks]
    for i, cut in enumerate(obj["cuts"]):
        used = {n for pair in cut for n in pair}
        owners = [k for k, ns in enumerate(names) if used <= ns]
        if len(owners) != 1:
            return f"cut {i} does not lie inside one display graph"
        per_block[owners[0]].append(cut)
    for d, cuts in zip(blocks, per_block):
        cert = CutCertificate.from_json({"cuts": cuts}, d)
        problem = CutCertificate(tuple(as_cut(f) for f in cert.cuts)).validate(d)
        if problem:
            return problem
    return None


def cmd_verify(args) -> int:
    p = read_profile(args.inputs)
    obj = json.loads(Path(args.certificate).read_text(encoding="utf-8"))
    problem = _check_certificate(p, obj)
    print("valid" if problem is None else f"invalid: {problem}")
    if args.oracle:
        witness = brute_force_compatible(p, OracleBudget(max_labels=args.oracle_max_labels))
        print("oracle: " + ("compatible" if witness is not None else "incompatible"))
        if problem is None and witness is None:
            raise InternalError("valid certificate for a profile the oracle rejects")
    return EXIT_OK if problem is None else EXIT_NO


def cmd_emit(args) -> int:
    if args.what == "profile":
        rng = random.Random(args.seed)
        compatible = {"compatible": True, "random": False, "either": None}[args.kind]
        p = random_profile(rng, args.labels, args.trees, compatible)
        sys.stdout.write("".join(serialize_newick(t) + "\n" for t in p.trees))
        return EXIT_OK
    if not args.inputs:
        raise ValueError(f"emit {args.what} needs input files")
    if args.what in ("display", "elig"):
        sys.stdout.write(_graph_dot(display_blocks(read_profile(args.inputs)), args.what))
        return EXIT_OK
    sol = _solve(args, triangulate=args.what in ("triangulation", "fill"))
    if not sol.compatible:
        return _incompatible(sol)
    if args.what == "certificate":
        sys.stdout.write(dumps(sol.certificate_json()))
    elif args.what == "supertree":
        print(serialize_newick(sol.supertree))
    elif args.what == "splits":
        sys.stdout.write(format_splits(splits_of_tree(sol.supertree)))
    elif args.what == "fill":
        sys.stdout.write(dumps(sol.fill_json()))
    else:
        sys.stdout.write(_dot(sol, "triangulation"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-cut-vertices", type=int, default=DEFAULT_MAX_CUT_VERTICES,
                        help="refuse cut enumeration on display graphs larger than this")
    common.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET,
                        help="step budget for the cut-set search")
    common.add_argument("--oracle-max-labels", type=int, default=OracleBudget().max_labels,
                        help="label cap for the brute-force oracle")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for generated data")

    parser = argparse.ArgumentParser(prog="treecompat", description="Compatibility of unrooted phylogenetic trees.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="decide compatibility")
    p.add_argument("inputs", nargs="+", help="Newick files ('-' for stdin)")
    p.add_argument("--certificate", help="write the cut certificate JSON here")
    p.add_argument("--out-dir", help="write certificate, supertree and triangulation here")
    p.add_argument("--report", help="write the run report JSON here")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("supertree", parents=[common], help="print a compatible supertree")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--splits", action="store_true", help="also list the supertree's splits")
    p.set_defaults(func=cmd_supertree)

    p = sub.add_parser("triangulate", parents=[common], help="build a legal triangulation")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--emit", choices=("triangulation", "display", "elig"), default="triangulation",
                   help="which graph to write as DOT")
    p.add_argument("--dot", default="-", help="DOT output path")
    p.add_argument("--fill", help="fill edge JSON output path")
    p.set_defaults(func=cmd_triangulate)

    p = sub.add_parser("verify", parents=[common], help="re-check a certificate")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--certificate", required=True)
    p.add_argument("--oracle", action="store_true", help="cross-check with the brute-force oracle")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("emit", parents=[common], help="write one artifact to stdout")
    p.add_argument("what", choices=("display", "elig", "certificate", "supertree", "splits",
                                    "triangulation", "fill", "profile"))
    p.add_argument("inputs", nargs="*")
    p.add_argument("--labels", type=int, default=7, help="labels in a generated profile")
    p.add_argument("--trees", type=int, default=3, help="trees in a generated profile")
    p.add_argument("--kind", choices=("compatible", "random", "either"), default="either")
    p.set_defaults(func=cmd_emit)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NewickError as exc:
        print(f"error: parse: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
    except (BudgetExceeded, CapExceeded) as exc:
        if getattr(args, "report", None):
            _write(args.report, dumps(asdict(RunReport("budget-exceeded"))))
        print(f"error: budget: {exc}", file=sys.stderr)
    except InternalError as exc:
        print(f"internal error (bug): {exc}", file=sys.stderr)
    except (TreeCompatError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

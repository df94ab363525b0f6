"""
Command-line front end: bracket, trees, homology, lee, verify and corpus
"""
import argparse
import json
import logging
import random
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO

from models.diagram_models import PlanarDiagram
from models.report_models import CheckReport, VerificationSummary
from . import corpus
from .bracket import (
    bracket_r1_trivial,
    bracket_spanning_tree,
    bracket_state_sum,
    jones_polynomial,
)
from .diagram_core import (
    black_graph,
    enumerate_k1,
    parse_pd,
    spanning_tree_count,
)
from .exceptions import CheckFailure, DiagramError, KhomaError
from .expansion import expand, expansion_tree_size, module_a_ranks, random_numbering
from .khovanov import khovanov_homology
from .lee import admissible_colorings, colored_smoothing, lee_homology
from .orchestrator import ALL_CHECKS, VerificationOrchestrator
from .runner import CheckRunner

logger = logging.getLogger(__name__)

HOMOLOGY_CHECKS = {"thm23": ("thm23",), "alt": ("alt",), "hopf": ("hopf",), "all": ("thm23", "alt", "hopf")}


def load_diagram(source: str) -> PlanarDiagram:
    """A PD file path, or the name of a corpus diagram"""
    path = Path(source)
    if path.is_file():
        return parse_pd(path.read_text(), name=path.stem)
    return corpus.diagram(source)


def _numbering(text: Optional[str]) -> Optional[List[int]]:
    if not text:
        return None
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as e:
        raise DiagramError(f"numbering must be comma separated crossing numbers, got {text!r}") from e


def _emit(out: TextIO, payload: Any, as_json: bool, text: str) -> None:
    if as_json:
        out.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _run_checks(diagram: PlanarDiagram, names: Sequence[str], out: TextIO, as_json: bool) -> List[CheckReport]:
    runner = CheckRunner()
    reports = [runner.run(name, diagram) for name in names]
    for report in reports:
        if as_json:
            continue
        status = "PASS" if report.passed else "FAIL"
        out.write(f"{report.name}: {status}\n")
        if report.name == "hopf" and report.details.get("matching_chiralities"):
            for chirality, offset in report.details["matching_chiralities"].items():
                out.write(f"  hopf chirality {chirality} matches with offset [{offset[0]}]{{{offset[1]}}}\n")
        for failure in report.failures:
            out.write(f"  {failure}\n")
    return reports


def _fail_on(reports: Sequence[CheckReport]) -> None:
    for report in reports:
        if not report.passed:
            raise CheckFailure(report)


# Subcommands ------------------------------------------------------------------

def cmd_bracket(args: argparse.Namespace, out: TextIO) -> int:
    diagram = load_diagram(args.diagram)
    numbering = _numbering(args.numbering)
    if args.method == "state-sum":
        value = bracket_state_sum(diagram)
    elif args.method == "spanning-tree":
        value = bracket_spanning_tree(diagram, numbering)
    else:
        value = bracket_r1_trivial(diagram)
    payload: Dict[str, Any] = {"diagram": str(diagram), "method": args.method, "bracket": value.to_json_dict()}
    text = f"<{diagram}> = {value}"
    if args.jones:
        jones = jones_polynomial(diagram)
        payload["jones"] = jones.to_json_dict()
        text += f"\nJ({diagram}) = {jones}"
    _emit(out, payload, args.json, text)
    return 0


def cmd_trees(args: argparse.Namespace, out: TextIO) -> int:
    diagram = load_diagram(args.diagram)
    numbering = _numbering(args.numbering)
    if numbering is None and args.seed is not None:
        numbering = list(random_numbering(diagram, random.Random(args.seed)))
    leaves = expand(diagram, numbering)
    size = expansion_tree_size(diagram, numbering)
    states = len(enumerate_k1(diagram))
    trees = spanning_tree_count(black_graph(diagram))
    ranks = module_a_ranks(diagram, numbering)
    leaf_rows = [leaf.to_json_dict() for leaf in leaves]
    summary = {
        "diagram": str(diagram),
        "numbering": numbering,
        "leaves": leaf_rows,
        "tree_size": size.model_dump(),
        "single_circle_states": states,
        "spanning_trees": trees,
        "module_a": ranks.to_json_dict(),
    }
    payload = summary if args.full else leaf_rows
    lines = [f"{diagram}: {size.leaves} leaves, {size.internal_nodes} internal nodes, {size.states} states"]
    lines.append(f"#K1 = {states}, spanning trees of the black graph = {trees}")
    for leaf in leaves:
        lines.append(f"  {leaf.word}  r={leaf.r_D_DS} x={leaf.x} y={leaf.y} w={leaf.w} state={leaf.state}")
    lines.append("module A: " + ", ".join(f"{k}:{v}" for k, v in ranks.to_json_dict().items()))
    _emit(out, payload, args.json, "\n".join(lines))
    return 0


def cmd_homology(args: argparse.Namespace, out: TextIO) -> int:
    diagram = load_diagram(args.diagram)
    homology = khovanov_homology(diagram, ring=args.ring, normalize=args.normalize)
    payload: Dict[str, Any] = {
        "diagram": str(diagram),
        "ring": args.ring,
        "normalized": args.normalize,
        "homology": homology.to_json_dict(),
    }
    text = f"Kh({diagram}) over {args.ring.upper()}\n{homology.format_table()}"
    if not args.check:
        _emit(out, payload, args.json, text)
        return 0
    if not args.json:
        _emit(out, payload, False, text)
    reports = _run_checks(diagram, HOMOLOGY_CHECKS[args.check], out, args.json)
    if args.json:
        payload["checks"] = [r.model_dump(mode="json") for r in reports]
        _emit(out, payload, True, text)
    _fail_on(reports)
    return 0


def cmd_lee(args: argparse.Namespace, out: TextIO) -> int:
    diagram = load_diagram(args.diagram)
    homology = lee_homology(diagram)
    table = homology.integral if args.ring == "z" else homology.rational
    payload: Dict[str, Any] = {"diagram": str(diagram), "ring": args.ring, "homology": table.to_json_dict()}
    text = f"Lee({diagram}) over {args.ring.upper()}\n{table.format_table()}"
    if args.colorings:
        colorings = admissible_colorings(diagram)
        rows = []
        for coloring in colorings:
            word = colored_smoothing(diagram, coloring)
            rows.append({"colors": "".join(c for _, c in coloring.colors), "smoothing": str(word),
                         "crossingless": word.is_total})
        payload["colorings"] = rows
        text += "\ncolorings:\n" + "\n".join(
            f"  {row['colors']}  {row['smoothing']}{'  crossingless' if row['crossingless'] else ''}" for row in rows
        )
    _emit(out, payload, args.json, text)
    return 0


def cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    checks = args.check or list(ALL_CHECKS)
    entries = [corpus.entry(name) for name in args.entry] if args.entry else None
    orchestrator = VerificationOrchestrator()
    summary: Optional[VerificationSummary] = None
    for item in orchestrator.run_verification(checks, entries, numberings=args.numberings, seed=args.seed):
        if isinstance(item, VerificationSummary):
            summary = item
        elif not args.json:
            out.write(item)
    if args.json:
        payload = summary.model_dump(mode="json", exclude={"errors": {"__all__": {"timestamp"}}})
        _emit(out, dict(payload, passed=summary.passed), True, "")
    elif not summary.passed:
        failing = {"failed": [r.model_dump(mode="json") for r in summary.failed_reports],
                   "errors": [e.model_dump(mode="json", exclude={"timestamp"}) for e in summary.errors]}
        out.write(json.dumps(failing, indent=2, ensure_ascii=False) + "\n")
    return 0 if summary.passed else 1


def cmd_corpus(args: argparse.Namespace, out: TextIO) -> int:
    entries = corpus.corpus_entries()
    payload = {"corpus": [e.model_dump(exclude={"golden"}) for e in entries]}
    lines = []
    for e in entries:
        n = len(parse_pd(e.pd).crossings)
        flags = [f"{n} crossings", f"{e.components} component{'s' if e.components > 1 else ''}"]
        flags += ["alternating"] if e.alternating else []
        flags += ["reduced"] if e.reduced else []
        lines.append(f"{e.name:28s} {', '.join(flags)}")
    _emit(out, payload, args.json, "\n".join(lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="khoma", description="Kauffman bracket, Khovanov and Lee homology of link diagrams")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_json(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = with_json(sub.add_parser("bracket", help="Kauffman bracket"))
    p.add_argument("diagram", help="PD file or corpus name")
    p.add_argument("--method", choices=("state-sum", "spanning-tree", "r1-trivial"), default="state-sum")
    p.add_argument("--numbering", help="comma separated crossing order for the spanning-tree method")
    p.add_argument("--jones", action="store_true", help="also print the writhe-normalised polynomial")
    p.set_defaults(handler=cmd_bracket)

    p = with_json(sub.add_parser("trees", help="expansion tree, single-circle states and module A"))
    p.add_argument("diagram")
    p.add_argument("--numbering")
    p.add_argument("--seed", type=int, help="random numbering from this seed when --numbering is absent")
    p.add_argument("--full", action="store_true", help="with --json, wrap the leaves with the counts and module A")
    p.set_defaults(handler=cmd_trees)

    p = with_json(sub.add_parser("homology", help="Khovanov homology"))
    p.add_argument("diagram")
    p.add_argument("--ring", choices=("z", "q"), default="z")
    p.add_argument("--normalize", action="store_true", help="apply the shift [-n-]{n+ - 2n-}")
    p.add_argument("--check", choices=tuple(HOMOLOGY_CHECKS))
    p.set_defaults(handler=cmd_homology)

    p = with_json(sub.add_parser("lee", help="Lee homology"))
    p.add_argument("diagram")
    p.add_argument("--ring", choices=("z", "q"), default="q")
    p.add_argument("--colorings", action="store_true", help="list the admissible colorings")
    p.set_defaults(handler=cmd_lee)

    p = with_json(sub.add_parser("verify", help="run the checkers over the corpus"))
    p.add_argument("--all", action="store_true", help="every checker on every entry (the default)")
    p.add_argument("--check", action="append", choices=ALL_CHECKS, help="restrict to this checker (repeatable)")
    p.add_argument("--entry", action="append", help="restrict to this corpus entry (repeatable)")
    p.add_argument("--numberings", type=int, default=10, help="crossing numberings per bracket check")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=cmd_verify)

    p = with_json(sub.add_parser("corpus", help="list the shipped corpus"))
    p.set_defaults(handler=cmd_corpus)
    return parser


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    """
    Parse ``argv`` and execute the subcommand

    Returns:
        0 on success, 1 when a check fails, 2 for unusable input
    """
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args, out)
    except CheckFailure as e:
        out.write(json.dumps(e.report.model_dump(mode="json"), indent=2, ensure_ascii=False) + "\n")
        return 1
    except KhomaError as e:
        logger.error("❌ %s", e)
        return 2

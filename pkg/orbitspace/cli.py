"""Command-line front end: reads description files, runs a pipeline, prints a report."""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO

from . import __version__
from .catalog import CaseDescriptor
from .classify3 import TWISTED_CASE_NOTE, raymond_case, raymond_classify, theoremA_lookup
from .classify4 import (
    TheoremBCase,
    admissible_groups,
    build_orbit_space,
    classify_space,
    distinct_actions,
    enumerate_arc_cases,
    theoremB_lookup,
)
from .config import Config
from .document import Document, parse, serialize
from .errors import (
    IllegalWeights,
    InternalInvariantError,
    OrbitSpaceError,
    ParseError,
    StrictModeViolation,
    UnsupportedConfiguration,
)
from .intforms import canonical_target, classify, invariants, oracle_congruent, reduce_trace, replay
from .orbit_data import WeightedOrbitSpace, validate_legality
from .plumbing import assemble_chain, intersection_form, intersection_matrix

logger = logging.getLogger(__name__)

FILE_COMMANDS = ("validate", "classify3", "classify4", "plumb", "reduce")
COMMANDS = FILE_COMMANDS + ("enumerate", "lookup3", "lookup4", "groups")
ORACLE_MAX_SIZE = 2


def _expect(command: str, document: Optional[Document], *kinds: str) -> Document:
    if document is None or document.kind not in kinds:
        got = "no document" if document is None else f"a {document.kind} document"
        raise UnsupportedConfiguration(f"{command} expects a {' or '.join(kinds)} document, got {got}")
    return document


def _one_line(document: Document) -> str:
    return " ".join(serialize(document).split())


def _target_space(document: Document) -> WeightedOrbitSpace:
    """Simply connected orbit space of a config or orbitspace4 document."""
    if document.kind == "config":
        return build_orbit_space(document.payload)
    return document.payload.as_simply_connected()


def _validate(document: Document) -> Dict[str, Any]:
    _expect("validate", document, "orbitspace4", "config")
    space = build_orbit_space(document.payload) if document.kind == "config" else document.payload
    return {"input": _one_line(document), "legality": validate_legality(space).to_dict()}


def _classify3(document: Document) -> Dict[str, Any]:
    data = _expect("classify3", document, "seifert3").payload
    case = raymond_case(data)
    manifold = raymond_classify(data)
    return {
        "input": _one_line(document),
        "raymond_case": case,
        "manifold": manifold.label(),
        "notes": [TWISTED_CASE_NOTE] if case == 3 else [],
    }


def _plumb(document: Document) -> Dict[str, Any]:
    _expect("plumb", document, "orbitspace4", "config")
    space = _target_space(document)
    chain = assemble_chain(space)
    return {
        "input": _one_line(document),
        "legality": validate_legality(space).to_dict(),
        "chain": chain.to_dict(),
        "B0": intersection_matrix(chain).to_list(),
        "QM": intersection_form(chain).to_list(),
    }


def _classify4(document: Document, trace: bool, search: Dict[str, int]) -> Dict[str, Any]:
    _expect("classify4", document, "orbitspace4", "config")
    result = classify_space(_target_space(document), **search)
    t = result.trace
    report = {
        "input": _one_line(document),
        "legality": validate_legality(t.space).to_dict(),
        "chain": t.chain.to_dict(),
        "B0": t.b0.to_list(),
        "QM": t.qm.to_list(),
        "invariants": t.invariants.to_dict(),
        "manifold": result.manifold.label(),
        "extendable": result.extendable,
        "euler_check": t.euler_ok,
        "notes": list(t.notes),
    }
    if trace:
        report["reduction_steps"] = [list(step) for step in t.reduction.steps]
        report["reduction_exhausted"] = t.reduction.exhausted
    return report


def _reduce(document: Document, search: Dict[str, int], oracle_bound: int,
            oracle_escalation: Sequence[int]) -> Dict[str, Any]:
    form = _expect("reduce", document, "matrix").payload
    inv = invariants(form)
    manifold = classify(form)
    reduction = reduce_trace(form, **search)
    if not reduction.exhausted and replay(form, reduction.steps) != canonical_target(inv):
        raise InternalInvariantError(f"reduction trace for {form} does not reach its canonical form")
    notes = ["reduction search exhausted; identification uses invariants only"] if reduction.exhausted else []
    # brute force only for sizes whose bounded box stays small
    oracle_check = None
    if form.n <= ORACLE_MAX_SIZE:
        oracle_check = oracle_congruent(form, reduction.matrix, oracle_bound, oracle_escalation)
        if not oracle_check:
            notes.append(f"no congruence witness with entries <= {max([oracle_bound, *oracle_escalation])}")
    return {
        "input": form.to_list(),
        "invariants": inv.to_dict(),
        "target": reduction.matrix.to_list(),
        "reduction_steps": [list(step) for step in reduction.steps],
        "reduction_exhausted": reduction.exhausted,
        "oracle_check": oracle_check,
        "manifold": manifold.label(),
        "notes": notes,
    }


def _enumerate(k_max: int) -> Dict[str, Any]:
    cases = enumerate_arc_cases(k_max)
    groups = distinct_actions(cases)
    return {
        "k_max": k_max,
        "cases": [case.to_dict() for case in cases],
        "distinct_actions": [{"canonical": str(arc), "cases": indices} for arc, indices in groups.items()],
    }


def run(command: str, document: Optional[Document] = None, *, k_max: int = 12, trace: bool = False,
        strict: bool = False, search: Optional[Dict[str, int]] = None,
        oracle_bound: int = 6, oracle_escalation: Sequence[int] = (9, 12),
        arguments: Sequence[str] = ()) -> Dict[str, Any]:
    """Run one command and return its report.

    Args:
        command: One of :data:`COMMANDS`
        document: Parsed input for the file commands
        k_max: Bound for ``enumerate``
        trace: Include reduction steps in ``classify4`` reports
        strict: Raise StrictModeViolation when the report carries notes
        search: Keyword arguments for the reduction search
        oracle_bound: Entry bound of the congruence check in ``reduce``
        oracle_escalation: Larger bounds tried when that check finds no witness
        arguments: Group and descriptor tokens for lookups, sphere dimension for ``groups``

    Returns:
        The report as a JSON-compatible dict
    """
    search = search or {}
    logger.info(f"Running {command}")
    if command == "validate":
        report = _validate(document)
    elif command == "classify3":
        report = _classify3(document)
    elif command == "classify4":
        report = _classify4(document, trace, search)
    elif command == "plumb":
        report = _plumb(document)
    elif command == "reduce":
        report = _reduce(document, search, oracle_bound, oracle_escalation)
    elif command == "enumerate":
        report = _enumerate(k_max)
    elif command in ("lookup3", "lookup4"):
        if not arguments:
            raise UnsupportedConfiguration(f"{command} needs a group and descriptor tokens")
        group, descriptor = arguments[0], CaseDescriptor.parse(arguments[1:])
        row = theoremA_lookup(group, descriptor) if command == "lookup3" \
            else theoremB_lookup(TheoremBCase(group, descriptor))
        report = row.to_dict()
    elif command == "groups":
        try:
            dimension = int(arguments[0])
        except (IndexError, ValueError):
            raise UnsupportedConfiguration("groups needs a sphere dimension") from None
        report = {"sphere_dim": dimension,
                  "groups": [{"group": g, "isotropy": h} for g, h in admissible_groups(dimension)]}
    else:
        raise UnsupportedConfiguration(f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}")

    if strict and report.get("notes"):
        raise StrictModeViolation(f"{command} report has notes: {'; '.join(report['notes'])}")
    return report


def _text_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "-"
    if isinstance(value, dict):
        return " ".join(f"{k}={_text_value(v)}" for k, v in value.items())
    if isinstance(value, list) and value and all(isinstance(v, list) for v in value):
        return " / ".join(" ".join(_text_value(x) for x in row) for row in value)
    if isinstance(value, list):
        return "[" + ", ".join(_text_value(v) for v in value) + "]"
    return str(value)


def _text_chain(chain: Dict[str, Any]) -> List[str]:
    lines = [f"chain: {' '.join(b['family'] for b in chain['blocks'])} "
             f"t={chain['t']} m={chain['m']} l={chain['l']} omegas={_text_value(chain['omegas'])}"]
    for block in chain["blocks"]:
        params = " ".join(f"{k}={v}" for k, v in block["params"].items())
        lines.append(f"  {block['family']} omega={block['omega']} {params} "
                     f"action={_text_value(block['action_matrix'])}")
    return lines


def _text_cases(report: Dict[str, Any]) -> List[str]:
    lines = [f"k_max: {report['k_max']}",
             "  #  b'  b''  eps'  eps''  omega1  alpha  beta  omega2  manifold              partner"]
    for index, case in enumerate(report["cases"]):
        partner = "-" if case["orientation_partner"] is None else str(case["orientation_partner"])
        lines.append(f"{index:3d} {case['b_start']:3d} {case['b_end']:4d} {case['eps_start']:5d} "
                     f"{case['eps_end']:6d} {case['omega1']:7d} {case['alpha']:6d} {case['beta']:5d} "
                     f"{case['omega2']:7d}  {case['manifold']:<21} {partner}")
    lines.append(f"distinct actions: {len(report['distinct_actions'])}")
    for group in report["distinct_actions"]:
        lines.append(f"  {group['canonical']}: {_text_value(group['cases'])}")
    return lines


def render(report: Dict[str, Any], output_format: str = "text") -> str:
    """Report as JSON or as ``key: value`` lines."""
    if output_format == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if "cases" in report:
        return "\n".join(_text_cases(report)) + "\n"
    lines = []
    for key, value in report.items():
        if key == "chain":
            lines.extend(_text_chain(value))
        elif key == "legality":
            lines.append("legality: " + ("legal" if value["legal"] else "illegal"))
            for v in value["violations"]:
                lines.append(f"  {v['rule']} {v['where']}: {v['message']}")
        elif key == "notes":
            lines.extend(f"note: {note}" for note in value)
        elif key == "groups" and isinstance(value, list):
            lines.extend(f"{g['group']} / {g['isotropy']}" for g in value)
        else:
            lines.append(f"{key}: {_text_value(value)}")
    return "\n".join(lines) + "\n"


def render_error(error: OrbitSpaceError, output_format: str = "text") -> str:
    if output_format == "json":
        return json.dumps(error.to_dict(), sort_keys=True, indent=2) + "\n"
    return f"error[{error.code}]: {error.message}\n"


def read_document(path: str) -> Document:
    """Parse a file, or standard input for ``-``."""
    if path == "-":
        return parse(sys.stdin.buffer.read(), source="<stdin>")
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror or e}") from None
    return parse(data, source=path)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS, help="report format")
    common.add_argument("--k-max", type=int, default=argparse.SUPPRESS, help="largest alpha for enumerate")
    common.add_argument("--trace", action="store_true", default=argparse.SUPPRESS, help="include reduction steps")
    common.add_argument("--strict", action="store_true", default=argparse.SUPPRESS, help="treat report notes as errors")
    common.add_argument("--config", default=argparse.SUPPRESS, help="path to config.yaml")
    common.add_argument("--log-level", default=argparse.SUPPRESS, choices=("DEBUG", "INFO", "WARNING", "ERROR"),
                        type=str.upper, help="logging level")

    parser = argparse.ArgumentParser(
        prog="orbitspace", parents=[common],
        description="Weighted orbit spaces of circle actions on 3- and 4-manifolds")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    helps = {
        "validate": "check the legality rules of an orbit space",
        "classify3": "identify a 3-manifold from Seifert data",
        "classify4": "identify a simply connected 4-manifold",
        "plumb": "assemble the plumbing chain and intersection form",
        "reduce": "classify an integral symmetric form and trace its reduction",
    }
    for name in FILE_COMMANDS:
        command = sub.add_parser(name, parents=[common], help=helps[name])
        command.add_argument("file", help="description file, or - for standard input")
    sub.add_parser("enumerate", parents=[common], help="tabulate single-segment weighted arcs")
    for name, dim in (("lookup3", 3), ("lookup4", 4)):
        lookup = sub.add_parser(name, parents=[common], help=f"look up the {dim}-dimensional case table")
        lookup.add_argument("group")
        lookup.add_argument("descriptor", nargs="*", help="key=value tokens: dim shape isotropy fixed boundary")
    groups = sub.add_parser("groups", parents=[common], help="groups acting transitively on a sphere")
    groups.add_argument("n", type=int, help="sphere dimension")
    return parser


def execute(args: argparse.Namespace, config: Config, out: Optional[TextIO] = None,
            err: Optional[TextIO] = None) -> int:
    """Run parsed arguments and write the report; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    output_format = getattr(args, "format", None) or config.output_format
    try:
        document = read_document(args.file) if args.command in FILE_COMMANDS else None
        arguments: List[str] = []
        if args.command in ("lookup3", "lookup4"):
            arguments = [args.group, *args.descriptor]
        elif args.command == "groups":
            arguments = [str(args.n)]
        k_max = getattr(args, "k_max", None)
        report = run(
            args.command, document,
            k_max=k_max if k_max is not None else config.k_max,
            trace=getattr(args, "trace", False),
            strict=getattr(args, "strict", False),
            search=config.reduction_options,
            oracle_bound=config.oracle_bound,
            oracle_escalation=config.oracle_escalation,
            arguments=arguments,
        )
    except OrbitSpaceError as e:
        logger.debug(f"{args.command} failed with {e.code}")
        err.write(render_error(e, output_format))
        return e.exit_code
    except Exception as e:
        logger.debug(f"Unexpected failure in {args.command}", exc_info=True)
        internal = InternalInvariantError(f"{type(e).__name__}: {e}")
        err.write(render_error(internal, output_format))
        return internal.exit_code

    out.write(render(report, output_format))
    if args.command == "validate" and not report["legality"]["legal"]:
        return IllegalWeights.exit_code
    return 0

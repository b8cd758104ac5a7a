import argparse
import json
import logging

from app.cli.options import Subparsers, positive_int
from app.core.exceptions import AssignmentError, ModelDefinitionError
from app.infra.model_file import load_model
from app.models.types import OMICRON
from app.models.wff import Var
from app.schemas.verdict import Verdict
from app.services.abbrev import expand
from app.services.parser import parse_wff
from app.services.semantics import (
    Model,
    Value,
    definedness_profile,
    render_value,
    valuate,
    value_from_term,
)
from app.services.substitution import free_vars
from app.services.syntax import infer_type

logger = logging.getLogger(__name__)


def register(subparsers: Subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "eval", parents=[parent], help="evaluate a wff in the model described by a JSON file"
    )
    parser.add_argument("model", help="path of the model file")
    parser.add_argument("wff", help="wff over the constants of the model")
    parser.add_argument("--cap", type=positive_int, help="domain size cap (overrides the model file)")
    parser.add_argument(
        "--assign",
        metavar="VAR=TERM",
        action="append",
        default=[],
        help="value of a free variable, e.g. x_i=a or f_(oi)='{\"entries\": [[\"a\", \"T\"]]}'",
    )
    parser.add_argument(
        "--explain", action="store_true", help="list the value of every subwff outside binders"
    )
    parser.set_defaults(handler=run)


def _assignment(model: Model, variables: frozenset[Var], items: list[str]) -> dict[Var, Value]:
    by_name = {str(v): v for v in variables}
    assignment: dict[Var, Value] = {}
    for item in items:
        name, sep, text = item.partition("=")
        var = by_name.get(name.strip())
        if not sep or var is None:
            raise ModelDefinitionError(
                f"--assign {item!r} does not name a free variable of the wff",
                details={"free": sorted(by_name)},
            )
        try:
            term = json.loads(text)
        except json.JSONDecodeError:
            term = text.strip()
        assignment[var] = value_from_term(model.frame, var.type, term, name.strip())
    for var in variables:
        if var not in assignment:
            raise AssignmentError(str(var))
    return assignment


def run(args: argparse.Namespace) -> Verdict:
    signature, model = load_model(args.model, args.cap)
    wff = parse_wff(args.wff, signature)
    core = expand(wff)
    assignment = _assignment(model, free_vars(core), args.assign)
    value = valuate(model, assignment, core)
    if infer_type(core) == OMICRON or value is None:
        rendered = render_value(value)
    else:
        rendered = f"defined: {render_value(value)}"
    logger.info("Evaluated", extra={"wff": args.wff, "value": rendered})
    print(rendered)
    profile = []
    if args.explain:
        for entry in definedness_profile(model, assignment, wff):
            print(f"  {entry.text} : {entry.type} = {entry.value}")
            profile.append({"wff": entry.text, "type": entry.type, "value": entry.value})
    return Verdict(command="eval", status="pass", value=rendered, profile=profile)

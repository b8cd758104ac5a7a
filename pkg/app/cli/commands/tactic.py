import argparse
import logging

from app.cli.options import Subparsers, add_constant_option, signature_from
from app.core.exceptions import TacticError
from app.infra.script import render_script
from app.models.proof import Proof
from app.schemas.common import Diagnostic
from app.schemas.verdict import ProofVerdict, Verdict
from app.services.kernel import check_proof
from app.services.parser import parse_wff
from app.services.tactics import (
    tactic_lemma1,
    tactic_lemma2,
    tactic_odefined,
    tactic_self_equality,
)

logger = logging.getLogger(__name__)

TACTICS = ("odefined", "lemma1", "lemma2", "selfeq")


def register(subparsers: Subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "tactic",
        parents=[parent],
        help="generate a kernel proof and print it as a proof script",
    )
    parser.add_argument("name", choices=TACTICS)
    parser.add_argument("wffs", nargs="+", metavar="WFF", help="operand (lemma2 takes two)")
    add_constant_option(parser)
    parser.set_defaults(handler=run)


def _generate(name: str, operands: list[str], args: argparse.Namespace) -> Proof:
    signature = signature_from(args.const)
    wffs = [parse_wff(text, signature) for text in operands]
    expected = 2 if name == "lemma2" else 1
    if len(wffs) != expected:
        raise TacticError(name, f"expects {expected} wff(s), got {len(wffs)}")
    match name:
        case "odefined":
            return tactic_odefined(wffs[0])
        case "lemma1":
            return tactic_lemma1(wffs[0])
        case "lemma2":
            return tactic_lemma2(wffs[0], wffs[1])
    return tactic_self_equality(wffs[0])


def run(args: argparse.Namespace) -> Verdict:
    proof = _generate(args.name, args.wffs, args)
    print(render_script("tactic", signature_from(args.const), [proof]), end="")
    verdict = ProofVerdict.from_result(proof.label, check_proof(proof))
    logger.info("Tactic proof generated", extra={"tactic": args.name, "steps": len(proof.main_section), "accepted": verdict.accepted})
    if verdict.accepted:
        return Verdict(command="tactic", status="pass", proofs=[verdict])
    return Verdict(
        command="tactic",
        status="fail",
        diagnostics=[Diagnostic(location=verdict.location, message=verdict.reason)],
        proofs=[verdict],
    )

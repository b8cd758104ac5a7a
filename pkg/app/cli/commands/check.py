import argparse
import logging

from app.cli.options import Subparsers
from app.config import settings
from app.infra.script import load_script
from app.schemas.common import Diagnostic
from app.schemas.verdict import ProofVerdict, Verdict
from app.services.kernel import check_proof

logger = logging.getLogger(__name__)


def register(subparsers: Subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "check", parents=[parent], help="check every proof of a proof script"
    )
    parser.add_argument("script", help="path of the proof script")
    parser.add_argument(
        "--extended",
        action="store_true",
        default=settings.extended_mode,
        help="accept derived-rule steps (reported as trusted)",
    )
    parser.set_defaults(handler=run)


def _numbers(steps: list[int]) -> str:
    return ", ".join(map(str, steps))


def _describe(verdict: ProofVerdict) -> str:
    if verdict.accepted:
        line = f"{verdict.label}: accepted"
        trusted = []
        if verdict.trusted_steps:
            trusted.append(f"trusted steps: {_numbers(verdict.trusted_steps)}")
        if verdict.trusted_theorem_steps:
            trusted.append(f"trusted theorem steps: {_numbers(verdict.trusted_theorem_steps)}")
        if trusted:
            line += f" ({'; '.join(trusted)})"
        return line
    return f"{verdict.location}: rejected: {verdict.reason}"


def run(args: argparse.Namespace) -> Verdict:
    script = load_script(args.script)
    logger.info(
        "Checking script",
        extra={"path": args.script, "theory": script.theory, "proofs": len(script.proofs), "extended": args.extended},
    )
    proofs = [
        ProofVerdict.from_result(proof.label, check_proof(proof, extended=args.extended))
        for proof in script.proofs
    ]
    for verdict in proofs:
        print(_describe(verdict))
        for note in verdict.notes:
            print(f"  note: {note}")
    diagnostics = [
        Diagnostic(location=v.location, message=v.reason) for v in proofs if not v.accepted
    ]
    accepted = len(proofs) - len(diagnostics)
    print(f"{accepted}/{len(proofs)} proofs accepted")
    return Verdict(
        command="check",
        status="fail" if diagnostics else "pass",
        diagnostics=diagnostics,
        proofs=proofs,
    )

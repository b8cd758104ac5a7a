import argparse
import logging

from app.cli.options import Subparsers, positive_int
from app.config import settings
from app.schemas.common import Diagnostic
from app.schemas.soundness import SoundnessReport
from app.schemas.verdict import Verdict
from app.services.catalog import default_catalog
from app.services.semantics import Frame, default_labels
from app.services.soundness import MUTATIONS, check_soundness_suite

logger = logging.getLogger(__name__)


def register(subparsers: Subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "selfcheck", parents=[parent], help="run the soundness battery over generated models"
    )
    parser.add_argument(
        "--iota-base",
        type=positive_int,
        action="append",
        metavar="N",
        help=f"number of individuals (repeatable, default: {settings.selfcheck_iota_bases})",
    )
    parser.add_argument(
        "--mutate", choices=MUTATIONS, help="run against a deliberately unsound variant"
    )
    parser.add_argument(
        "--generated",
        type=positive_int,
        default=settings.selfcheck_generated_wffs,
        help="generated wffs for the totality and round-trip sections",
    )
    parser.add_argument(
        "--tautologies",
        type=positive_int,
        default=settings.selfcheck_tautology_cases,
        help="propositional wffs compared against the tautology oracle",
    )
    parser.add_argument("--seed", type=int, default=settings.random_seed)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> Verdict:
    bases: list[int] = args.iota_base or list(settings.selfcheck_iota_bases)
    frames = [Frame(default_labels(n)) for n in bases]
    catalog = default_catalog(generated=args.generated, propositional=args.tautologies, seed=args.seed)
    logger.info(
        "Self-check started",
        extra={"iota_bases": bases, "mutation": args.mutate, "seed": args.seed},
    )
    result = check_soundness_suite(catalog, frames, mutate=args.mutate)
    report = SoundnessReport.from_result(result, bases)

    print(f"{'section':<14}{'checked':>9}{'failed':>8}")
    for section in report.sections:
        print(f"{section.name:<14}{section.checked:>9}{section.failed:>8}")
    print("PASS" if report.passed else "FAIL")

    diagnostics = [
        Diagnostic(location=f"selfcheck {section.name}: {failure.label}", message=failure.detail)
        for section in report.sections
        for failure in section.failures
    ]
    for diagnostic in diagnostics:
        print(f"  {diagnostic.location}: {diagnostic.message}")
    return Verdict(
        command="selfcheck",
        status="pass" if report.passed else "fail",
        diagnostics=diagnostics,
        selfcheck=report,
    )

import argparse
import json

from app.cli.options import Subparsers
from app.schemas.model_file import ModelFile
from app.schemas.verdict import Verdict


def register(subparsers: Subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "schema", parents=[parent], help="print the JSON schema of the report or of model files"
    )
    parser.add_argument("document", nargs="?", choices=("report", "model"), default="report")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> None:
    model = Verdict if args.document == "report" else ModelFile
    print(json.dumps(model.model_json_schema(), indent=2))

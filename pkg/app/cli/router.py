import argparse

from app.cli.commands import check, evaluate, schema, selfcheck, tactic, validity
from app.cli.options import Subparsers

COMMANDS = (check, evaluate, validity, selfcheck, tactic, schema)


def register_commands(subparsers: Subparsers, parent: argparse.ArgumentParser) -> None:
    for command in COMMANDS:
        command.register(subparsers, parent)

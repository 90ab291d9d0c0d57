"""Management command checking the classification against the expected table."""

import argparse
import typing

import hasse_maps.cli as cli


class Command(cli.HasseMapsCommand):
    help = (
        "Run the classification and diff it against the expected table. "
        "Exits 1 on a mismatch and 2 on configuration errors."
    )
    default_format = "text"
    formats = ("text", "json")

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        self.add_run_arguments(parser)
        parser.add_argument(
            "--expected", default=None, help="Expected-table fixture to compare with."
        )
        super().add_arguments(parser)

    def run(self, options: typing.Dict[str, typing.Any]) -> cli.CommandResult:
        return cli.cmd_verify(self.config(options))

"""Management command running the pairwise classification."""

import argparse
import typing

import hasse_maps.cli as cli


class Command(cli.HasseMapsCommand):
    help = (
        "Classify all pairs of root systems up to --max-rank that admit "
        "surjective diagram maps for every extremal node."
    )

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        self.add_run_arguments(parser)
        parser.add_argument(
            "--witnesses",
            action="store_true",
            help="Include witness vertex maps and rejection certificates.",
        )
        super().add_arguments(parser)

    def run(self, options: typing.Dict[str, typing.Any]) -> cli.CommandResult:
        return cli.cmd_classify(self.config(options))

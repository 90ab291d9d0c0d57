"""Management command listing the diagram maps between two diagrams."""

import argparse
import typing

import hasse_maps.cli as cli


class Command(cli.HasseMapsCommand):
    help = (
        "List every labeling whose induced map from the source diagram to the "
        "target diagram exists, flagged surjective or not."
    )

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("source_system")
        parser.add_argument("source_weight")
        parser.add_argument("target_system")
        parser.add_argument("target_weight")
        parser.add_argument(
            "--witnesses", action="store_true", help="Include vertex maps."
        )
        super().add_arguments(parser)

    def run(self, options: typing.Dict[str, typing.Any]) -> cli.CommandResult:
        return cli.cmd_map(
            cli.DiagramSpec(options["source_system"], options["source_weight"]),
            cli.DiagramSpec(options["target_system"], options["target_weight"]),
            self.config(options),
        )

"""Management command rendering the Hasse diagram of one representation."""

import argparse
import typing

import hasse_maps.cli as cli


class Command(cli.HasseMapsCommand):
    """Render a Hasse diagram.

    Example:
        $ python manage.py hasse G2 fund:short --format dot
    """

    help = "Render the Hasse diagram of SYSTEM with highest weight WEIGHT."
    default_format = "dot"
    formats = ("dot", "json", "text")

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("system", help='Root system, for example "G2" or "E6".')
        parser.add_argument(
            "weight", help='"fund:<node>" (index or alias) or "[k1,...,kn]".'
        )
        super().add_arguments(parser)

    def run(self, options: typing.Dict[str, typing.Any]) -> cli.CommandResult:
        spec = cli.DiagramSpec(options["system"], options["weight"])
        return cli.cmd_hasse(spec, self.config(options))

"""Command-line operations behind the ``hasse``, ``map``, ``classify`` and ``verify`` commands.

Each ``cmd_*`` function takes parsed specs and a :class:`RunConfig` and
returns a :class:`CommandResult` holding the exit status and the emitted
text. :class:`HasseMapsCommand` adapts them to Django management commands.

Exit statuses:
    0: success.
    1: verification mismatch.
    2: usage, configuration or parse error.
    3: invalid (non-dominant or zero) weight.
"""

import argparse
import dataclasses
import logging
import pathlib
import typing

import django.core.management.base as base
import rest_framework.serializers as drf_serializers

import hasse_maps.classify as classify
import hasse_maps.dmap as dmap
import hasse_maps.exceptions as exceptions
import hasse_maps.hasse as hasse
import hasse_maps.rootsys as rootsys
import hasse_maps.serializers as serializers
import hasse_maps.weights as weights

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INVALID_WEIGHT = 3


@dataclasses.dataclass(frozen=True)
class DiagramSpec:
    """A diagram named on the command line.

    Attributes:
        system (str): System token such as ``"G2"``.
        weight (str): ``"fund:<node>"`` (index or alias) or ``"[k1,...,kn]"``.

    Example:
        >>> DiagramSpec("G2", "fund:short").build().vertices[0].labels
        (1, 0)
    """

    system: str
    weight: str

    def resolve(self) -> typing.Tuple[rootsys.RootSystem, weights.Weight]:
        """Parse both tokens.

        Raises:
            ValidationError: If a token does not parse or the weight is not
                dominant and nonzero.
        """
        serializer = serializers.DiagramSpecSerializer(
            data={"system": self.system, "weight": self.weight}
        )
        serializer.is_valid(raise_exception=True)
        return serializer.validated_data["system"], serializer.validated_data["weight"]

    def build(self) -> hasse.HasseDiagram:
        rs, chi = self.resolve()
        return hasse.build_hasse(rs, chi)


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Validated options of one command run.

    Attributes:
        max_rank (int): Rank cap of the classification, 2..8.
        extremal_constraint (bool): Extremal nodes map to extremal nodes.
        output_format (str): ``"dot"``, ``"json"`` or ``"text"``.
        output_path (str, optional): File to write instead of stdout.
        include_identity (bool): Search identity pairs too.
        witnesses (bool): Include witness maps and certificates in output.
        workers (int): Worker processes for the classification.
        expected (str, optional): Path of the expected-table fixture.
    """

    max_rank: int = 8
    extremal_constraint: bool = True
    output_format: str = "json"
    output_path: typing.Optional[str] = None
    include_identity: bool = False
    witnesses: bool = False
    workers: int = 1
    expected: typing.Optional[str] = None

    @classmethod
    def from_options(
        cls, options: typing.Mapping[str, typing.Any], default_format: str = "json"
    ) -> "RunConfig":
        """Build a config from command options, filling gaps from settings.

        Raises:
            ValidationError: If an option is out of range.
        """
        fields = {f.name for f in dataclasses.fields(cls)}
        given = {k: v for k, v in options.items() if k in fields and v is not None}
        serializer = serializers.RunConfigSerializer(
            data=given, context={"default_format": default_format}
        )
        serializer.is_valid(raise_exception=True)
        return cls(**serializer.validated_data)


@dataclasses.dataclass(frozen=True)
class CommandResult:
    """Exit status, emitted artifact and an optional message for stderr."""

    status: int
    artifact: str
    message: str = ""


def _codes(detail: typing.Any) -> typing.Iterator[str]:
    if isinstance(detail, dict):
        for value in detail.values():
            yield from _codes(value)
    elif isinstance(detail, list):
        for value in detail:
            yield from _codes(value)
    else:
        yield str(detail)


def exit_status(exc: drf_serializers.ValidationError) -> int:
    """Exit status of a validation failure: 3 for invalid weights, else 2."""
    if "non_dominant" in set(_codes(exc.get_codes())):
        return EXIT_INVALID_WEIGHT
    return EXIT_USAGE


def _messages(detail: typing.Any, prefix: str = "") -> typing.List[str]:
    if isinstance(detail, dict):
        found = []
        for key, value in detail.items():
            name = prefix if key == "non_field_errors" else f"{prefix}{key}: "
            found.extend(_messages(value, name))
        return found
    if isinstance(detail, list):
        return [m for value in detail for m in _messages(value, prefix)]
    return [f"{prefix}{detail}"]


def describe(exc: drf_serializers.ValidationError) -> str:
    """Flatten a validation error into one line per message."""
    return "\n".join(_messages(exc.detail))


def _text_diagram(d: hasse.HasseDiagram) -> str:
    lines = [f"{d.system.system_type} highest {d.highest}: {len(d.vertices)} weights, {hasse.level_count(d)} levels"]
    for level, members in d.levels.items():
        lines.append(f"level {level}: " + " ".join(str(d.vertices[i]) for i in members))
    for edge in d.edges:
        lines.append(f"{d.vertices[edge.upper]} -{edge.label}-> {d.vertices[edge.lower]}")
    return "\n".join(lines) + "\n"


def cmd_hasse(spec: DiagramSpec, cfg: RunConfig) -> CommandResult:
    """Render the Hasse diagram of ``spec`` as DOT, JSON or text.

    Raises:
        ValidationError: If ``spec`` does not parse.
    """
    d = spec.build()
    if cfg.output_format == "dot":
        artifact = hasse.export_dot(d)
    elif cfg.output_format == "json":
        artifact = serializers.render_json(serializers.HasseDiagramSerializer(d).data)
    else:
        artifact = _text_diagram(d)
    return CommandResult(EXIT_OK, artifact)


def cmd_map(src: DiagramSpec, tgt: DiagramSpec, cfg: RunConfig) -> CommandResult:
    """List every labeling whose induced map from ``src`` to ``tgt`` exists.

    An empty list is a successful result.
    """
    source_diagram, target_diagram = src.build(), tgt.build()
    result = dmap.MapResult(
        source_diagram=source_diagram,
        target_diagram=target_diagram,
        maps=tuple(dmap.find_diagram_labelings(source_diagram, target_diagram)),
    )
    logger.info("%s -> %s: %d induced maps", src.system, tgt.system, len(result.maps))
    if cfg.output_format == "json":
        data = serializers.MapResultSerializer(result, context={"witnesses": cfg.witnesses}).data
        return CommandResult(EXIT_OK, serializers.render_json(data))
    lines = [
        f"{m.labeling} {'surjective' if m.surjective else 'not surjective'}"
        for m in result.maps
    ]
    return CommandResult(EXIT_OK, "".join(line + "\n" for line in lines))


def _text_classification(entries: typing.Sequence[classify.ClassificationEntry]) -> str:
    lines = []
    for entry in entries:
        prefix = "identity " if entry.identity else ""
        images = " ".join(str(list(f.images)) for f in entry.labelings)
        lines.append(f"{prefix}{entry.source} -> {entry.target}: {entry.status} {images}".rstrip())
    return "\n".join(lines) + "\n"


def cmd_classify(cfg: RunConfig) -> CommandResult:
    """Run the classification up to ``cfg.max_rank``.

    Raises:
        ConfigurationError: If the rank cap or worker count is invalid.
    """
    entries = classify.classify_all(
        cfg.max_rank,
        include_identity=cfg.include_identity,
        extremal_constraint=cfg.extremal_constraint,
        workers=cfg.workers,
    )
    if cfg.output_format != "json":
        return CommandResult(EXIT_OK, _text_classification(entries))
    data = serializers.ClassificationSerializer(
        {
            "max_rank": cfg.max_rank,
            "include_identity": cfg.include_identity,
            "extremal_constraint": cfg.extremal_constraint,
            "entries": entries,
        },
        context={"witnesses": cfg.witnesses},
    ).data
    return CommandResult(EXIT_OK, serializers.render_json(data))


def load_expected(path: typing.Union[str, pathlib.Path]) -> classify.ExpectedTable:
    """Read and validate an expected-table fixture.

    Raises:
        ConfigurationError: If the file cannot be read or is invalid.
    """
    try:
        text = pathlib.Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise exceptions.ConfigurationError(f"Cannot read expected table {path}: {exc}")
    try:
        serializer = serializers.ExpectedTableSerializer(data=serializers.parse_json(text))
        serializer.is_valid(raise_exception=True)
    except drf_serializers.ValidationError as exc:
        raise exceptions.ConfigurationError(f"Invalid expected table {path}:\n{describe(exc)}")
    return serializer.save()


def cmd_verify(cfg: RunConfig) -> CommandResult:
    """Compare the classification with the expected table.

    Returns status 0 when the diff is clean and 1 otherwise, with the diff
    as artifact. A pair with fewer labeling classes than the table expects
    counts as a mismatch.

    Raises:
        ConfigurationError: On an unreadable fixture or invalid rank cap.
    """
    expected = load_expected(cfg.expected or "")
    entries = classify.classify_all(
        cfg.max_rank,
        include_identity=cfg.include_identity,
        extremal_constraint=cfg.extremal_constraint,
        workers=cfg.workers,
    )
    report = classify.verify_against_expected(
        entries, expected, cfg.max_rank, include_identity=cfg.include_identity
    )
    if cfg.output_format == "json":
        artifact = serializers.render_json(serializers.VerificationReportSerializer(report).data)
    else:
        artifact = report.render_text()
    if report.ok:
        return CommandResult(EXIT_OK, artifact)
    return CommandResult(
        EXIT_MISMATCH,
        artifact,
        f"Verification failed: {len(report.missing)} missing, "
        f"{len(report.unexpected)} unexpected, {len(report.short)} short of labeling classes.",
    )


class HasseMapsCommand(base.BaseCommand):
    """Base class of the hasse_maps management commands.

    Subclasses add their positional arguments and implement :meth:`run`.
    Validation and configuration failures become :class:`CommandError`
    with the matching exit status; a nonzero :class:`CommandResult` status is
    raised the same way after the artifact is written.

    Attributes:
        default_format (str): Output format when ``--format`` is not given.
        formats (tuple): Formats the command accepts.
    """

    default_format: str = "json"
    formats: typing.Tuple[str, ...] = ("json", "text")

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "--format", dest="output_format", choices=self.formats, default=None,
            help=f"Output format (default: {self.default_format}).",
        )
        parser.add_argument(
            "--output", dest="output_path", default=None,
            help="Write the artifact to this file instead of stdout.",
        )

    def add_run_arguments(self, parser: argparse.ArgumentParser) -> None:
        """Options of the classification commands."""
        parser.add_argument("--max-rank", dest="max_rank", type=int, default=None)
        parser.add_argument(
            "--include-identity", dest="include_identity",
            action="store_const", const=True, default=None,
        )
        parser.add_argument(
            "--no-extremal-constraint", dest="extremal_constraint",
            action="store_const", const=False, default=None,
        )
        parser.add_argument("--workers", type=int, default=None)

    def config(self, options: typing.Mapping[str, typing.Any]) -> RunConfig:
        return RunConfig.from_options(options, self.default_format)

    def run(self, options: typing.Dict[str, typing.Any]) -> CommandResult:
        raise NotImplementedError

    def handle(self, *args: typing.Any, **options: typing.Any) -> None:
        try:
            result = self.run(options)
        except drf_serializers.ValidationError as exc:
            raise base.CommandError(describe(exc), returncode=exit_status(exc))
        except exceptions.NonDominantWeightError as exc:
            raise base.CommandError(str(exc), returncode=EXIT_INVALID_WEIGHT)
        except exceptions.HasseMapsError as exc:
            raise base.CommandError(str(exc), returncode=EXIT_USAGE)
        output_path = options.get("output_path")
        if output_path:
            try:
                pathlib.Path(output_path).write_text(result.artifact, encoding="utf-8")
            except OSError as exc:
                raise base.CommandError(f"Cannot write {output_path}: {exc}", returncode=EXIT_USAGE)
        else:
            self.stdout.write(result.artifact, ending="")
        if result.status != EXIT_OK:
            raise base.CommandError(result.message, returncode=result.status)

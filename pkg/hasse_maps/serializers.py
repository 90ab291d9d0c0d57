"""Django REST Framework serializers for the hasse_maps application.

Every JSON document written or read by the management commands goes through
these serializers. Documents carry ``"schema": 1``; systems are
``{"family", "rank"}`` objects, weights and depth vectors are integer arrays
and labelings are integer arrays indexed by source node.
"""

import io
import re
import typing

import rest_framework.exceptions as drf_exceptions
import rest_framework.parsers as parsers
import rest_framework.renderers as renderers
import rest_framework.serializers as serializers

import hasse_maps.classify as classify
import hasse_maps.conf as conf
import hasse_maps.dmap as dmap
import hasse_maps.exceptions as exceptions
import hasse_maps.hasse as hasse
import hasse_maps.rootsys as rootsys
import hasse_maps.weights as weights

SCHEMA_VERSION: int = 1

OUTPUT_FORMATS: typing.Tuple[str, ...] = ("dot", "json", "text")

_VECTOR = re.compile(r"^\[\s*(-?\d+\s*(,\s*-?\d+\s*)*)?\]$")


def render_json(data: typing.Any) -> str:
    """Render ``data`` as indented JSON text ending with a newline."""
    rendered = renderers.JSONRenderer().render(data, renderer_context={"indent": 2})
    return rendered.decode("utf-8") + "\n"


def parse_json(text: str) -> typing.Any:
    """Parse JSON text.

    Raises:
        ValidationError: If ``text`` is not valid JSON.
    """
    try:
        return parsers.JSONParser().parse(io.BytesIO(text.encode("utf-8")))
    except drf_exceptions.ParseError as exc:
        raise serializers.ValidationError(str(exc.detail), code="invalid_json")


def node_aliases(t: rootsys.SystemType) -> typing.Dict[str, int]:
    """Named extremal nodes of ``t`` besides the Bourbaki indices.

    Example:
        >>> node_aliases(rootsys.SystemType("G", 2))
        {'short-end': 1, 'long-end': 2, 'short': 1, 'long': 2}
    """
    n = t.rank
    ends: typing.Dict[str, int] = {}
    if t.family == "B":
        ends = {"short-end": n, "long-end": 1}
    elif t.family == "C":
        ends = {"short-end": 1, "long-end": n}
    elif t.family == "F":
        ends = {"short-end": 4, "long-end": 1}
    elif t.family == "G":
        ends = {"short-end": 1, "long-end": 2}
    aliases = dict(ends)
    if ends:
        aliases["short"] = ends["short-end"]
        aliases["long"] = ends["long-end"]
    if t.family == "D":
        aliases.update({"arm": 1, "fork": n - 1})
    elif t.family == "E":
        aliases.update({"arm": {6: 1, 7: 7, 8: 8}[n], "fork": 2})
    return aliases


def resolve_node(rs: rootsys.RootSystem, token: str) -> int:
    """Resolve a node index or alias.

    Raises:
        ValidationError: If the token names no node of ``rs``.
    """
    token = token.strip()
    aliases = node_aliases(rs.system_type)
    if token.lower() in aliases:
        return aliases[token.lower()]
    if token.isdigit() and 1 <= int(token) <= rs.rank:
        return int(token)
    known = ", ".join(sorted(aliases)) or "none"
    raise serializers.ValidationError(
        f"Node {token!r} is not a node of {rs.system_type} "
        f"(indices 1..{rs.rank}; aliases: {known}).",
        code="invalid_weight",
    )


def parse_weight(rs: rootsys.RootSystem, token: str) -> weights.Weight:
    """Parse ``fund:<node>`` or ``[k1,...,kn]`` into a weight of ``rs``.

    Dominance is not checked here.

    Raises:
        ValidationError: With code ``invalid_weight`` on malformed tokens.
    """
    text = token.strip()
    if text.startswith("fund:"):
        return weights.fundamental_weight(rs, resolve_node(rs, text[len("fund:"):]))
    if _VECTOR.match(text):
        inner = text.strip()[1:-1].strip()
        labels = tuple(int(x) for x in inner.split(",")) if inner else ()
        if len(labels) == rs.rank:
            return weights.Weight(labels)
        raise serializers.ValidationError(
            f"Weight {token!r} has {len(labels)} labels; {rs.system_type} "
            f"needs {rs.rank}.",
            code="invalid_weight",
        )
    raise serializers.ValidationError(
        f"Cannot parse weight token {token!r}; use fund:<node> or [k1,...].",
        code="invalid_weight",
    )


class SystemTypeField(serializers.Field):
    """A system type, written as ``{"family", "rank"}``.

    Input may also be a token such as ``"E6"``.
    """

    default_error_messages = {
        "invalid_system": "{message}",
    }

    def to_representation(self, value: typing.Any) -> typing.Dict[str, typing.Any]:
        t = getattr(value, "system_type", value)
        return {"family": t.family, "rank": t.rank}

    def to_internal_value(self, data: typing.Any) -> rootsys.SystemType:
        try:
            if isinstance(data, str):
                return rootsys.SystemType.parse(data)
            if isinstance(data, dict):
                return rootsys.SystemType(data.get("family"), data.get("rank"))
        except exceptions.InadmissibleSystemError as exc:
            self.fail("invalid_system", message=str(exc))
        self.fail("invalid_system", message=f"Cannot read a system from {data!r}.")


class WeightField(serializers.Field):
    """A weight written as its Dynkin-label array."""

    def to_representation(self, value: weights.Weight) -> typing.List[int]:
        return list(value.labels)

    def to_internal_value(self, data: typing.Any) -> weights.Weight:
        if not isinstance(data, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in data
        ):
            raise serializers.ValidationError(
                "A weight is an array of integers.", code="invalid_weight"
            )
        return weights.Weight(tuple(data))


class VersionedSerializer(serializers.Serializer):
    """Serializer whose documents start with ``"schema": 1``."""

    def to_representation(self, instance: typing.Any) -> typing.Dict[str, typing.Any]:
        data: typing.Dict[str, typing.Any] = {"schema": SCHEMA_VERSION}
        data.update(super().to_representation(instance))
        return data

    def to_internal_value(self, data: typing.Any) -> typing.Any:
        if not isinstance(data, dict) or data.get("schema") != SCHEMA_VERSION:
            raise serializers.ValidationError(
                {"schema": [f"Expected schema {SCHEMA_VERSION}."]},
                code="invalid_schema",
            )
        return super().to_internal_value(data)


class DiagramSpecSerializer(serializers.Serializer):
    """Validate a ``(system, weight)`` token pair from the command line.

    ``validated_data`` holds the root system under ``"system"`` and the
    dominant weight under ``"weight"``.

    Example:
        >>> serializer = DiagramSpecSerializer(data={
        ...     'system': 'G2',
        ...     'weight': 'fund:short',
        ... })
        >>> serializer.is_valid()
        True
        >>> serializer.validated_data['weight'].labels
        (1, 0)
    """

    system = serializers.CharField()
    weight = serializers.CharField()

    def validate(self, attrs: typing.Dict[str, typing.Any]) -> typing.Dict[str, typing.Any]:
        try:
            rs = rootsys.build_root_system(rootsys.SystemType.parse(attrs["system"]))
        except exceptions.InadmissibleSystemError as exc:
            raise serializers.ValidationError({"system": [str(exc)]}, code="invalid_system")
        try:
            chi = parse_weight(rs, attrs["weight"])
        except serializers.ValidationError as exc:
            raise serializers.ValidationError({"weight": exc.detail}, code="invalid_weight")
        if not weights.is_dominant(rs, chi) or not any(chi.labels):
            raise serializers.ValidationError(
                {"weight": [f"Weight {attrs['weight']!r} is not a dominant nonzero weight of {rs.system_type}."]},
                code="non_dominant",
            )
        return {"system": rs, "weight": chi}


class RunConfigSerializer(serializers.Serializer):
    """Validate the run options shared by all commands.

    Missing options fall back to the ``HASSE_MAPS`` settings.
    """

    max_rank = serializers.IntegerField(required=False)
    extremal_constraint = serializers.BooleanField(required=False)
    output_format = serializers.ChoiceField(choices=OUTPUT_FORMATS, required=False)
    output_path = serializers.CharField(required=False, allow_null=True, default=None)
    include_identity = serializers.BooleanField(required=False)
    witnesses = serializers.BooleanField(default=False)
    workers = serializers.IntegerField(required=False, min_value=1)
    expected = serializers.CharField(required=False, allow_null=True, default=None)

    def validate_max_rank(self, value: int) -> int:
        cap = conf.get_setting("RANK_CAP")
        if not 2 <= value <= cap:
            raise serializers.ValidationError(
                f"--max-rank must lie in 2..{cap}, got {value}.", code="invalid_config"
            )
        return value

    def validate(self, attrs: typing.Dict[str, typing.Any]) -> typing.Dict[str, typing.Any]:
        attrs.setdefault("max_rank", self.validate_max_rank(conf.get_setting("MAX_RANK")))
        attrs.setdefault("extremal_constraint", conf.get_setting("EXTREMAL_CONSTRAINT"))
        attrs.setdefault("include_identity", conf.get_setting("INCLUDE_IDENTITY"))
        attrs.setdefault("workers", conf.get_setting("WORKERS"))
        attrs.setdefault("output_format", self.context.get("default_format", "json"))
        if attrs["expected"] is None:
            attrs["expected"] = str(conf.get_setting("EXPECTED_TABLE"))
        return attrs


class VertexSerializer(serializers.Serializer):
    depth = serializers.ListField(child=serializers.IntegerField(min_value=0))
    labels = serializers.ListField(child=serializers.IntegerField(), read_only=True)
    level = serializers.IntegerField(read_only=True)


class EdgeSerializer(serializers.Serializer):
    upper = serializers.IntegerField(min_value=0)
    lower = serializers.IntegerField(min_value=0)
    label = serializers.IntegerField(min_value=1)


class HasseDiagramSerializer(VersionedSerializer):
    """Serializer for a :class:`~hasse_maps.hasse.HasseDiagram`.

    Output lists every vertex with its depth vector, Dynkin labels and level,
    and every edge by vertex indices and node label. Input needs only the
    system, the highest weight, the depth vectors and the edges; ``save()``
    rebuilds the diagram and checks all of its invariants.

    Attributes:
        system: The root system type.
        highest: Dynkin labels of the highest weight.
        vertices: Nested vertex records in diagram order.
        edges: Nested edge records.
        level_count: Number of levels (output only).
    """

    system = SystemTypeField()
    highest = WeightField()
    vertices = VertexSerializer(many=True)
    edges = EdgeSerializer(many=True)
    level_count = serializers.SerializerMethodField()

    def get_level_count(self, obj: hasse.HasseDiagram) -> int:
        return hasse.level_count(obj)

    def create(self, validated_data: typing.Dict[str, typing.Any]) -> hasse.HasseDiagram:
        """Rebuild the diagram.

        Raises:
            ValidationError: If the data violates a diagram invariant.
        """
        rs = rootsys.build_root_system(validated_data["system"])
        try:
            return hasse.HasseDiagram.from_parts(
                rs,
                validated_data["highest"],
                [v["depth"] for v in validated_data["vertices"]],
                [(e["upper"], e["lower"], e["label"]) for e in validated_data["edges"]],
            )
        except exceptions.HasseMapsError as exc:
            raise serializers.ValidationError(str(exc), code="invalid_diagram")


class LabelingSerializer(serializers.Serializer):
    """Serializer for a labeling; ``images[j - 1]`` is the image of node ``j``."""

    source = SystemTypeField()
    target = SystemTypeField()
    images = serializers.ListField(child=serializers.IntegerField())

    def validate(self, attrs: typing.Dict[str, typing.Any]) -> typing.Dict[str, typing.Any]:
        try:
            dmap.Labeling(attrs["source"], attrs["target"], tuple(attrs["images"]))
        except exceptions.LabelingError as exc:
            raise serializers.ValidationError({"images": [str(exc)]}, code="invalid_labeling")
        return attrs

    def create(self, validated_data: typing.Dict[str, typing.Any]) -> dmap.Labeling:
        return dmap.Labeling(
            validated_data["source"], validated_data["target"], tuple(validated_data["images"])
        )


class DiagramMapSerializer(serializers.Serializer):
    """One induced map; the vertex map is written only for witness output."""

    labeling = serializers.SerializerMethodField()
    surjective = serializers.BooleanField()
    vertex_map = serializers.ListField(child=serializers.IntegerField())

    def get_labeling(self, obj: dmap.DiagramMap) -> typing.List[int]:
        return list(obj.labeling.images)

    def to_representation(self, instance: dmap.DiagramMap) -> typing.Dict[str, typing.Any]:
        data = super().to_representation(instance)
        if not self.context.get("witnesses"):
            data.pop("vertex_map")
        return data


class MapResultSerializer(VersionedSerializer):
    """The labelings whose induced maps exist between two chosen diagrams."""

    source = serializers.SerializerMethodField()
    target = serializers.SerializerMethodField()
    maps = DiagramMapSerializer(many=True)

    @staticmethod
    def _describe(d: hasse.HasseDiagram) -> typing.Dict[str, typing.Any]:
        return {
            "system": SystemTypeField().to_representation(d.system),
            "highest": list(d.highest.labels),
            "vertices": len(d.vertices),
            "levels": hasse.level_count(d),
        }

    def get_source(self, obj: dmap.MapResult) -> typing.Dict[str, typing.Any]:
        return self._describe(obj.source_diagram)

    def get_target(self, obj: dmap.MapResult) -> typing.Dict[str, typing.Any]:
        return self._describe(obj.target_diagram)


class RejectionSerializer(serializers.Serializer):
    prefix = serializers.ListField(child=serializers.IntegerField())
    reason = serializers.CharField()
    detail = serializers.CharField()


class ClassificationEntrySerializer(serializers.Serializer):
    """Serializer for one classified pair.

    ``labelings`` lists image arrays and ``classes`` groups them up to the
    source's standard involution. ``certificate`` counts rejections per
    reason. With the ``witnesses`` context flag the entry also carries the
    vertex map of every witness and the full rejection list.
    """

    source = SystemTypeField()
    target = SystemTypeField()
    status = serializers.CharField()
    labelings = serializers.SerializerMethodField()
    classes = serializers.SerializerMethodField()
    certificate = serializers.SerializerMethodField()
    witnesses = serializers.SerializerMethodField()
    rejections = RejectionSerializer(many=True)

    def get_labelings(self, obj: classify.ClassificationEntry) -> typing.List[typing.List[int]]:
        return [list(f.images) for f in obj.labelings]

    def get_classes(
        self, obj: classify.ClassificationEntry
    ) -> typing.List[typing.List[typing.List[int]]]:
        return [
            [list(f.images) for f in members]
            for members in classify.labeling_classes(obj.labelings)
        ]

    def get_certificate(self, obj: classify.ClassificationEntry) -> typing.Dict[str, int]:
        return obj.certificate()

    def get_witnesses(
        self, obj: classify.ClassificationEntry
    ) -> typing.List[typing.Dict[str, typing.Any]]:
        return [
            {
                "labeling": list(f.images),
                "maps": [
                    {
                        "node": node,
                        "target_node": f(node),
                        "vertex_map": list(witness.vertex_map),
                        "surjective": witness.surjective,
                    }
                    for node, witness in sorted(obj.witnesses[f].items())
                ],
            }
            for f in obj.labelings
        ]

    def to_representation(
        self, instance: classify.ClassificationEntry
    ) -> typing.Dict[str, typing.Any]:
        data = super().to_representation(instance)
        if not self.context.get("witnesses"):
            data.pop("witnesses")
            data.pop("rejections")
        return data


class ClassificationSerializer(VersionedSerializer):
    """The whole classification with identity pairs kept apart.

    The instance is a mapping with ``max_rank``, ``include_identity``,
    ``extremal_constraint`` and ``entries``.
    """

    max_rank = serializers.IntegerField()
    include_identity = serializers.BooleanField()
    extremal_constraint = serializers.BooleanField()
    entries = serializers.SerializerMethodField()
    identities = serializers.SerializerMethodField()

    def _entries(self, obj: typing.Mapping[str, typing.Any], identity: bool) -> typing.Any:
        selected = [e for e in obj["entries"] if e.identity == identity]
        return ClassificationEntrySerializer(selected, many=True, context=self.context).data

    def get_entries(self, obj: typing.Mapping[str, typing.Any]) -> typing.Any:
        return self._entries(obj, identity=False)

    def get_identities(self, obj: typing.Mapping[str, typing.Any]) -> typing.Any:
        return self._entries(obj, identity=True)


class RankPatternSerializer(serializers.Serializer):
    scale = serializers.IntegerField(min_value=0)
    offset = serializers.IntegerField()


class ExpectedRowSerializer(serializers.Serializer):
    """Serializer for one row of the expected table.

    Non-identity rows need both families and rank patterns, and every
    instance up to rank 8 must be admissible.

    Example:
        >>> serializer = ExpectedRowSerializer(data={
        ...     'name': 'A2n -> Bn',
        ...     'source_family': 'A',
        ...     'source_rank': {'scale': 2, 'offset': 0},
        ...     'target_family': 'B',
        ...     'target_rank': {'scale': 1, 'offset': 0},
        ...     'n_min': 2,
        ... })
        >>> serializer.is_valid()
        True
    """

    name = serializers.CharField()
    source_family = serializers.ChoiceField(choices=rootsys.FAMILIES, required=False)
    source_rank = RankPatternSerializer(required=False)
    target_family = serializers.ChoiceField(choices=rootsys.FAMILIES, required=False)
    target_rank = RankPatternSerializer(required=False)
    n_min = serializers.IntegerField(min_value=1, default=1)
    n_max = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
    fibers = serializers.CharField(allow_blank=True, default="")
    classes = serializers.IntegerField(min_value=1, default=1)
    identity = serializers.BooleanField(default=False)

    def validate(self, attrs: typing.Dict[str, typing.Any]) -> typing.Dict[str, typing.Any]:
        if attrs["identity"]:
            return attrs
        for key in ("source_family", "source_rank", "target_family", "target_rank"):
            if key not in attrs:
                raise serializers.ValidationError({key: ["Required for non-identity rows."]})
        row = self._row(attrs)
        try:
            row.instantiate(conf.HARD_RANK_CAP)
        except exceptions.HasseMapsError as exc:
            raise serializers.ValidationError(
                {"name": [f"Row {attrs['name']!r}: {exc}"]}, code="invalid_row"
            )
        return attrs

    @staticmethod
    def _row(attrs: typing.Dict[str, typing.Any]) -> classify.ExpectedRow:
        patterns = {
            key: classify.RankPattern(**attrs[key])
            for key in ("source_rank", "target_rank")
            if key in attrs
        }
        return classify.ExpectedRow(
            **{k: v for k, v in attrs.items() if k not in patterns}, **patterns
        )

    def create(self, validated_data: typing.Dict[str, typing.Any]) -> classify.ExpectedRow:
        return self._row(validated_data)


class ExpectedTableSerializer(VersionedSerializer):
    """Serializer for the expected-table fixture."""

    rows = ExpectedRowSerializer(many=True)

    def create(self, validated_data: typing.Dict[str, typing.Any]) -> classify.ExpectedTable:
        return classify.ExpectedTable(
            rows=tuple(ExpectedRowSerializer._row(row) for row in validated_data["rows"])
        )


class VerificationReportSerializer(VersionedSerializer):
    """Serializer for the verification diff."""

    ok = serializers.BooleanField()
    matched = serializers.SerializerMethodField()
    missing = serializers.SerializerMethodField()
    unexpected = serializers.SerializerMethodField()
    short = serializers.SerializerMethodField()

    def get_matched(self, obj: classify.VerificationReport) -> typing.List[typing.List[str]]:
        return [[str(s), str(t)] for s, t in obj.matched]

    def get_missing(self, obj: classify.VerificationReport) -> typing.List[typing.Dict[str, str]]:
        return [
            {"source": str(s), "target": str(t), "row": row}
            for (s, t), row in obj.missing
        ]

    def get_unexpected(self, obj: classify.VerificationReport) -> typing.List[typing.List[str]]:
        return [[str(s), str(t)] for s, t in obj.unexpected]

    def get_short(self, obj: classify.VerificationReport) -> typing.List[typing.Dict[str, typing.Any]]:
        return [
            {"source": str(s), "target": str(t), "found": got, "expected": wanted}
            for (s, t), got, wanted in obj.short
        ]

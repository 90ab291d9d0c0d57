"""Tests for hasse_maps.serializers."""

import copy

import django.test as test
import rest_framework.serializers as drf_serializers

import hasse_maps.classify as classify
import hasse_maps.conf as conf
import hasse_maps.dmap as dmap
import hasse_maps.hasse as hasse
import hasse_maps.rootsys as rootsys
import hasse_maps.serializers as serializers
import hasse_maps.weights as weights


def system(token: str) -> rootsys.RootSystem:
    return rootsys.build_root_system(rootsys.SystemType.parse(token))


def fixture_data():
    with open(conf.get_setting("EXPECTED_TABLE"), encoding="utf-8") as handle:
        return serializers.parse_json(handle.read())


class NodeAliasTestCase(test.SimpleTestCase):
    """Test cases for node aliases and weight tokens."""

    def test_aliases(self) -> None:
        """Test extremal node names per family."""
        self.assertEqual(serializers.resolve_node(system("B4"), "short-end"), 4)
        self.assertEqual(serializers.resolve_node(system("B4"), "long"), 1)
        self.assertEqual(serializers.resolve_node(system("C4"), "short-end"), 1)
        self.assertEqual(serializers.resolve_node(system("C4"), "long-end"), 4)
        self.assertEqual(serializers.resolve_node(system("F4"), "short"), 4)
        self.assertEqual(serializers.resolve_node(system("G2"), "Long-End"), 2)
        self.assertEqual(serializers.resolve_node(system("D5"), "fork"), 4)
        self.assertEqual(serializers.resolve_node(system("E7"), "arm"), 7)
        self.assertEqual(serializers.resolve_node(system("E6"), "fork"), 2)
        self.assertEqual(serializers.resolve_node(system("A3"), " 3 "), 3)
        self.assertEqual(serializers.node_aliases(rootsys.SystemType("A", 3)), {})

    def test_unknown_nodes(self) -> None:
        """Test out-of-range indices and unknown names."""
        for rs, token in ((system("A3"), "4"), (system("A3"), "short"), (system("D4"), "0")):
            with self.subTest(system=str(rs.system_type), token=token):
                with self.assertRaises(drf_serializers.ValidationError):
                    serializers.resolve_node(rs, token)

    def test_parse_weight(self) -> None:
        """Test fundamental and vector tokens."""
        g2 = system("G2")
        self.assertEqual(serializers.parse_weight(g2, "fund:short").labels, (1, 0))
        self.assertEqual(serializers.parse_weight(g2, "fund:2").labels, (0, 1))
        self.assertEqual(serializers.parse_weight(g2, "[1, -1]").labels, (1, -1))
        for token in ("[1]", "[1,0,0]", "(1,0)", "fund:", "fund:3", "[a,b]"):
            with self.subTest(token=token):
                with self.assertRaises(drf_serializers.ValidationError) as caught:
                    serializers.parse_weight(g2, token)
                self.assertIn("invalid_weight", str(caught.exception.get_codes()))


class DiagramSpecSerializerTestCase(test.SimpleTestCase):
    """Test cases for command-line diagram specs."""

    def test_valid(self) -> None:
        """Test a spec resolves to a system and weight."""
        serializer = serializers.DiagramSpecSerializer(data={"system": "E6", "weight": "fund:arm"})
        self.assertTrue(serializer.is_valid())
        self.assertEqual(serializer.validated_data["system"].system_type, rootsys.SystemType("E", 6))
        self.assertEqual(serializer.validated_data["weight"].labels, (1, 0, 0, 0, 0, 0))

    def test_errors(self) -> None:
        """Test error codes of bad specs."""
        cases = [
            ({"system": "C2", "weight": "fund:1"}, "system", "invalid_system"),
            ({"system": "A2", "weight": "fund:x"}, "weight", "invalid_weight"),
            ({"system": "A2", "weight": "[1,-1]"}, "weight", "non_dominant"),
            ({"system": "A2", "weight": "[0,0]"}, "weight", "non_dominant"),
        ]
        for data, field, code in cases:
            serializer = serializers.DiagramSpecSerializer(data=data)
            with self.subTest(data=data):
                self.assertFalse(serializer.is_valid())
                self.assertEqual(serializer.errors[field][0].code, code)


class RunConfigSerializerTestCase(test.SimpleTestCase):
    """Test cases for run options."""

    def test_defaults(self) -> None:
        """Test defaults come from settings and the command."""
        serializer = serializers.RunConfigSerializer(data={}, context={"default_format": "text"})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        data = serializer.validated_data
        self.assertEqual(data["max_rank"], 8)
        self.assertTrue(data["extremal_constraint"])
        self.assertFalse(data["include_identity"])
        self.assertEqual(data["workers"], 1)
        self.assertEqual(data["output_format"], "text")
        self.assertTrue(data["expected"].endswith("expected_table.json"))

    def test_bounds(self) -> None:
        """Test rank caps and worker counts outside their ranges."""
        for data in ({"max_rank": 1}, {"max_rank": 9}, {"workers": 0}, {"output_format": "svg"}):
            with self.subTest(data=data):
                self.assertFalse(serializers.RunConfigSerializer(data=data).is_valid())

    @test.override_settings(HASSE_MAPS={"MAX_RANK": 4, "WORKERS": 2})
    def test_settings_override(self) -> None:
        """Test project settings replace the built-in defaults."""
        serializer = serializers.RunConfigSerializer(data={})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data["max_rank"], 4)
        self.assertEqual(serializer.validated_data["workers"], 2)


class ExpectedTableSerializerTestCase(test.SimpleTestCase):
    """Test cases for the expected-table fixture."""

    def test_fixture(self) -> None:
        """Test the shipped fixture loads."""
        serializer = serializers.ExpectedTableSerializer(data=fixture_data())
        self.assertTrue(serializer.is_valid(), serializer.errors)
        table = serializer.save()
        self.assertEqual(len(table.rows), 10)
        self.assertTrue(table.rows[0].identity)
        self.assertEqual(table.rows[1].source_rank, classify.RankPattern(2, 0))

    def test_bad_schema(self) -> None:
        """Test documents with the wrong schema version."""
        data = fixture_data()
        data["schema"] = 2
        serializer = serializers.ExpectedTableSerializer(data=data)
        self.assertFalse(serializer.is_valid())
        self.assertIn("schema", serializer.errors)

    def test_inadmissible_row(self) -> None:
        """Test a row producing C2."""
        data = fixture_data()
        data["rows"][3]["n_min"] = 2
        self.assertFalse(serializers.ExpectedTableSerializer(data=data).is_valid())

    def test_missing_family(self) -> None:
        """Test a non-identity row without a target family."""
        data = fixture_data()
        del data["rows"][2]["target_family"]
        self.assertFalse(serializers.ExpectedTableSerializer(data=data).is_valid())

    def test_row_round_trip(self) -> None:
        """Test a row renders back to its input."""
        data = fixture_data()["rows"][6]
        serializer = serializers.ExpectedRowSerializer(data=data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        row = serializer.save()
        self.assertEqual(row.instantiate(5)[0], (rootsys.SystemType("D", 4), rootsys.SystemType("B", 3)))
        rendered = serializers.ExpectedRowSerializer(row).data
        self.assertEqual(rendered["source_rank"], {"scale": 1, "offset": 0})
        self.assertEqual(rendered["name"], "Dn -> Bn-1")
        self.assertEqual(rendered["classes"], 1)


class HasseDiagramSerializerTestCase(test.SimpleTestCase):
    """Test cases for diagram documents."""

    def setUp(self) -> None:
        rs = system("B3")
        self.diagram = hasse.build_hasse(rs, weights.fundamental_weight(rs, 3))
        self.data = serializers.parse_json(
            serializers.render_json(serializers.HasseDiagramSerializer(self.diagram).data)
        )

    def test_representation(self) -> None:
        """Test the rendered document."""
        self.assertEqual(self.data["schema"], 1)
        self.assertEqual(self.data["system"], {"family": "B", "rank": 3})
        self.assertEqual(self.data["highest"], [0, 0, 1])
        self.assertEqual(self.data["level_count"], 7)
        self.assertEqual(len(self.data["vertices"]), 8)
        self.assertEqual(self.data["vertices"][0], {"depth": [0, 0, 0], "labels": [0, 0, 1], "level": 1})
        self.assertEqual(self.data["edges"][0], {"upper": 0, "lower": 1, "label": 3})

    def test_round_trip(self) -> None:
        """Test a document rebuilds the same diagram."""
        serializer = serializers.HasseDiagramSerializer(data=self.data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        rebuilt = serializer.save()
        self.assertEqual(rebuilt.vertices, self.diagram.vertices)
        self.assertEqual(rebuilt.edges, self.diagram.edges)

    def test_tampered(self) -> None:
        """Test that a corrupted document is rejected on save."""
        data = copy.deepcopy(self.data)
        data["edges"][0]["label"] = 1
        serializer = serializers.HasseDiagramSerializer(data=data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        with self.assertRaises(drf_serializers.ValidationError):
            serializer.save()

    def test_wrong_schema(self) -> None:
        """Test that documents without a schema are refused."""
        data = copy.deepcopy(self.data)
        del data["schema"]
        self.assertFalse(serializers.HasseDiagramSerializer(data=data).is_valid())


class LabelingSerializerTestCase(test.SimpleTestCase):
    """Test cases for labeling documents."""

    def test_valid(self) -> None:
        """Test a labeling document with system tokens."""
        serializer = serializers.LabelingSerializer(
            data={"source": "E6", "target": {"family": "F", "rank": 4}, "images": [4, 1, 3, 2, 3, 4]}
        )
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save().images, (4, 1, 3, 2, 3, 4))

    def test_invalid(self) -> None:
        """Test out-of-range images and inadmissible systems."""
        for data in (
            {"source": "A3", "target": "B2", "images": [1, 2, 3]},
            {"source": "A3", "target": "B2", "images": [1, 2]},
            {"source": "A3", "target": "C2", "images": [1, 2, 1]},
        ):
            with self.subTest(data=data):
                self.assertFalse(serializers.LabelingSerializer(data=data).is_valid())


class ClassificationSerializerTestCase(test.SimpleTestCase):
    """Test cases for classification documents."""

    def render(self, witnesses: bool):
        entries = [
            classify.classify_pair(rootsys.SystemType("D", 4), rootsys.SystemType("B", 3)),
            classify.classify_pair(rootsys.SystemType("B", 3), rootsys.SystemType("B", 3)),
        ]
        return serializers.ClassificationSerializer(
            {"max_rank": 4, "include_identity": True, "extremal_constraint": True, "entries": entries},
            context={"witnesses": witnesses},
        ).data

    def test_document(self) -> None:
        """Test entries, identities and label classes."""
        data = self.render(witnesses=False)
        self.assertEqual(data["schema"], 1)
        self.assertEqual(len(data["entries"]), 1)
        self.assertEqual(len(data["identities"]), 1)
        entry = data["entries"][0]
        self.assertEqual(entry["status"], classify.FOUND)
        self.assertEqual(entry["labelings"], [[1, 2, 3, 3], [3, 2, 1, 3], [3, 2, 3, 1]])
        self.assertEqual(entry["classes"], [[[1, 2, 3, 3]], [[3, 2, 1, 3], [3, 2, 3, 1]]])
        self.assertEqual(set(entry["certificate"]), set(dmap.REASONS))
        self.assertNotIn("witnesses", entry)
        self.assertNotIn("rejections", entry)

    def test_witnesses(self) -> None:
        """Test witness output carries vertex maps."""
        entry = self.render(witnesses=True)["entries"][0]
        self.assertEqual(len(entry["witnesses"]), 3)
        first = entry["witnesses"][0]
        self.assertEqual(first["labeling"], [1, 2, 3, 3])
        self.assertEqual([m["node"] for m in first["maps"]], [1, 3, 4])
        self.assertEqual([m["target_node"] for m in first["maps"]], [1, 3, 3])
        self.assertTrue(all(m["surjective"] for m in first["maps"]))
        self.assertIn("rejections", entry)

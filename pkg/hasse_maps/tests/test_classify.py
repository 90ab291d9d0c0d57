"""Tests for hasse_maps.classify."""

import dataclasses
import itertools

import django.test as test

import hasse_maps.classify as classify
import hasse_maps.cli as cli
import hasse_maps.conf as conf
import hasse_maps.dmap as dmap
import hasse_maps.exceptions as exceptions
import hasse_maps.rootsys as rootsys
import hasse_maps.tests.oracles as oracles


def sys_type(token: str) -> rootsys.SystemType:
    return rootsys.SystemType.parse(token)


def pairs(*tokens: str):
    return {(sys_type(s), sys_type(t)) for s, t in (token.split("->") for token in tokens)}


def found(entries):
    return {entry.key for entry in entries if entry.status == classify.FOUND and not entry.identity}


FOUND_UP_TO_RANK_8 = pairs(
    "A3->B2", "A4->B2", "A5->C3", "A6->B3", "A6->G2", "A7->C4", "A8->B4",
    "B3->G2",
    "D4->B3", "D4->G2", "D5->B4", "D6->B5", "D7->B6", "D8->B7",
    "E6->F4",
)


class ClassifyPairTestCase(test.SimpleTestCase):
    """Test cases for single pairs."""

    def test_found(self) -> None:
        """Test labelings of found pairs."""
        cases = {
            ("A4", "B2"): [(1, 2, 2, 1)],
            ("A5", "C3"): [(1, 2, 3, 2, 1)],
            ("E6", "F4"): [(4, 1, 3, 2, 3, 4)],
            ("D4", "G2"): [(1, 2, 1, 1)],
        }
        for (source, target), images in cases.items():
            entry = classify.classify_pair(sys_type(source), sys_type(target))
            with self.subTest(source=source, target=target):
                self.assertEqual(entry.status, classify.FOUND)
                self.assertEqual([f.images for f in entry.labelings], images)
                self.assertFalse(entry.identity)

    def test_c4_has_no_quotient(self) -> None:
        """Test C4 maps onto no smaller system."""
        c4 = sys_type("C4")
        for target in rootsys.admissible_types(3):
            with self.subTest(target=str(target)):
                self.assertEqual(classify.classify_pair(c4, target).status, classify.EMPTY)

    def test_d_fibers(self) -> None:
        """Test D_n -> B_n-1 merges exactly the two fork nodes."""
        for n in range(4, 9):
            entry = classify.classify_pair(sys_type(f"D{n}"), sys_type(f"B{n - 1}"))
            expected = tuple(range(1, n - 1)) + (n - 1, n - 1)
            with self.subTest(rank=n):
                self.assertIn(expected, [f.images for f in entry.labelings])
                f = dmap.Labeling(entry.source, entry.target, expected)
                self.assertEqual(f.fibers()[n - 1], (n - 1, n))

    def test_certificate(self) -> None:
        """Test rejection counts list every reason."""
        entry = classify.classify_pair(sys_type("E7"), sys_type("F4"))
        certificate = entry.certificate()
        self.assertEqual(set(certificate), set(dmap.REASONS))
        self.assertGreater(certificate[dmap.LEVEL_COUNT], 0)
        self.assertEqual(sum(certificate.values()), len(entry.rejections))

    def test_identity_pair(self) -> None:
        """Test an identity pair finds the identity labeling."""
        entry = classify.classify_pair(sys_type("B3"), sys_type("B3"))
        self.assertTrue(entry.identity)
        self.assertIn(dmap.Labeling.identity(sys_type("B3")), entry.labelings)


class ClassifyAllTestCase(test.SimpleTestCase):
    """Test cases for the full classification."""

    def test_rank_two(self) -> None:
        """Test that no cross pair exists up to rank 2."""
        entries = classify.classify_all(2)
        self.assertEqual(found(entries), set())
        self.assertEqual(
            [entry.key for entry in entries], sorted(classify.classification_pairs(2))
        )
        self.assertFalse(any(entry.identity for entry in entries))

    def test_rank_four(self) -> None:
        """Test the pairs found up to rank 4."""
        self.assertEqual(
            found(classify.classify_all(4)),
            pairs("A3->B2", "A4->B2", "B3->G2", "D4->B3", "D4->G2"),
        )

    def test_deterministic(self) -> None:
        """Test two runs agree."""
        first = [(e.key, e.labelings) for e in classify.classify_all(3)]
        second = [(e.key, e.labelings) for e in classify.classify_all(3)]
        self.assertEqual(first, second)

    def test_workers(self) -> None:
        """Test worker processes give the in-process result."""
        serial = [(e.key, e.labelings) for e in classify.classify_all(3)]
        parallel = [(e.key, e.labelings) for e in classify.classify_all(3, workers=2)]
        self.assertEqual(serial, parallel)

    def test_identities(self) -> None:
        """Test identity pairs are searched on request and always found."""
        entries = classify.classify_all(3, include_identity=True)
        identities = [entry for entry in entries if entry.identity]
        self.assertEqual(len(identities), len(rootsys.admissible_types(3)))
        for entry in identities:
            self.assertEqual(entry.status, classify.FOUND)

    def test_pairs(self) -> None:
        """Test pair enumeration respects the rank order."""
        for source, target in classify.classification_pairs(5):
            self.assertLessEqual(target.rank, source.rank)
            self.assertNotEqual(source, target)

    def test_check_max_rank(self) -> None:
        """Test the accepted rank caps."""
        for good in range(2, conf.HARD_RANK_CAP + 1):
            self.assertEqual(classify.check_max_rank(good), good)
        for bad in (1, 9, True, "4"):
            with self.subTest(max_rank=bad):
                with self.assertRaises(exceptions.ConfigurationError):
                    classify.check_max_rank(bad)
        with self.assertRaises(exceptions.ConfigurationError):
            classify.classify_all(2, workers=0)

    @test.override_settings(HASSE_MAPS={"RANK_CAP": 4})
    def test_rank_cap_setting(self) -> None:
        """Test a lower configured cap is enforced."""
        with self.assertRaises(exceptions.ConfigurationError):
            classify.check_max_rank(5)

    def test_empty_pairs_have_no_surjection(self) -> None:
        """Test empty pairs against exhaustive edge-compatible maps, rank at most 3."""
        for entry in classify.classify_all(3):
            source = rootsys.build_root_system(entry.source)
            target = rootsys.build_root_system(entry.target)
            src_extremal = sorted(rootsys.extremal_roots(source))
            tgt_extremal = rootsys.extremal_roots(target)
            for images in itertools.product(target.nodes, repeat=source.rank):
                if any(images[a - 1] not in tgt_extremal for a in src_extremal):
                    continue
                qualifies = all(
                    oracles.has_surjective_map(
                        dmap.DIAGRAMS.get(entry.source, a),
                        dmap.DIAGRAMS.get(entry.target, images[a - 1]),
                        images,
                    )
                    for a in src_extremal
                )
                found_images = [f.images for f in entry.labelings]
                with self.subTest(source=str(entry.source), target=str(entry.target), images=images):
                    self.assertEqual(qualifies, images in found_images)


class VerificationTestCase(test.SimpleTestCase):
    """Test cases for the expected table and the verification diff."""

    def setUp(self) -> None:
        self.table = cli.load_expected(conf.get_setting("EXPECTED_TABLE"))

    def test_fixture_at_rank_eight(self) -> None:
        """Test the fixture instantiates to the known pairs."""
        self.assertEqual(set(self.table.instantiate(8)), FOUND_UP_TO_RANK_8)
        self.assertEqual(self.table.instantiate(8)[(sys_type("D4"), sys_type("B3"))], "Dn -> Bn-1")

    def test_fixture_identities(self) -> None:
        """Test the identity row is added on request."""
        with_identity = self.table.instantiate(3, include_identity=True)
        self.assertEqual(with_identity[(sys_type("G2"), sys_type("G2"))], "identity")

    def test_rank_four_matches(self) -> None:
        """Test verification up to rank 4."""
        report = classify.verify_against_expected(classify.classify_all(4), self.table, 4)
        self.assertTrue(report.ok)
        self.assertEqual(len(report.matched), 5)
        self.assertTrue(report.render_text().endswith("OK\n"))

    def test_missing(self) -> None:
        """Test a missing row is named in the diff."""
        entries = [
            entry
            for entry in classify.classify_all(4)
            if entry.key != (sys_type("B3"), sys_type("G2"))
        ]
        report = classify.verify_against_expected(entries, self.table, 4)
        self.assertFalse(report.ok)
        self.assertEqual(report.missing, (((sys_type("B3"), sys_type("G2")), "B3 -> G2"),))
        self.assertIn("missing: B3 -> G2 (row 'B3 -> G2')", report.render_text())
        self.assertTrue(report.render_text().endswith("MISMATCH\n"))

    def test_class_counts(self) -> None:
        """Test the D4 -> B3 rows add up to two labeling classes."""
        counts = self.table.class_counts(8)
        self.assertEqual(counts[(sys_type("D4"), sys_type("B3"))], 2)
        self.assertEqual(counts[(sys_type("D5"), sys_type("B4"))], 1)
        self.assertEqual(set(counts), FOUND_UP_TO_RANK_8)

    def test_lost_labeling_class(self) -> None:
        """Test a pair found with too few labeling classes is a mismatch."""
        key = (sys_type("D4"), sys_type("B3"))
        entries = [
            dataclasses.replace(entry, labelings=entry.labelings[:1]) if entry.key == key else entry
            for entry in classify.classify_all(4)
        ]
        report = classify.verify_against_expected(entries, self.table, 4)
        self.assertFalse(report.ok)
        self.assertEqual(report.short, ((key, 1, 2),))
        self.assertIn(key, report.matched)
        self.assertIn("classes: D4 -> B3 found 1 of 2", report.render_text())
        self.assertTrue(report.render_text().endswith("MISMATCH\n"))

    def test_empty(self) -> None:
        """Test empty entries against an empty table."""
        report = classify.verify_against_expected([], classify.ExpectedTable(rows=()), 4)
        self.assertTrue(report.ok)
        self.assertEqual(report.render_text(), "matched: 0\nOK\n")

    def test_unexpected(self) -> None:
        """Test a found pair outside the table is reported."""
        table = classify.ExpectedTable(
            rows=tuple(row for row in self.table.rows if row.name != "D4 -> G2")
        )
        report = classify.verify_against_expected(classify.classify_all(4), table, 4)
        self.assertEqual(report.unexpected, ((sys_type("D4"), sys_type("G2")),))
        self.assertEqual(report.missing, ())

    def test_row_instantiation(self) -> None:
        """Test open-ended and constant rows."""
        row = classify.ExpectedRow(
            name="Dn -> Bn-1",
            source_family="D",
            source_rank=classify.RankPattern(1, 0),
            target_family="B",
            target_rank=classify.RankPattern(1, -1),
            n_min=4,
        )
        self.assertEqual(row.instantiate(6), sorted(pairs("D4->B3", "D5->B4", "D6->B5")))
        self.assertEqual(row.instantiate(3), [])
        constant = classify.ExpectedRow(
            name="broken", source_family="E", source_rank=classify.RankPattern(0, 6),
            target_family="F", target_rank=classify.RankPattern(0, 4),
        )
        with self.assertRaises(exceptions.ConfigurationError):
            constant.instantiate(8)


class LabelingClassesTestCase(test.SimpleTestCase):
    """Test cases for grouping labelings."""

    def test_d4_to_b3(self) -> None:
        """Test the three D4 -> B3 labelings form two classes."""
        entry = classify.classify_pair(sys_type("D4"), sys_type("B3"))
        classes = classify.labeling_classes(entry.labelings)
        self.assertEqual(
            [[f.images for f in members] for members in classes],
            [[(1, 2, 3, 3)], [(3, 2, 1, 3), (3, 2, 3, 1)]],
        )

    def test_without_involution(self) -> None:
        """Test systems without an involution give singleton classes."""
        entry = classify.classify_pair(sys_type("B3"), sys_type("G2"))
        self.assertEqual(len(classify.labeling_classes(entry.labelings)), 1)
        self.assertEqual(classify.labeling_classes(()), [])


class ExtremalSurjectionsTestCase(test.SimpleTestCase):
    """Test cases for surjections of one extremal diagram."""

    def test_a3(self) -> None:
        """Test the A3 chain surjects onto the B2 spin diagram."""
        found_maps = classify.extremal_surjections(sys_type("A3"), 1)
        self.assertEqual(
            [(s.target, s.node, [f.images for f in s.labelings]) for s in found_maps],
            [(sys_type("B2"), 2, [(2, 1, 2)])],
        )

    def test_b3(self) -> None:
        """Test the B3 vector diagram surjects onto the short G2 diagram."""
        found_maps = classify.extremal_surjections(sys_type("B3"), 1)
        self.assertEqual(
            [(s.target, s.node, [f.images for f in s.labelings]) for s in found_maps],
            [(sys_type("G2"), 1, [(1, 2, 1)])],
        )

    def test_bad_node(self) -> None:
        """Test an out-of-range node."""
        with self.assertRaises(exceptions.NodeIndexError):
            classify.extremal_surjections(sys_type("A3"), 4)

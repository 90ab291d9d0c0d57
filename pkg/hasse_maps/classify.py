"""Pairwise classification of surjective diagram maps and its verification.

For every ordered pair ``(L, J)`` of admissible systems with
``rank(J) <= rank(L) <= max_rank`` the classification records the labelings
``f`` that send extremal nodes to extremal nodes and induce a surjective map
on the fundamental diagram of every extremal node of ``L``. Identity pairs
are segregated and only computed on request.
"""

import concurrent.futures
import dataclasses
import logging
import typing

import hasse_maps.conf as conf
import hasse_maps.dmap as dmap
import hasse_maps.exceptions as exceptions
import hasse_maps.rootsys as rootsys

logger = logging.getLogger(__name__)

FOUND = "found"
EMPTY = "empty"

Pair = typing.Tuple[rootsys.SystemType, rootsys.SystemType]


@dataclasses.dataclass(frozen=True)
class ClassificationEntry:
    """Result of the search for one ordered pair of systems.

    Attributes:
        source (SystemType): The larger system ``L``.
        target (SystemType): The system ``J`` of rank at most ``rank(L)``.
        labelings (tuple): Qualifying labelings, lexicographically sorted.
        witnesses (dict): Per labeling, the surjective map of every extremal
            source node.
        rejections (tuple): Pruning certificates of the search.
    """

    source: rootsys.SystemType
    target: rootsys.SystemType
    labelings: typing.Tuple[dmap.Labeling, ...]
    witnesses: typing.Dict[dmap.Labeling, typing.Dict[int, dmap.DiagramMap]]
    rejections: typing.Tuple[dmap.Rejection, ...]

    @property
    def status(self) -> str:
        return FOUND if self.labelings else EMPTY

    @property
    def identity(self) -> bool:
        return self.source == self.target

    @property
    def key(self) -> Pair:
        return self.source, self.target

    def certificate(self) -> typing.Dict[str, int]:
        """Number of rejections per reason, every reason listed."""
        counts = {reason: 0 for reason in dmap.REASONS}
        for rejection in self.rejections:
            counts[rejection.reason] += 1
        return counts


def classify_pair(
    src: rootsys.SystemType,
    tgt: rootsys.SystemType,
    extremal_constraint: bool = True,
    diagrams: typing.Optional[dmap.FundamentalDiagrams] = None,
) -> ClassificationEntry:
    """Search one pair and re-check every witness from scratch.

    Raises:
        MapError: If a witness fails revalidation.
    """
    result = dmap.LabelingSearch(src, tgt, extremal_constraint, diagrams).run()
    for f, maps in result.witnesses.items():
        for node, witness in maps.items():
            witness.validate()
            again = dmap.induce_map(f, witness.source_diagram, witness.target_diagram)
            if again is None or again.vertex_map != witness.vertex_map:
                raise exceptions.MapError(
                    f"Witness of {f} at fund:{node} does not re-induce."
                )
    return ClassificationEntry(
        source=src,
        target=tgt,
        labelings=result.labelings,
        witnesses=result.witnesses,
        rejections=result.rejections,
    )


def classification_pairs(max_rank: int, include_identity: bool = False) -> typing.List[Pair]:
    """Ordered pairs ``(L, J)`` with ``rank(J) <= rank(L) <= max_rank``."""
    types = rootsys.admissible_types(max_rank)
    return [
        (source, target)
        for source in types
        for target in types
        if target.rank <= source.rank and (include_identity or source != target)
    ]


def _classify_job(args: typing.Tuple[Pair, bool]) -> ClassificationEntry:
    (source, target), extremal_constraint = args
    return classify_pair(source, target, extremal_constraint)


def check_max_rank(max_rank: int) -> int:
    """Return ``max_rank`` if it lies in ``2..RANK_CAP``.

    Raises:
        ConfigurationError: Otherwise.
    """
    cap = conf.get_setting("RANK_CAP")
    if isinstance(max_rank, bool) or not isinstance(max_rank, int) or not 2 <= max_rank <= cap:
        raise exceptions.ConfigurationError(
            f"max_rank must be an integer in 2..{cap}, got {max_rank!r}."
        )
    return max_rank


def classify_all(
    max_rank: int,
    include_identity: bool = False,
    extremal_constraint: bool = True,
    workers: int = 1,
) -> typing.List[ClassificationEntry]:
    """Classify every pair up to ``max_rank``.

    Args:
        max_rank: Rank cap, ``2 <= max_rank <= 8``.
        include_identity: Also search the pairs ``(L, L)``.
        extremal_constraint: Require extremal nodes to map to extremal nodes.
        workers: Number of worker processes; 1 runs in-process.

    Returns:
        list: One entry per pair, sorted by ``(source, target)``.

    Raises:
        ConfigurationError: If ``max_rank`` or ``workers`` is out of range.
    """
    check_max_rank(max_rank)
    if isinstance(workers, bool) or not isinstance(workers, int) or workers < 1:
        raise exceptions.ConfigurationError(f"workers must be at least 1, got {workers!r}.")
    jobs = [(pair, extremal_constraint) for pair in classification_pairs(max_rank, include_identity)]
    if workers == 1:
        entries = [_classify_job(job) for job in jobs]
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(_classify_job, jobs))
    entries.sort(key=lambda entry: entry.key)
    for entry in entries:
        logger.info(
            "%s -> %s: %s (%d labelings, %d rejections)",
            entry.source,
            entry.target,
            entry.status,
            len(entry.labelings),
            len(entry.rejections),
        )
    return entries


@dataclasses.dataclass(frozen=True)
class RankPattern:
    """The rank ``scale * n + offset`` of a family instance."""

    scale: int
    offset: int

    def at(self, n: int) -> int:
        return self.scale * n + self.offset


@dataclasses.dataclass(frozen=True)
class ExpectedRow:
    """One row of the expected table.

    Attributes:
        name (str): Row label used in verification diffs (``"A2n -> Bn"``).
        source_family (str): Family of ``L``.
        source_rank (RankPattern): Rank of ``L`` in terms of ``n``.
        target_family (str): Family of ``J``.
        target_rank (RankPattern): Rank of ``J`` in terms of ``n``.
        n_min (int): First value of ``n``.
        n_max (int, optional): Last value of ``n``; open ended if None.
        fibers (str): Description of the fibers of ``f``.
        classes (int): Labeling classes of each pair that this row accounts for.
        identity (bool): The row stands for every pair ``(L, L)``.
    """

    name: str
    source_family: str = ""
    source_rank: RankPattern = RankPattern(0, 0)
    target_family: str = ""
    target_rank: RankPattern = RankPattern(0, 0)
    n_min: int = 1
    n_max: typing.Optional[int] = None
    fibers: str = ""
    classes: int = 1
    identity: bool = False

    def instantiate(self, max_rank: int) -> typing.List[Pair]:
        """Concrete pairs of this row with source rank at most ``max_rank``.

        Raises:
            InadmissibleSystemError: If an instance is not admissible.
            ConfigurationError: If the row has no upper bound on ``n`` while
                its source rank does not grow with ``n``.
        """
        if self.identity:
            return [(t, t) for t in rootsys.admissible_types(max_rank)]
        if self.n_max is None and self.source_rank.scale <= 0:
            raise exceptions.ConfigurationError(
                f"Row {self.name!r} needs n_max: its source rank is constant."
            )
        pairs = []
        n = self.n_min
        while self.n_max is None or n <= self.n_max:
            rank = self.source_rank.at(n)
            if rank > max_rank:
                break
            pairs.append(
                (
                    rootsys.SystemType(self.source_family, rank),
                    rootsys.SystemType(self.target_family, self.target_rank.at(n)),
                )
            )
            n += 1
        return pairs


@dataclasses.dataclass(frozen=True)
class ExpectedTable:
    """The transcribed list of pairs admitting surjective maps."""

    rows: typing.Tuple[ExpectedRow, ...]

    def instantiate(
        self, max_rank: int, include_identity: bool = False
    ) -> typing.Dict[Pair, str]:
        """Expected pairs up to ``max_rank``, each with the name of its row."""
        found: typing.Dict[Pair, str] = {}
        for row in self.rows:
            if row.identity and not include_identity:
                continue
            for pair in row.instantiate(max_rank):
                found.setdefault(pair, row.name)
        return found

    def class_counts(
        self, max_rank: int, include_identity: bool = False
    ) -> typing.Dict[Pair, int]:
        """Labeling classes expected per pair, summed over the rows naming it.

        Example:
            >>> table.class_counts(4)[(SystemType("D", 4), SystemType("B", 3))]
            2
        """
        counts: typing.Dict[Pair, int] = {}
        for row in self.rows:
            if row.identity and not include_identity:
                continue
            for pair in row.instantiate(max_rank):
                counts[pair] = counts.get(pair, 0) + row.classes
        return counts


@dataclasses.dataclass(frozen=True)
class VerificationReport:
    """Diff between found pairs and expected pairs.

    Attributes:
        missing (tuple): Expected pairs the search did not find, with rows.
        unexpected (tuple): Found pairs absent from the table.
        matched (tuple): Pairs on both sides.
        short (tuple): Matched pairs with fewer labeling classes than the
            table accounts for, as ``(pair, found, expected)``.
    """

    missing: typing.Tuple[typing.Tuple[Pair, str], ...]
    unexpected: typing.Tuple[Pair, ...]
    matched: typing.Tuple[Pair, ...]
    short: typing.Tuple[typing.Tuple[Pair, int, int], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.missing and not self.unexpected and not self.short

    def render_text(self) -> str:
        lines = [f"matched: {len(self.matched)}"]
        for (source, target), row in self.missing:
            lines.append(f"missing: {source} -> {target} (row {row!r})")
        for source, target in self.unexpected:
            lines.append(f"unexpected: {source} -> {target}")
        for (source, target), got, wanted in self.short:
            lines.append(f"classes: {source} -> {target} found {got} of {wanted}")
        lines.append("OK" if self.ok else "MISMATCH")
        return "\n".join(lines) + "\n"


def verify_against_expected(
    entries: typing.Iterable[ClassificationEntry],
    expected: ExpectedTable,
    max_rank: int = conf.HARD_RANK_CAP,
    include_identity: bool = False,
) -> VerificationReport:
    """Diff the found pairs of ``entries`` against ``expected``.

    Identity pairs take part only when ``include_identity`` is set. A matched
    pair is also reported when the search found fewer labeling classes than
    the rows naming it account for.
    """
    found = {
        entry.key: entry
        for entry in entries
        if entry.status == FOUND and (include_identity or not entry.identity)
    }
    wanted = expected.instantiate(max_rank, include_identity)
    counts = expected.class_counts(max_rank, include_identity)
    matched = sorted(set(found) & set(wanted))
    short = []
    for pair in matched:
        got = len(labeling_classes(found[pair].labelings))
        if got < counts[pair]:
            short.append((pair, got, counts[pair]))
    return VerificationReport(
        missing=tuple(sorted((pair, row) for pair, row in wanted.items() if pair not in found)),
        unexpected=tuple(sorted(set(found) - set(wanted))),
        matched=tuple(matched),
        short=tuple(short),
    )


def labeling_classes(
    labelings: typing.Sequence[dmap.Labeling],
) -> typing.List[typing.Tuple[dmap.Labeling, ...]]:
    """Group labelings up to precomposition with the source's standard involution.

    Example:
        >>> entry = classify_pair(SystemType("D", 4), SystemType("B", 3))
        >>> len(labeling_classes(entry.labelings))
        2
    """
    remaining = sorted(labelings)
    classes: typing.List[typing.Tuple[dmap.Labeling, ...]] = []
    while remaining:
        first = remaining.pop(0)
        involution = rootsys.standard_involution(rootsys.build_root_system(first.source))
        members = {first}
        if involution is not None:
            members.add(first.precompose(involution))
        remaining = [f for f in remaining if f not in members]
        classes.append(tuple(sorted(members & set(labelings) | {first})))
    return classes


@dataclasses.dataclass(frozen=True)
class Surjection:
    """Onto labelings carrying one extremal diagram onto another.

    Attributes:
        target (SystemType): Target system.
        node (int): Extremal target node.
        labelings (tuple): Labelings ``f`` with ``f(source node) = node``.
    """

    target: rootsys.SystemType
    node: int
    labelings: typing.Tuple[dmap.Labeling, ...]


def extremal_surjections(
    source: rootsys.SystemType,
    node: int,
    max_rank: int = conf.HARD_RANK_CAP,
    diagrams: typing.Optional[dmap.FundamentalDiagrams] = None,
) -> typing.List[Surjection]:
    """Extremal diagrams of smaller rank onto which ``fund:node`` of ``source`` surjects.

    Only onto labelings that send ``node`` to the target node count.

    Raises:
        NodeIndexError: If ``node`` is not a node of ``source``.
    """
    memo = diagrams if diagrams is not None else dmap.DIAGRAMS
    rs = rootsys.build_root_system(source)
    rootsys.check_node(rs, node)
    levels = memo.level_count(source, node)
    found: typing.List[Surjection] = []
    for target in rootsys.admissible_types(min(max_rank, source.rank - 1)):
        for b in sorted(rootsys.extremal_roots(rootsys.build_root_system(target))):
            if memo.level_count(target, b) != levels:
                continue
            maps = dmap.find_diagram_labelings(memo.get(source, node), memo.get(target, b))
            labelings = tuple(
                m.labeling
                for m in maps
                if m.surjective and m.labeling.is_onto() and m.labeling(node) == b
            )
            if labelings:
                found.append(Surjection(target, b, labelings))
    return found


"""Labelings between simple-root sets and the diagram maps they induce.

A labeling ``f`` sends source nodes to target nodes with no further
structure. Anchoring the top vertex on the top vertex, ``f`` induces at most
one vertex map between two Hasse diagrams: a source weight of depth ``k``
goes to the target weight of depth ``k'`` with ``k'[t] = sum(k[j] for f(j) =
t)``. The map exists when every such ``k'`` is a target vertex.

:class:`LabelingSearch` enumerates labelings in lexicographic order of their
image tuples and keeps those whose induced maps are surjective for every
extremal source node, pruning by level counts, level widths, the
extremal-to-extremal rule, onto-ness and missing images.

:func:`folding_labeling` quotients by automorphism orbits onto A 2n-1 to
C n, D n to B n-1, D4 to G2 and E6 to F4. Targets quoted elsewhere as
A 2n+1 to B n or D n to C n do not match these orbits and are not used;
where the two disagree the search result is authoritative.
"""

import dataclasses
import itertools
import logging
import threading
import typing

import hasse_maps.exceptions as exceptions
import hasse_maps.hasse as hasse
import hasse_maps.rootsys as rootsys
import hasse_maps.weights as weights

logger = logging.getLogger(__name__)

LEVEL_COUNT = "level-count"
LEVEL_WIDTH = "level-width"
EXTREMAL = "extremal"
NOT_ONTO = "not-onto"
MISSING_IMAGE = "missing-image"
NOT_SURJECTIVE = "not-surjective"

REASONS: typing.Tuple[str, ...] = (
    LEVEL_COUNT,
    LEVEL_WIDTH,
    EXTREMAL,
    NOT_ONTO,
    MISSING_IMAGE,
    NOT_SURJECTIVE,
)


@dataclasses.dataclass(frozen=True, order=True)
class Labeling:
    """A set-wise function from source nodes to target nodes.

    Attributes:
        source (SystemType): System of the domain nodes.
        target (SystemType): System of the image nodes.
        images (tuple): ``images[j - 1] = f(j)``, 1-based node indices.

    Example:
        >>> f = Labeling(SystemType("A", 3), SystemType("B", 2), (2, 1, 2))
        >>> f(3)
        2
        >>> f.push((1, 1, 1))
        (1, 2)
    """

    source: rootsys.SystemType
    target: rootsys.SystemType
    images: typing.Tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(self.images)
        if len(images) != self.source.rank:
            raise exceptions.LabelingError(
                f"Labeling from {self.source} needs {self.source.rank} images, "
                f"got {len(images)}."
            )
        for t in images:
            if isinstance(t, bool) or not isinstance(t, int):
                raise exceptions.LabelingError(f"Image {t!r} is not a node index.")
            if not 1 <= t <= self.target.rank:
                raise exceptions.LabelingError(
                    f"Image {t} out of range 1..{self.target.rank} for {self.target}."
                )
        object.__setattr__(self, "images", images)

    def __call__(self, j: int) -> int:
        return self.images[j - 1]

    def __str__(self) -> str:
        return f"{self.source}->{self.target} {list(self.images)}"

    @classmethod
    def identity(cls, t: rootsys.SystemType) -> "Labeling":
        return cls(t, t, tuple(range(1, t.rank + 1)))

    def push(self, depth: typing.Sequence[int]) -> typing.Tuple[int, ...]:
        """Image depth vector ``k'[t] = sum(k[j] for f(j) = t)``."""
        pushed = [0] * self.target.rank
        for j, k in enumerate(depth):
            pushed[self.images[j] - 1] += k
        return tuple(pushed)

    def fibers(self) -> typing.Dict[int, typing.Tuple[int, ...]]:
        """Preimage of every target node, including empty ones."""
        return {
            t: tuple(j for j, image in enumerate(self.images, 1) if image == t)
            for t in range(1, self.target.rank + 1)
        }

    def is_onto(self) -> bool:
        return len(set(self.images)) == self.target.rank

    def precompose(self, permutation: typing.Sequence[int]) -> "Labeling":
        """The labeling ``j -> f(permutation[j - 1])``."""
        return Labeling(
            self.source, self.target, tuple(self(p) for p in permutation)
        )


@dataclasses.dataclass(frozen=True)
class DiagramMap:
    """The vertex map ``T^f`` induced by a labeling.

    Attributes:
        labeling (Labeling): The labeling ``f``.
        source_diagram (HasseDiagram): Domain diagram.
        target_diagram (HasseDiagram): Codomain diagram.
        vertex_map (tuple): Target vertex index of every source vertex.
        surjective (bool): Whether every target vertex is hit.
    """

    labeling: Labeling
    source_diagram: hasse.HasseDiagram
    target_diagram: hasse.HasseDiagram
    vertex_map: typing.Tuple[int, ...]
    surjective: bool

    def validate(self) -> None:
        """Re-check the map from scratch.

        Raises:
            MapError: If an edge, the anchor, a level or the surjectivity flag
                is wrong.
        """
        src, tgt = self.source_diagram, self.target_diagram
        if len(self.vertex_map) != len(src.vertices):
            raise exceptions.MapError("Vertex map does not cover the source.")
        if self.vertex_map[src.top] != tgt.top:
            raise exceptions.MapError("The top vertex must map to the top vertex.")
        for i, image in enumerate(self.vertex_map):
            if src.level_of(i) != tgt.level_of(image):
                raise exceptions.MapError(
                    f"Vertex {i} on level {src.level_of(i)} maps to level "
                    f"{tgt.level_of(image)}."
                )
        target_edges = {(e.upper, e.lower, e.label) for e in tgt.edges}
        for edge in src.edges:
            image = (
                self.vertex_map[edge.upper],
                self.vertex_map[edge.lower],
                self.labeling(edge.label),
            )
            if image not in target_edges:
                raise exceptions.MapError(
                    f"Edge {edge.upper}->{edge.lower} labeled {edge.label} maps "
                    f"to non-edge {image[0]}->{image[1]} labeled {image[2]}."
                )
        if self.surjective != (len(set(self.vertex_map)) == len(tgt.vertices)):
            raise exceptions.MapError("Surjectivity flag is wrong.")


def _check_systems(
    f: Labeling, src: hasse.HasseDiagram, tgt: hasse.HasseDiagram
) -> None:
    if src.system.system_type != f.source or tgt.system.system_type != f.target:
        raise exceptions.LabelingError(
            f"Labeling {f.source}->{f.target} used between diagrams over "
            f"{src.system.system_type} and {tgt.system.system_type}."
        )


def first_missing_image(
    f: Labeling, src: hasse.HasseDiagram, tgt: hasse.HasseDiagram
) -> typing.Optional[int]:
    """Index of the first source vertex whose image is not a target vertex."""
    _check_systems(f, src, tgt)
    for i, v in enumerate(src.vertices):
        assert v.depth is not None
        if f.push(v.depth) not in tgt.index:
            return i
    return None


def induce_map(
    f: Labeling, src: hasse.HasseDiagram, tgt: hasse.HasseDiagram
) -> typing.Optional[DiagramMap]:
    """The diagram map induced by ``f`` with top mapped to top, if it exists.

    Args:
        f: Labeling from ``src``'s system to ``tgt``'s system.
        src: Source diagram.
        tgt: Target diagram; its highest weight receives ``src``'s.

    Returns:
        DiagramMap or None: ``None`` when some image depth vector is not a
        vertex of ``tgt``.

    Raises:
        LabelingError: If the systems of ``f`` and the diagrams disagree.
    """
    _check_systems(f, src, tgt)
    vertex_map = []
    for v in src.vertices:
        assert v.depth is not None
        image = tgt.index.get(f.push(v.depth))
        if image is None:
            return None
        vertex_map.append(image)
    return DiagramMap(
        labeling=f,
        source_diagram=src,
        target_diagram=tgt,
        vertex_map=tuple(vertex_map),
        surjective=len(set(vertex_map)) == len(tgt.vertices),
    )


class FundamentalDiagrams:
    """Memo of fundamental Hasse diagrams keyed by ``(system type, node)``.

    Each key is built at most once; concurrent callers asking for the same
    key wait on that key's lock.
    """

    def __init__(self) -> None:
        self._diagrams: typing.Dict[
            typing.Tuple[rootsys.SystemType, int], hasse.HasseDiagram
        ] = {}
        self._level_counts: typing.Dict[typing.Tuple[rootsys.SystemType, int], int] = {}
        self._locks: typing.Dict[typing.Tuple[rootsys.SystemType, int], threading.Lock] = {}
        self._guard = threading.Lock()

    def _lock(self, key: typing.Tuple[rootsys.SystemType, int]) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault(key, threading.Lock())

    def get(self, t: rootsys.SystemType, j: int) -> hasse.HasseDiagram:
        key = (t, j)
        found = self._diagrams.get(key)
        if found is not None:
            return found
        with self._lock(key):
            if key not in self._diagrams:
                rs = rootsys.build_root_system(t)
                logger.debug("Building Hasse diagram of %s fund:%d", t, j)
                self._diagrams[key] = hasse.build_hasse(
                    rs, weights.fundamental_weight(rs, j)
                )
            return self._diagrams[key]

    def level_count(self, t: rootsys.SystemType, j: int) -> int:
        """Level count from the closed form, without building the diagram."""
        key = (t, j)
        if key not in self._level_counts:
            rs = rootsys.build_root_system(t)
            self._level_counts[key] = hasse.predicted_level_count(
                rs, weights.fundamental_weight(rs, j)
            )
        return self._level_counts[key]

    def widths(self, t: rootsys.SystemType, j: int) -> typing.List[int]:
        return hasse.level_widths(self.get(t, j))


DIAGRAMS = FundamentalDiagrams()


@dataclasses.dataclass(frozen=True, order=True)
class Rejection:
    """Why a labeling prefix (or a single node assignment) was cut off.

    Attributes:
        prefix (tuple): Images assigned to nodes ``1..len(prefix)``.
        reason (str): One of :data:`REASONS`.
        detail (str): Human readable specifics.
    """

    prefix: typing.Tuple[int, ...]
    reason: str
    detail: str


@dataclasses.dataclass(frozen=True)
class SearchResult:
    """Outcome of a :class:`LabelingSearch`.

    Attributes:
        labelings (tuple): Accepted labelings in lexicographic order.
        witnesses (dict): For each labeling, the surjective map of every
            extremal source node, by node.
        rejections (tuple): Every pruning decision, in search order.
    """

    labelings: typing.Tuple[Labeling, ...]
    witnesses: typing.Dict[Labeling, typing.Dict[int, DiagramMap]]
    rejections: typing.Tuple[Rejection, ...]


def _support_groups(
    d: hasse.HasseDiagram,
) -> typing.Dict[int, typing.List[int]]:
    # Vertices grouped by the largest 0-based node index in their support.
    groups: typing.Dict[int, typing.List[int]] = {}
    for i, v in enumerate(d.vertices):
        assert v.depth is not None
        support = [j for j, k in enumerate(v.depth) if k]
        if support:
            groups.setdefault(support[-1], []).append(i)
    return groups


def _partial_image(
    depth: typing.Sequence[int], images: typing.Sequence[int], rank: int
) -> typing.Tuple[int, ...]:
    pushed = [0] * rank
    for j, t in enumerate(images):
        pushed[t - 1] += depth[j]
    return tuple(pushed)


class LabelingSearch:
    """Depth-first search for labelings surjective on every extremal diagram.

    Args:
        source: Source system type.
        target: Target system type.
        extremal_constraint: Require extremal source nodes to map to
            extremal target nodes.
        diagrams: Diagram memo; defaults to the module-wide one.

    Example:
        >>> search = LabelingSearch(SystemType("B", 3), SystemType("G", 2))
        >>> [f.images for f in search.run().labelings]
        [(1, 2, 1)]
    """

    def __init__(
        self,
        source: rootsys.SystemType,
        target: rootsys.SystemType,
        extremal_constraint: bool = True,
        diagrams: typing.Optional[FundamentalDiagrams] = None,
    ) -> None:
        self.source = rootsys.build_root_system(source)
        self.target = rootsys.build_root_system(target)
        self.extremal_constraint = extremal_constraint
        self.diagrams = diagrams if diagrams is not None else DIAGRAMS
        self._source_extremal = sorted(rootsys.extremal_roots(self.source))
        self._target_extremal = rootsys.extremal_roots(self.target)
        self._rejections: typing.List[Rejection] = []
        self._labelings: typing.List[Labeling] = []
        self._witnesses: typing.Dict[Labeling, typing.Dict[int, DiagramMap]] = {}
        self._groups: typing.Dict[int, typing.Dict[int, typing.List[int]]] = {}
        self._domains: typing.Dict[int, typing.List[int]] = {}

    def _reject(self, prefix: typing.Sequence[int], reason: str, detail: str) -> None:
        rejection = Rejection(tuple(prefix), reason, detail)
        logger.debug("%s->%s pruned %s", self.source, self.target, rejection)
        self._rejections.append(rejection)

    def domain(self, a: int) -> typing.List[int]:
        """Candidate images of the extremal source node ``a``."""
        s, t = self.source.system_type, self.target.system_type
        levels = self.diagrams.level_count(s, a)
        allowed = []
        for b in self.target.nodes:
            if self.extremal_constraint and b not in self._target_extremal:
                self._reject((), EXTREMAL, f"node {a} -> {b}: {b} is not extremal in {t}")
                continue
            other = self.diagrams.level_count(t, b)
            if other != levels:
                self._reject(
                    (),
                    LEVEL_COUNT,
                    f"node {a} -> {b}: {s} fund:{a} has {levels} levels, "
                    f"{t} fund:{b} has {other}",
                )
                continue
            wide = [
                level
                for level, (w_src, w_tgt) in enumerate(
                    zip(self.diagrams.widths(s, a), self.diagrams.widths(t, b)), 1
                )
                if w_tgt > w_src
            ]
            if wide:
                self._reject(
                    (),
                    LEVEL_WIDTH,
                    f"node {a} -> {b}: {t} fund:{b} is wider than {s} fund:{a} "
                    f"on level {wide[0]}",
                )
                continue
            allowed.append(b)
        return allowed

    def run(self) -> SearchResult:
        n, m = self.source.rank, self.target.rank
        if m > n:
            self._reject(
                (), NOT_ONTO, f"{self.target.system_type} has more nodes than {self.source.system_type}"
            )
            return self._result()
        for a in self._source_extremal:
            self._domains[a] = self.domain(a)
            if not self._domains[a]:
                return self._result()
            source_diagram = self.diagrams.get(self.source.system_type, a)
            self._groups[a] = _support_groups(source_diagram)
        self._extend([])
        return self._result()

    def _result(self) -> SearchResult:
        return SearchResult(
            labelings=tuple(self._labelings),
            witnesses=dict(self._witnesses),
            rejections=tuple(self._rejections),
        )

    def _extend(self, images: typing.List[int]) -> None:
        position = len(images)
        if position == self.source.rank:
            self._accept(images)
            return
        node = position + 1
        choices = self._domains.get(node, list(self.target.nodes))
        for t in choices:
            images.append(t)
            if self._admissible_prefix(images):
                self._extend(images)
            images.pop()

    def _admissible_prefix(self, images: typing.Sequence[int]) -> bool:
        n, m = self.source.rank, self.target.rank
        position = len(images) - 1
        unhit = m - len(set(images))
        if unhit > n - len(images):
            self._reject(images, NOT_ONTO, f"{unhit} target nodes left for {n - len(images)} source nodes")
            return False
        for a in self._source_extremal:
            if a - 1 > position:
                continue
            groups = self._groups[a]
            if a - 1 == position:
                pending = [i for g in range(position + 1) for i in groups.get(g, [])]
            else:
                pending = groups.get(position, [])
            if not pending:
                continue
            src = self.diagrams.get(self.source.system_type, a)
            tgt = self.diagrams.get(self.target.system_type, images[a - 1])
            for i in pending:
                depth = src.vertices[i].depth
                assert depth is not None
                image = _partial_image(depth, images, m)
                if image not in tgt.index:
                    self._reject(
                        images,
                        MISSING_IMAGE,
                        f"fund:{a} vertex k={list(depth)} has no image k={list(image)}",
                    )
                    return False
        return True

    def _accept(self, images: typing.Sequence[int]) -> None:
        f = Labeling(self.source.system_type, self.target.system_type, tuple(images))
        maps: typing.Dict[int, DiagramMap] = {}
        for a in self._source_extremal:
            induced = induce_map(
                f,
                self.diagrams.get(f.source, a),
                self.diagrams.get(f.target, f(a)),
            )
            if induced is None:
                self._reject(images, MISSING_IMAGE, f"fund:{a} has a missing image")
                return
            if not induced.surjective:
                self._reject(
                    images,
                    NOT_SURJECTIVE,
                    f"fund:{a} hits {len(set(induced.vertex_map))} of "
                    f"{len(induced.target_diagram.vertices)} vertices",
                )
                return
            maps[a] = induced
        self._labelings.append(f)
        self._witnesses[f] = maps


def find_surjective_labelings(
    src_sys: rootsys.SystemType,
    tgt_sys: rootsys.SystemType,
    constraint: bool = True,
) -> typing.List[Labeling]:
    """Labelings whose induced maps are surjective for every extremal node.

    For each extremal source node ``a`` the map goes from the diagram of
    ``fund:a`` to the diagram of ``fund:f(a)``. The result is sorted
    lexicographically and may be empty.
    """
    return list(LabelingSearch(src_sys, tgt_sys, constraint).run().labelings)


@dataclasses.dataclass(frozen=True)
class MapResult:
    """Induced maps between two chosen diagrams."""

    source_diagram: hasse.HasseDiagram
    target_diagram: hasse.HasseDiagram
    maps: typing.Tuple[DiagramMap, ...]


def find_diagram_labelings(
    src: hasse.HasseDiagram, tgt: hasse.HasseDiagram
) -> typing.List[DiagramMap]:
    """Every labeling whose induced map from ``src`` to ``tgt`` exists.

    Maps are returned in lexicographic order of their labelings, surjective
    or not.
    """
    s, t = src.system.system_type, tgt.system.system_type
    groups = _support_groups(src)
    found: typing.List[DiagramMap] = []

    def extend(images: typing.List[int]) -> None:
        position = len(images)
        if position == s.rank:
            induced = induce_map(Labeling(s, t, tuple(images)), src, tgt)
            if induced is not None:
                found.append(induced)
            return
        for image in range(1, t.rank + 1):
            images.append(image)
            if all(
                _partial_image(src.vertices[i].depth or (), images, t.rank) in tgt.index
                for i in groups.get(position, [])
            ):
                extend(images)
            images.pop()

    extend([])
    return found


def _folding_target(
    src_sys: rootsys.SystemType, blocks: int
) -> typing.Optional[rootsys.SystemType]:
    family, n = src_sys.family, src_sys.rank
    if family == "A" and n % 2 == 1 and blocks == (n + 1) // 2:
        return rootsys.SystemType("C", blocks)
    if family == "D" and blocks == n - 1:
        return rootsys.SystemType("B", n - 1)
    if src_sys == rootsys.SystemType("D", 4) and blocks == 2:
        return rootsys.SystemType("G", 2)
    if src_sys == rootsys.SystemType("E", 6) and blocks == 4:
        return rootsys.SystemType("F", 4)
    return None


def folding_labeling(
    src_sys: rootsys.SystemType,
    partition: typing.Iterable[typing.Iterable[int]],
) -> Labeling:
    """Quotient labeling of a simply laced system by automorphism orbits.

    The orbits of the automorphisms preserving every block must be the
    blocks themselves, and nodes in one block must be orthogonal. The
    folded Cartan matrix ``A'[I][J] = sum(A[i][j0] for i in I)`` is matched
    against the canonical target (A 2n-1 to C n, D n to B n-1, D4 by
    triality to G2, E6 to F4) by the first permutation that fits.

    Raises:
        FoldingError: If the partition is malformed, not automorphism
            induced, or has no canonical quotient.
        InadmissibleSystemError: If the quotient is not admissible (the A3
            flip would give C2).

    Example:
        >>> folding_labeling(SystemType("E", 6), [[1, 6], [3, 5], [4], [2]]).images
        (4, 1, 3, 2, 3, 4)
    """
    rs = rootsys.build_root_system(src_sys)
    blocks = sorted(tuple(sorted(block)) for block in partition)
    flat = sorted(j for block in blocks for j in block)
    if flat != list(rs.nodes) or any(not block for block in blocks):
        raise exceptions.FoldingError(
            f"{blocks} is not a partition of the nodes of {src_sys}."
        )
    if all(len(block) == 1 for block in blocks):
        return Labeling.identity(src_sys)
    stabilizer = [
        sigma
        for sigma in rootsys.automorphisms(rs)
        if all({sigma[j - 1] for j in block} == set(block) for block in blocks)
    ]
    for block in blocks:
        orbit = {sigma[block[0] - 1] for sigma in stabilizer}
        if orbit != set(block):
            raise exceptions.FoldingError(
                f"Block {list(block)} of {src_sys} is not an automorphism orbit."
            )
        for i, j in itertools.combinations(block, 2):
            if rs.entry(i, j) != 0:
                raise exceptions.FoldingError(
                    f"Nodes {i} and {j} of {src_sys} are joined; the quotient is "
                    "not a root system of the list."
                )
    target = _folding_target(src_sys, len(blocks))
    if target is None:
        raise exceptions.FoldingError(f"No canonical quotient of {src_sys} by {blocks}.")
    folded = [
        [sum(rs.entry(i, other[0]) for i in block) for other in blocks]
        for block in blocks
    ]
    tgt = rootsys.build_root_system(target)
    for permutation in itertools.permutations(tgt.nodes):
        if all(
            tgt.entry(permutation[a], permutation[b]) == folded[a][b]
            for a in range(len(blocks))
            for b in range(len(blocks))
        ):
            images = [0] * rs.rank
            for a, block in enumerate(blocks):
                for j in block:
                    images[j - 1] = permutation[a]
            return Labeling(src_sys, target, tuple(images))
    raise exceptions.FoldingError(
        f"Folded Cartan matrix of {src_sys} does not match {target}."
    )

"""Level-graded Hasse diagrams of weight sets.

Vertices are the weights of a :class:`~hasse_maps.weights.WeightSet` in its
frontier order; an edge ``upper -> lower`` labeled ``j`` joins two weights
whose depth vectors differ by the ``j``-th basis vector. Each weight is drawn
once whatever its multiplicity.

The adjoint diagram of G2 has 11 levels; the figure of 14 sometimes given
for it is not reproduced.
"""

import collections
import dataclasses
import functools
import typing

import networkx
import networkx.algorithms.isomorphism as isomorphism

import hasse_maps.exceptions as exceptions
import hasse_maps.rootsys as rootsys
import hasse_maps.weights as weights


@dataclasses.dataclass(frozen=True, order=True)
class Edge:
    """A labeled edge between two vertex indices.

    Attributes:
        upper (int): Index of the higher weight.
        lower (int): Index of the weight one simple root below.
        label (int): Node index ``j`` of the simple root ``alpha_j``.
    """

    upper: int
    lower: int
    label: int


@dataclasses.dataclass(frozen=True)
class HasseDiagram:
    """The Hasse diagram of an irreducible representation.

    Attributes:
        system (RootSystem): The ambient root system.
        highest (Weight): Highest weight (depth zero, level 1).
        vertices (tuple): Weights with depth vectors, in frontier order.
        edges (tuple): Sorted :class:`Edge` records.

    Example:
        >>> g2 = rootsys.build_root_system(rootsys.SystemType("G", 2))
        >>> d = build_hasse(g2, weights.fundamental_weight(g2, 1))
        >>> [e.label for e in d.edges]
        [1, 2, 1, 1, 2, 1]
    """

    system: rootsys.RootSystem
    highest: weights.Weight
    vertices: typing.Tuple[weights.Weight, ...]
    edges: typing.Tuple[Edge, ...]

    @functools.cached_property
    def index(self) -> typing.Dict[weights.Depth, int]:
        """Vertex index by depth vector."""
        return {v.depth: i for i, v in enumerate(self.vertices)}

    @functools.cached_property
    def levels(self) -> typing.Dict[int, typing.List[int]]:
        """Vertex indices grouped by level, levels ascending."""
        grouped: typing.Dict[int, typing.List[int]] = {}
        for i in range(len(self.vertices)):
            grouped.setdefault(self.level_of(i), []).append(i)
        return dict(sorted(grouped.items()))

    @functools.cached_property
    def down(self) -> typing.Dict[int, typing.List[Edge]]:
        """Outgoing (downward) edges per vertex index."""
        found: typing.Dict[int, typing.List[Edge]] = {
            i: [] for i in range(len(self.vertices))
        }
        for edge in self.edges:
            found[edge.upper].append(edge)
        return found

    def level_of(self, i: int) -> int:
        level = self.vertices[i].level
        if level is None:
            raise exceptions.DiagramError(f"Vertex {i} has no depth vector.")
        return level

    @property
    def top(self) -> int:
        return 0

    @property
    def bottom(self) -> int:
        return len(self.vertices) - 1

    def to_networkx(self) -> networkx.DiGraph:
        """Directed graph with ``depth``/``labels``/``level`` on vertices and ``label`` on edges."""
        graph = networkx.DiGraph()
        for i, v in enumerate(self.vertices):
            graph.add_node(i, depth=v.depth, labels=v.labels, level=self.level_of(i))
        for edge in self.edges:
            graph.add_edge(edge.upper, edge.lower, label=edge.label)
        return graph

    def validate(self) -> None:
        """Check every structural invariant.

        Raises:
            DiagramError: On the first violated invariant.
        """
        n = self.system.rank
        if not self.vertices:
            raise exceptions.DiagramError("A Hasse diagram needs vertices.")
        if self.vertices[0].depth != (0,) * n:
            raise exceptions.DiagramError("Vertex 0 must be the highest weight.")
        if self.vertices[0].labels != self.highest.labels:
            raise exceptions.DiagramError("Vertex 0 does not carry the highest weight.")
        if len(self.index) != len(self.vertices):
            raise exceptions.DiagramError("Two vertices share a depth vector.")
        for v in self.vertices:
            expected = _labels_at(self.system, self.highest, v.depth)
            if v.labels != expected:
                raise exceptions.DiagramError(
                    f"Vertex k={list(v.depth)} has labels {list(v.labels)}, "
                    f"expected {list(expected)}."
                )
        expected_edges = _edges_between(self.system, self.vertices, self.index)
        if tuple(sorted(self.edges)) != expected_edges:
            raise exceptions.DiagramError(
                "Edges do not match the simple-root differences of the vertices."
            )
        levels = self.levels
        first, last = min(levels), max(levels)
        if first != 1 or len(levels[first]) != 1:
            raise exceptions.DiagramError("Level 1 must hold exactly one vertex.")
        if len(levels[last]) != 1:
            raise exceptions.DiagramError(
                f"Bottom level {last} holds {len(levels[last])} vertices."
            )
        if not networkx.is_weakly_connected(self.to_networkx()):
            raise exceptions.DiagramError("The diagram is not connected.")

    @classmethod
    def from_parts(
        cls,
        system: rootsys.RootSystem,
        highest: weights.Weight,
        depths: typing.Sequence[typing.Sequence[int]],
        edges: typing.Iterable[typing.Tuple[int, int, int]],
    ) -> "HasseDiagram":
        """Rebuild and validate a diagram from depth vectors and edge triples."""
        vertices = tuple(
            weights.Weight(_labels_at(system, highest, tuple(k)), depth=tuple(k))
            for k in depths
        )
        diagram = cls(
            system=system,
            highest=weights.Weight(highest.labels, depth=(0,) * system.rank),
            vertices=vertices,
            edges=tuple(sorted(Edge(*e) for e in edges)),
        )
        diagram.validate()
        return diagram


def _labels_at(
    rs: rootsys.RootSystem, highest: weights.Weight, depth: weights.Depth
) -> weights.Labels:
    return tuple(
        highest.labels[i] - sum(rs.cartan[i][j] * depth[j] for j in range(rs.rank))
        for i in range(rs.rank)
    )


def _edges_between(
    rs: rootsys.RootSystem,
    vertices: typing.Sequence[weights.Weight],
    index: typing.Mapping[weights.Depth, int],
) -> typing.Tuple[Edge, ...]:
    found = []
    for lower, v in enumerate(vertices):
        assert v.depth is not None
        for j in range(rs.rank):
            if v.depth[j] == 0:
                continue
            above = v.depth[:j] + (v.depth[j] - 1,) + v.depth[j + 1 :]
            if above in index:
                found.append(Edge(index[above], lower, j + 1))
    return tuple(sorted(found))


def build_hasse(rs: rootsys.RootSystem, highest: weights.Weight) -> HasseDiagram:
    """Build the Hasse diagram of the representation with highest weight ``highest``.

    Raises:
        NonDominantWeightError: If ``highest`` is not dominant or is zero.
    """
    members = weights.weight_set(rs, highest).members
    index = {v.depth: i for i, v in enumerate(members)}
    return HasseDiagram(
        system=rs,
        highest=members[0],
        vertices=members,
        edges=_edges_between(rs, members, index),
    )


def level_count(d: HasseDiagram) -> int:
    return max(d.levels)


def out_degree_profile(d: HasseDiagram) -> typing.Dict[int, typing.List[int]]:
    """Per level, the sorted downward degrees of its vertices.

    Example:
        >>> a1 = rootsys.build_root_system(rootsys.SystemType("A", 1))
        >>> out_degree_profile(build_hasse(a1, weights.fundamental_weight(a1, 1)))
        {1: [1], 2: [0]}
    """
    return {
        level: sorted(len(d.down[i]) for i in members)
        for level, members in d.levels.items()
    }


def level_widths(d: HasseDiagram) -> typing.List[int]:
    """Number of vertices on each level, top first."""
    counts = collections.Counter(d.level_of(i) for i in range(len(d.vertices)))
    return [counts[level] for level in range(1, level_count(d) + 1)]


def predicted_level_count(rs: rootsys.RootSystem, highest: weights.Weight) -> int:
    """``1 + height(highest - w0(highest))``, without building the diagram."""
    low = weights.lowest_weight(rs, highest)
    assert low.depth is not None
    return 1 + sum(low.depth)


def is_dual(
    d: HasseDiagram, other: HasseDiagram, relabel: typing.Sequence[int]
) -> bool:
    """Whether ``d`` with reversed edges matches ``other`` after relabeling.

    Edge label ``j`` of ``d`` is read as ``relabel[j - 1]``.
    """
    reversed_graph = networkx.DiGraph()
    reversed_graph.add_nodes_from(range(len(d.vertices)))
    for edge in d.edges:
        reversed_graph.add_edge(edge.lower, edge.upper, label=relabel[edge.label - 1])
    return networkx.is_isomorphic(
        reversed_graph,
        other.to_networkx(),
        edge_match=isomorphism.categorical_edge_match("label", None),
    )


def _vertex_id(v: weights.Weight) -> str:
    assert v.depth is not None
    return '"k=[' + ",".join(str(x) for x in v.depth) + ']"'


def export_dot(d: HasseDiagram) -> str:
    """Render ``d`` as a DOT digraph.

    Vertices are named by depth vector and labeled with Dynkin labels, each
    level is a ``rank=same`` subgraph and edges carry the node index. The
    text depends only on the diagram.
    """
    lines = [
        f'digraph "{d.system.system_type} {d.highest}" {{',
        "  rankdir=TB;",
        "  node [shape=box];",
    ]
    for level, members in d.levels.items():
        ids = " ".join(_vertex_id(d.vertices[i]) + ";" for i in members)
        lines.append(f'  subgraph "level_{level}" {{ rank=same; {ids} }}')
    for v in d.vertices:
        lines.append(f'  {_vertex_id(v)} [label="{v}"];')
    for edge in d.edges:
        lines.append(
            f"  {_vertex_id(d.vertices[edge.upper])} -> "
            f'{_vertex_id(d.vertices[edge.lower])} [label="{edge.label}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"

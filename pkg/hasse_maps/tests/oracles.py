"""Slow, independent reference computations used by the test suite."""

import itertools
import typing

import hasse_maps.hasse as hasse
import hasse_maps.rootsys as rootsys
import hasse_maps.weights as weights


def edge_compatible_maps(
    src: hasse.HasseDiagram,
    tgt: hasse.HasseDiagram,
    images: typing.Sequence[int],
    anchor: typing.Optional[int] = None,
) -> typing.Iterator[typing.Tuple[int, ...]]:
    """Every vertex map sending each ``j``-edge to an ``images[j - 1]``-edge.

    Maps are not required to send top to top unless ``anchor`` is given.
    """
    target_edges = {(e.upper, e.lower, e.label) for e in tgt.edges}
    incident: typing.Dict[int, typing.List[hasse.Edge]] = {
        i: [] for i in range(len(src.vertices))
    }
    for edge in src.edges:
        incident[max(edge.upper, edge.lower)].append(edge)
    assignment: typing.List[int] = []

    def extend() -> typing.Iterator[typing.Tuple[int, ...]]:
        i = len(assignment)
        if i == len(src.vertices):
            yield tuple(assignment)
            return
        choices = [anchor] if i == src.top and anchor is not None else range(len(tgt.vertices))
        for image in choices:
            assignment.append(image)
            if all(
                (assignment[e.upper], assignment[e.lower], images[e.label - 1]) in target_edges
                for e in incident[i]
            ):
                yield from extend()
            assignment.pop()

    yield from extend()


def has_surjective_map(
    src: hasse.HasseDiagram, tgt: hasse.HasseDiagram, images: typing.Sequence[int]
) -> bool:
    return any(
        len(set(g)) == len(tgt.vertices)
        for g in edge_compatible_maps(src, tgt, images)
    )


def saturated_labels(
    rs: rootsys.RootSystem, highest: weights.Weight
) -> typing.Set[weights.Labels]:
    """Union of the Weyl orbits of dominant weights below ``highest``.

    Candidates ``highest - A c`` range over a box bounded by the depth of
    the lowest weight; dominance is decided by the rational solve.
    """
    low = weights.lowest_weight(rs, highest)
    assert low.depth is not None
    bound = max(low.depth)
    found: typing.Set[weights.Labels] = set()
    for c in itertools.product(range(bound + 1), repeat=rs.rank):
        mu = weights.Weight(
            tuple(
                highest.labels[i] - sum(rs.cartan[i][k] * c[k] for k in range(rs.rank))
                for i in range(rs.rank)
            )
        )
        if weights.is_dominant(rs, mu) and weights.dominance_leq(rs, mu, highest):
            found.update(w.labels for w in weights.weyl_orbit(rs, mu))
    return found


def root_labels(rs: rootsys.RootSystem, root: rootsys.RootVector) -> weights.Labels:
    """Dynkin labels of a root given in simple-root coordinates."""
    return tuple(
        sum(rs.cartan[i][k] * root[k] for k in range(rs.rank)) for i in range(rs.rank)
    )

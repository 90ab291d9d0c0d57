"""Weight lattice arithmetic and weight sets of irreducible representations.

Weights are stored by their Dynkin labels ``(<chi, alpha_1>, ...)``. Inside a
:class:`WeightSet` every member also carries its depth vector ``k`` with
``chi = lambda - sum(k_j alpha_j)`` for the highest weight ``lambda``; the
depth is the member's identity and the labels are derived from it.

The set is built level by level. A member ``chi`` of the current frontier
spawns ``chi - alpha_j`` when ``p + <chi, alpha_j> >= 1``, where ``p`` counts
how far the ``alpha_j``-string through ``chi`` already reaches upward. Every
``chi + t alpha_j`` with ``t > 0`` sits on a strictly shallower level, so the
members needed for ``p`` are always constructed before ``chi`` is expanded.

Multiplicities are not computed.
"""

import dataclasses
import functools
import typing

import sympy

import hasse_maps.exceptions as exceptions
import hasse_maps.rootsys as rootsys

Labels = typing.Tuple[int, ...]
Depth = typing.Tuple[int, ...]


@dataclasses.dataclass(frozen=True)
class Weight:
    """A weight given by its Dynkin labels.

    Attributes:
        labels (tuple): ``<chi, alpha_i>`` for ``i = 1..rank``.
        depth (tuple, optional): Simple-root coefficients of
            ``highest - chi`` when the weight belongs to a weight set. It does
            not take part in equality.

    Example:
        >>> Weight((1, 0)) == Weight((1, 0), depth=(0, 0))
        True
    """

    labels: Labels
    depth: typing.Optional[Depth] = dataclasses.field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))
        if self.depth is not None:
            depth = tuple(int(x) for x in self.depth)
            if len(depth) != len(self.labels) or min(depth, default=0) < 0:
                raise exceptions.WeightError(
                    f"Depth {depth} does not fit labels {self.labels}."
                )
            object.__setattr__(self, "depth", depth)

    @property
    def level(self) -> typing.Optional[int]:
        """``1 + sum(depth)``, or ``None`` without a depth."""
        if self.depth is None:
            return None
        return 1 + sum(self.depth)

    def __str__(self) -> str:
        return "[" + ",".join(str(x) for x in self.labels) + "]"


def fundamental_weight(rs: rootsys.RootSystem, j: int) -> Weight:
    """The fundamental weight dual to ``alpha_j``.

    Raises:
        NodeIndexError: If ``j`` is out of range.
    """
    rootsys.check_node(rs, j)
    return Weight(tuple(rootsys.D_SIGMA * int(i == j) for i in rs.nodes))


def simple_root_weight(rs: rootsys.RootSystem, j: int) -> Weight:
    """The simple root ``alpha_j`` as a weight (column ``j`` of ``A``)."""
    return Weight(rs.column(j))


def is_dominant(rs: rootsys.RootSystem, chi: Weight) -> bool:
    rootsys.check_shape(rs, chi)
    return all(x >= 0 for x in chi.labels)


def root_coordinates(
    rs: rootsys.RootSystem, chi: Weight
) -> typing.Tuple[sympy.Rational, ...]:
    """Coordinates of ``chi`` in the simple-root basis, as exact rationals."""
    rootsys.check_shape(rs, chi)
    solution = sympy.Matrix(rs.cartan).LUsolve(sympy.Matrix(chi.labels))
    return tuple(sympy.Rational(c) for c in solution)


def dominance_leq(rs: rootsys.RootSystem, psi: Weight, chi: Weight) -> bool:
    """Whether ``psi <= chi`` in the dominance order.

    True exactly when ``chi - psi`` has non-negative integer coordinates in
    the simple roots. Incomparable pairs give ``False`` both ways.

    Example:
        >>> a2 = rootsys.build_root_system(rootsys.SystemType("A", 2))
        >>> dominance_leq(a2, Weight((1, 0)), Weight((0, 1)))
        False
    """
    rootsys.check_shape(rs, psi)
    rootsys.check_shape(rs, chi)
    diff = Weight(tuple(c - p for c, p in zip(chi.labels, psi.labels)))
    return all(c.is_integer and c >= 0 for c in root_coordinates(rs, diff))


@dataclasses.dataclass(frozen=True)
class WeightSet:
    """The weights of the irreducible representation with a given highest weight.

    Members are ordered by level and, within a level, by depth vector.

    Attributes:
        system (RootSystem): The ambient root system.
        highest (Weight): The highest weight, with zero depth.
        members (tuple): Every weight, each with its depth vector.
    """

    system: rootsys.RootSystem
    highest: Weight
    members: typing.Tuple[Weight, ...]

    @functools.cached_property
    def by_depth(self) -> typing.Dict[Depth, Weight]:
        return {chi.depth: chi for chi in self.members}

    @functools.cached_property
    def label_set(self) -> typing.FrozenSet[Labels]:
        return frozenset(chi.labels for chi in self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, chi: object) -> bool:
        return isinstance(chi, Weight) and chi.labels in self.label_set

    @property
    def lowest(self) -> Weight:
        return self.members[-1]

    def is_weyl_invariant(self) -> bool:
        """Whether every simple reflection maps the set into itself."""
        return all(
            rootsys.simple_reflection(self.system, j, chi).labels in self.label_set
            for chi in self.members
            for j in self.system.nodes
        )

    def has_unbroken_strings(self) -> bool:
        """Whether every ``alpha_j``-string through a member is an interval."""
        for j in range(self.system.rank):
            lines: typing.Dict[Depth, typing.List[int]] = {}
            for k in self.by_depth:
                lines.setdefault(k[:j] + k[j + 1 :], []).append(k[j])
            for positions in lines.values():
                if max(positions) - min(positions) + 1 != len(positions):
                    return False
        return True


def weight_set(rs: rootsys.RootSystem, highest: Weight) -> WeightSet:
    """Compute the weight set of the representation with highest weight ``highest``.

    Args:
        rs: The root system.
        highest: A dominant, nonzero weight.

    Returns:
        WeightSet: The saturated set generated by ``highest``.

    Raises:
        WeightError: If the label vector has the wrong length.
        NonDominantWeightError: If a label is negative or all are zero.

    Example:
        >>> g2 = rootsys.build_root_system(rootsys.SystemType("G", 2))
        >>> len(weight_set(g2, fundamental_weight(g2, 1)))
        7
    """
    rootsys.check_shape(rs, highest)
    if not is_dominant(rs, highest):
        raise exceptions.NonDominantWeightError(
            f"Highest weight {highest} of {rs.system_type} has a negative label."
        )
    if not any(highest.labels):
        raise exceptions.NonDominantWeightError(
            f"Highest weight of {rs.system_type} must be nonzero."
        )
    n = rs.rank
    columns = [rs.column(j) for j in rs.nodes]
    top = Weight(highest.labels, depth=(0,) * n)
    built: typing.Dict[Depth, Weight] = {top.depth: top}
    ordered: typing.List[Weight] = [top]
    frontier: typing.List[Weight] = [top]
    while frontier:
        spawned: typing.Dict[Depth, Weight] = {}
        for chi in frontier:
            assert chi.depth is not None
            for j in range(n):
                p = 0
                while True:
                    upper = list(chi.depth)
                    upper[j] -= p + 1
                    if upper[j] < 0 or tuple(upper) not in built:
                        break
                    p += 1
                if p + chi.labels[j] < 1:
                    continue
                child = list(chi.depth)
                child[j] += 1
                key = tuple(child)
                if key not in spawned:
                    spawned[key] = Weight(
                        tuple(x - c for x, c in zip(chi.labels, columns[j])),
                        depth=key,
                    )
        frontier = [spawned[key] for key in sorted(spawned)]
        built.update(spawned)
        ordered.extend(frontier)
    return WeightSet(system=rs, highest=top, members=tuple(ordered))


def lowest_weight(rs: rootsys.RootSystem, highest: Weight) -> Weight:
    """The lowest weight ``w0(highest)`` with its depth below ``highest``.

    Reflects in the first node with a positive label until none is left.
    """
    rootsys.check_shape(rs, highest)
    if not is_dominant(rs, highest):
        raise exceptions.NonDominantWeightError(
            f"Weight {highest} of {rs.system_type} is not dominant."
        )
    chi = Weight(highest.labels, depth=(0,) * rs.rank)
    while True:
        positive = [j for j in rs.nodes if chi.labels[j - 1] > 0]
        if not positive:
            return chi
        chi = rootsys.simple_reflection(rs, positive[0], chi)


def weyl_orbit(rs: rootsys.RootSystem, chi: Weight) -> typing.List[Weight]:
    """The Weyl group orbit of ``chi``, sorted by labels, without depths."""
    rootsys.check_shape(rs, chi)
    seen: typing.Set[Labels] = {chi.labels}
    pending = [Weight(chi.labels)]
    while pending:
        current = pending.pop()
        for j in rs.nodes:
            image = rootsys.simple_reflection(rs, j, current)
            if image.labels not in seen:
                seen.add(image.labels)
                pending.append(image)
    return [Weight(labels) for labels in sorted(seen)]


@functools.lru_cache(maxsize=None)
def _opposition(t: rootsys.SystemType) -> typing.Tuple[int, ...]:
    rs = rootsys.build_root_system(t)
    images = []
    for j in rs.nodes:
        low = lowest_weight(rs, fundamental_weight(rs, j))
        images.append(1 + [-x for x in low.labels].index(1))
    return tuple(images)


def opposition_involution(rs: rootsys.RootSystem) -> typing.Tuple[int, ...]:
    """Node permutation ``j -> i`` with ``-w0(varpi_j) = varpi_i``."""
    return _opposition(rs.system_type)

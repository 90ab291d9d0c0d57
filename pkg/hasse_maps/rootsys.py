"""Irreducible reduced root systems of types A to G.

Nodes are numbered the Bourbaki way (1..rank) for every family. The Cartan
matrix is stored with ``A[i][j] = <alpha_j, alpha_i^v>``, so subtracting the
simple root ``alpha_j`` from a weight subtracts column ``j`` of ``A`` from its
Dynkin-label vector. Everything is integral; the ``d_sigma`` factor of
non-reduced systems is the constant 1 here.

Example:
    >>> rs = build_root_system(SystemType("G", 2))
    >>> rs.cartan
    ((2, -3), (-1, 2))
    >>> [height(r) for r in positive_roots(rs)]
    [1, 1, 2, 3, 4, 5]
"""

import dataclasses
import functools
import math
import re
import typing

import networkx
import networkx.algorithms.isomorphism as isomorphism
import sympy

import hasse_maps.exceptions as exceptions

if typing.TYPE_CHECKING:
    import hasse_maps.weights as weights

FAMILIES: typing.Tuple[str, ...] = ("A", "B", "C", "D", "E", "F", "G")

# d_sigma of a reduced system; BC systems are out of scope.
D_SIGMA: int = 1

RootVector = typing.Tuple[int, ...]

_TOKEN = re.compile(r"^\s*([A-Ga-g])\s*_?\s*(\d+)\s*$")


def _is_admissible(family: str, rank: int) -> bool:
    if family == "A":
        return rank >= 1
    if family == "B":
        return rank >= 2
    if family == "C":
        return rank >= 3
    if family == "D":
        return rank >= 4
    if family == "E":
        return rank in (6, 7, 8)
    if family == "F":
        return rank == 4
    if family == "G":
        return rank == 2
    return False


@dataclasses.dataclass(frozen=True, order=True)
class SystemType:
    """Type of an irreducible reduced root system.

    Only the canonical, non-redundant list is admissible: A n>=1, B n>=2,
    C n>=3, D n>=4, E n in {6,7,8}, F4 and G2. Low-rank coincidences
    (C2 = B2, D3 = A3, B1 = A1) exist only under their canonical name.

    Attributes:
        family (str): One of ``"A"`` to ``"G"``.
        rank (int): Number of simple roots.

    Example:
        >>> SystemType.parse("E6")
        SystemType(family='E', rank=6)
        >>> str(SystemType("B", 3))
        'B3'
    """

    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise exceptions.InadmissibleSystemError(
                f"Unknown family {self.family!r}; expected one of "
                f"{', '.join(FAMILIES)}."
            )
        if isinstance(self.rank, bool) or not isinstance(self.rank, int):
            raise exceptions.InadmissibleSystemError(
                f"Rank must be an integer, got {self.rank!r}."
            )
        if not _is_admissible(self.family, self.rank):
            raise exceptions.InadmissibleSystemError(
                f"{self.family}{self.rank} is not admissible: ranks are "
                "A n>=1, B n>=2, C n>=3, D n>=4, E 6..8, F 4, G 2."
            )

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, token: str) -> "SystemType":
        """Parse a token such as ``"G2"``, ``"e8"`` or ``"A_6"``.

        Raises:
            InadmissibleSystemError: If the token is malformed or names an
                inadmissible system.
        """
        match = _TOKEN.match(token)
        if match is None:
            raise exceptions.InadmissibleSystemError(
                f"Cannot parse root system token {token!r}."
            )
        return cls(match.group(1).upper(), int(match.group(2)))


def admissible_types(max_rank: int) -> typing.List[SystemType]:
    """Return every admissible system type of rank at most ``max_rank``.

    The list is sorted by family and then rank.
    """
    found: typing.List[SystemType] = []
    for family in FAMILIES:
        for rank in range(1, max_rank + 1):
            if _is_admissible(family, rank):
                found.append(SystemType(family, rank))
    return found


@dataclasses.dataclass(frozen=True)
class RootSystem:
    """An irreducible reduced root system with exact integer data.

    Instances are produced by :func:`build_root_system` and never mutated.

    Attributes:
        system_type (SystemType): Family and rank.
        cartan (tuple): ``rank x rank`` Cartan matrix, ``A[i][j] =
            <alpha_j, alpha_i^v>`` (0-based storage, 1-based API).
        positive_roots (tuple): Positive roots in simple-root coordinates,
            sorted by height, earlier simple roots first within a height.
        adjacency (tuple): Dynkin graph edges ``(i, j)`` with ``i < j``.
    """

    system_type: SystemType
    cartan: typing.Tuple[typing.Tuple[int, ...], ...]
    positive_roots: typing.Tuple[RootVector, ...]
    adjacency: typing.Tuple[typing.Tuple[int, int], ...]

    @property
    def rank(self) -> int:
        return self.system_type.rank

    @property
    def nodes(self) -> range:
        return range(1, self.rank + 1)

    def entry(self, i: int, j: int) -> int:
        """Return ``A[i][j]`` for 1-based node indices."""
        return self.cartan[i - 1][j - 1]

    def column(self, j: int) -> typing.Tuple[int, ...]:
        """Dynkin labels of the simple root ``alpha_j``."""
        check_node(self, j)
        return tuple(row[j - 1] for row in self.cartan)

    def neighbors(self, j: int) -> typing.Tuple[int, ...]:
        check_node(self, j)
        return tuple(
            sorted(
                b if a == j else a for a, b in self.adjacency if j in (a, b)
            )
        )

    def degree(self, j: int) -> int:
        return len(self.neighbors(j))

    def __str__(self) -> str:
        return str(self.system_type)


def check_node(rs: RootSystem, j: int) -> None:
    """Raise :class:`NodeIndexError` unless ``1 <= j <= rank``."""
    if isinstance(j, bool) or not isinstance(j, int) or not 1 <= j <= rs.rank:
        raise exceptions.NodeIndexError(
            f"Node index {j!r} out of range 1..{rs.rank} for {rs.system_type}."
        )


def check_shape(rs: RootSystem, chi: "weights.Weight") -> None:
    """Raise :class:`WeightError` unless ``chi`` has one label per node."""
    if len(chi.labels) != rs.rank:
        raise exceptions.WeightError(
            f"Weight {chi} has {len(chi.labels)} labels, {rs.system_type} "
            f"needs {rs.rank}."
        )


def _cartan_matrix(t: SystemType) -> typing.List[typing.List[int]]:
    n = t.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i: int, j: int, a_ij: int = -1, a_ji: int = -1) -> None:
        a[i - 1][j - 1] = a_ij
        a[j - 1][i - 1] = a_ji

    if t.family in ("A", "B", "C"):
        for i in range(1, n - 1):
            link(i, i + 1)
        if n > 1:
            if t.family == "A":
                link(n - 1, n)
            elif t.family == "B":
                link(n - 1, n, -1, -2)
            else:
                link(n - 1, n, -2, -1)
    elif t.family == "D":
        for i in range(1, n - 1):
            link(i, i + 1)
        link(n - 2, n)
    elif t.family == "E":
        link(1, 3)
        link(2, 4)
        for i in range(3, n):
            link(i, i + 1)
    elif t.family == "F":
        link(1, 2)
        link(2, 3, -1, -2)
        link(3, 4)
    elif t.family == "G":
        link(1, 2, -3, -1)
    return a


def _enumerate_positive_roots(
    cartan: typing.Sequence[typing.Sequence[int]],
) -> typing.Tuple[RootVector, ...]:
    # Closure by root strings: beta + alpha_j is a root iff the
    # alpha_j-string through beta continues upward (q > 0).
    n = len(cartan)
    basis = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    found: typing.Set[RootVector] = set(basis)
    level: typing.List[RootVector] = sorted(found)
    while level:
        following: typing.Set[RootVector] = set()
        for beta in level:
            for j in range(n):
                pair = sum(beta[k] * cartan[j][k] for k in range(n))
                p = 0
                while True:
                    lower = list(beta)
                    lower[j] -= p + 1
                    if tuple(lower) not in found:
                        break
                    p += 1
                if p - pair > 0:
                    raised = list(beta)
                    raised[j] += 1
                    following.add(tuple(raised))
        following -= found
        found |= following
        level = sorted(following)
    return tuple(sorted(found, key=_root_order))


def _root_order(root: RootVector) -> typing.Tuple[int, typing.Tuple[int, ...]]:
    return sum(root), tuple(-c for c in root)


@functools.lru_cache(maxsize=None)
def build_root_system(t: SystemType) -> RootSystem:
    """Build the root system of an admissible type.

    Args:
        t: The system type. Its constructor already rejects inadmissible
            (family, rank) pairs.

    Returns:
        RootSystem: Cartan matrix, positive roots and Dynkin adjacency.
        Construction is deterministic and cached per type.

    Example:
        >>> len(positive_roots(build_root_system(SystemType("E", 8))))
        120
    """
    if not isinstance(t, SystemType):
        raise exceptions.InadmissibleSystemError(
            f"Expected a SystemType, got {t!r}."
        )
    cartan = _cartan_matrix(t)
    adjacency = tuple(
        (i + 1, j + 1)
        for i in range(t.rank)
        for j in range(i + 1, t.rank)
        if cartan[i][j] != 0
    )
    return RootSystem(
        system_type=t,
        cartan=tuple(tuple(row) for row in cartan),
        positive_roots=_enumerate_positive_roots(cartan),
        adjacency=adjacency,
    )


def positive_roots(rs: RootSystem) -> typing.List[RootVector]:
    """Positive roots of ``rs`` sorted by height, each exactly once."""
    return list(rs.positive_roots)


def height(root: RootVector) -> int:
    return sum(root)


def highest_root(rs: RootSystem) -> RootVector:
    return rs.positive_roots[-1]


def pairing(rs: RootSystem, chi: "weights.Weight", j: int) -> int:
    """Return ``<chi, alpha_j>``, the ``j``-th Dynkin label of ``chi``.

    Raises:
        NodeIndexError: If ``j`` is out of range.
        WeightError: If ``chi`` does not have ``rank`` labels.
    """
    check_node(rs, j)
    check_shape(rs, chi)
    return chi.labels[j - 1]


def extremal_roots(rs: RootSystem) -> typing.FrozenSet[int]:
    """Nodes of Dynkin degree exactly one.

    For rank one the single node is returned so that statements quantified
    over extremal roots stay meaningful.
    """
    if rs.rank == 1:
        return frozenset({1})
    return frozenset(j for j in rs.nodes if rs.degree(j) == 1)


def simple_reflection(
    rs: RootSystem, j: int, chi: "weights.Weight"
) -> "weights.Weight":
    """Apply ``r_j(chi) = chi - <chi, alpha_j> alpha_j``.

    A depth vector on ``chi`` is carried along (``depth[j]`` grows by the
    label); it is dropped if it would turn negative.

    Raises:
        NodeIndexError: If ``j`` is out of range.
        WeightError: If ``chi`` does not have ``rank`` labels.
    """
    label = pairing(rs, chi, j)
    column = rs.column(j)
    labels = tuple(x - label * c for x, c in zip(chi.labels, column))
    depth = chi.depth
    if depth is not None:
        moved = list(depth)
        moved[j - 1] += label
        depth = tuple(moved) if min(moved) >= 0 else None
    return dataclasses.replace(chi, labels=labels, depth=depth)


def symmetrizer(rs: RootSystem) -> typing.Tuple[int, ...]:
    """Half squared lengths of the simple roots, scaled to coprime integers.

    ``d_i * A[i][j] == d_j * A[j][i]`` for all ``i, j``.
    """
    d: typing.Dict[int, sympy.Rational] = {1: sympy.Rational(1)}
    pending = [1]
    while pending:
        i = pending.pop()
        for j in rs.neighbors(i):
            if j not in d:
                d[j] = d[i] * rs.entry(i, j) / rs.entry(j, i)
                pending.append(j)
    scale = math.lcm(*(int(value.q) for value in d.values()))
    values = [int(d[j] * scale) for j in rs.nodes]
    common = math.gcd(*values)
    return tuple(v // common for v in values)


def is_long(rs: RootSystem, j: int) -> bool:
    """Whether ``alpha_j`` is long; every root of a simply laced system is."""
    check_node(rs, j)
    d = symmetrizer(rs)
    return d[j - 1] == max(d)


def dynkin_graph(rs: RootSystem) -> networkx.DiGraph:
    """Directed Dynkin graph with the Cartan entry on every arc ``i -> j``."""
    graph = networkx.DiGraph()
    graph.add_nodes_from(rs.nodes)
    for i, j in rs.adjacency:
        graph.add_edge(i, j, cartan=rs.entry(i, j))
        graph.add_edge(j, i, cartan=rs.entry(j, i))
    return graph


@functools.lru_cache(maxsize=None)
def _automorphisms(t: SystemType) -> typing.Tuple[typing.Tuple[int, ...], ...]:
    graph = dynkin_graph(build_root_system(t))
    matcher = isomorphism.DiGraphMatcher(
        graph,
        graph,
        edge_match=isomorphism.numerical_edge_match("cartan", 0),
    )
    found = {
        tuple(mapping[j] for j in range(1, t.rank + 1))
        for mapping in matcher.isomorphisms_iter()
    }
    return tuple(sorted(found))


def automorphisms(rs: RootSystem) -> typing.List[typing.Tuple[int, ...]]:
    """Dynkin diagram automorphisms as image tuples ``(s(1), ..., s(n))``.

    A permutation ``s`` qualifies when ``A[s(i)][s(j)] == A[i][j]``; the
    identity comes first.
    """
    return list(_automorphisms(rs.system_type))


def standard_involution(rs: RootSystem) -> typing.Optional[typing.Tuple[int, ...]]:
    """The folding involution of A (middle flip), D (last two nodes) and E6.

    Returns ``None`` for every other system and for A1.
    """
    t = rs.system_type
    n = t.rank
    if t.family == "A" and n >= 2:
        return tuple(n + 1 - j for j in rs.nodes)
    if t.family == "D":
        return tuple(range(1, n - 1)) + (n, n - 1)
    if t == SystemType("E", 6):
        return (6, 2, 5, 4, 3, 1)
    return None

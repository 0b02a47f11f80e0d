"""Oriented-graph core: directed distances, D-neighborhoods, weight checks.

An oriented graph is a digraph with no loops and at most one arc between
any pair of vertices (so no two-cycles).  Distances are directed shortest
path lengths; a pair with no directed path has infinite distance, exposed
as :data:`UNREACHABLE`.

Given a distance set D, the D-neighborhood of a vertex u collects every
vertex whose directed distance from u lies in D, and the D-weight of u
under a labeling is the sum of the labels in that neighborhood.  A
labeling is D-antimagic when all D-weights are pairwise distinct.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Iterator, Mapping

UNREACHABLE = math.inf


class GraphError(ValueError):
    """Raised when vertices or arcs violate the oriented-graph restrictions."""


class LabelingError(ValueError):
    """Raised when a labeling is not a bijection onto 1..|V|."""


class DistanceSet:
    """A nonempty set of nonnegative integer distances, kept sorted.

    Accepts any iterable of ints.  ``DistanceSet.parse`` reads the
    comma-separated command line form, e.g. ``"0,2"``.
    """

    __slots__ = ("members",)

    def __init__(self, distances: Iterable[int]):
        members = tuple(sorted(set(distances)))
        if not members:
            raise ValueError("distance set must be nonempty")
        for d in members:
            if not isinstance(d, int) or isinstance(d, bool) or d < 0:
                raise ValueError(f"distances must be nonnegative integers, got {d!r}")
        self.members = members

    @classmethod
    def of(cls, value: "DistanceSet | Iterable[int]") -> "DistanceSet":
        if isinstance(value, cls):
            return value
        return cls(value)

    @classmethod
    def parse(cls, text: str) -> "DistanceSet":
        try:
            return cls(int(part) for part in text.split(","))
        except ValueError as exc:
            raise ValueError(f"cannot parse distance set {text!r}: {exc}") from None

    @property
    def smallest(self) -> int:
        return self.members[0]

    @property
    def largest(self) -> int:
        return self.members[-1]

    def __contains__(self, distance: object) -> bool:
        return distance in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DistanceSet) and self.members == other.members

    def __lt__(self, other: "DistanceSet") -> bool:
        return self.members < other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __str__(self) -> str:
        return "{" + ",".join(str(d) for d in self.members) + "}"

    def __repr__(self) -> str:
        return f"DistanceSet({list(self.members)!r})"


class OrientedGraph:
    """An immutable oriented graph with eagerly cached all-pairs distances.

    :param vertices: iterable of hashable vertex identifiers; their order
        is preserved and used for deterministic output everywhere.
    :param arcs: iterable of (tail, head) pairs over declared vertices.

    Loops, duplicate arcs, two-cycles and undeclared endpoints raise
    :class:`GraphError`.  Instances never mutate after construction, so
    they are safe to share between threads and to pickle for worker
    processes.
    """

    def __init__(self, vertices: Iterable, arcs: Iterable[tuple]):
        self._vertices = tuple(vertices)
        if len(set(self._vertices)) != len(self._vertices):
            raise GraphError("duplicate vertex identifiers")
        self._index = {v: i for i, v in enumerate(self._vertices)}
        out = {v: [] for v in self._vertices}
        into = {v: [] for v in self._vertices}
        seen: set[tuple] = set()
        for tail, head in arcs:
            if tail not in self._index:
                raise GraphError(f"arc uses undeclared vertex {tail!r}")
            if head not in self._index:
                raise GraphError(f"arc uses undeclared vertex {head!r}")
            if tail == head:
                raise GraphError(f"loop at {tail!r}")
            if (tail, head) in seen:
                raise GraphError(f"duplicate arc ({tail!r}, {head!r})")
            if (head, tail) in seen:
                raise GraphError(f"two-cycle between {tail!r} and {head!r}")
            seen.add((tail, head))
            out[tail].append(head)
            into[head].append(tail)
        self._arcs = tuple(
            sorted(seen, key=lambda a: (self._index[a[0]], self._index[a[1]]))
        )
        self._out = {v: tuple(heads) for v, heads in out.items()}
        self._in = {v: tuple(tails) for v, tails in into.items()}
        self._dist = {v: self._bfs_from(v) for v in self._vertices}

    def _bfs_from(self, start) -> dict:
        dist = {start: 0}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in self._out[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def arcs(self) -> tuple:
        return self._arcs

    def index(self, v) -> int:
        self._require(v)
        return self._index[v]

    def out_neighbors(self, v) -> tuple:
        self._require(v)
        return self._out[v]

    def in_neighbors(self, v) -> tuple:
        self._require(v)
        return self._in[v]

    def distance(self, u, v) -> int | float:
        """Directed shortest-path distance, ``UNREACHABLE`` when no path."""
        self._require(u)
        self._require(v)
        return self._dist[u].get(v, UNREACHABLE)

    def _require(self, v) -> None:
        if v not in self._index:
            raise KeyError(f"unknown vertex {v!r}")

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v: object) -> bool:
        return v in self._index

    def __iter__(self) -> Iterator:
        return iter(self._vertices)

    def __repr__(self) -> str:
        return f"OrientedGraph({len(self._vertices)} vertices, {len(self._arcs)} arcs)"


class Labeling(Mapping):
    """A vertex -> label map intended to be a bijection onto 1..|V|.

    The bijectivity requirement depends on the target graph, so it is
    checked by :meth:`validate_for` (and by every verification entry
    point) rather than at construction.
    """

    __slots__ = ("_map",)

    def __init__(self, mapping: Mapping):
        self._map = dict(mapping)

    @classmethod
    def sequential(cls, g: OrientedGraph) -> "Labeling":
        """Label vertices 1..|V| in vertex order."""
        return cls({v: i + 1 for i, v in enumerate(g.vertices)})

    def validate_for(self, g: OrientedGraph) -> None:
        """Raise :class:`LabelingError` unless this is a bijection onto 1..|V|."""
        missing_vertices = [v for v in g.vertices if v not in self._map]
        extra_vertices = [v for v in self._map if v not in g]
        if missing_vertices or extra_vertices:
            raise LabelingError(
                f"labeling does not cover the vertex set exactly: "
                f"missing {missing_vertices!r}, extra {extra_vertices!r}"
            )
        n = len(g)
        seen: dict[int, list] = {}
        for v in g.vertices:
            seen.setdefault(self._map[v], []).append(v)
        duplicates = {
            label: vs for label, vs in seen.items() if len(vs) > 1
        }
        missing = sorted(set(range(1, n + 1)) - set(seen))
        if duplicates or missing:
            raise LabelingError(
                f"labels must be a bijection onto 1..{n}: "
                f"duplicates {duplicates!r}, missing {missing!r}"
            )

    def __getitem__(self, v):
        return self._map[v]

    def __iter__(self) -> Iterator:
        return iter(self._map)

    def __len__(self) -> int:
        return len(self._map)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Labeling):
            return self._map == other._map
        if isinstance(other, Mapping):
            return self._map == dict(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._map.items()))

    def __repr__(self) -> str:
        return f"Labeling({self._map!r})"


class VertexKind(Enum):
    SOURCE = "source"
    SINK = "sink"
    INTERNAL = "internal"
    ISOLATED = "isolated"


@dataclass(frozen=True)
class VertexClass:
    """Degree-based role of a vertex inside its oriented graph."""

    kind: VertexKind
    out_degree: int
    in_degree: int


@dataclass(frozen=True, eq=True)
class WeightReport:
    """Outcome of checking one labeling against one distance set.

    ``collisions`` lists every unordered pair of vertices sharing a
    weight, in vertex order, so a failed check carries the complete
    certificate rather than just the first clash found.
    """

    weights: Mapping
    collisions: tuple[tuple, ...]

    @property
    def antimagic(self) -> bool:
        return not self.collisions


def shortest_distance(g: OrientedGraph, u, v) -> int | float:
    """Directed distance from u to v; ``UNREACHABLE`` when there is no path."""
    return g.distance(u, v)


def d_neighborhood(g: OrientedGraph, u, D) -> frozenset:
    """Vertices whose directed distance from u lies in the distance set."""
    D = DistanceSet.of(D)
    g._require(u)
    row = g._dist[u]
    return frozenset(v for v, d in row.items() if d in D)


def d_weight(g: OrientedGraph, u, labeling: Labeling, D) -> int:
    """Sum of labels over the D-neighborhood of u.

    The labeling must be a bijection onto 1..|V|; an empty neighborhood
    sums to 0.
    """
    labeling = labeling if isinstance(labeling, Labeling) else Labeling(labeling)
    labeling.validate_for(g)
    return sum(labeling[v] for v in d_neighborhood(g, u, D))


def verify_labeling(g: OrientedGraph, labeling: Labeling, D) -> WeightReport:
    """Compute every D-weight and report all weight collisions.

    Raises :class:`LabelingError` for a non-bijective labeling.  The
    report's ``antimagic`` flag is true exactly when no two vertices
    share a weight.
    """
    D = DistanceSet.of(D)
    labeling = labeling if isinstance(labeling, Labeling) else Labeling(labeling)
    labeling.validate_for(g)
    weights = {u: sum(labeling[v] for v in d_neighborhood(g, u, D)) for u in g.vertices}
    by_weight: dict[int, list] = {}
    for v in g.vertices:
        by_weight.setdefault(weights[v], []).append(v)
    pairs: list[tuple] = []
    for group in sorted(
        (vs for vs in by_weight.values() if len(vs) > 1),
        key=lambda vs: g.index(vs[0]),
    ):
        pairs.extend(combinations(group, 2))
    return WeightReport(weights=weights, collisions=tuple(pairs))


def finite_diameter(g: OrientedGraph) -> int:
    """Largest finite directed distance; 0 for an arcless graph."""
    return max(
        (d for row in g._dist.values() for d in row.values()),
        default=0,
    )


def is_admissible(g: OrientedGraph, D) -> bool:
    """Whether the distance set fits the graph (max(D) <= finite diameter).

    A distance set is only meaningful for a graph whose largest finite
    directed distance reaches it; a graph cannot be D-antimagic for a
    distance set it does not fit.
    """
    return DistanceSet.of(D).largest <= finite_diameter(g)


def classify_vertex(g: OrientedGraph, v) -> VertexClass:
    """Classify v as source, sink, internal or isolated by its degrees."""
    out_degree = len(g.out_neighbors(v))
    in_degree = len(g.in_neighbors(v))
    if out_degree == 0 and in_degree == 0:
        kind = VertexKind.ISOLATED
    elif in_degree == 0:
        kind = VertexKind.SOURCE
    elif out_degree == 0:
        kind = VertexKind.SINK
    else:
        kind = VertexKind.INTERNAL
    return VertexClass(kind=kind, out_degree=out_degree, in_degree=in_degree)

"""Builders for oriented stars and star forests, plus orientation enumeration.

A star K_{1,n} has one center and n leaves.  An orientation is summarised
by t, the number of leaves whose arc points into the center: leaves
1..t are sources, leaves t+1..n are sinks.  Up to isomorphism t fully
determines the orientation, so enumeration works over t values, and for
forests over multisets of t values per group of same-size stars.

Vertex naming is deterministic: a lone star uses center ``c`` and leaves
``l1``..``ln``; forests number their stars 1..M across groups and use
``c3`` / ``l3.2`` style names.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from math import comb

from .graph import GraphError, OrientedGraph


@dataclass(frozen=True, order=True)
class StarShape:
    """Oriented star parameters: n leaves of which the first t are sources."""

    n: int
    t: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"a star needs at least one leaf, got n={self.n}")
        if not 0 <= self.t <= self.n:
            raise ValueError(f"t must lie in 0..n, got t={self.t} for n={self.n}")


@dataclass(frozen=True)
class StarGroup:
    """``count`` copies of K_{1,leaves} inside a forest.

    ``sources`` fixes the orientation: an int applies one t to every
    copy, a tuple gives one t per copy, and None leaves the group
    unoriented (for enumeration, or for the forced forest-pi pattern).
    """

    count: int
    leaves: int
    sources: int | tuple[int, ...] | None = None

    def __post_init__(self):
        if self.count < 1:
            raise ValueError(f"group needs at least one star, got {self.count}")
        if self.leaves < 1:
            raise ValueError(f"stars need at least one leaf, got {self.leaves}")
        if isinstance(self.sources, int):
            self._check_t(self.sources)
        elif self.sources is not None:
            sources = tuple(self.sources)
            if len(sources) != self.count:
                raise ValueError(
                    f"need one t per copy: got {len(sources)} for {self.count} stars"
                )
            for t in sources:
                self._check_t(t)
            object.__setattr__(self, "sources", sources)

    def _check_t(self, t: int) -> None:
        if not 0 <= t <= self.leaves:
            raise ValueError(f"t must lie in 0..{self.leaves}, got {t}")

    def source_tuple(self) -> tuple[int, ...]:
        """Per-copy t values; raises if the group is unoriented."""
        if self.sources is None:
            raise ValueError("group orientation is unspecified")
        if isinstance(self.sources, int):
            return (self.sources,) * self.count
        return self.sources


@dataclass(frozen=True)
class ForestSpec:
    """A star forest: groups of same-size stars with increasing leaf counts.

    Groups must be ordered by strictly increasing leaf count (merge
    same-size stars into one group; per-copy orientations cover the
    mixed case).  ``pi`` marks the forced orientation pattern in which
    each star has exactly one sink leaf, its last one.
    """

    groups: tuple[StarGroup, ...]
    pi: bool = False

    def __post_init__(self):
        groups = tuple(self.groups)
        object.__setattr__(self, "groups", groups)
        if not groups:
            raise ValueError("forest needs at least one group")
        sizes = [group.leaves for group in groups]
        if any(a >= b for a, b in zip(sizes, sizes[1:])):
            raise ValueError(
                f"group leaf counts must strictly increase, got {sizes}"
            )
        if self.pi and any(group.sources is not None for group in groups):
            raise ValueError("pi forests fix their orientation; drop the t values")

    @classmethod
    def parse(cls, text: str, pi: bool = False) -> "ForestSpec":
        """Read the command line mini-grammar, e.g. ``"3x5@2"`` or ``"3x3,2x4"``.

        Each comma-separated term is ``<count>x<leaves>`` with an
        optional ``@<t>`` orientation.  Terms with equal leaf counts are
        merged into one group with per-copy orientations.
        """
        collected: dict[int, list] = {}
        for term in text.split(","):
            term = term.strip()
            body, _, t_part = term.partition("@")
            count_part, sep, leaves_part = body.partition("x")
            try:
                count = int(count_part)
                leaves = int(leaves_part)
            except ValueError:
                raise ValueError(f"cannot parse forest term {term!r}") from None
            if not sep:
                raise ValueError(f"cannot parse forest term {term!r}")
            if t_part:
                if pi:
                    raise ValueError("pi forests fix their orientation; drop @t")
                try:
                    t = int(t_part)
                except ValueError:
                    raise ValueError(f"cannot parse forest term {term!r}") from None
                ts: list[int | None] = [t] * count
            else:
                ts = [None] * count
            collected.setdefault(leaves, []).append((count, ts))
        groups = []
        for leaves in sorted(collected):
            count = sum(c for c, _ in collected[leaves])
            ts = [t for _, part in collected[leaves] for t in part]
            if all(t is None for t in ts):
                sources = None
            elif any(t is None for t in ts):
                raise ValueError(
                    f"either give every {leaves}-leaf star a @t or none of them"
                )
            else:
                sources = tuple(ts)
            groups.append(StarGroup(count=count, leaves=leaves, sources=sources))
        return cls(groups=tuple(groups), pi=pi)

    @property
    def star_count(self) -> int:
        return sum(group.count for group in self.groups)

    @property
    def vertex_count(self) -> int:
        return sum(group.count * (group.leaves + 1) for group in self.groups)

    def star_sizes(self) -> tuple[int, ...]:
        """Leaf count of every star, in star numbering order."""
        return tuple(
            group.leaves for group in self.groups for _ in range(group.count)
        )


def center_vertex(star: int | None = None) -> str:
    """Center name: ``c`` for a lone star, ``c<k>`` inside a forest."""
    return "c" if star is None else f"c{star}"


def leaf_vertex(i: int, star: int | None = None) -> str:
    """Leaf name: ``l<i>`` for a lone star, ``l<k>.<i>`` inside a forest."""
    return f"l{i}" if star is None else f"l{star}.{i}"


def build_star(shape: StarShape) -> OrientedGraph:
    """Oriented star with leaves 1..t pointing in and the rest pointing out."""
    n, t = shape.n, shape.t
    vertices = [center_vertex()] + [leaf_vertex(i) for i in range(1, n + 1)]
    arcs = [(leaf_vertex(i), center_vertex()) for i in range(1, t + 1)]
    arcs += [(center_vertex(), leaf_vertex(i)) for i in range(t + 1, n + 1)]
    return OrientedGraph(vertices, arcs)


def _build_from_sizes(sizes: tuple[int, ...], ts: tuple[int, ...]) -> OrientedGraph:
    vertices = []
    arcs = []
    for k, (n, t) in enumerate(zip(sizes, ts), start=1):
        center = center_vertex(k)
        vertices.append(center)
        vertices += [leaf_vertex(i, k) for i in range(1, n + 1)]
        arcs += [(leaf_vertex(i, k), center) for i in range(1, t + 1)]
        arcs += [(center, leaf_vertex(i, k)) for i in range(t + 1, n + 1)]
    return OrientedGraph(vertices, arcs)


def build_homogeneous_forest(m: int, shape: StarShape) -> OrientedGraph:
    """m disjoint copies of the same oriented star, m >= 2."""
    if m < 2:
        raise GraphError(f"a star forest needs at least two stars, got m={m}")
    return _build_from_sizes((shape.n,) * m, (shape.t,) * m)


def build_forest(
    spec: ForestSpec,
    orientation: tuple[tuple[int, ...], ...] | None = None,
) -> OrientedGraph:
    """Star forest from a spec, with per-star orientations.

    ``orientation`` overrides the spec's own t values; it must give one
    tuple of t values per group.  Stars are numbered consecutively
    across groups in spec order.
    """
    if spec.star_count < 2:
        raise GraphError("a star forest needs at least two stars")
    if orientation is None:
        if spec.pi:
            return build_forest_pi(spec)
        ts = tuple(t for group in spec.groups for t in group.source_tuple())
    else:
        if len(orientation) != len(spec.groups):
            raise ValueError("need one orientation tuple per group")
        ts = []
        for group, part in zip(spec.groups, orientation):
            if len(part) != group.count:
                raise ValueError(
                    f"need {group.count} t values for the {group.leaves}-leaf group"
                )
            for t in part:
                if not 0 <= t <= group.leaves:
                    raise ValueError(f"t must lie in 0..{group.leaves}, got {t}")
            ts.extend(part)
        ts = tuple(ts)
    return _build_from_sizes(spec.star_sizes(), ts)


def build_forest_pi(spec: ForestSpec) -> OrientedGraph:
    """Star forest in the forced pattern: every leaf but the last points in.

    Each star keeps a single sink leaf (its highest-numbered one), i.e.
    t = n - 1 per star; single-leaf stars degenerate to t = 0.
    """
    if not spec.pi:
        raise ValueError("spec is not marked as a pi forest")
    if spec.star_count < 2:
        raise GraphError("a star forest needs at least two stars")
    sizes = spec.star_sizes()
    return _build_from_sizes(sizes, tuple(n - 1 for n in sizes))


def enumerate_star_orientations(n: int) -> list[StarShape]:
    """All orientation classes of K_{1,n}: one per t in 0..n."""
    return [StarShape(n=n, t=t) for t in range(n + 1)]


def enumerate_forest_orientations(
    spec: ForestSpec,
) -> list[tuple[tuple[int, ...], ...]]:
    """All orientation classes of a forest, in lexicographic order.

    A class is a tuple of sorted t-multisets, one per group: copies of
    the same star size are interchangeable, so only the multiset of
    their t values matters.  The list has
    ``prod(comb(n_j + m_j, m_j))`` entries.
    """
    per_group = [
        list(combinations_with_replacement(range(group.leaves + 1), group.count))
        for group in spec.groups
    ]
    return [tuple(choice) for choice in product(*per_group)]


def orientation_class_count(spec: ForestSpec) -> int:
    """Closed-form count of forest orientation classes."""
    total = 1
    for group in spec.groups:
        total *= comb(group.leaves + group.count, group.count)
    return total


def orientation_classes_from_arcs(
    spec: ForestSpec,
) -> set[tuple[tuple[int, ...], ...]]:
    """Cross-check oracle: enumerate all 2^(#edges) arc directions directly.

    Flips every leaf arc independently and quotients by the leaf and
    copy permutations, returning the surviving canonical classes.  Only
    for small instances; the canonical enumerator must agree with it.
    """
    sizes = spec.star_sizes()
    group_slices = []
    start = 0
    for group in spec.groups:
        group_slices.append((start, start + group.count))
        start += group.count
    classes: set[tuple[tuple[int, ...], ...]] = set()
    total_edges = sum(sizes)
    for bits in product((0, 1), repeat=total_edges):
        ts = []
        offset = 0
        for n in sizes:
            ts.append(sum(bits[offset : offset + n]))
            offset += n
        classes.add(
            tuple(
                tuple(sorted(ts[a:b])) for a, b in group_slices
            )
        )
    return classes

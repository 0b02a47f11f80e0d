"""Backtracking search for D-antimagic labelings.

The engine assigns labels 1..|V| by depth-first backtracking, branching
on vertices in decreasing D-degree order (largest D-neighborhood first)
and trying labels in ascending order, which makes every result
deterministic.  With pruning on, a partial assignment is cut as soon as
two fully-determined weights collide; with symmetry reduction on,
provably interchangeable vertices (identical D-neighborhood structure
under swapping) are forced into ascending label order, and the count is
over those canonical representatives.

A distance set that does not fit the graph (max(D) above the finite
diameter) admits no D-antimagic labeling at all, so the search reports
``exhausted-none`` immediately and marks the shortcut.

Budgets are node counts, not wall-clock, so aborts are reproducible.
Parallel runs fan out over the first branching level and merge results
in branch order, simulating the serial budget, so status, witness,
count and node totals are identical for any worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from math import factorial

from .graph import (
    DistanceSet,
    Labeling,
    OrientedGraph,
    d_neighborhood,
    is_admissible,
)

ENV_VERTEX_CAP = "ANTIMAGIC_NODE_CAP"
DEFAULT_VERTEX_CAP = 10

UNFIT_DISTANCE_SET = "distance-set-exceeds-diameter"


class SearchStatus(str, Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted-none"
    ABORTED = "aborted-budget"


@dataclass(frozen=True)
class SearchResult:
    """Outcome of one search run.

    ``nodes_explored`` counts visited search-tree nodes, the empty root
    included, so an exhaustion certificate records how much space was
    actually covered.  ``symmetry_order`` is the order of the declared
    reduction group (1 when reduction is off); a reduced count times
    this order gives the unreduced count.  ``shortcut`` names a
    non-enumerative refutation when one applied.
    """

    status: SearchStatus
    witness: Labeling | None
    count: int | None
    nodes_explored: int
    symmetry_order: int = 1
    shortcut: str | None = None
    labelings: tuple[Labeling, ...] | None = None


def vertex_cap() -> int:
    """Vertex limit for exhaustive modes; ANTIMAGIC_NODE_CAP overrides it."""
    raw = os.environ.get(ENV_VERTEX_CAP)
    if raw is None:
        return DEFAULT_VERTEX_CAP
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{ENV_VERTEX_CAP} must be an integer, got {raw!r}") from None


class _BudgetExceeded(Exception):
    pass


class _Engine:
    """Mutable search state for one graph and one or more distance sets.

    Joint mode (several distance sets) requires the labeling to be
    antimagic under every set at once; the single-set search is just the
    one-element case.
    """

    def __init__(self, g: OrientedGraph, sets: tuple[DistanceSet, ...],
                 prune: bool, symmetry: bool):
        self.n = len(g)
        self.k = len(sets)
        self.prune = prune
        verts = g.vertices
        self.verts = verts
        index = {v: i for i, v in enumerate(verts)}
        self.nbs: list[list[tuple[int, ...]]] = []
        for D in sets:
            self.nbs.append([
                tuple(sorted(index[w] for w in d_neighborhood(g, v, D)))
                for v in verts
            ])
        self.watchers: list[list[list[int]]] = []
        for d in range(self.k):
            watch: list[list[int]] = [[] for _ in range(self.n)]
            for v in range(self.n):
                for u in self.nbs[d][v]:
                    watch[u].append(v)
            self.watchers.append(watch)
        degree = [
            sum(len(self.nbs[d][v]) for d in range(self.k)) for v in range(self.n)
        ]
        self.order = sorted(range(self.n), key=lambda v: (-degree[v], v))
        self.self_only = [
            [self.nbs[d][v] == (v,) for v in range(self.n)] for d in range(self.k)
        ]
        self.orbit_prev = [-1] * self.n
        self.symmetry_order = 1
        if symmetry:
            self._compute_orbits()

    def _interchangeable(self, u: int, v: int) -> bool:
        def swap(x: int) -> int:
            return v if x == u else u if x == v else x

        for d in range(self.k):
            nbs = self.nbs[d]
            for w in range(self.n):
                if {swap(x) for x in nbs[w]} != set(nbs[swap(w)]):
                    return False
        return True

    def _compute_orbits(self) -> None:
        # Transpositions that preserve every D-neighborhood structure are
        # closed under the union-find grouping: if (u,v) and (v,w) both
        # preserve it then so does (u,w).
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u in range(self.n):
            for v in range(u + 1, self.n):
                if find(u) != find(v) and self._interchangeable(u, v):
                    parent[find(v)] = find(u)
        orbits: dict[int, list[int]] = {}
        for v in range(self.n):
            orbits.setdefault(find(v), []).append(v)
        for members in orbits.values():
            members.sort()
            self.symmetry_order *= factorial(len(members))
            for prev, nxt in zip(members, members[1:]):
                self.orbit_prev[nxt] = prev

    # -- one backtracking run over a single first-level branch ----------

    def run_branch(self, mode: str, first_label: int, budget: int | None):
        self.mode = mode
        self.budget = budget
        self.nodes = 0
        self.count = 0
        self.witness: dict | None = None
        self.labelings: list[dict] = []
        self.label_of = [0] * self.n
        self.used = [False] * (self.n + 1)
        self.partial = [[0] * self.n for _ in range(self.k)]
        self.remaining = [
            [len(self.nbs[d][v]) for v in range(self.n)] for d in range(self.k)
        ]
        self.finals: list[dict[int, int]] = [dict() for _ in range(self.k)]
        self.conflicts = 0
        self.pending_nonself = [0] * self.k
        for d in range(self.k):
            for v in range(self.n):
                if self.remaining[d][v] == 0:
                    self._finalize(d, 0)
                elif not self.self_only[d][v]:
                    self.pending_nonself[d] += 1
        aborted = False
        try:
            v0 = self.order[0]
            if not self.used[first_label]:
                self._step(0, v0, first_label)
        except _BudgetExceeded:
            aborted = True
        return {
            "aborted": aborted,
            "count": self.count,
            "witness": self.witness,
            "labelings": self.labelings,
            "nodes": self.nodes,
        }

    def _finalize(self, d: int, weight: int) -> None:
        finals = self.finals[d]
        count = finals.get(weight, 0) + 1
        finals[weight] = count
        if count > 1:
            self.conflicts += 1

    def _definalize(self, d: int, weight: int) -> None:
        finals = self.finals[d]
        count = finals[weight]
        if count > 1:
            finals[weight] = count - 1
            self.conflicts -= 1
        else:
            del finals[weight]

    def _step(self, depth: int, v: int, label: int) -> bool:
        """Apply one assignment and recurse; True means stop the search."""
        if self.budget is not None and self.nodes >= self.budget:
            raise _BudgetExceeded
        self.nodes += 1
        self.label_of[v] = label
        self.used[label] = True
        for d in range(self.k):
            if not self.self_only[d][v]:
                self.pending_nonself[d] -= 1
            for w in self.watchers[d][v]:
                self.partial[d][w] += label
                self.remaining[d][w] -= 1
                if self.remaining[d][w] == 0:
                    self._finalize(d, self.partial[d][w])
        try:
            if not self.prune or (self.conflicts == 0 and not self._dead_label()):
                if self._descend(depth + 1):
                    return True
        finally:
            for d in range(self.k):
                for w in self.watchers[d][v]:
                    if self.remaining[d][w] == 0:
                        self._definalize(d, self.partial[d][w])
                    self.remaining[d][w] += 1
                    self.partial[d][w] -= label
                if not self.self_only[d][v]:
                    self.pending_nonself[d] += 1
            self.used[label] = False
            self.label_of[v] = 0
        return False

    def _dead_label(self) -> bool:
        # Once every unassigned vertex is its own whole D-neighborhood,
        # an unused label equal to an already-final weight is doomed:
        # whichever vertex receives it will repeat that weight.
        for d in range(self.k):
            if self.pending_nonself[d] == 0:
                finals = self.finals[d]
                for label in range(1, self.n + 1):
                    if not self.used[label] and label in finals:
                        return True
        return False

    def _descend(self, depth: int) -> bool:
        if depth == self.n:
            if self.conflicts:
                return False
            self.count += 1
            snapshot = {self.verts[v]: self.label_of[v] for v in range(self.n)}
            if self.witness is None:
                self.witness = snapshot
            if self.mode == "all":
                self.labelings.append(snapshot)
            return self.mode == "first"
        v = self.order[depth]
        lowest = 1
        if self.orbit_prev[v] >= 0:
            lowest = self.label_of[self.orbit_prev[v]] + 1
        for label in range(lowest, self.n + 1):
            if not self.used[label]:
                if self._step(depth, v, label):
                    return True
        return False


def _run_branch(g, sets, mode, prune, symmetry, first_label, budget):
    engine = _Engine(g, sets, prune, symmetry)
    return engine.run_branch(mode, first_label, budget)


def _merge_branches(results_in_order, mode, budget, n):
    """Fold per-branch outcomes exactly as a serial scan would."""
    nodes_total = 1
    remaining = budget
    count = 0
    witness: dict | None = None
    labelings: list[dict] = []
    aborted = False
    for outcome in results_in_order:
        if remaining is not None and (
            outcome["aborted"] or outcome["nodes"] > remaining
        ):
            nodes_total += remaining
            aborted = True
            break
        nodes_total += outcome["nodes"]
        if remaining is not None:
            remaining -= outcome["nodes"]
        count += outcome["count"]
        if witness is None:
            witness = outcome["witness"]
        labelings.extend(outcome["labelings"])
        if mode == "first" and witness is not None:
            break
    return aborted, count, witness, labelings, nodes_total


def _search(g, sets, mode, budget, prune, symmetry, workers):
    n = len(g)
    for D in sets:
        if not is_admissible(g, D):
            return SearchResult(
                status=SearchStatus.EXHAUSTED,
                witness=None,
                count=0 if mode in ("all", "count") else None,
                nodes_explored=0,
                shortcut=UNFIT_DISTANCE_SET,
                labelings=() if mode == "all" else None,
            )
    if n == 0:
        empty = Labeling({})
        return SearchResult(
            status=SearchStatus.FOUND,
            witness=empty,
            count=1 if mode in ("all", "count") else None,
            nodes_explored=1,
            labelings=(empty,) if mode == "all" else None,
        )
    probe = _Engine(g, sets, prune, symmetry)
    symmetry_order = probe.symmetry_order
    branch_labels = list(range(1, n + 1))
    if workers > 1 and len(branch_labels) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(
                    _run_branch, g, sets, mode, prune, symmetry, label, budget
                )
                for label in branch_labels
            ]
            outcomes = _consume_ordered(futures, mode, budget)
    else:
        outcomes = []
        remaining = budget
        for label in branch_labels:
            outcome = probe.run_branch(mode, label, remaining)
            outcomes.append(outcome)
            if outcome["aborted"]:
                break
            if remaining is not None:
                remaining -= outcome["nodes"]
            if mode == "first" and outcome["witness"] is not None:
                break
    aborted, count, witness, labelings, nodes = _merge_branches(
        outcomes, mode, budget, n
    )
    if aborted:
        return SearchResult(
            status=SearchStatus.ABORTED,
            witness=None,
            count=None,
            nodes_explored=nodes,
            symmetry_order=symmetry_order,
        )
    status = SearchStatus.FOUND if (
        witness is not None if mode == "first" else count > 0
    ) else SearchStatus.EXHAUSTED
    return SearchResult(
        status=status,
        witness=Labeling(witness) if witness is not None else None,
        count=count if mode in ("all", "count") else None,
        nodes_explored=nodes,
        symmetry_order=symmetry_order,
        labelings=tuple(Labeling(m) for m in labelings) if mode == "all" else None,
    )


def _consume_ordered(futures, mode, budget):
    """Collect branch outcomes in branch order, stopping like a serial scan."""
    outcomes = []
    remaining = budget
    for future in futures:
        outcome = future.result()
        outcomes.append(outcome)
        if remaining is not None and (
            outcome["aborted"] or outcome["nodes"] > remaining
        ):
            break
        if remaining is not None:
            remaining -= outcome["nodes"]
        if mode == "first" and outcome["witness"] is not None:
            break
    for future in futures:
        future.cancel()
    return outcomes


def _check_mode(mode: str) -> None:
    if mode not in ("first", "all", "count"):
        raise ValueError(f"mode must be first, all or count, got {mode!r}")


def _check_cap(g: OrientedGraph, what: str) -> None:
    cap = vertex_cap()
    if len(g) > cap:
        raise ValueError(
            f"{what} is exhaustive and capped at {cap} vertices "
            f"(graph has {len(g)}; raise {ENV_VERTEX_CAP} to override)"
        )


def search_labeling(
    g: OrientedGraph,
    D,
    mode: str = "first",
    budget: int | None = None,
    *,
    prune: bool = True,
    symmetry: bool = True,
    workers: int = 1,
) -> SearchResult:
    """Search for D-antimagic labelings of g.

    ``first`` stops at the first labeling in deterministic order;
    ``count`` visits the whole (symmetry-reduced) space and counts;
    ``all`` additionally returns every labeling found.  The exhaustive
    modes are capped by :func:`vertex_cap`; ``first`` is not, but a
    budget is recommended beyond the cap.
    """
    _check_mode(mode)
    if mode in ("all", "count"):
        _check_cap(g, "mode=" + mode)
    sets = (DistanceSet.of(D),)
    return _search(g, sets, mode, budget, prune, symmetry, workers)


def search_joint_labeling(
    g: OrientedGraph,
    distance_sets,
    mode: str = "first",
    budget: int | None = None,
    *,
    prune: bool = True,
    symmetry: bool = True,
    workers: int = 1,
) -> SearchResult:
    """Like :func:`search_labeling` but antimagic under every given set at once."""
    _check_mode(mode)
    if mode in ("all", "count"):
        _check_cap(g, "mode=" + mode)
    sets = tuple(DistanceSet.of(D) for D in distance_sets)
    if not sets:
        raise ValueError("need at least one distance set")
    return _search(g, sets, mode, budget, prune, symmetry, workers)


def refute_antimagic(
    g: OrientedGraph,
    D,
    budget: int | None = None,
    *,
    workers: int = 1,
) -> SearchResult:
    """Exhaustively confirm that no D-antimagic labeling of g exists.

    Returns ``exhausted-none`` with the node count of the covered space,
    or ``found`` with the counterexample labeling if the refutation
    fails.  Capped by :func:`vertex_cap` since it must be exhaustive.
    """
    _check_cap(g, "refutation")
    sets = (DistanceSet.of(D),)
    return _search(g, sets, "first", budget, True, True, workers)

"""Graph documents: lossless JSON round-trip and annotated DOT text.

The JSON form keeps a fixed key order (vertices, arcs, labeling,
metadata) so serialized documents are byte-stable.  DOT output writes
one digraph for the whole forest with every vertex's label and one
bracketed weight per requested distance set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .graph import DistanceSet, Labeling, OrientedGraph, d_neighborhood

_DOT_COLORS = ("red", "blue", "green", "orange", "purple", "brown")


@dataclass(frozen=True)
class GraphDocument:
    """A graph plus an optional labeling and free-form metadata."""

    vertices: tuple[str, ...]
    arcs: tuple[tuple[str, str], ...]
    labeling: Labeling | None = None
    metadata: dict | None = None

    @classmethod
    def from_graph(
        cls,
        g: OrientedGraph,
        labeling: Labeling | None = None,
        metadata: dict | None = None,
    ) -> "GraphDocument":
        return cls(
            vertices=tuple(g.vertices),
            arcs=tuple(g.arcs),
            labeling=labeling,
            metadata=metadata,
        )

    def graph(self) -> OrientedGraph:
        """Materialize the oriented graph (validates the structure)."""
        return OrientedGraph(self.vertices, self.arcs)

    def to_json(self) -> str:
        payload = {
            "vertices": list(self.vertices),
            "arcs": [list(arc) for arc in self.arcs],
            "labeling": dict(self.labeling) if self.labeling is not None else None,
            "metadata": self.metadata,
        }
        return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "GraphDocument":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"not valid JSON: {exc}") from None
        if not isinstance(payload, dict):
            raise ValueError("graph document must be a JSON object")
        vertices = payload.get("vertices")
        arcs = payload.get("arcs")
        if not isinstance(vertices, list) or not all(
            isinstance(v, str) for v in vertices
        ):
            raise ValueError("'vertices' must be a list of strings")
        if not isinstance(arcs, list) or not all(
            isinstance(arc, list)
            and len(arc) == 2
            and all(isinstance(end, str) for end in arc)
            for arc in arcs
        ):
            raise ValueError("'arcs' must be a list of [tail, head] pairs")
        labeling = payload.get("labeling")
        if labeling is not None:
            if not isinstance(labeling, dict) or not all(
                isinstance(v, str) and isinstance(label, int)
                for v, label in labeling.items()
            ):
                raise ValueError("'labeling' must map vertex names to integers")
            labeling = Labeling(labeling)
        metadata = payload.get("metadata")
        if metadata is not None and not isinstance(metadata, dict):
            raise ValueError("'metadata' must be a JSON object")
        return cls(
            vertices=tuple(vertices),
            arcs=tuple((tail, head) for tail, head in arcs),
            labeling=labeling,
            metadata=metadata,
        )

    def to_dot(self, distance_sets=(), name: str = "g") -> str:
        """DOT text with ``label="<label> [w]..."`` vertex annotations.

        One bracketed weight is appended per distance set, in the given
        order; the header comment records which bracket belongs to
        which set (and its conventional color).  Weights need the
        document's labeling; without one, plain vertices are emitted.
        """
        sets = [DistanceSet.of(D) for D in distance_sets]
        g = self.graph()
        lines = [f"digraph {_quote(name)} {{"]
        if sets and self.labeling is not None:
            legend = ", ".join(
                f"{D}={color}"
                for D, color in zip(sets, _cycle_colors(len(sets)))
            )
            lines.append(f"  // weight brackets per distance set: {legend}")
        for v in self.vertices:
            if self.labeling is None:
                lines.append(f"  {_quote(v)};")
                continue
            text = str(self.labeling[v])
            for D in sets:
                weight = sum(self.labeling[w] for w in d_neighborhood(g, v, D))
                text += f" [{weight}]"
            lines.append(f"  {_quote(v)} [label={_quote(text)}];")
        for tail, head in self.arcs:
            lines.append(f"  {_quote(tail)} -> {_quote(head)};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _quote(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def _cycle_colors(count: int) -> list[str]:
    return [_DOT_COLORS[i % len(_DOT_COLORS)] for i in range(count)]

"""Point index and intersection graph over a set of grid paths.

Two paths are adjacent iff they share at least one grid point; touching at
an endpoint counts. Every list stored here is sorted by path id.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .grid import GridPoint, Instance, grid_points


@dataclass(frozen=True)
class PointIndex:
    """Map from each covered grid point to the ids of the paths covering it."""

    paths_at: Mapping[GridPoint, tuple[int, ...]]
    ids: tuple[int, ...]

    def __len__(self):
        return len(self.paths_at)

    def __getitem__(self, t: GridPoint) -> tuple[int, ...]:
        return self.paths_at[t]

    def points(self) -> list[GridPoint]:
        return sorted(self.paths_at)

    def incidences(self) -> int:
        return sum(len(v) for v in self.paths_at.values())


def build_point_index(instance: Instance) -> PointIndex:
    acc: dict[GridPoint, list[int]] = {}
    for p in sorted(instance.paths, key=lambda p: p.id):
        for t in grid_points(p):
            acc.setdefault(t, []).append(p.id)
    return PointIndex(
        {t: tuple(v) for t, v in sorted(acc.items())},
        tuple(sorted(p.id for p in instance.paths)),
    )


@dataclass(frozen=True)
class IntersectionGraph:
    adjacency: Mapping[int, tuple[int, ...]]
    _sets: Mapping[int, frozenset[int]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_sets", {u: frozenset(vs) for u, vs in self.adjacency.items()}
        )

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @property
    def nodes(self) -> list[int]:
        return sorted(self.adjacency)

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adjacency[u]

    def closed_neighborhood(self, u: int) -> tuple[int, ...]:
        """N[u]: the neighbours of ``u`` together with ``u`` itself."""
        return tuple(sorted((u, *self.adjacency[u])))

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._sets[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self.nodes for v in self.adjacency[u] if u < v]

    def is_independent(self, ids) -> bool:
        ids = list(ids)
        chosen = set(ids)
        return len(chosen) == len(ids) and not any(
            v in chosen for u in ids for v in self.adjacency[u]
        )


def build_graph(index: PointIndex) -> IntersectionGraph:
    adj: dict[int, set[int]] = {i: set() for i in index.ids}
    for members in index.paths_at.values():
        if len(members) < 2:
            continue
        for u in members:
            adj[u].update(members)
    for u, vs in adj.items():
        vs.discard(u)
    return IntersectionGraph({u: tuple(sorted(vs)) for u, vs in sorted(adj.items())})


def graph_from_instance(instance: Instance) -> IntersectionGraph:
    return build_graph(build_point_index(instance))


def edge_list_text(graph: IntersectionGraph) -> str:
    """Edge list, one ``u v`` pair per line with ``u < v``, sorted."""
    return "".join(f"{u} {v}\n" for u, v in graph.edges())

"""Finite graph substrate: adjacency storage, distances, components.

Graphs are immutable after construction.  Vertices are the integers
0..n-1; adjacency is kept as sorted tuples (the instances here are
12-to-27-regular but can run to thousands of vertices, so lists beat
matrices).  Optional labels attach arbitrary payloads (grid coordinates,
group elements) to vertices.
"""

from __future__ import annotations

import json
import math
from collections import deque
from typing import Iterable, Iterator, Optional, Sequence

from .errors import InputError

INF = math.inf


class FiniteGraph:
    """Undirected simple graph on vertices 0..n-1."""

    __slots__ = ("n", "adj", "labels", "_masks")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Optional[Sequence] = None,
    ):
        if n < 0:
            raise InputError(f"vertex count must be nonnegative, got {n}")
        neighbor_sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for {n} vertices")
            if u == v:
                raise InputError(f"loop at vertex {u} not allowed")
            neighbor_sets[u].add(v)
            neighbor_sets[v].add(u)
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(s)) for s in neighbor_sets
        )
        if labels is not None and len(labels) != n:
            raise InputError("labels must cover every vertex")
        self.labels = tuple(labels) if labels is not None else None
        self._masks: Optional[list[int]] = None

    # -- basic queries ----------------------------------------------------

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def neighbor_masks(self) -> list[int]:
        """Per-vertex adjacency bitmasks, built lazily, cached."""
        if self._masks is None:
            masks = []
            for nbrs in self.adj:
                m = 0
                for w in nbrs:
                    m |= 1 << w
                masks.append(m)
            self._masks = masks
        return self._masks

    def is_regular(self, d: int) -> bool:
        return all(len(a) == d for a in self.adj)

    def __repr__(self):
        return f"FiniteGraph(n={self.n}, edges={self.edge_count})"


# -- distances and components ---------------------------------------------


def path_distance(g: FiniteGraph, u: int, v: int) -> float:
    """Breadth-first shortest path length; INF when no path exists."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        return 0
    seen = {u}
    frontier = deque([(u, 0)])
    while frontier:
        x, d = frontier.popleft()
        for w in g.adj[x]:
            if w == v:
                return d + 1
            if w not in seen:
                seen.add(w)
                frontier.append((w, d + 1))
    return INF


def set_distance(g: FiniteGraph, a: Iterable[int], b: Iterable[int]) -> float:
    """Minimum path distance over pairs in A x B; INF when disconnected."""
    a_set = set(a)
    b_set = set(b)
    if not a_set or not b_set:
        raise InputError("set_distance requires non-empty vertex sets")
    for v in a_set | b_set:
        _check_vertex(g, v)
    if a_set & b_set:
        return 0
    # multi-source BFS from A until any vertex of B is hit
    seen = set(a_set)
    frontier = deque((v, 0) for v in sorted(a_set))
    while frontier:
        x, d = frontier.popleft()
        for w in g.adj[x]:
            if w in b_set:
                return d + 1
            if w not in seen:
                seen.add(w)
                frontier.append((w, d + 1))
    return INF


def components(
    g: FiniteGraph, restrict_to: Optional[Iterable[int]] = None
) -> list[list[int]]:
    """Connected components of the induced subgraph, as sorted lists.

    Components are ordered by their smallest vertex; with no restriction
    the whole vertex set is used.
    """
    if restrict_to is None:
        allowed = None
        universe = range(g.n)
    else:
        allowed = set(restrict_to)
        for v in allowed:
            _check_vertex(g, v)
        universe = sorted(allowed)
    seen: set[int] = set()
    out: list[list[int]] = []
    for start in universe:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for w in g.adj[x]:
                if w in seen or (allowed is not None and w not in allowed):
                    continue
                seen.add(w)
                comp.append(w)
                queue.append(w)
        out.append(sorted(comp))
    return out


def is_connected_set(g: FiniteGraph, vertices: Iterable[int]) -> bool:
    """True iff the induced subgraph on the given vertices is connected."""
    vs = set(vertices)
    if not vs:
        return False
    return len(components(g, vs)) == 1


def is_independent(g: FiniteGraph, vertices: Iterable[int]) -> bool:
    """True iff no edge joins two members of the set."""
    vs = set(vertices)
    for v in vs:
        _check_vertex(g, v)
    for v in vs:
        for w in g.adj[v]:
            if w > v and w in vs:
                return False
    return True


def closed_neighborhood(g: FiniteGraph, vertices: Iterable[int]) -> set[int]:
    """The set together with every vertex adjacent to it."""
    out = set(vertices)
    for v in list(out):
        out.update(g.adj[v])
    return out


def induced_subgraph(
    g: FiniteGraph, vertices: Iterable[int]
) -> tuple[FiniteGraph, list[int]]:
    """Induced subgraph plus the list mapping new indices to old vertices."""
    keep = sorted(set(vertices))
    index = {v: i for i, v in enumerate(keep)}
    edges = [
        (index[u], index[v])
        for u in keep
        for v in g.adj[u]
        if u < v and v in index
    ]
    labels = [g.labels[v] for v in keep] if g.labels is not None else None
    return FiniteGraph(len(keep), edges, labels), keep


def _check_vertex(g: FiniteGraph, v: int):
    if not isinstance(v, int) or not (0 <= v < g.n):
        raise InputError(f"vertex {v!r} out of range for {g.n} vertices")


# -- serialization ----------------------------------------------------------


def graph_to_json(g: FiniteGraph) -> dict:
    """JSON form: {"vertices": N, "edges": [[u,v],...], "labels": [...]}."""
    doc = {"vertices": g.n, "edges": [list(e) for e in g.edges()]}
    if g.labels is not None:
        doc["labels"] = [list(l) if isinstance(l, tuple) else l for l in g.labels]
    return doc


def graph_from_json(doc: dict) -> FiniteGraph:
    try:
        n = int(doc["vertices"])
        edges = [(int(u), int(v)) for u, v in doc["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed graph document: {exc}") from exc
    labels = doc.get("labels")
    if labels is not None:
        labels = [tuple(l) if isinstance(l, list) else l for l in labels]
    return FiniteGraph(n, edges, labels)


def graph_to_dimacs(g: FiniteGraph, comment: str = "") -> str:
    """DIMACS .col text: "p edge N M" header then 1-based "e u v" lines."""
    lines = []
    if comment:
        for part in comment.splitlines():
            lines.append(f"c {part}")
    lines.append(f"p edge {g.n} {g.edge_count}")
    for u, v in g.edges():
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def graph_from_dimacs(text: str) -> FiniteGraph:
    n = None
    edges = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) < 4 or parts[1] != "edge":
                raise InputError(f"bad DIMACS header: {line!r}")
            n = int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise InputError("DIMACS edge line before header")
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            edges.append((u, v))
    if n is None:
        raise InputError("missing DIMACS 'p edge' header")
    return FiniteGraph(n, edges)


def load_graph(path: str) -> FiniteGraph:
    """Load a graph from a .json or DIMACS .col file, picked by extension."""
    with open(path) as fh:
        text = fh.read()
    if path.endswith(".col") or path.endswith(".dimacs"):
        return graph_from_dimacs(text)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"cannot parse {path}: {exc}") from exc
    return graph_from_json(doc)

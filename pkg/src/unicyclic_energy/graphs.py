"""Graph construction, validation and the graph-spec / edge-file formats.

Vertex labels are fixed so that polynomials and spectra are reproducible:
``p6(n)`` puts the hexagon on 0..5, hangs the path 6..n-1 off vertex 0.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable


class GraphError(ValueError):
    """Invalid graph data (self-loop, duplicate edge, bad index, ...)."""


class GraphSpecError(GraphError):
    """A graph-spec string or edge file that cannot be turned into a graph."""


def _canon_edges(n: int, edges: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    seen = set()
    for e in edges:
        u, v = (int(e[0]), int(e[1]))
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphError(f"duplicate edge {key}")
        seen.add(key)
    return tuple(sorted(seen))


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    ``connected`` is computed eagerly at construction.  ``name`` is the
    graph-spec the graph was built from, if any; it takes no part in equality.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    name: str | None = field(default=None, compare=False)
    connected: bool = field(init=False, compare=False)
    _adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("graph needs at least one vertex")
        edges = _canon_edges(self.n, self.edges)
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))
        object.__setattr__(self, "connected", len(bfs_order(self._adj, 0)) == self.n)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    @property
    def is_unicyclic(self) -> bool:
        return self.connected and self.m == self.n

    @property
    def is_forest(self) -> bool:
        return self.m == self.n - count_components(self._adj)

    def adjacency_matrix(self):
        import numpy as np

        a = np.zeros((self.n, self.n))
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1.0
        return a

    def to_edge_file(self) -> str:
        lines = [f"n {self.n}"] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"


def bfs_order(adj, start: int) -> list[int]:
    seen = {start}
    order = [start]
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order


def count_components(adj) -> int:
    seen: set[int] = set()
    comps = 0
    for v in range(len(adj)):
        if v not in seen:
            comps += 1
            seen.update(bfs_order(adj, v))
    return comps


# -- families ---------------------------------------------------------------

def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)), name=f"cycle:{n}")


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"path needs n >= 1, got {n}")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)), name=f"path:{n}")


def p6(n: int) -> Graph:
    """Hexagon on 0..5 joined by the edge {0, 6} to the path 6..n-1."""
    if n < 7:
        raise GraphError(f"p6 needs n >= 7, got {n}")
    edges = [(i, (i + 1) % 6) for i in range(6)] + [(0, 6)]
    edges += [(i, i + 1) for i in range(6, n - 1)]
    return Graph(n, tuple(edges), name=f"p6:{n}")


def star(n: int) -> Graph:
    return Graph(n, tuple((0, i) for i in range(1, n)), name=None)


# -- bipartiteness ----------------------------------------------------------

@dataclass(frozen=True)
class BipartiteCheck:
    is_bipartite: bool
    coloring: tuple[int, ...] | None = None
    odd_cycle: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.is_bipartite


def is_bipartite(g: Graph) -> BipartiteCheck:
    """2-colour ``g`` by BFS.

    Returns the colouring when bipartite, otherwise a closed walk
    ``(v0, v1, ..., vk)`` with consecutive vertices adjacent, ``vk ~ v0``,
    and odd length ``k + 1``.
    """
    if not g.connected:
        raise GraphError("is_bipartite requires a connected graph")
    color = [-1] * g.n
    parent = [-1] * g.n
    depth = [0] * g.n
    color[0] = 0
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if color[w] < 0:
                color[w] = 1 - color[u]
                parent[w] = u
                depth[w] = depth[u] + 1
                queue.append(w)
            elif color[w] == color[u]:
                return BipartiteCheck(False, odd_cycle=_odd_cycle(u, w, parent, depth))
    return BipartiteCheck(True, coloring=tuple(color))


def _odd_cycle(u, w, parent, depth):
    # walk both endpoints of the offending edge up to their common ancestor
    left, right = [u], [w]
    a, b = u, w
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    right.pop()
    return tuple(left + right[::-1])


def verify_odd_cycle(g: Graph, cyc) -> bool:
    k = len(cyc)
    if k % 2 == 0 or len(set(cyc)) != k:
        return False
    edges = set(g.edges)
    return all(tuple(sorted((cyc[i], cyc[(i + 1) % k]))) in edges for i in range(k))


def verify_coloring(g: Graph, coloring) -> bool:
    return all(coloring[u] != coloring[v] for u, v in g.edges)


# -- structure helpers --------------------------------------------------------

def cycle_vertices(g: Graph) -> tuple[int, ...]:
    """Vertices of the 2-core, i.e. of the unique cycle for unicyclic ``g``."""
    deg = g.degrees()
    alive = [True] * g.n
    stack = [v for v in range(g.n) if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if not alive[v]:
            continue
        alive[v] = False
        for w in g.neighbors(v):
            if alive[w]:
                deg[w] -= 1
                if deg[w] == 1:
                    stack.append(w)
    return tuple(v for v in range(g.n) if alive[v])


def is_p6_shape(g: Graph) -> bool:
    """True iff ``g`` is isomorphic to ``p6(g.n)``."""
    if g.n < 7 or not g.is_unicyclic:
        return False
    core = set(cycle_vertices(g))
    if len(core) != 6:
        return False
    deg = g.degrees()
    hubs = [v for v in core if deg[v] == 3]
    if len(hubs) != 1 or any(deg[v] not in (2, 3) for v in core):
        return False
    rest = [v for v in range(g.n) if v not in core]
    return all(deg[v] <= 2 for v in rest) and sum(deg[v] == 1 for v in rest) == 1


# -- graph-spec grammar -------------------------------------------------------

_SPEC_RE = re.compile(r"^(cycle|p6|path):(\d+)$")


def parse_edge_file(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphSpecError("empty edge file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "n" or not head[1].isdigit():
        raise GraphSpecError(f"edge file must start with 'n <count>', got {lines[0]!r}")
    n = int(head[1])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise GraphSpecError(f"bad edge line {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if u >= n or v >= n:
            raise GraphSpecError(f"edge index out of range in {ln!r} (n={n})")
        edges.append((u, v))
    try:
        return Graph(n, tuple(edges))
    except GraphError as exc:
        raise GraphSpecError(str(exc)) from exc


def parse_graph_spec(spec: str) -> Graph:
    """Parse ``cycle:<n>``, ``p6:<n>``, ``path:<n>`` or ``file:<path>``.

    Disconnected graphs are rejected here.
    """
    spec = spec.strip()
    if spec.startswith("file:"):
        p = Path(spec[5:])
        try:
            text = p.read_text()
        except OSError as exc:
            raise GraphSpecError(f"cannot read {p}: {exc}") from exc
        g = parse_edge_file(text)
        g = Graph(g.n, g.edges, name=spec)
    else:
        m = _SPEC_RE.match(spec)
        if not m:
            raise GraphSpecError(
                f"bad graph spec {spec!r}; expected cycle:<n>, p6:<n>, path:<n> or file:<path>"
            )
        ctor = {"cycle": cycle, "p6": p6, "path": path}[m.group(1)]
        try:
            g = ctor(int(m.group(2)))
        except GraphError as exc:
            raise GraphSpecError(str(exc)) from exc
    if not g.connected:
        raise GraphSpecError(f"graph {spec!r} is disconnected")
    return g


def family_of(g: Graph) -> tuple[str, int] | None:
    """``("cycle", n)`` etc. when ``g`` was built by a family constructor."""
    if g.name:
        m = _SPEC_RE.match(g.name)
        if m:
            kind, n = m.group(1), int(m.group(2))
            ctor = {"cycle": cycle, "p6": p6, "path": path}[kind]
            if n == g.n and ctor(n).edges == g.edges:
                return kind, n
    return None

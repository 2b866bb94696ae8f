"""Finite graphs: plain multigraphs and graphs labeled by free generators.

Both kinds allow loops and parallel edges. An edge ``i = (u, v)`` has two
darts (oriented edges): ``2*i`` from ``u`` to ``v`` and ``2*i + 1`` back, so the
reverse of dart ``d`` is ``d ^ 1``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import InvalidGraph
from .words import Word, format_word

INFINITE = math.inf


@dataclass(frozen=True)
class Graph:
    num_vertices: int
    edges: tuple = ()

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise InvalidGraph(f"edge ({u}, {v}) has an endpoint outside 0..{self.num_vertices - 1}")
        object.__setattr__(self, "edges", edges)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def out_darts(self) -> tuple:
        out = [[] for _ in range(self.num_vertices)]
        for i, (u, v) in enumerate(self.edges):
            out[u].append(2 * i)
            out[v].append(2 * i + 1)
        return tuple(tuple(ds) for ds in out)

    def dart_tail(self, d: int) -> int:
        u, v = self.edges[d >> 1]
        return v if d & 1 else u

    def dart_head(self, d: int) -> int:
        u, v = self.edges[d >> 1]
        return u if d & 1 else v

    def valency(self, v: int) -> int:
        return len(self.out_darts[v])

    def neighbors(self, v: int) -> set:
        return {self.dart_head(d) for d in self.out_darts[v]}

    def components(self, removed=()) -> list:
        removed = set(removed)
        seen = set(removed)
        comps = []
        for s in range(self.num_vertices):
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for d in self.out_darts[x]:
                    y = self.dart_head(d)
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.num_vertices > 0 and len(self.components()) == 1

    def rank(self) -> int:
        """First Betti number (of a connected graph)."""
        return self.num_edges - self.num_vertices + len(self.components())

    def distances_from(self, source: int, limit: int | None = None) -> dict:
        dist = {source: 0}
        queue = deque([source])
        while queue:
            x = queue.popleft()
            if limit is not None and dist[x] >= limit:
                continue
            for d in self.out_darts[x]:
                y = self.dart_head(d)
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist


def girth(g, sources=None) -> float:
    """Length of a shortest circuit without backtracking; ``inf`` for forests.

    Breadth-first search from every vertex (or from ``sources``, which must meet
    every orbit of a vertex-transitive symmetry), stopping each search once it
    can no longer beat the best circuit found so far.
    """
    if isinstance(g, LabeledGraph):
        g = g.underlying()
    best = INFINITE
    out, edges = g.out_darts, g.edges
    for s in range(g.num_vertices) if sources is None else sources:
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            dx = dist[x]
            if 2 * dx >= best:
                break
            px = parent[x] ^ 1
            for d in out[x]:
                if d == px:
                    continue
                u, v = edges[d >> 1]
                y = u if d & 1 else v
                dy = dist.get(y)
                if dy is None:
                    dist[y] = dx + 1
                    parent[y] = d
                    queue.append(y)
                elif dx + dy + 1 < best:
                    best = dx + dy + 1
        if best == 1:
            break
    return best


def is_cut_vertex(g, v: int) -> bool:
    """True iff deleting ``v`` (with its edges) disconnects ``g``."""
    if isinstance(g, LabeledGraph):
        g = g.underlying()
    if g.num_vertices <= 1:
        return False
    return len(g.components(removed=(v,))) > 1


@dataclass(frozen=True)
class LabeledGraph:
    """Graph whose edges carry generator labels ``1..rank``.

    Reading the label of an edge backwards gives the inverse generator, so the
    dart ``2*i + 1`` of edge ``(u, v, x)`` is labeled ``-x``.
    """

    rank: int
    num_vertices: int
    edges: tuple = ()
    basepoint: int | None = 0

    def __post_init__(self):
        if self.rank < 1:
            raise InvalidGraph("rank must be at least 1")
        edges = tuple((int(u), int(v), int(x)) for u, v, x in self.edges)
        for u, v, x in edges:
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise InvalidGraph(f"edge ({u}, {v}, {x}) has an endpoint outside the vertex set")
            if not 1 <= x <= self.rank:
                raise InvalidGraph(f"edge label {x} outside 1..{self.rank}")
        object.__setattr__(self, "edges", edges)
        if self.basepoint is not None and not 0 <= self.basepoint < max(self.num_vertices, 1):
            raise InvalidGraph("basepoint outside the vertex set")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def labels(self) -> tuple:
        """Signed dart labels in canonical order ``1, -1, 2, -2, ...``."""
        return tuple(x for i in range(1, self.rank + 1) for x in (i, -i))

    @cached_property
    def transitions(self) -> tuple:
        """``transitions[v][x]`` lists the heads of darts at ``v`` labeled ``x``."""
        table = [{} for _ in range(self.num_vertices)]
        for u, v, x in self.edges:
            table[u].setdefault(x, []).append(v)
            table[v].setdefault(-x, []).append(u)
        return tuple(table)

    def follow(self, v: int, x: int):
        targets = self.transitions[v].get(x)
        return targets[0] if targets else None

    def read(self, v: int, word: Word):
        """End vertex of the path spelling ``word`` from ``v``, or ``None``."""
        for x in word:
            v = self.follow(v, x)
            if v is None:
                return None
        return v

    def valency(self, v: int) -> int:
        return sum(len(ts) for ts in self.transitions[v].values())

    def is_folded(self) -> bool:
        return all(len(ts) == 1 for row in self.transitions for ts in row.values())

    def missing_labels(self, v: int) -> list:
        row = self.transitions[v]
        return [x for x in self.labels if x not in row]

    def is_full(self) -> bool:
        return all(not self.missing_labels(v) for v in range(self.num_vertices))

    def underlying(self) -> Graph:
        return Graph(self.num_vertices, tuple((u, v) for u, v, _ in self.edges))

    def is_connected(self) -> bool:
        return self.underlying().is_connected()

    def path_words(self, source: int | None = None) -> dict:
        """Breadth-first spanning tree words from ``source`` (default basepoint)."""
        s = self.basepoint if source is None else source
        words = {s: ()}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for x in self.labels:
                for w in self.transitions[v].get(x, ()):
                    if w not in words:
                        words[w] = words[v] + (x,)
                        queue.append(w)
        return words


def to_dot(g, name: str = "G", vertex_names=None) -> str:
    """DOT text for a plain or labeled graph (labels become edge labels)."""
    names = vertex_names or (lambda v: f"v{v}")
    lines = []
    if isinstance(g, LabeledGraph):
        lines.append(f"digraph {name} {{")
        for v in range(g.num_vertices):
            shape = ' [shape=doublecircle]' if v == g.basepoint else ""
            lines.append(f'  {names(v)}{shape};')
        for u, v, x in g.edges:
            lines.append(f'  {names(u)} -> {names(v)} [label="{format_word((x,))}"];')
    else:
        lines.append(f"graph {name} {{")
        for v in range(g.num_vertices):
            lines.append(f"  {names(v)};")
        for u, v in g.edges:
            lines.append(f"  {names(u)} -- {names(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"

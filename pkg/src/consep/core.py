"""Stallings core graphs of finitely generated subgroups of a free group."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import InvalidGraph, NotFiniteIndex
from .graphs import LabeledGraph
from .words import Word, inverse, multiply, reduce_word


@dataclass(frozen=True)
class OuterPair:
    """One class of associated outer edges of a completed core.

    ``outer`` is the representative's outer vertex ``i(e)``; the edge ``e``
    points inward with signed label ``label``. Following ``label`` through the
    core visits ``path`` and exits through ``e*`` into the outer vertex
    ``partner = t(e*)``.
    """

    outer: int
    label: int
    partner: int
    path: tuple = ()


@dataclass(frozen=True)
class CoreGraph(LabeledGraph):
    """Folded based graph of a subgroup ``H``.

    When ``completed`` is set, vertices ``0..core_size-1`` form the core and
    the remaining ones are outer vertices of valency 1.
    """

    generators: tuple = ()
    completed: bool = False
    core_size: int | None = None
    outer_pairs: tuple = ()

    @property
    def core_vertices(self) -> range:
        return range(self.num_vertices if self.core_size is None else self.core_size)


@dataclass(frozen=True)
class CoverGraph(LabeledGraph):
    """Folded, connected labeled graph with one in- and one out-edge per label
    at every vertex, i.e. a finite cover of the rose."""

    def __post_init__(self):
        super().__post_init__()
        check_cover(self)

    @property
    def index(self) -> int:
        return self.num_vertices


def check_cover(g: LabeledGraph) -> None:
    if g.num_vertices == 0:
        raise InvalidGraph("empty graph")
    if not g.is_folded():
        raise InvalidGraph("graph is not folded")
    for v in range(g.num_vertices):
        missing = g.missing_labels(v)
        if missing:
            raise NotFiniteIndex(f"vertex {v} has no edge labeled {missing[0]:+d}")
    if not g.is_connected():
        raise InvalidGraph("graph is not connected")


# -- folding -----------------------------------------------------------------


def fold(rank: int, num_vertices: int, edges, basepoint: int = 0) -> LabeledGraph:
    """Stallings folding: identify equal-label darts at each vertex until none remain.

    Vertices are renumbered by first appearance in ``0..num_vertices-1``.
    """
    adj = {v: {} for v in range(num_vertices)}
    for u, v, x in edges:
        adj[u].setdefault(x, set()).add(v)
        adj[v].setdefault(-x, set()).add(u)

    def absorb(u, w):
        row = adj.pop(u)
        for x, targets in row.items():
            for y in targets:
                if y == u:
                    y = w
                else:
                    back = adj[y][-x]
                    back.discard(u)
                    back.add(w)
                adj[w].setdefault(x, set()).add(y)

    stack = list(range(num_vertices))
    while stack:
        v = stack.pop()
        if v not in adj:
            continue
        for targets in adj[v].values():
            if len(targets) > 1:
                a, b = sorted(targets)[:2]
                if b == basepoint:
                    a, b = b, a
                absorb(b, a)
                stack.extend((v, a))
                break

    order = sorted(adj)
    index = {v: i for i, v in enumerate(order)}
    new_edges = sorted(
        {(index[u], index[y], x) for u in order for x, ts in adj[u].items() if x > 0 for y in ts}
    )
    return LabeledGraph(rank, len(order), tuple(new_edges), index[basepoint])


def _prune(num_vertices: int, edges, keep=()) -> tuple:
    """Repeatedly delete valency-1 vertices not in ``keep``; returns (alive, edges)."""
    valency = [0] * num_vertices
    incident = [[] for _ in range(num_vertices)]
    for i, (u, v, _) in enumerate(edges):
        valency[u] += 1
        valency[v] += 1
        incident[u].append(i)
        incident[v].append(i)
    alive_edge = [True] * len(edges)
    alive = [True] * num_vertices
    queue = deque(v for v in range(num_vertices) if valency[v] <= 1 and v not in keep)
    while queue:
        v = queue.popleft()
        if not alive[v] or v in keep or valency[v] > 1:
            continue
        alive[v] = False
        for i in incident[v]:
            if alive_edge[i]:
                alive_edge[i] = False
                u, w, _ = edges[i]
                other = w if u == v else u
                valency[other] -= 1
                valency[v] -= 1
                if other not in keep and valency[other] <= 1:
                    queue.append(other)
    kept = [v for v in range(num_vertices) if alive[v]]
    return kept, [e for e, ok in zip(edges, alive_edge) if ok]


def canonical_form(g: LabeledGraph) -> LabeledGraph:
    """Renumber a connected folded graph by breadth-first search from the
    basepoint, visiting labels in order ``1, -1, 2, -2, ...``.

    Two based folded graphs are isomorphic iff their canonical forms are equal.
    """
    order = {g.basepoint: 0}
    queue = deque([g.basepoint])
    while queue:
        v = queue.popleft()
        for x in g.labels:
            for w in g.transitions[v].get(x, ()):
                if w not in order:
                    order[w] = len(order)
                    queue.append(w)
    if len(order) != g.num_vertices:
        raise InvalidGraph("graph is not connected")
    edges = sorted((order[u], order[v], x) for u, v, x in g.edges)
    return LabeledGraph(g.rank, g.num_vertices, tuple(edges), 0)


def _as_core(g: LabeledGraph, generators=()) -> CoreGraph:
    return CoreGraph(g.rank, g.num_vertices, g.edges, g.basepoint, tuple(generators))


def _core_of(rank: int, num_vertices: int, edges, basepoint: int, generators=None) -> CoreGraph:
    kept, kept_edges = _prune(num_vertices, list(edges), keep={basepoint})
    index = {v: i for i, v in enumerate(kept)}
    g = LabeledGraph(rank, len(kept), tuple((index[u], index[v], x) for u, v, x in kept_edges), index[basepoint])
    g = canonical_form(g)
    gens = free_basis(g) if generators is None else generators
    return _as_core(g, gens)


# -- operations --------------------------------------------------------------


def build_core(rank: int, generators) -> CoreGraph:
    """Core graph of the subgroup generated by ``generators`` (a list of words)."""
    gens = [reduce_word(w) for w in generators]
    gens = [w for w in gens if w]
    for w in gens:
        if max(abs(x) for x in w) > rank:
            raise ValueError(f"word {w} uses a generator beyond rank {rank}")
    num_vertices = 1
    edges = []
    for w in gens:
        path = [0] + list(range(num_vertices, num_vertices + len(w) - 1)) + [0]
        num_vertices += len(w) - 1
        for (a, b), x in zip(zip(path, path[1:]), w):
            edges.append((a, b, x) if x > 0 else (b, a, -x))
    folded = fold(rank, num_vertices, edges, 0)
    return _core_of(rank, folded.num_vertices, folded.edges, folded.basepoint, tuple(gens))


def free_basis(g: LabeledGraph) -> tuple:
    """Free basis of the subgroup read at the basepoint, one word per non-tree edge."""
    words = {g.basepoint: ()}
    tree = set()
    queue = deque([g.basepoint])
    while queue:
        v = queue.popleft()
        for i, (a, b, x) in enumerate(g.edges):
            if a == v and b not in words:
                words[b] = words[v] + (x,)
                tree.add(i)
                queue.append(b)
            elif b == v and a not in words:
                words[a] = words[v] + (-x,)
                tree.add(i)
                queue.append(a)
    return tuple(
        multiply(words[a], (x,), inverse(words[b]))
        for i, (a, b, x) in enumerate(g.edges)
        if i not in tree
    )


def membership(h: LabeledGraph, w: Word) -> bool:
    """True iff ``w`` labels a closed path at the basepoint of ``h``."""
    return h.read(h.basepoint, reduce_word(w)) == h.basepoint


def rank(c: LabeledGraph) -> int:
    return c.num_edges - c.num_vertices + 1


def fiber_product(g1: LabeledGraph, g2: LabeledGraph) -> LabeledGraph:
    """Based component of the label-respecting product of two folded graphs."""
    if g1.rank != g2.rank:
        raise ValueError("graphs over different alphabets")
    start = (g1.basepoint, g2.basepoint)
    index = {start: 0}
    queue = deque([start])
    edges = []
    while queue:
        p = queue.popleft()
        u1, u2 = p
        for x in range(1, g1.rank + 1):
            v1, v2 = g1.follow(u1, x), g2.follow(u2, x)
            if v1 is None or v2 is None:
                continue
            q = (v1, v2)
            if q not in index:
                index[q] = len(index)
                queue.append(q)
            edges.append((index[p], index[q], x))
        for x in range(1, g1.rank + 1):
            # incoming x-edges reach pairs not otherwise discovered
            v1, v2 = g1.follow(u1, -x), g2.follow(u2, -x)
            if v1 is None or v2 is None:
                continue
            q = (v1, v2)
            if q not in index:
                index[q] = len(index)
                queue.append(q)
    return LabeledGraph(g1.rank, len(index), tuple(sorted(set(edges))), 0)


def intersect(h1: LabeledGraph, h2: LabeledGraph) -> CoreGraph:
    """Core graph of ``H1 ∩ H2``."""
    p = fiber_product(h1, h2)
    return _core_of(p.rank, p.num_vertices, p.edges, p.basepoint)


def cyclic_core(c: LabeledGraph) -> tuple:
    """Strip every valency-1 vertex, including the basepoint.

    Returns ``(vertices, edges, hair_word, anchor)``: the surviving vertex list
    and edges (original numbering), the word read from the basepoint to the
    nearest surviving vertex ``anchor``. ``anchor`` is ``None`` for a tree.
    """
    kept, kept_edges = _prune(c.num_vertices, list(c.edges))
    if not kept:
        return [], [], (), None
    alive = set(kept)
    words = c.path_words()
    anchor = min(alive, key=lambda v: (len(words[v]), v))
    return kept, kept_edges, words[anchor], anchor


def immersion_images(h2: LabeledGraph, h1: LabeledGraph) -> list:
    """Try every vertex of ``h1`` as the image of the anchor of ``h2``'s cyclic core.

    Returns a list of ``(vertex, success)`` pairs. The extension is forced
    because ``h1`` is folded.
    """
    kept, kept_edges, _, anchor = cyclic_core(h2)
    if anchor is None:
        return [(w, True) for w in range(h1.num_vertices)]
    darts = _core_darts(kept, kept_edges)
    return [(w, _immerses(darts, anchor, h1, w)) for w in range(h1.num_vertices)]


def _core_darts(kept, kept_edges) -> dict:
    darts = {v: [] for v in kept}
    for u, v, x in kept_edges:
        darts[u].append((x, v))
        darts[v].append((-x, u))
    return darts


def is_conjugate_into(h2: LabeledGraph, h1: LabeledGraph):
    """Return ``g`` with ``g^-1 H2 g <= H1``, or ``None`` if no such ``g`` exists."""
    kept, kept_edges, hair, anchor = cyclic_core(h2)
    if anchor is None:
        return ()
    darts = _core_darts(kept, kept_edges)
    to_vertex = h1.path_words()
    for w in range(h1.num_vertices):
        if _immerses(darts, anchor, h1, w):
            return multiply(hair, inverse(to_vertex[w]))
    return None


def _immerses(darts, anchor, target: LabeledGraph, w: int) -> bool:
    image = {anchor: w}
    queue = deque([anchor])
    while queue:
        a = queue.popleft()
        for x, b in darts[a]:
            t = target.follow(image[a], x)
            if t is None:
                return False
            seen = image.get(b)
            if seen is None:
                image[b] = t
                queue.append(b)
            elif seen != t:
                return False
    return True


def complete_core(c: CoreGraph) -> CoreGraph:
    """Attach outer edges so every core vertex has valency ``2n`` and pair them up."""
    if c.completed:
        return c
    n_core = c.num_vertices
    edges = list(c.edges)
    attach = []  # (outer vertex, core vertex, outward label from core)
    nv = n_core
    for v in range(n_core):
        for x in c.missing_labels(v):
            o = nv
            nv += 1
            edges.append((v, o, x) if x > 0 else (o, v, -x))
            attach.append((o, v, x))
    full = LabeledGraph(c.rank, nv, tuple(edges), c.basepoint)
    pairs = []
    done = set()
    for o, v, x in attach:
        if o in done:
            continue
        y = -x  # label of the inward edge at o
        path = [v]
        cur = v
        while True:
            nxt = full.follow(cur, y)
            if nxt >= n_core:
                partner = nxt
                break
            cur = nxt
            path.append(cur)
        done.update((o, partner))
        rep, other, lab, seq = (o, partner, y, path) if o < partner else (partner, o, -y, path[::-1])
        pairs.append(OuterPair(rep, lab, other, tuple(seq)))
    return CoreGraph(
        c.rank, nv, tuple(edges), c.basepoint, c.generators,
        completed=True, core_size=n_core, outer_pairs=tuple(sorted(pairs, key=lambda p: (p.outer, p.label))),
    )


@dataclass(frozen=True)
class CosetTable:
    """Right action of the generators on the vertices (cosets) of a cover."""

    index: int
    basepoint: int
    permutations: dict

    def act(self, v: int, word: Word) -> int:
        for x in word:
            v = self.permutations[x][v] if x > 0 else self.inverse(abs(x))[v]
        return v

    def inverse(self, x: int) -> tuple:
        p = self.permutations[x]
        inv = [0] * len(p)
        for i, j in enumerate(p):
            inv[j] = i
        return tuple(inv)


def coset_table(d: LabeledGraph) -> CosetTable:
    check_cover(d)
    perms = {x: tuple(d.follow(v, x) for v in range(d.num_vertices)) for x in range(1, d.rank + 1)}
    return CosetTable(d.num_vertices, d.basepoint, perms)


def as_cover(g: LabeledGraph) -> CoverGraph:
    return g if isinstance(g, CoverGraph) else CoverGraph(g.rank, g.num_vertices, g.edges, g.basepoint)


def trivial_subgroup(rank: int) -> CoreGraph:
    return build_core(rank, [])


def rose(rank: int) -> CoreGraph:
    """Core graph of the whole free group."""
    return build_core(rank, [(i,) for i in range(1, rank + 1)])

"""Ordinary and branched covers of finite graphs.

Covers are built as voltage graphs: each vertex ``v`` of the base gets a fiber
``v*S .. v*S + S-1`` and edge ``i`` with voltage ``t`` joins sheet ``s`` over
its tail to sheet ``s ^ t`` over its head.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .core import CoverGraph, check_cover
from .errors import HypothesisViolated, InvalidGraph, VerificationFailed
from .graphs import INFINITE, Graph, LabeledGraph, girth, is_cut_vertex
from .report import Report


@dataclass(frozen=True)
class BranchedCoverMap:
    """Map ``source -> target`` of graphs.

    ``edge_map[i] = j`` sends source edge ``i`` onto target edge ``j`` with the
    same orientation. ``degrees[v]`` is the branched degree of source vertex
    ``v``; an ordinary cover has every degree equal to 1.
    """

    source: object
    target: object
    vertex_map: tuple
    edge_map: tuple
    degrees: tuple
    sheets: int
    marked_vertex: int | None = None

    @property
    def is_ordinary(self) -> bool:
        return all(d == 1 for d in self.degrees)


@dataclass(frozen=True)
class GirthCover:
    """A cover of ``covering.target`` whose girth has been checked by BFS."""

    graph: object
    girth: float
    covering: BranchedCoverMap
    girths: tuple = ()
    sizes: tuple = ()
    functionals: tuple = field(default=(), compare=False)


def _plain(g) -> Graph:
    return g.underlying() if isinstance(g, LabeledGraph) else g


def identity_cover(g) -> BranchedCoverMap:
    n, m = g.num_vertices, g.num_edges
    return BranchedCoverMap(g, g, tuple(range(n)), tuple(range(m)), (1,) * n, 1)


def compose(upper: BranchedCoverMap, lower: BranchedCoverMap) -> BranchedCoverMap:
    """``lower ∘ upper`` for ``upper: X -> Y`` and ``lower: Y -> Z``."""
    vm = tuple(lower.vertex_map[y] for y in upper.vertex_map)
    em = tuple(lower.edge_map[e] for e in upper.edge_map)
    deg = tuple(d * lower.degrees[y] for d, y in zip(upper.degrees, upper.vertex_map))
    return BranchedCoverMap(upper.source, lower.target, vm, em, deg, upper.sheets * lower.sheets)


def voltage_cover(g, voltages, bits: int) -> BranchedCoverMap:
    """Regular ``2**bits``-sheeted cover with edge voltages in ``(Z/2)**bits``."""
    S = 1 << bits
    n = g.num_vertices
    labeled = isinstance(g, LabeledGraph)
    edges, edge_map = [], []
    for i, (e, t) in enumerate(zip(g.edges, voltages)):
        u, v = e[0], e[1]
        for s in range(S):
            edges.append((u * S + s, v * S + (s ^ t)) + tuple(e[2:]))
            edge_map.append(i)
    if labeled:
        src = LabeledGraph(g.rank, n * S, tuple(edges), (g.basepoint or 0) * S)
    else:
        src = Graph(n * S, tuple(edges))
    vm = tuple(v // S for v in range(n * S))
    return BranchedCoverMap(src, g, vm, tuple(edge_map), (1,) * (n * S), S)


def spanning_tree_edges(g) -> set:
    """Edge indices of the breadth-first spanning forest."""
    p = _plain(g)
    seen, tree = set(), set()
    for root in range(p.num_vertices):
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for d in p.out_darts[x]:
                y = p.dart_head(d)
                if y not in seen:
                    seen.add(y)
                    tree.add(d >> 1)
                    queue.append(y)
    return tree


def homology_cover(g) -> BranchedCoverMap:
    """The cover for the kernel of ``pi_1 -> H_1(g; Z/2)``: ``2**rank`` sheets."""
    p = _plain(g)
    if not p.is_connected():
        raise InvalidGraph("homology cover needs a connected graph")
    tree = spanning_tree_edges(p)
    voltages, r = [], 0
    for i in range(p.num_edges):
        if i in tree:
            voltages.append(0)
        else:
            voltages.append(1 << r)
            r += 1
    return voltage_cover(g, voltages, r)


# -- girth amplification -----------------------------------------------------


def closed_walk_classes(g, max_length: int) -> dict:
    """Mod-2 classes of cyclically reduced closed walks of length ``<= max_length``.

    Returns ``{edge bitmask: shortest walk length}``. Each walk is enumerated
    once from its smallest vertex, pruned by distance back to the start.
    """
    p = _plain(g)
    out, edges = p.out_darts, p.edges
    found = {}
    half = max_length // 2 + 1
    for s in range(p.num_vertices):
        dist = p.distances_from(s, half)
        stack = [(s, -1, 0, 0, -1)]
        while stack:
            x, came, length, mask, first = stack.pop()
            back = came ^ 1 if came >= 0 else -1
            n1 = length + 1
            for d in out[x]:
                if d == back:
                    continue
                u, v = edges[d >> 1]
                y = u if d & 1 else v
                if y < s:
                    continue
                m2 = mask ^ (1 << (d >> 1))
                f = d if first < 0 else first
                if y == s and d != (f ^ 1) and m2:
                    if found.get(m2, max_length + 1) > n1:
                        found[m2] = n1
                if n1 < max_length and dist.get(y, max_length + 1) <= max_length - n1:
                    stack.append((y, d, n1, m2, f))
    return found


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


def killing_functionals(mandatory, optional=()) -> list:
    """Linear functionals ``f`` over Z/2 (as edge bitmasks) with ``f·c = 1`` for
    every mandatory class ``c``, satisfying as many optional ones as a greedy
    consistent choice allows. Functionals are independent on the span of the classes.
    """
    funcs = []
    mandatory, optional = list(mandatory), list(optional)
    while mandatory:
        basis = {}  # pivot -> (row, rhs)

        def reduce_row(c):
            v, r = c, 1
            while v:
                top = v.bit_length() - 1
                if top not in basis:
                    return v, r
                bv, br = basis[top]
                v ^= bv
                r ^= br
            return 0, r

        for c in mandatory + optional:
            v, r = reduce_row(c)
            if v:
                basis[v.bit_length() - 1] = (v, r)
        f = 0
        for top in sorted(basis):
            v, r = basis[top]
            if _parity(f & v) != r:
                f |= 1 << top
        funcs.append(f)
        mandatory = [c for c in mandatory if not _parity(f & c)]
        optional = [c for c in optional if not _parity(f & c)]
    return funcs


def killing_cover(g, max_length: int, current_girth=None):
    """One amplification round: a ``(Z/2)**k`` cover in which no shortest
    circuit of ``g`` lifts to a closed walk. Returns ``(cover, functionals)``."""
    gi = girth(g) if current_girth is None else current_girth
    classes = closed_walk_classes(g, max(max_length, gi))
    ordered = sorted(classes.items(), key=lambda kv: (kv[1], kv[0]))
    mandatory = [c for c, L in ordered if L <= gi]
    optional = [c for c, L in ordered if L > gi]
    funcs = killing_functionals(mandatory, optional)
    voltages = [sum(((f >> i) & 1) << j for j, f in enumerate(funcs)) for i in range(g.num_edges)]
    return voltage_cover(g, voltages, len(funcs)), funcs


def _fiber_girth(cov: BranchedCoverMap) -> float:
    # the deck group permutes each fiber transitively, so one lift per base vertex suffices
    return girth(cov.source, sources=range(0, cov.source.num_vertices, cov.sheets))


def amplify_steps(g, m: int):
    """Yield ``(graph, girth, map_to_g)`` for each stage, starting with ``g``."""
    p = _plain(g)
    if not p.is_connected():
        raise InvalidGraph("girth amplification needs a connected graph")
    current = identity_cover(g)
    gi = girth(g)
    yield g, gi, current
    while gi <= m:
        look = min(m, gi + 3)
        step, _ = killing_cover(current.source, look, gi)
        new = _fiber_girth(step)
        if not new > gi:
            raise VerificationFailed(f"girth did not increase ({gi} -> {new})")
        current = compose(step, current)
        gi = new
        yield current.source, gi, current


def girth_amplify(g, m: int) -> GirthCover:
    """A finite connected cover of ``g`` with girth greater than ``m``.

    Forests are returned unchanged.
    """
    girths, sizes, last = [], [], None
    for graph, gi, cov in amplify_steps(g, m):
        girths.append(gi)
        sizes.append(graph.num_vertices)
        last = (graph, gi, cov)
    graph, gi, cov = last
    return GirthCover(graph, gi, cov, tuple(girths), tuple(sizes))


def rose_graph(rank: int) -> LabeledGraph:
    return LabeledGraph(rank, 1, tuple((0, 0, x) for x in range(1, rank + 1)), 0)


@lru_cache(maxsize=None)
def rose_girth_cover(rank: int, C: int) -> GirthCover:
    """Finite cover of the rose with girth at least ``C + 1``."""
    gc = girth_amplify(rose_graph(rank), C)
    graph = gc.graph
    cover = CoverGraph(graph.rank, graph.num_vertices, graph.edges, graph.basepoint)
    return GirthCover(cover, gc.girth, gc.covering, gc.girths, gc.sizes)


# -- branched covers ---------------------------------------------------------


def build_branched_cover(g, degrees) -> BranchedCoverMap:
    """Connected branched cover with branched degree ``degrees[v]`` over every ``v``.

    The number of sheets is ``lcm(degrees)``: vertex ``v`` gets ``k/d_v`` lifts,
    each carrying ``d_v`` darts over every dart at ``v``. Over each edge the
    dart slots on both sides are listed lift by lift and matched in order.
    A component meets every lift's full star, so its sheet count is a multiple
    of each ``d_v``, hence of ``k``; the cover is therefore connected.
    """
    p = _plain(g)
    if not p.is_connected():
        raise InvalidGraph("branched cover needs a connected graph")
    deg = [int(degrees[v]) for v in range(p.num_vertices)]
    if any(d < 1 for d in deg):
        raise ValueError("branched degrees must be positive")
    k = math.lcm(*deg) if deg else 1
    first = []
    total = 0
    for v in range(p.num_vertices):
        first.append(total)
        total += k // deg[v]
    vm = tuple(v for v in range(p.num_vertices) for _ in range(k // deg[v]))
    edges, em = [], []
    for i, (u, v) in enumerate(p.edges):
        for slot in range(k):
            edges.append((first[u] + slot // deg[u], first[v] + slot // deg[v]))
            em.append(i)
    source = Graph(total, tuple(edges))
    return BranchedCoverMap(source, p, vm, tuple(em), tuple(deg[v] for v in vm), k)


def build_branched_cover_noncut(g, degrees, v: int) -> BranchedCoverMap:
    """As :func:`build_branched_cover`, with some lift of ``v`` not a cut vertex.

    Needs ``degrees[u] >= 2`` for every neighbor ``u != v``. The cover is
    passed to a further ordinary cover of girth at least 3 when necessary.
    """
    p = _plain(g)
    for u in sorted(p.neighbors(v) - {v}):
        if degrees[u] < 2:
            raise HypothesisViolated(f"neighbor {u} of vertex {v} has prescribed degree {degrees[u]} < 2")
    cov = build_branched_cover(p, degrees)
    if girth(cov.source) < 3:
        cov = compose(girth_amplify(cov.source, 2).covering, cov)
    for w, img in enumerate(cov.vertex_map):
        if img == v and not is_cut_vertex(cov.source, w):
            return BranchedCoverMap(cov.source, cov.target, cov.vertex_map, cov.edge_map,
                                    cov.degrees, cov.sheets, marked_vertex=w)
    raise VerificationFailed(f"every lift of vertex {v} is a cut vertex")


def verify_branched_cover(m: BranchedCoverMap, prescribed=None) -> Report:
    """Check the branched-cover conditions, connectivity and, optionally, prescribed degrees."""
    rep = Report()
    src, tgt = _plain(m.source), _plain(m.target)
    ok_shape = (
        len(m.vertex_map) == src.num_vertices
        and len(m.edge_map) == src.num_edges
        and len(m.degrees) == src.num_vertices
        and all(0 <= y < tgt.num_vertices for y in m.vertex_map)
        and all(0 <= j < tgt.num_edges for j in m.edge_map)
    )
    if not rep.add("map tables", ok_shape, "" if ok_shape else "map tables have wrong size or range"):
        return rep
    bad = [i for i, (a, b) in enumerate(src.edges)
           if (m.vertex_map[a], m.vertex_map[b]) != tgt.edges[m.edge_map[i]]]
    rep.add("graph map", not bad, f"edges {bad[:5]} not mapped onto their images" if bad else "")

    counts = [0] * tgt.num_edges
    for j in m.edge_map:
        counts[j] += 1
    wrong = [j for j, c in enumerate(counts) if c != m.sheets]
    rep.add("edges covered k times", not wrong,
            f"target edges {wrong[:5]} covered {[counts[j] for j in wrong[:5]]} times, k={m.sheets}" if wrong else "")

    bad_vertices = []
    for w in range(src.num_vertices):
        tally = {}
        for d in src.out_darts[w]:
            td = 2 * m.edge_map[d >> 1] + (d & 1)
            tally[td] = tally.get(td, 0) + 1
        expected = tgt.out_darts[m.vertex_map[w]]
        if any(tally.get(td, 0) != m.degrees[w] for td in expected) or set(tally) - set(expected):
            bad_vertices.append(w)
    rep.add("uniform local degree", not bad_vertices,
            f"source vertices {bad_vertices[:5]} violate it" if bad_vertices else "")

    sums = [0] * tgt.num_vertices
    for w, y in enumerate(m.vertex_map):
        sums[y] += m.degrees[w]
    wrong = [y for y, s in enumerate(sums) if s != m.sheets]
    rep.add("fiber degrees sum to k", not wrong,
            f"target vertices {wrong[:5]} have sums {[sums[y] for y in wrong[:5]]}, k={m.sheets}" if wrong else "")

    rep.add("connected", src.is_connected())
    if prescribed is not None:
        off = [w for w, y in enumerate(m.vertex_map) if m.degrees[w] != prescribed[y]]
        rep.add("prescribed degrees", not off, f"source vertices {off[:5]}" if off else "")
    return rep


def is_cover_graph(g: LabeledGraph) -> bool:
    try:
        check_cover(g)
    except Exception:
        return False
    return True


__all__ = [
    "BranchedCoverMap", "GirthCover", "INFINITE", "amplify_steps", "build_branched_cover",
    "build_branched_cover_noncut", "closed_walk_classes", "compose", "girth", "girth_amplify",
    "homology_cover", "identity_cover", "is_cover_graph", "is_cut_vertex", "killing_cover",
    "killing_functionals", "rose_girth_cover", "rose_graph", "verify_branched_cover", "voltage_cover",
]

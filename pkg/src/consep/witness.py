"""Finite-index witnesses that keep one subgroup away from every conjugate of another.

Given ``H1`` and a length bound ``C``, the completed core of ``H1`` is closed
up into a finite cover of the rose by gluing, for each pair of associated outer
edges, a copy of a large-girth cover with one edge cut open.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .core import (
    CoreGraph, CoverGraph, as_cover, canonical_form, check_cover, complete_core,
    fiber_product, free_basis, is_conjugate_into, membership,
)
from .covers import rose_girth_cover
from .errors import HypothesisViolated, InvalidGraph, TrivialH2
from .graphs import LabeledGraph
from .report import Report
from .words import conjugate, format_word, inverse, multiply, reduce_word


@dataclass(frozen=True)
class WitnessParams:
    C: int

    def __post_init__(self):
        if self.C < 1:
            raise ValueError("C must be at least 1")


@dataclass(frozen=True)
class DeltaConstruction:
    """The glued cover together with what went into it."""

    graph: CoverGraph
    completed: CoreGraph
    kernel: CoverGraph
    kernel_girth: float
    cut_edges: tuple  # per glued copy: (start, end) of the removed edge in the kernel
    separations: tuple  # per glued copy: distance between its ends once the edge is removed
    C: int

    @property
    def provenance(self) -> dict:
        return {
            "C": self.C,
            "glued_copies": len(self.cut_edges),
            "kernel_girth": self.kernel_girth,
            "kernel_sheets": self.kernel.num_vertices,
            "index": self.graph.num_vertices,
            "core_vertices": self.completed.core_size,
            "normal": "not normalized",
        }


def _minimal(h) -> CoreGraph:
    if isinstance(h, CoreGraph) and not h.completed:
        return h
    if isinstance(h, CoreGraph):
        raise InvalidGraph("expected a minimal core, got a completed one")
    return CoreGraph(h.rank, h.num_vertices, h.edges, h.basepoint, free_basis(h))


def _distance_without(k: LabeledGraph, skip: int, a: int, b: int) -> float:
    g = k.underlying()
    dist = {a: 0}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            return dist[x]
        for d in g.out_darts[x]:
            y = g.dart_head(d)
            if (d >> 1) != skip and y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return float("inf")


def construct_delta(h1, C: int) -> DeltaConstruction:
    """Glue copies of a girth ``> C`` cover onto the completed core of ``h1``.

    Core vertices keep their numbers; copy ``j`` of the kernel occupies the
    block after the core. Its outer vertices are identified with the ends of
    the kernel edge that leaves kernel vertex 0 with the pair's label.
    """
    core = _minimal(h1)
    comp = complete_core(core)
    gk = rose_girth_cover(core.rank, C)
    k = gk.graph
    nc, nk = comp.core_size, k.num_vertices
    rename = {}
    cuts, seps, skipped = [], [], []
    for j, pair in enumerate(comp.outer_pairs):
        y = pair.label
        idx = next(i for i, (u, _, x) in enumerate(k.edges) if u == 0 and x == abs(y))
        u, v, _ = k.edges[idx]
        start, end = (u, v) if y > 0 else (v, u)
        base = nc + j * nk
        rename[pair.outer] = base + start
        rename[pair.partner] = base + end
        cuts.append((start, end))
        skipped.append(idx)
        seps.append(_distance_without(k, idx, start, end))
    edges = [(rename.get(u, u), rename.get(v, v), x) for u, v, x in comp.edges]
    for j, idx in enumerate(skipped):
        base = nc + j * nk
        edges.extend((base + u, base + v, x) for i, (u, v, x) in enumerate(k.edges) if i != idx)
    delta = CoverGraph(core.rank, nc + len(skipped) * nk, tuple(edges), comp.basepoint)
    return DeltaConstruction(delta, comp, k, gk.girth, tuple(cuts), tuple(seps), C)


def build_delta(h1, params) -> CoverGraph:
    C = params.C if isinstance(params, WitnessParams) else int(params)
    return construct_delta(h1, C).graph


# -- verification ------------------------------------------------------------


def embed_core(core: LabeledGraph, delta: LabeledGraph):
    """Image of the core in ``delta`` matching basepoints and labels, or ``None``.

    Returns ``(vertex_image, core_edge_indices)`` when the map is an injective
    label-preserving embedding.
    """
    image = {core.basepoint: delta.basepoint}
    queue = deque([core.basepoint])
    while queue:
        a = queue.popleft()
        for x in core.labels:
            for b in core.transitions[a].get(x, ()):
                t = delta.follow(image[a], x)
                if t is None:
                    return None
                if b not in image:
                    image[b] = t
                    queue.append(b)
                elif image[b] != t:
                    return None
    if len(set(image.values())) != len(image) or len(image) != core.num_vertices:
        return None
    lookup = {}
    for i, e in enumerate(delta.edges):
        lookup.setdefault(e, i)
    edge_ids = set()
    for u, v, x in core.edges:
        i = lookup.get((image[u], image[v], x))
        if i is None:
            return None
        edge_ids.add(i)
    return image, edge_ids


def _word_of(delta: LabeledGraph, darts) -> str:
    return format_word(tuple(delta.edges[d >> 1][2] * (-1 if d & 1 else 1) for d in darts))


def verify_witness_properties(delta: LabeledGraph, core, C: int) -> Report:
    """Exhaustively check the three short-loop guarantees of a glued cover.

    1. the core embeds at the basepoint;
    2. every cyclically reduced closed walk of length ``<= C`` uses core edges only;
    3. every reduced path of length ``<= C`` between core vertices uses core edges only.
    """
    rep = Report()
    core = core if isinstance(core, LabeledGraph) else core.graph
    found = embed_core(core, delta)
    if not rep.add("core is a subgraph", found is not None):
        rep.add("short loops lie in the core", False, "core not embedded")
        rep.add("short paths between core vertices lie in the core", False, "core not embedded")
        return rep
    image, core_edges = found
    g = delta.underlying()
    out, edges = g.out_darts, g.edges

    # 2: closed walks, each enumerated from its smallest vertex
    bad, count = None, 0
    half = C // 2 + 1
    for s in range(g.num_vertices):
        dist = g.distances_from(s, half)
        stack = [(s, -1, ())]
        while stack and bad is None:
            x, came, path = stack.pop()
            back = came ^ 1 if came >= 0 else -1
            n1 = len(path) + 1
            for d in out[x]:
                if d == back:
                    continue
                u, v = edges[d >> 1]
                y = u if d & 1 else v
                if y < s:
                    continue
                walk = path + (d,)
                if y == s and d != (walk[0] ^ 1):
                    count += 1
                    if any((e >> 1) not in core_edges for e in walk):
                        bad = (s, walk)
                        break
                if n1 < C and dist.get(y, C + 1) <= C - n1:
                    stack.append((y, d, walk))
        if bad is not None:
            break
    rep.add("short loops lie in the core", bad is None,
            f"{count} closed walks checked" if bad is None
            else f"closed walk {_word_of(delta, bad[1])} at vertex {bad[0]} leaves the core")

    # 3: paths between core vertices
    targets = set(image.values())
    to_core = {t: 0 for t in targets}
    queue = deque(targets)
    while queue:
        x = queue.popleft()
        for d in out[x]:
            u, v = edges[d >> 1]
            y = u if d & 1 else v
            if y not in to_core:
                to_core[y] = to_core[x] + 1
                queue.append(y)
    bad, count = None, 0
    for s in sorted(targets):
        stack = [(s, -1, (), True)]
        while stack and bad is None:
            x, came, path, inside = stack.pop()
            back = came ^ 1 if came >= 0 else -1
            n1 = len(path) + 1
            for d in out[x]:
                if d == back:
                    continue
                u, v = edges[d >> 1]
                y = u if d & 1 else v
                still = inside and (d >> 1) in core_edges
                if y in targets:
                    count += 1
                    if not still:
                        bad = (s, path + (d,))
                        break
                if n1 < C and to_core.get(y, C + 1) <= C - n1:
                    stack.append((y, d, path + (d,), still))
    rep.add("short paths between core vertices lie in the core", bad is None,
            f"{count} paths checked" if bad is None
            else f"path {_word_of(delta, bad[1])} from vertex {bad[0]} leaves the core")
    return rep


# -- con-separation ----------------------------------------------------------


@dataclass(frozen=True)
class Conjugator:
    """``g`` with ``g H2 g^-1 <= H1``."""

    g: tuple
    report: Report = field(compare=False, default_factory=Report)


@dataclass(frozen=True)
class Witness:
    """Finite-index ``D >= H1`` containing no conjugate of ``H2``."""

    d: CoverGraph
    report: Report = field(compare=False, default_factory=Report)
    provenance: dict = field(compare=False, default_factory=dict)


def subgroup_generators(h) -> list:
    gens = getattr(h, "generators", None) or free_basis(h)
    return [w for w in (reduce_word(x) for x in gens) if w]


def coset_scan(d: LabeledGraph, h2_gens) -> list:
    """Vertices ``v`` at which every generator of ``H2`` reads a closed path.

    Such a ``v``, reached from the basepoint by ``g``, means ``g H2 g^-1 <= D``.
    """
    return [v for v in range(d.num_vertices) if all(d.read(v, h) == v for h in h2_gens)]


def con_separate(h1, h2, check_properties: bool = True, C: int | None = None):
    """Either a verified :class:`Conjugator` or a verified :class:`Witness`.

    ``C`` defaults to the longest generator of ``H2``; a smaller value is refused.
    """
    gens2 = subgroup_generators(h2)
    if not gens2:
        raise TrivialH2("H2 has no nontrivial generator")
    into = is_conjugate_into(h2, h1)
    if into is not None:
        g = inverse(into)
        rep = Report()
        rep.add("conjugated generators lie in H1",
                all(membership(h1, multiply(g, x, into)) for x in gens2), f"g = {format_word(g) or '1'}")
        return Conjugator(g, rep)
    needed = max(len(w) for w in gens2)
    if C is None:
        C = needed
    elif C < needed:
        raise HypothesisViolated(f"C = {C} is shorter than an H2 generator (length {needed})")
    built = construct_delta(h1, C)
    d = built.graph
    rep = Report()
    rep.add("cover of the rose", _is_cover(d), f"index {d.num_vertices}")
    rep.add("H1 <= D", all(membership(d, x) for x in subgroup_generators(h1)))
    hits = coset_scan(d, gens2)
    rep.add("no conjugate of H2 in D", not hits,
            f"{d.num_vertices} cosets scanned" if not hits else f"cosets {hits[:5]} contain a conjugate")
    short = [s for s in built.separations if s < C]
    rep.add("cut edge ends stay far apart", not short, f"minimum {min(built.separations, default=float('inf'))}")
    if check_properties:
        rep.extend(verify_witness_properties(d, _minimal(h1), C))
    return Witness(d, rep, built.provenance)


def _is_cover(g) -> bool:
    try:
        check_cover(g)
    except Exception:
        return False
    return True


@dataclass(frozen=True)
class FiniteQuotient:
    """Permutation action of ``F`` on the cosets of ``D``."""

    degree: int
    basepoint: int
    permutations: dict
    h1_images: tuple
    h2_images: tuple

    def common_fixed_points(self, images) -> list:
        return [v for v in range(self.degree) if all(p[v] == v for p in images)]

    def act(self, v: int, word) -> int:
        for x in word:
            p = self.permutations[abs(x)]
            v = p[v] if x > 0 else p.index(v)
        return v


def word_permutation(d: LabeledGraph, word) -> tuple:
    return tuple(d.read(v, word) for v in range(d.num_vertices))


def finite_quotient(d: LabeledGraph, h1, h2) -> FiniteQuotient:
    check_cover(d)
    perms = {x: word_permutation(d, (x,)) for x in range(1, d.rank + 1)}
    return FiniteQuotient(
        d.num_vertices, d.basepoint, perms,
        tuple(word_permutation(d, w) for w in subgroup_generators(h1)),
        tuple(word_permutation(d, w) for w in subgroup_generators(h2)),
    )


def push_up(witnesses, reps=None) -> CoverGraph:
    """Cover of the intersection of finitely many finite-index subgroups.

    ``reps`` (coset representatives the witnesses were built for) are only
    checked for count.
    """
    witnesses = list(witnesses)
    if not witnesses:
        raise ValueError("need at least one witness")
    if reps is not None and len(reps) != len(witnesses):
        raise ValueError("one coset representative per witness expected")
    acc = witnesses[0]
    for w in witnesses[1:]:
        acc = fiber_product(acc, w)
    return as_cover(canonical_form(acc))


@dataclass(frozen=True)
class SCSResult:
    verdict: str  # "conjugate" (g H2 g^-1 = H1) or "separated"
    g: tuple | None = None
    direction: str | None = None
    witness: Witness | None = None
    report: Report = field(compare=False, default_factory=Report)


def scs(h1, h2) -> SCSResult:
    """Decide conjugacy of ``H1`` and ``H2`` or separate them in a finite quotient.

    When each is conjugate into the other the two are conjugate; otherwise a
    witness is produced for a direction in which conjugacy-into fails.
    """
    into = is_conjugate_into(h2, h1)
    back = is_conjugate_into(h1, h2)
    if into is not None and back is not None:
        g = inverse(into)
        rep = Report()
        gens1, gens2 = subgroup_generators(h1), subgroup_generators(h2)
        rep.add("g H2 g^-1 <= H1", all(membership(h1, conjugate(x, into)) for x in gens2))
        rep.add("H1 <= g H2 g^-1", all(membership(h2, conjugate(x, g)) for x in gens1))
        return SCSResult("conjugate", g=g, report=rep)
    if into is None:
        w = con_separate(h1, h2)
        return SCSResult("separated", direction="H1 from H2", witness=w, report=w.report)
    w = con_separate(h2, h1)
    return SCSResult("separated", direction="H2 from H1", witness=w, report=w.report)


__all__ = [
    "Conjugator", "DeltaConstruction", "FiniteQuotient", "SCSResult", "Witness", "WitnessParams",
    "build_delta", "con_separate", "construct_delta", "coset_scan", "embed_core", "finite_quotient",
    "push_up", "scs", "subgroup_generators", "verify_witness_properties", "word_permutation",
]

"""Surfaces assembled from pieces glued along boundary circles.

The base surface ``S`` is cut along circles ``R_1..R_n`` into an ``A`` side and
a ``B`` side (each side may have several components). A piece is a finite
cover of one base component; each of its boundary circles is a *slot* tagged
``(label, degree)``. Gluing an A-side slot to a B-side slot with the same tag
extends the covering across the circle, so a closed complex whose pieces over
every base component have the same total degree ``k`` is a ``k``-sheeted
cover of ``S``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field, replace

from .covers import BranchedCoverMap, girth_amplify, verify_branched_cover
from .errors import (
    NoClosingPattern, NotACover, RegularityViolated, SlotMismatch, SphereOrProjectivePlane,
)
from .graphs import Graph, girth
from .report import Report
from .surfaces import SurfaceSig

SIDES = ("A", "B")


@dataclass(frozen=True)
class BaseComponent:
    name: str
    side: str
    sig: SurfaceSig

    def __post_init__(self):
        if self.side not in SIDES:
            raise ValueError(f"side must be one of {SIDES}")


@dataclass(frozen=True)
class BaseDecomposition:
    """``S`` cut along its labeled circles; every label bounds one A and one B component."""

    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        for side in SIDES:
            seen = Counter(lab for c in self.components if c.side == side for lab in c.sig.boundary_labels)
            if any(v > 1 for v in seen.values()):
                raise ValueError(f"a label bounds two {side}-side components")
        a = {lab for c in self.components if c.side == "A" for lab in c.sig.boundary_labels}
        b = {lab for c in self.components if c.side == "B" for lab in c.sig.boundary_labels}
        if a != b:
            raise ValueError(f"labels {sorted(a ^ b)} bound only one side")

    @classmethod
    def connected(cls, a: SurfaceSig, b: SurfaceSig) -> "BaseDecomposition":
        return cls((BaseComponent("A", "A", a), BaseComponent("B", "B", b)))

    @property
    def labels(self) -> tuple:
        return tuple(lab for c in self.components if c.side == "A" for lab in c.sig.boundary_labels)

    @property
    def euler(self) -> int:
        return sum(c.sig.euler for c in self.components)

    def component(self, name: str) -> BaseComponent:
        for c in self.components:
            if c.name == name:
                return c
        raise KeyError(name)

    def component_of(self, side: str, label) -> BaseComponent:
        for c in self.components:
            if c.side == side and label in c.sig.boundary_labels:
                return c
        raise KeyError((side, label))


@dataclass(frozen=True)
class PieceTemplate:
    """A cover of degree ``degree`` of one base component with the given slots."""

    kind: str
    side: str
    component: str
    degree: int
    genus: int
    slots: tuple  # ((label, degree), ...)

    def __post_init__(self):
        object.__setattr__(self, "slots", tuple((lab, int(d)) for lab, d in self.slots))

    @property
    def euler(self) -> int:
        return 2 - 2 * self.genus - len(self.slots)

    def slot_counts(self) -> Counter:
        return Counter(self.slots)


def make_template(kind: str, base: BaseDecomposition, component: str, slots) -> PieceTemplate:
    """Template with degree and genus forced by the slots.

    Raises :class:`SlotMismatch` when the slot degrees over the component's
    labels do not all sum to the same value or no non-negative integer genus fits.
    """
    comp = base.component(component)
    slots = tuple((lab, int(d)) for lab, d in slots)
    sums = {lab: 0 for lab in comp.sig.boundary_labels}
    for lab, d in slots:
        if lab not in sums:
            raise SlotMismatch(f"{kind}: slot label {lab} is not a boundary of component {component}")
        sums[lab] += d
    values = set(sums.values())
    if len(values) != 1:
        raise SlotMismatch(f"{kind}: slot degrees per label differ: {sums}")
    degree = values.pop()
    if degree < 1:
        raise SlotMismatch(f"{kind}: no slots")
    twice = 2 - len(slots) - degree * comp.sig.euler
    if twice < 0 or twice % 2:
        raise SlotMismatch(f"{kind}: no surface of non-negative integer genus has these slots "
                           f"(2*genus would be {twice})")
    return PieceTemplate(kind, comp.side, component, degree, twice // 2, slots)


def check_template(t: PieceTemplate, base: BaseDecomposition) -> Report:
    rep = Report()
    comp = base.component(t.component)
    rep.add(f"{t.kind}: side", comp.side == t.side)
    sums = {lab: 0 for lab in comp.sig.boundary_labels}
    stray = [lab for lab, _ in t.slots if lab not in sums]
    for lab, d in t.slots:
        if lab in sums:
            sums[lab] += d
    off = {lab: s for lab, s in sums.items() if s != t.degree}
    rep.add(f"{t.kind}: degree sums", not off and not stray,
            f"sums {off} differ from degree {t.degree}" if off else (f"stray labels {stray}" if stray else ""))
    rep.add(f"{t.kind}: euler characteristic", t.euler == t.degree * comp.sig.euler,
            f"chi = {t.euler}, degree * chi(base) = {t.degree * comp.sig.euler}")
    return rep


@dataclass(frozen=True)
class Piece:
    template: PieceTemplate
    tag: str = ""


@dataclass(frozen=True)
class PieceComplex:
    pieces: tuple
    gluings: tuple = ()  # (((piece, slot), (piece, slot)), ...)
    base: BaseDecomposition | None = None
    pattern: Graph | None = None
    pattern_nodes: tuple | None = None  # piece -> pattern node
    history: tuple = field(default=(), compare=False)
    notes: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(self, "gluings", tuple((tuple(a), tuple(b)) for a, b in self.gluings))
        used = Counter(x for g in self.gluings for x in g)
        twice = [x for x, c in used.items() if c > 1]
        if twice:
            raise SlotMismatch(f"slot {twice[0]} is glued twice")
        for a, b in self.gluings:
            if self.slot(a) != self.slot(b):
                raise SlotMismatch(f"gluing {a}-{b} joins {self.slot(a)} to {self.slot(b)}")

    def slot(self, ref) -> tuple:
        p, s = ref
        return self.pieces[p].template.slots[s]

    def open_slots(self) -> list:
        used = {x for g in self.gluings for x in g}
        return [(p, s) for p, pc in enumerate(self.pieces) for s in range(len(pc.template.slots))
                if (p, s) not in used]

    def inventory(self) -> Counter:
        """Open slots counted by ``(label, degree)``."""
        return Counter(self.slot(r) for r in self.open_slots())

    def underlying_graph(self) -> Graph:
        return Graph(len(self.pieces), tuple((a[0], b[0]) for a, b in self.gluings))

    @property
    def euler(self) -> int:
        return sum(p.template.euler for p in self.pieces)

    def kinds(self) -> Counter:
        return Counter(p.template.kind for p in self.pieces)


def label_independent(inventory: Counter, labels) -> bool:
    """Whether for each degree every label has the same open-slot count."""
    degrees = {d for _, d in inventory}
    return all(len({inventory.get((lab, d), 0) for lab in labels}) == 1 for d in degrees)


@dataclass(frozen=True)
class AssemblyParams:
    n: int
    M: int
    N: int
    N1: int  # N'
    N2: int  # N''
    T: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.M <= 1:
            raise ValueError("M must exceed 1")
        if min(self.N, self.N1, self.N2) < 0:
            raise ValueError("counts must be non-negative")
        if self.T < 1 or self.T % 2 == 0:
            raise ValueError(f"T = {self.T} must be an odd positive integer")

    @property
    def target_girth(self) -> int:
        return self.T + 1


# -- construction 6.1 and blow-ups -------------------------------------------


def pullback(complex_: PieceComplex, cover: BranchedCoverMap) -> PieceComplex:
    """Lift a complex along an ordinary cover of its underlying graph."""
    g = complex_.underlying_graph()
    if cover.target.num_vertices != g.num_vertices or tuple(cover.target.edges) != g.edges:
        raise NotACover("cover is not over this complex's underlying graph")
    if not cover.is_ordinary or not verify_branched_cover(cover).ok:
        raise NotACover("not an ordinary covering map")
    pieces = tuple(complex_.pieces[v] for v in cover.vertex_map)
    gluings = []
    for (a, b), j in zip(cover.source.edges, cover.edge_map):
        (_, s), (_, t) = complex_.gluings[j]
        gluings.append(((a, s), (b, t)))
    return PieceComplex(pieces, tuple(gluings), complex_.base, notes={"sheets": cover.sheets})


def regular_cover(t: PieceTemplate, d: int) -> PieceTemplate:
    """The ``d``-sheeted regular cover: every slot repeated ``d`` times."""
    if d == 1:
        return t
    if t.genus == 0:
        raise SphereOrProjectivePlane(f"{t.kind} caps off to a sphere, which has no connected {d}-fold cover")
    slots = tuple(s for s in t.slots for _ in range(d))
    genus = (2 - len(slots) - d * t.euler) // 2
    return PieceTemplate(t.kind, t.side, t.component, t.degree * d, genus, slots)


def _is_regular(cover: PieceTemplate, t: PieceTemplate, d: int) -> bool:
    want = Counter({s: c * d for s, c in t.slot_counts().items()})
    return (cover.slot_counts() == want and cover.degree == t.degree * d
            and cover.euler == d * t.euler and (cover.side, cover.component) == (t.side, t.component))


def blowup(complex_: PieceComplex, branched: BranchedCoverMap, piece_covers=None) -> PieceComplex:
    """Replace the piece over each lifted vertex by a regular cover of its branched
    degree and glue as the lifted edges dictate, slot copies taken in edge order."""
    g = complex_.underlying_graph()
    if branched.target.num_vertices != g.num_vertices or tuple(branched.target.edges) != g.edges:
        raise NotACover("branched cover is not over this complex's underlying graph")
    rep = verify_branched_cover(branched)
    if not rep.ok:
        raise NotACover(f"not a branched cover: {rep.failed()}")
    pieces, slot_lists = [], []
    for w, (v, d) in enumerate(zip(branched.vertex_map, branched.degrees)):
        t = complex_.pieces[v].template
        cov = piece_covers[w] if piece_covers is not None else regular_cover(t, d)
        if not _is_regular(cov, t, d):
            raise RegularityViolated(f"cover given for lifted vertex {w} is not a regular {d}-fold cover of {t.kind}")
        pieces.append(Piece(cov, complex_.pieces[v].tag))
        free = {}
        for i, s in enumerate(cov.slots):
            free.setdefault(s, []).append(i)
        slot_lists.append(free)
    # each original slot s of piece v becomes the run of copies of that (label, degree)
    # in the cover; consume them in order, one per lifted edge
    runs = []
    for w, v in enumerate(branched.vertex_map):
        t = complex_.pieces[v].template
        d = branched.degrees[w]
        queue, per_slot = dict(slot_lists[w]), {}
        for s, tag in enumerate(t.slots):
            per_slot[s] = queue[tag][:d]
            queue[tag] = queue[tag][d:]
        runs.append(per_slot)
    gluings = []
    for (a, b), j in zip(branched.source.edges, branched.edge_map):
        (_, s), (_, t) = complex_.gluings[j]
        gluings.append(((a, runs[a][s].pop(0)), (b, runs[b][t].pop(0))))
    return PieceComplex(tuple(pieces), tuple(gluings), complex_.base, notes={"sheets": branched.sheets})


# -- the assembly steps ------------------------------------------------------


def _slot_diff(kind: str, have: Counter, want: Counter) -> str:
    keys = sorted(set(have) | set(want), key=str)
    diffs = [f"{k}: have {have.get(k, 0)}, need {want.get(k, 0)}" for k in keys if have.get(k, 0) != want.get(k, 0)]
    return f"{kind} slot inventory differs: " + "; ".join(diffs)


def build_S1(a: PieceTemplate, bs, params: AssemblyParams, base: BaseDecomposition | None = None) -> PieceComplex:
    """Glue ``M`` copies of ``A`` onto ``B_1..B_n`` along their degree-1 slots."""
    bs = list(bs)
    labels = tuple(lab for lab, _ in a.slots)
    if len(bs) != params.n or len(labels) != params.n:
        raise SlotMismatch(f"expected n = {params.n} labels and B pieces, got {len(labels)} and {len(bs)}")
    want_a = Counter({(lab, 1): 1 for lab in labels})
    if a.slot_counts() != want_a:
        raise SlotMismatch(_slot_diff(a.kind, a.slot_counts(), want_a))
    M = params.M
    for i, (lab, b) in enumerate(zip(labels, bs)):
        want = Counter({(lab, 1): M, (lab, M): params.N, (lab, 2 * M): params.N1})
        for other in labels:
            if other != lab:
                want[(other, 2 * M)] = params.N2
        want = +want
        if b.slot_counts() != want:
            raise SlotMismatch(_slot_diff(b.kind, b.slot_counts(), want))
    if base is not None:
        rep = Report()
        for t in [a, *bs]:
            rep.extend(check_template(t, base))
        if not rep.ok:
            raise SlotMismatch("; ".join(f"{c.name}: {c.detail}" for c in rep.checks if not c.passed))
    pieces = [Piece(b, "S1") for b in bs] + [Piece(a, f"S1/A{k}") for k in range(M)]
    gluings = []
    for i, (lab, b) in enumerate(zip(labels, bs)):
        ones = [s for s, tag in enumerate(b.slots) if tag == (lab, 1)]
        a_slot = a.slots.index((lab, 1))
        for k in range(M):
            gluings.append(((len(bs) + k, a_slot), (i, ones[k])))
    out = PieceComplex(tuple(pieces), tuple(gluings), base)
    return replace(out, history=(("S1", dict(out.inventory())),))


def _check_tops(tops, degree_of_kind) -> None:
    for t in tops:
        want = degree_of_kind(t)
        bad = [s for s in t.slots if s[1] != want]
        if bad:
            raise SlotMismatch(f"{t.kind} must carry only degree-{want} slots, has {bad[:3]}")


def _attach(c: PieceComplex, tops, side: str, step: int) -> PieceComplex:
    pieces, gluings = list(c.pieces), list(c.gluings)
    for p, s in c.open_slots():
        owner = c.pieces[p].template
        if owner.side == side:
            raise SlotMismatch(f"open slot {(p, s)} lies on {owner.kind}, which is on side {side}")
        tag = owner.slots[s]
        match = next((t for t in tops if tag in t.slots), None)
        if match is None:
            raise SlotMismatch(f"no {side}-side piece has a slot {tag}")
        pieces.append(Piece(match, f"S{step}"))
        gluings.append(((len(pieces) - 1, match.slots.index(tag)), (p, s)) if side == "A"
                       else ((p, s), (len(pieces) - 1, match.slots.index(tag))))
    return PieceComplex(tuple(pieces), tuple(gluings), c.base, history=c.history)


def iterate_steps(s1: PieceComplex, a_tops, b_tops, T: int, M: int | None = None) -> PieceComplex:
    """Steps 2..T: alternately cap every open slot with a fresh A-side top piece
    (even steps) and a fresh B-side top piece (odd steps)."""
    if T < 1 or T % 2 == 0:
        raise ValueError(f"T = {T} must be odd")
    a_tops, b_tops = list(a_tops), list(b_tops)
    if M is not None:
        kind_degree = lambda t: M if t.kind.endswith("{n+1}") else 2 * M  # noqa: E731
        _check_tops([t for t in a_tops + b_tops if "{n+" in t.kind], kind_degree)
    c = s1
    for step in range(2, T + 1):
        side = "A" if step % 2 == 0 else "B"
        c = _attach(c, a_tops if side == "A" else b_tops, side, step)
        c = replace(c, history=c.history + ((f"S{step}", dict(c.inventory())),))
    return c


def _closing_counts(x: int, y: int, a: int, b: int):
    """Copies ``(p, q, r)`` of S_T and the two closing pieces with ``p*x = q*a`` and ``p*y = r*b``."""
    p = 1
    if x:
        if not a:
            raise NoClosingPattern("degree-M slots remain but the closing piece has none")
        p = math.lcm(p, a // math.gcd(x, a))
    if y:
        if not b:
            raise NoClosingPattern("degree-2M slots remain but the closing piece has none")
        p = math.lcm(p, b // math.gcd(y, b))
    return p, (p * x // a if x else 0), (p * y // b if y else 0)


def final_close(st: PieceComplex, a_tops, params: AssemblyParams) -> PieceComplex:
    """Close ``S_T`` with copies of the A-side top pieces along a pattern of girth ``> T``.

    A base pattern multigraph joins ``p`` copies of ``S_T`` to ``q`` and ``r``
    closing pieces (one edge per slot pair, matched in order per slot type);
    its girth-amplified cover says which copies to glue to which.
    """
    opens = st.open_slots()
    if not opens:
        return st
    labels = sorted({st.slot(r)[0] for r in opens}, key=str)
    inv = st.inventory()
    if not label_independent(inv, labels):
        raise NoClosingPattern(f"open slots are not label-independent: {dict(inv)}")
    M = params.M
    by_degree = {}
    for t in a_tops:
        degs = {d for _, d in t.slots}
        if len(degs) != 1:
            raise SlotMismatch(f"{t.kind} mixes slot degrees {sorted(degs)}")
        counts = Counter(lab for lab, _ in t.slots)
        if len(set(counts[lab] for lab in labels)) != 1 or set(counts) - set(labels):
            raise NoClosingPattern(f"{t.kind} slots are not label-independent")
        by_degree.setdefault(degs.pop(), t)
    closers = [by_degree.get(M), by_degree.get(2 * M)]
    x, y = inv.get((labels[0], M), 0), inv.get((labels[0], 2 * M), 0)
    if set(d for _, d in inv) - {M, 2 * M}:
        raise NoClosingPattern(f"open slots of degrees other than M and 2M: {dict(inv)}")
    a = Counter(lab for lab, _ in closers[0].slots)[labels[0]] if closers[0] else 0
    b = Counter(lab for lab, _ in closers[1].slots)[labels[0]] if closers[1] else 0
    p, q, r = _closing_counts(x, y, a, b)

    # pattern nodes: S_T copies 0..p-1, then q + r closing pieces
    node_piece = [None] * p + [closers[0]] * q + [closers[1]] * r
    edges, edge_slots = [], []
    for deg, first, count, closer in ((M, p, q, closers[0]), (2 * M, p + q, r, closers[1])):
        if not count:
            continue
        for lab in labels:
            st_side = [(i, ref) for i in range(p) for ref in opens if st.slot(ref) == (lab, deg)]
            cl_side = [(first + j, s) for j in range(count) for s, tag in enumerate(closer.slots) if tag == (lab, deg)]
            for (i, ref), (node, s) in zip(st_side, cl_side):
                edges.append((i, node))
                edge_slots.append((ref, s))
    pattern = Graph(p + q + r, tuple(edges))
    if not pattern.is_connected():
        raise NoClosingPattern("base pattern is disconnected")
    amplified = girth_amplify(pattern, params.T)
    cov = amplified.covering

    pieces, gluings, pnodes = [], [], []
    offset = {}
    n_st = len(st.pieces)
    for w, v in enumerate(cov.vertex_map):
        offset[w] = len(pieces)
        if v < p:
            pieces.extend(Piece(pc.template, f"copy{w}/{pc.tag}") for pc in st.pieces)
            gluings.extend(((offset[w] + a1, s1), (offset[w] + b1, t1)) for (a1, s1), (b1, t1) in st.gluings)
            pnodes.extend([w] * n_st)
        else:
            pieces.append(Piece(node_piece[v], f"close{w}"))
            pnodes.append(w)
    for (a1, b1), j in zip(cov.source.edges, cov.edge_map):
        (ref_p, ref_s), s = edge_slots[j]
        # a1 lies over an S_T copy, b1 over a closing piece
        closer = pieces[offset[b1]].template
        gluings.append(((offset[b1], s), (offset[a1] + ref_p, ref_s)) if closer.side == "A"
                       else ((offset[a1] + ref_p, ref_s), (offset[b1], s)))
    out = PieceComplex(
        tuple(pieces), tuple(gluings), st.base, pattern=amplified.graph, pattern_nodes=tuple(pnodes),
        history=st.history,
        notes={"copies": {"S_T": p, "A_{n+1}": q, "A_{n+2}": r}, "pattern_sheets": cov.sheets,
               "base_pattern": pattern, "pattern_girth": amplified.girth},
    )
    return out


def assemble(a, bs, a_tops, b_tops, params: AssemblyParams, base=None) -> PieceComplex:
    s1 = build_S1(a, bs, params, base)
    st = iterate_steps(s1, a_tops, b_tops, params.T, params.M)
    return final_close(st, a_tops, params)


def verify_cover_complex(c: PieceComplex, base: BaseDecomposition | None = None, T: int | None = None) -> Report:
    """Closedness, slot matching, per-piece covering data, Euler characteristic
    multiplicativity, a degree-1 copy of A, and the pattern girth."""
    base = base or c.base
    rep = Report()
    opens = c.open_slots()
    rep.add("closed", not opens, f"{len(opens)} open slots" if opens else "")
    cross = [(x, y) for x, y in c.gluings if c.pieces[x[0]].template.side == c.pieces[y[0]].template.side]
    rep.add("gluings join A side to B side", not cross, f"{len(cross)} same-side gluings" if cross else "")
    rep.add("connected", c.underlying_graph().is_connected())
    if base is not None:
        bad = []
        for t in sorted({p.template for p in c.pieces}, key=lambda t: (t.kind, t.slots)):
            sub = check_template(t, base)
            bad += [f"{x.name} ({x.detail})" for x in sub.checks if not x.passed]
        rep.add("pieces are covers of their base components", not bad, "; ".join(bad[:4]))
        totals = Counter()
        for p in c.pieces:
            totals[p.template.component] += p.template.degree
        ks = {comp.name: totals.get(comp.name, 0) for comp in base.components}
        k = max(ks.values()) if ks else 0
        rep.add("same degree over every base component", len(set(ks.values())) == 1, f"{ks}")
        rep.add("euler characteristic multiplicative", c.euler == k * base.euler,
                f"chi = {c.euler}, k = {k}, k * chi(S) = {k * base.euler}")
    lift = [i for i, p in enumerate(c.pieces)
            if p.template.kind == "A" and p.template.degree == 1 and all(d == 1 for _, d in p.template.slots)
            and all((i, s) in {x for g in c.gluings for x in g} for s in range(len(p.template.slots)))]
    rep.add("degree-1 copy of A present", bool(lift), f"{len(lift)} copies")
    if T is not None:
        g = c.pattern if c.pattern is not None else c.underlying_graph()
        gi = girth(g)
        rep.add("pattern girth", gi >= T + 1, f"girth {gi}, need {T + 1}")
    return rep


@dataclass(frozen=True)
class AssemblyInput:
    params: AssemblyParams
    base: BaseDecomposition
    a: PieceTemplate
    bs: tuple
    a_tops: tuple
    b_tops: tuple


def standard_assembly(params: AssemblyParams, a_genus: int = 1, b_genus: int = 1, split: bool | None = None,
                      per_label: int = 2, overrides=None) -> AssemblyInput:
    """Base decomposition and piece templates determined by the slot counts.

    The labels are ``R1..Rn``. With ``split`` the B side is ``n`` one-holed
    surfaces ``B1..Bn`` (``Bi`` bounded by ``Ri``); otherwise it is one surface
    ``B`` bounded by every label. ``split`` defaults to ``N'' == 0``, the only
    case in which a B-side piece over a connected ``B`` could not reach the
    other labels. The top pieces carry ``per_label`` slots per label they touch.
    ``overrides`` maps a kind to explicit slots ``[(label, degree), ...]``.
    """
    n, M = params.n, params.M
    labels = tuple(f"R{i}" for i in range(1, n + 1))
    split = params.N2 == 0 if split is None else split
    a_sig = SurfaceSig(True, a_genus, labels)
    if split:
        comps = [BaseComponent("A", "A", a_sig)] + [
            BaseComponent(f"B{i}", "B", SurfaceSig(True, b_genus, (lab,))) for i, lab in enumerate(labels, 1)]
        base = BaseDecomposition(tuple(comps))
    else:
        base = BaseDecomposition.connected(a_sig, SurfaceSig(True, b_genus, labels))
    overrides = dict(overrides or {})

    def comp_for(kind: str, slots) -> str:
        if kind.startswith("A"):
            return "A"
        return base.component_of("B", slots[0][0]).name

    def build(kind: str, slots):
        slots = [tuple(x) for x in overrides.get(kind, slots)]
        if not slots:
            raise SlotMismatch(f"{kind}: no slots")
        return make_template(kind, base, comp_for(kind, slots), slots)

    a = build("A", [(lab, 1) for lab in labels])
    bs = []
    for i, lab in enumerate(labels, 1):
        slots = [(lab, 1)] * M + [(lab, M)] * params.N + [(lab, 2 * M)] * params.N1
        slots += [(other, 2 * M) for other in labels if other != lab for _ in range(params.N2)]
        bs.append(build(f"B_{i}", slots))
    degrees = [M] + ([2 * M] if params.N1 or params.N2 else [])
    a_tops, b_tops = [], []
    for j, d in enumerate(degrees, 1):
        kind = f"{{n+{j}}}"
        a_tops.append(build("A_" + kind, [(lab, d) for lab in labels for _ in range(per_label)]))
        if split:
            b_tops += [make_template("B_" + kind, base, f"B{i}", [(lab, d)] * per_label)
                       for i, lab in enumerate(labels, 1)]
        else:
            b_tops.append(build("B_" + kind, [(lab, d) for lab in labels for _ in range(per_label)]))
    return AssemblyInput(params, base, a, tuple(bs), tuple(a_tops), tuple(b_tops))


_KEY_ALIASES = {"N'": "N1", "N''": "N2", "Nprime": "N1", "Nsecond": "N2"}


def parse_config(text: str) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment.

    Integer values become ints, ``true``/``false`` booleans. Keys of the form
    ``piece.<kind>`` hold explicit slots such as ``R1/1*3 R1/3*2``.
    """
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (x.strip() for x in line.split("=", 1))
        key = _KEY_ALIASES.get(key, key)
        if key in out:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        if key.startswith("piece."):
            out[key] = _parse_slots(value, lineno)
        elif value.lower() in ("true", "false"):
            out[key] = value.lower() == "true"
        else:
            try:
                out[key] = int(value)
            except ValueError:
                out[key] = value
    return out


def _parse_slots(text: str, lineno: int) -> list:
    slots = []
    for tok in text.replace(",", " ").split():
        body, _, times = tok.partition("*")
        lab, sep, deg = body.partition("/")
        if not sep:
            raise ValueError(f"line {lineno}: slot {tok!r} should look like R1/3 or R1/3*2")
        slots += [(lab, int(deg))] * int(times or 1)
    return slots


def assembly_from_config(cfg: dict, T: int | None = None) -> AssemblyInput:
    missing = [k for k in ("n", "M", "N", "N1", "N2", "T") if k not in cfg and not (k == "T" and T is not None)]
    if missing:
        raise ValueError(f"config is missing {missing}")
    params = AssemblyParams(cfg["n"], cfg["M"], cfg["N"], cfg["N1"], cfg["N2"], T if T is not None else cfg["T"])
    overrides = {k[len("piece."):]: v for k, v in cfg.items() if k.startswith("piece.")}
    return standard_assembly(params, cfg.get("A.genus", 1), cfg.get("B.genus", 1), cfg.get("B.split"),
                             cfg.get("tops.per_label", 2), overrides)


__all__ = [
    "AssemblyInput", "AssemblyParams", "BaseComponent", "BaseDecomposition", "Piece", "PieceComplex", "PieceTemplate",
    "assemble", "assembly_from_config", "blowup", "build_S1", "check_template", "final_close", "iterate_steps",
    "label_independent", "make_template", "parse_config", "pullback", "regular_cover", "standard_assembly", "verify_cover_complex",
]

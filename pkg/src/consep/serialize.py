"""JSON-compatible encodings of graphs, covers, branching data and piece complexes."""

from __future__ import annotations

import json
import math

from .assembly import PieceComplex, PieceTemplate
from .core import CoreGraph, CoverGraph
from .covers import BranchedCoverMap, GirthCover
from .errors import InvalidGraph
from .graphs import Graph, LabeledGraph
from .report import Report
from .surfaces import BranchingData, SurfaceSig, VeryTechnicalPlan, format_data
from .words import format_word


def number(x):
    """Integers stay integers; infinity becomes the string ``"inf"``."""
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return x


def graph_to_dict(g) -> dict:
    if isinstance(g, LabeledGraph):
        out = {"type": type(g).__name__, "rank": g.rank, "vertices": g.num_vertices,
               "basepoint": g.basepoint, "edges": [list(e) for e in g.edges]}
        if isinstance(g, CoreGraph):
            out["generators"] = [format_word(w) for w in g.generators]
            out["completed"] = g.completed
            if g.outer_pairs:
                out["outer_pairs"] = [
                    {"outer": p.outer, "label": p.label, "partner": p.partner, "path": format_word(p.path)}
                    for p in g.outer_pairs
                ]
        return out
    return {"type": "Graph", "vertices": g.num_vertices, "edges": [list(e) for e in g.edges]}


def graph_from_dict(d: dict):
    try:
        edges = tuple(tuple(e) for e in d["edges"])
        n = int(d["vertices"])
        if "rank" in d:
            cls = CoverGraph if d.get("type") == "CoverGraph" else LabeledGraph
            return cls(int(d["rank"]), n, edges, d.get("basepoint", 0))
        return Graph(n, edges)
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, InvalidGraph):
            raise
        raise InvalidGraph(f"malformed graph description: {e}") from e


def parse_graph_text(text: str):
    """A graph from JSON or from an edge list.

    The edge-list form has the vertex count on the first line and one edge per
    following line: ``u v`` for a plain graph, ``u v x`` for a labeled one
    (then ``rank r`` may precede the count). ``#`` starts a comment.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        return graph_from_dict(json.loads(stripped))
    rank, rows = None, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        if line[0] == "rank":
            rank = int(line[1])
            continue
        try:
            rows.append((lineno, [int(x) for x in line]))
        except ValueError:
            raise InvalidGraph(f"line {lineno}: expected integers, got {raw.strip()!r}") from None
    if not rows or len(rows[0][1]) != 1:
        raise InvalidGraph("first line must hold the vertex count")
    n = rows[0][1][0]
    edges = [tuple(r) for _, r in rows[1:]]
    widths = {len(e) for e in edges}
    if widths - {2, 3} or len(widths) > 1:
        raise InvalidGraph("edges must all be 'u v' or all be 'u v x'")
    if widths == {3}:
        return LabeledGraph(rank or max(x for *_, x in edges), n, tuple(edges))
    return Graph(n, tuple(edges))


def cover_map_to_dict(m: BranchedCoverMap) -> dict:
    return {"source": graph_to_dict(m.source), "target": graph_to_dict(m.target),
            "vertex_map": list(m.vertex_map), "edge_map": list(m.edge_map),
            "degrees": list(m.degrees), "sheets": m.sheets, "marked_vertex": m.marked_vertex}


def girth_cover_to_dict(gc: GirthCover) -> dict:
    return {"graph": graph_to_dict(gc.graph), "girth": number(gc.girth),
            "girths": [number(x) for x in gc.girths], "sizes": list(gc.sizes),
            "vertex_map": list(gc.covering.vertex_map), "edge_map": list(gc.covering.edge_map)}


def sig_to_dict(s: SurfaceSig) -> dict:
    return {"orientable": s.orientable, "genus": s.genus, "labels": list(s.boundary_labels)}


def sig_from_dict(d: dict) -> SurfaceSig:
    return SurfaceSig(bool(d.get("orientable", True)), int(d["genus"]), tuple(d["labels"]))


def branching_to_dict(b: BranchingData) -> dict:
    out = {"name": b.name, "base": sig_to_dict(b.base), "degree": b.degree,
           "data": format_data(b), "rows": [list(r) for r in b.data], "cover_genus": b.cover_genus}
    if b.stages:
        out["stages"] = [branching_to_dict(st) for st in b.stages]
    return out


def branching_from_dict(d: dict) -> BranchingData:
    return BranchingData(sig_from_dict(d["base"]), int(d["degree"]), tuple(tuple(r) for r in d["rows"]),
                         int(d["cover_genus"]), name=d.get("name", ""))


def plan_to_dict(p: VeryTechnicalPlan) -> dict:
    return {"M0": p.M0, "moduli": dict(p.moduli), "theta": branching_to_dict(p.theta),
            "thetas": [branching_to_dict(t) for t in p.thetas], "out_of_scope": list(p.out_of_scope)}


def template_to_dict(t: PieceTemplate) -> dict:
    return {"kind": t.kind, "side": t.side, "component": t.component, "degree": t.degree,
            "genus": t.genus, "slots": [[lab, d] for lab, d in t.slots]}


def complex_to_dict(c: PieceComplex) -> dict:
    templates, index = [], {}
    for p in c.pieces:
        if p.template not in index:
            index[p.template] = len(templates)
            templates.append(template_to_dict(p.template))
    out = {
        "templates": templates,
        "pieces": [{"template": index[p.template], "tag": p.tag} for p in c.pieces],
        "gluings": [[list(a), list(b)] for a, b in c.gluings],
        "open_slots": [list(r) for r in c.open_slots()],
        "euler": c.euler,
        "history": [{"step": name, "open": {f"{lab}/{d}": k for (lab, d), k in sorted(inv.items(), key=str)}}
                    for name, inv in c.history],
    }
    if c.pattern is not None:
        out["pattern"] = graph_to_dict(c.pattern)
    copies = c.notes.get("copies")
    if copies:
        out["copies"] = copies
    return out


def report_to_dict(r: Report) -> list:
    return r.to_dict()


def dumps(obj) -> str:
    """Deterministic JSON (sorted keys, fixed indentation)."""
    return json.dumps(_clean(obj), indent=2, sort_keys=True, default=_fallback) + "\n"


def _clean(o):
    if isinstance(o, dict):
        return {str(k): _clean(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_clean(v) for v in o]
    return number(o)


def _fallback(o):
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if isinstance(o, (Graph, LabeledGraph)):
        return graph_to_dict(o)
    if isinstance(o, Report):
        return o.to_dict()
    raise TypeError(f"cannot encode {type(o).__name__}")


__all__ = [
    "branching_from_dict", "branching_to_dict", "complex_to_dict", "cover_map_to_dict", "dumps",
    "girth_cover_to_dict", "graph_from_dict", "graph_to_dict", "number", "parse_graph_text",
    "plan_to_dict", "report_to_dict", "sig_from_dict", "sig_to_dict", "template_to_dict",
]

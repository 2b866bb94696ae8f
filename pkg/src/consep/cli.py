"""Command-line entry point: ``consep <command> ...``.

Every command prints (or writes with ``--out``) a run report holding the
result, the named verification checks and provenance. The exit status is 0
iff every check passed, 1 if a check failed and 2 on invalid input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from collections import Counter
from pathlib import Path

from . import assembly as asm
from . import surfaces as sf
from .core import build_core
from .covers import (
    build_branched_cover, build_branched_cover_noncut, girth_amplify, rose_graph, verify_branched_cover,
)
from .errors import ConsepError
from .graphs import LabeledGraph, girth, is_cut_vertex, to_dot
from .report import Report
from .serialize import (
    branching_to_dict, complex_to_dict, cover_map_to_dict, dumps, girth_cover_to_dict, graph_to_dict,
    number, parse_graph_text, plan_to_dict,
)
from .witness import Conjugator, con_separate, scs
from .words import format_word, parse_subgroup

OUT_DIR_ENV = "CONSEP_OUT_DIR"


class RunReport:
    def __init__(self, command: str, inputs: dict, result: dict, report: Report,
                 provenance: dict | None = None, dot: str | None = None, summary: str = ""):
        self.command = command
        self.inputs = inputs
        self.result = result
        self.report = report
        self.provenance = provenance or {}
        self.dot = dot
        self.summary = summary

    @property
    def digest(self) -> str:
        return hashlib.sha256(json.dumps(self.inputs, sort_keys=True).encode()).hexdigest()[:16]

    @property
    def ok(self) -> bool:
        return self.report.ok

    def structured(self) -> dict:
        return {"command": self.command, "inputs": self.inputs, "inputs_digest": self.digest,
                "result": self.result, "checks": self.report.to_dict(), "provenance": self.provenance,
                "ok": self.ok}

    def text(self) -> str:
        lines = [f"{self.command}: {self.summary}" if self.summary else self.command,
                 f"inputs digest {self.digest}"]
        lines += [f"  {k}: {v}" for k, v in sorted(self.provenance.items()) if not isinstance(v, (dict, list))]
        lines.append(self.report.text())
        lines.append("all checks passed" if self.ok else f"FAILED: {', '.join(self.report.failed())}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "structured":
            return dumps(self.structured())
        if fmt == "dot":
            if self.dot is None:
                raise ValueError(f"{self.command} has no graph to draw")
            return self.dot
        return self.text()


# -- commands ----------------------------------------------------------------


def _subgroups(args):
    h1 = parse_subgroup(args.h1, args.rank)
    h2 = parse_subgroup(args.h2, args.rank)
    return build_core(args.rank, h1), build_core(args.rank, h2), h1, h2


def cmd_con_separate(args) -> RunReport:
    core1, core2, g1, g2 = _subgroups(args)
    inputs = {"rank": args.rank, "h1": args.h1, "h2": args.h2, "C": args.C}
    res = con_separate(core1, core2, check_properties=not args.skip_properties, C=args.C)
    if isinstance(res, Conjugator):
        word = format_word(res.g) or "1"
        return RunReport("con-separate", inputs, {"kind": "Conjugator", "g": word}, res.report,
                         summary=f"Conjugator({word}): g H2 g^-1 <= H1")
    d = res.d
    return RunReport("con-separate", inputs, {"kind": "Witness", "index": d.num_vertices, "D": graph_to_dict(d)},
                     res.report, res.provenance, to_dot(d, "D"), summary=f"Witness of index {d.num_vertices}")


def cmd_scs(args) -> RunReport:
    core1, core2, _, _ = _subgroups(args)
    inputs = {"rank": args.rank, "h1": args.h1, "h2": args.h2}
    res = scs(core1, core2)
    if res.verdict == "conjugate":
        word = format_word(res.g) or "1"
        return RunReport("scs", inputs, {"verdict": "Conjugate", "g": word}, res.report,
                         summary=f"Conjugate({word}): g H2 g^-1 = H1")
    d = res.witness.d
    return RunReport("scs", inputs,
                     {"verdict": "Separated", "direction": res.direction, "index": d.num_vertices,
                      "D": graph_to_dict(d)},
                     res.report, res.witness.provenance, to_dot(d, "D"),
                     summary=f"Separated ({res.direction}) by a subgroup of index {d.num_vertices}")


def _load_graph(spec: str):
    if spec.startswith("rose:"):
        return rose_graph(int(spec[5:]))
    text = Path(spec).read_text()
    return parse_graph_text(text)


def _plain(g):
    return g.underlying() if isinstance(g, LabeledGraph) else g


def _degrees(text: str, n: int) -> list:
    vals = [int(x) for x in text.replace(" ", "").split(",") if x]
    if len(vals) == 1 and n > 1:
        vals *= n
    if len(vals) != n:
        raise ValueError(f"expected {n} degrees, got {len(vals)}")
    return vals


def cmd_cover(args) -> RunReport:
    g = _load_graph(args.graph)
    inputs = {"graph": graph_to_dict(g), "kind": args.kind}
    if args.kind == "girth":
        if args.m is None:
            raise ValueError("cover girth needs --m")
        inputs["m"] = args.m
        gc = girth_amplify(g, args.m)
        rep = Report()
        measured = girth(gc.graph)
        rep.add("girth exceeds m", measured > args.m, f"BFS girth {number(measured)}, m = {args.m}")
        rep.add("girth increases at every stage", all(a < b for a, b in zip(gc.girths, gc.girths[1:])),
                f"{[number(x) for x in gc.girths]}")
        rep.extend(verify_branched_cover(gc.covering), "covering map: ")
        rep.add("ordinary cover", gc.covering.is_ordinary)
        return RunReport("cover girth", inputs, girth_cover_to_dict(gc), rep,
                         {"m": args.m, "girths": [number(x) for x in gc.girths], "sizes": list(gc.sizes)},
                         to_dot(gc.graph, "Cover"),
                         summary=f"{gc.graph.num_vertices} vertices, girth {number(measured)}")
    p = _plain(g)
    if args.degrees is None:
        raise ValueError(f"cover {args.kind} needs --degrees")
    degs = _degrees(args.degrees, p.num_vertices)
    inputs["degrees"] = degs
    if args.kind == "branched":
        m = build_branched_cover(p, degs)
        rep = verify_branched_cover(m, degs)
    else:
        if args.vertex is None:
            raise ValueError("cover noncut needs --vertex")
        inputs["vertex"] = args.vertex
        m = build_branched_cover_noncut(p, degs, args.vertex)
        rep = verify_branched_cover(m, degs)
        rep.add("marked lift is not a cut vertex",
                m.marked_vertex is not None and m.vertex_map[m.marked_vertex] == args.vertex
                and not is_cut_vertex(m.source, m.marked_vertex), f"lift {m.marked_vertex}")
    return RunReport(f"cover {args.kind}", inputs, cover_map_to_dict(m), rep, {"sheets": m.sheets},
                     to_dot(m.source, "Cover"),
                     summary=f"{m.source.num_vertices} vertices, {m.sheets} sheets")


def _surface(args) -> sf.SurfaceSig:
    if args.genus is None or args.n is None:
        raise ValueError("need --genus and --n")
    return sf.SurfaceSig.standard(args.genus, args.n, not args.nonorientable)


def cmd_surface(args) -> RunReport:
    kind = args.kind
    if kind == "check":
        if args.data_file:
            payload = json.loads(Path(args.data_file).read_text())
            s = sf.SurfaceSig(payload.get("orientable", True), payload["genus"], tuple(payload["labels"]))
            rows_text = payload["data"]
            degree, cover_genus = payload.get("degree"), payload.get("cover_genus")
        else:
            s = _surface(args)
            rows_text, degree, cover_genus = args.data, args.degree, args.cover_genus
        if rows_text is None:
            raise ValueError("surface check needs --data or --data-file")
        rows = sf.parse_data(rows_text) if isinstance(rows_text, str) else rows_text
        unknown = sorted(set(rows) - set(s.boundary_labels))
        if unknown or len(rows) != s.n:
            raise ValueError(f"data must list every label of {list(s.boundary_labels)} once (extra: {unknown})")
        data = tuple(tuple(rows[lab]) for lab in s.boundary_labels)
        if degree is None:
            degree = sum(data[0])
        if cover_genus is None:
            twice = 2 - sum(len(r) for r in data) - degree * s.euler
            cover_genus = twice // 2 if twice % 2 == 0 else -1
        b = sf.BranchingData(s, degree, data, cover_genus)
        verdict = sf.hurwitz_check(b)
        rep = b.identities()
        rep.add("realizable", verdict.status == sf.REALIZABLE, f"{verdict.status}: {verdict.reason}")
        return RunReport("surface check", {"base": str(s), "data": sf.format_data(b), "degree": degree,
                                           "cover_genus": cover_genus},
                         {"verdict": verdict.status, "reason": verdict.reason, "data": branching_to_dict(b)},
                         rep, summary=verdict.status)
    s = _surface(args)
    inputs = {"base": str(s), "M": args.M}
    if kind == "cor1":
        b = sf.plan_cor1(s)
    elif kind == "corM":
        _need_M(args)
        b = sf.plan_corM(s, sf.identity(s), args.M)
    elif kind == "corM1":
        _need_M(args)
        b = sf.plan_corM1(s, sf.plan_cor1(s), args.M)
    else:
        _need_M(args)
        plan = sf.plan_very_technical(s, args.M)
        rep = Report()
        for t in (plan.theta, *plan.thetas):
            rep.extend(t.identities(), f"{t.name}: ")
        return RunReport("surface very-technical", inputs, plan_to_dict(plan), rep, {"M0": plan.M0},
                         summary=f"M0 = {plan.M0}; {len(plan.out_of_scope)} metric clauses not checked")
    rep = b.identities()
    if b.stages:
        for st in b.stages:
            rep.extend(st.identities(), f"stage {st.name or '?'}: ")
    return RunReport(f"surface {kind}", inputs, branching_to_dict(b), rep,
                     summary=f"degree {b.degree}, genus {b.cover_genus}, data {sf.format_data(b)}")


def _need_M(args) -> None:
    if args.M is None:
        raise ValueError("this plan needs --M")


def cmd_assemble(args) -> RunReport:
    text = Path(args.config).read_text()
    cfg = json.loads(text) if text.lstrip().startswith("{") else asm.parse_config(text)
    for alias, key in (("N'", "N1"), ("N''", "N2")):
        if alias in cfg:
            cfg[key] = cfg.pop(alias)
    inp = asm.assembly_from_config(cfg, args.T)
    p = inp.params
    s1 = asm.build_S1(inp.a, inp.bs, p, inp.base)
    st = asm.iterate_steps(s1, inp.a_tops, inp.b_tops, p.T, p.M)
    closed = asm.final_close(st, inp.a_tops, p)
    rep = Report()
    labels = inp.base.labels
    for name, inv in closed.history:
        rep.add(f"{name} open slots label-independent", asm.label_independent(Counter(inv), labels),
                ", ".join(f"{lab}/{d}: {k}" for (lab, d), k in sorted(inv.items(), key=str)))
    rep.extend(asm.verify_cover_complex(closed, inp.base, p.T))
    pattern = closed.pattern if closed.pattern is not None else closed.underlying_graph()
    prov = {"n": p.n, "M": p.M, "N": p.N, "N'": p.N1, "N''": p.N2, "T": p.T,
            "pieces": len(closed.pieces), "gluings": len(closed.gluings), "euler": closed.euler,
            "copies": closed.notes.get("copies", {}), "pattern_vertices": pattern.num_vertices}
    inputs = {"config": cfg, "T": p.T}
    return RunReport("assemble", inputs, complex_to_dict(closed), rep, prov, to_dot(pattern, "Pattern"),
                     summary=f"{len(closed.pieces)} pieces, chi = {closed.euler}")


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the output here instead of standard output")
    common.add_argument("--format", choices=("text", "structured", "dot"), default="text")

    p = argparse.ArgumentParser(prog="consep", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    for name, helptext in (("con-separate", "separate H1 from the conjugates of H2, or conjugate H2 into H1"),
                           ("scs", "decide conjugacy of H1 and H2 or separate them")):
        q = sub.add_parser(name, parents=[common], help=helptext)
        q.add_argument("--rank", type=int, required=True)
        q.add_argument("--h1", required=True, help="comma-separated generators, e.g. 'ab,Ba'")
        q.add_argument("--h2", required=True)
        if name == "con-separate":
            q.add_argument("--C", type=int, help="length bound (default: longest H2 generator)")
            q.add_argument("--skip-properties", action="store_true",
                           help="skip the exhaustive path checks on the witness")

    q = sub.add_parser("cover", parents=[common], help="graph covers")
    q.add_argument("kind", choices=("girth", "branched", "noncut"))
    q.add_argument("graph", help="graph file (JSON or edge list) or rose:<rank>")
    q.add_argument("--m", type=int, help="girth bound: the cover has girth > m")
    q.add_argument("--degrees", help="comma-separated branched degrees, one per vertex (or one for all)")
    q.add_argument("--vertex", type=int, help="vertex needing a non-cut lift")

    q = sub.add_parser("surface", parents=[common], help="branching data of surface covers")
    q.add_argument("kind", choices=("check", "cor1", "corM", "corM1", "very-technical"))
    q.add_argument("--genus", type=int)
    q.add_argument("--n", type=int, help="number of boundary circles (labels R1..Rn)")
    q.add_argument("--nonorientable", action="store_true")
    q.add_argument("--M", type=int)
    q.add_argument("--data", help="branching data such as 'R1(1,3),R2(4)'")
    q.add_argument("--data-file", help="JSON with genus, labels, data and optionally degree, cover_genus")
    q.add_argument("--degree", type=int)
    q.add_argument("--cover-genus", type=int)

    q = sub.add_parser("assemble", parents=[common], help="assemble a closed cover from pieces")
    q.add_argument("config", help="key = value config (or JSON) with n, M, N, N', N'', T")
    q.add_argument("--T", type=int, help="override T from the config")
    return p


COMMANDS = {"con-separate": cmd_con_separate, "scs": cmd_scs, "cover": cmd_cover,
            "surface": cmd_surface, "assemble": cmd_assemble}


def _write(path: str, text: str) -> None:
    target = Path(path)
    if not target.is_absolute() and os.environ.get(OUT_DIR_ENV):
        target = Path(os.environ[OUT_DIR_ENV]) / target
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=".consep-")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, target)


def run(argv=None) -> tuple[int, RunReport | None]:
    args = build_parser().parse_args(argv)
    try:
        rr = COMMANDS[args.command](args)
        text = rr.render(args.format)
    except (ConsepError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2, None
    if args.out:
        _write(args.out, text)
        print(rr.text() if args.format != "text" else text, end="")
    else:
        print(text, end="")
    return (0 if rr.ok else 1), rr


def main(argv=None) -> int:
    return run(argv)[0]


if __name__ == "__main__":
    sys.exit(main())

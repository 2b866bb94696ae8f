"""Build a closed surface cover out of pieces glued along boundary circles.

The base is split along circles R1..Rn into a side A and a side B; each piece
covers one component, and the bookkeeping tracks which circles are still open.

    python demos/assembly.py
"""

from consep import AssemblyParams, assemble, build_S1, iterate_steps, standard_assembly, verify_cover_complex
from consep.errors import SlotMismatch


def inventory(inv):
    return ", ".join(f"{lab}/{d} x{k}" for (lab, d), k in sorted(inv.items())) or "none"


def run(params, **kw):
    inp = standard_assembly(params, **kw)
    print("base components: " + ", ".join(f"{c.name} ({c.side}, chi {c.sig.euler})" for c in inp.base.components))
    print("templates:")
    for t in (inp.a, *inp.bs, *inp.a_tops, *inp.b_tops):
        slots = " ".join(f"{lab}/{d}" for lab, d in t.slots)
        print(f"  {t.kind:8s} degree {t.degree:3d} genus {t.genus:3d} slots {slots}")
    s1 = build_S1(inp.a, inp.bs, params, inp.base)
    st = iterate_steps(s1, inp.a_tops, inp.b_tops, params.T)
    for name, inv in st.history:
        print(f"  after {name}: open {inventory(inv)}")
    closed = assemble(inp.a, inp.bs, inp.a_tops, inp.b_tops, params, inp.base)
    print(f"closed up with copies {closed.notes['copies']} over a pattern with "
          f"{closed.notes['pattern_sheets']} sheets: {len(closed.pieces)} pieces, chi {closed.euler}")
    print(verify_cover_complex(closed, inp.base, params.T).text())


def main():
    split = AssemblyParams(n=2, M=3, N=2, N1=0, N2=0, T=3)
    print("== n=2, M=3, N=2, N'=N''=0, T=3 with B split into one-holed tori ==")
    run(split)

    print("\n== the same counts with a connected B ==")
    try:
        standard_assembly(split, split=False)
    except SlotMismatch as exc:
        print(f"rejected: {exc}")

    print("\n== n=2, M=2, N=1, N'=1, N''=2, T=3 with a connected B ==")
    run(AssemblyParams(n=2, M=2, N=1, N1=1, N2=2, T=3), split=False)


if __name__ == "__main__":
    main()

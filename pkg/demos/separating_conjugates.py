"""Walk through a finite quotient that keeps a cyclic subgroup away from every
conjugate of another one, then let the two-sided decision settle a few pairs.

    python demos/separating_conjugates.py
"""

from consep import build_core, con_separate, format_word, parse_subgroup, scs
from consep.witness import construct_delta, finite_quotient


def core(text):
    return build_core(2, parse_subgroup(text, 2))


def main():
    h1, h2 = core("a"), core("b")
    print("H1 = <a>, H2 = <b> in the free group on a, b")

    built = construct_delta(h1, C=1)
    print(f"\nThe core of H1 is one vertex with an a-loop; completing it leaves "
          f"{len(built.completed.outer_pairs)} outer pair(s) to plug.")
    print(f"Each is plugged with a copy of a {built.kernel.num_vertices}-sheeted cover of girth "
          f"{built.kernel_girth}, minus one edge.")
    print(f"The glued graph D has {built.graph.num_vertices} vertices, so [F : D] = {built.graph.num_vertices}.")

    res = con_separate(h1, h2)
    print("\nVerification of the witness:")
    print(res.report.text())

    q = finite_quotient(res.d, h1, h2)
    fixed = q.common_fixed_points(q.h2_images)
    print(f"\nIn the permutation action on {q.degree} cosets, b fixes the cosets {fixed},")
    print(f"and the basepoint coset {q.basepoint} is fixed by a: "
          f"{all(p[q.basepoint] == q.basepoint for p in q.h1_images)}.")
    if fixed:
        print("Some coset is fixed by all of H2, so a conjugate of H2 would sit inside D.")
    else:
        print("No coset is fixed by b, so no conjugate g^-1 <b> g lies in D: the image of a in this")
        print("finite quotient has a fixed point while the image of b acts freely.")

    print("\nA few two-sided decisions:")
    for a, b in (("a", "Bab"), ("ab,ba", "ab,ba"), ("aa,b", "ab"), ("ab", "ba")):
        r = scs(core(a), core(b))
        if r.verdict == "conjugate":
            print(f"  <{a}> vs <{b}>: conjugate by g = {format_word(r.g) or '1'}")
        else:
            print(f"  <{a}> vs <{b}>: separated ({r.direction}) by a subgroup of index "
                  f"{r.witness.d.num_vertices}, checks ok = {r.report.ok}")


if __name__ == "__main__":
    main()

"""Branching data for covers of compact surfaces with boundary.

Every emitted datum is checked against chi(cover) = d * chi(base) and the
per-boundary degree sums; the checks are printed alongside.

    python demos/surface_plans.py
"""

from consep import SurfaceSig, hurwitz_check, plan_cor1, plan_corM, plan_corM1, plan_very_technical
from consep.surfaces import BranchingData, format_data, identity


def show(title, b):
    print(f"{title}: degree {b.degree}, cover genus {b.cover_genus}, data {format_data(b)}")
    print("  " + b.identities().text().replace("\n", "\n  "))


def main():
    for g, n in ((2, 3), (0, 5), (0, 6)):
        show(f"cor1 over genus {g} with {n} boundary circles", plan_cor1(SurfaceSig.standard(g, n)))

    s = SurfaceSig.standard(1, 2)
    show("\ncorM, M = 4, phi = identity", plan_corM(s, identity(s), 4))
    show("\ncorM1, M = 4, phi = cor1", plan_corM1(s, plan_cor1(s), 4))

    plan = plan_very_technical(s, 4)
    print(f"\nvery technical plan on genus 1 with 2 circles: M0 = {plan.M0}, moduli {plan.moduli}")
    for t in (plan.theta, *plan.thetas):
        print(f"  {t.name}: degree {t.degree}, genus {t.cover_genus}, data {format_data(t)}")
    print("  not modelled: " + "; ".join(plan.out_of_scope))

    print("\nRealizability over a pair of pants:")
    pants = SurfaceSig.standard(0, 3)
    for d, rows, genus in ((2, ((2,), (2,), (1, 1)), 0), (4, ((1, 3), (1, 3), (2, 2)), 0),
                           (3, ((1, 2), (3,), (1, 1)), 0)):
        b = BranchingData(pants, d, rows, genus)
        v = hurwitz_check(b)
        print(f"  {format_data(b)} genus {genus}: {v.status} ({v.reason})")


if __name__ == "__main__":
    main()

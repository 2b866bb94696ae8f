from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from consep.errors import (
    DivisibilityViolated, HypothesisViolated, NonOrientableUnsupported, NotMultipleOfM0, SignatureMismatch,
)
from consep.surfaces import (
    NOT_REALIZABLE, REALIZABLE, UNKNOWN, BranchingData, SurfaceSig, compose_branching, corM_modulus,
    corM_tau_genus, euler_char, format_data, hurwitz_check, identity, parse_data, plan_cor1, plan_corM,
    plan_corM1, plan_very_technical,
)


def sig(g, n):
    return SurfaceSig.standard(g, n)


def exact_identities(b):
    """Recomputed here, not via the package: degree sums and Euler characteristics."""
    chi_base = 2 - 2 * b.base.genus - len(b.base.boundary_labels)
    chi_cover = 2 - 2 * b.cover_genus - sum(len(r) for r in b.data)
    return all(sum(r) == b.degree for r in b.data) and chi_cover == b.degree * chi_base and b.cover_genus >= 0


def test_euler_characteristic_examples():
    assert euler_char(sig(1, 2)) == -2
    assert euler_char(sig(0, 3)) == -1
    assert euler_char(SurfaceSig(False, 2, ("R1",))) == -2


def test_hurwitz_examples():
    assert hurwitz_check(BranchingData(sig(1, 2), 2, ((1, 1), (1, 1)), 1)).status == REALIZABLE
    assert hurwitz_check(BranchingData(sig(0, 3), 4, ((1, 3), (4,), (4,)), 1)).status == REALIZABLE
    # chi fails first for every genus; with a matching genus the planar case stays undecided
    for genus in range(4):
        v = hurwitz_check(BranchingData(sig(0, 3), 2, ((1, 1), (1, 1), (1, 1)), genus))
        assert v.status in (UNKNOWN, NOT_REALIZABLE)
    assert hurwitz_check(BranchingData(sig(0, 3), 2, ((1, 1), (1, 1), (1, 1)), 0)).status == NOT_REALIZABLE
    b = BranchingData(sig(0, 3), 4, ((1, 3), (1, 3), (2, 2)), 0)
    assert 2 - 0 - 6 == 4 * euler_char(b.base)
    assert hurwitz_check(b).status == UNKNOWN


def test_hurwitz_rejects_bad_sums_and_non_orientable_bases():
    assert hurwitz_check(BranchingData(sig(1, 1), 2, ((1,),), 1)).status == NOT_REALIZABLE
    with pytest.raises(NonOrientableUnsupported):
        hurwitz_check(BranchingData(SurfaceSig(False, 1, ("R1",)), 1, ((1,),), 1))


def test_compose_with_identity_and_two_double_covers():
    b = plan_cor1(sig(1, 2))
    assert compose_branching(identity(b.cover_signature()), b) == b
    assert compose_branching(b, identity(b.base)) == b
    top = plan_cor1(b.cover_signature())
    both = compose_branching(top, b)
    assert both.degree == 4
    assert both.data == ((1, 1, 1, 1), (1, 1, 1, 1))
    assert exact_identities(both)
    with pytest.raises(SignatureMismatch):
        compose_branching(b, b)


def test_compose_multiplies_circle_degrees():
    phi = BranchingData(sig(1, 2), 2, ((2,), (2,)), 2)
    top = plan_cor1(phi.cover_signature())
    assert compose_branching(top, phi).data == ((2, 2), (2, 2))


@pytest.mark.parametrize("g, n, degree, genus, data", [
    (1, 2, 2, 1, "(R1(1,1), R2(1,1))"),
    (0, 3, 4, 1, "(R1(1,3), R2(4), R3(4))"),
    (0, 4, 4, 2, "(R1(1,3), R2(1,3), R3(4), R4(4))"),
])
def test_cor1_cases(g, n, degree, genus, data):
    b = plan_cor1(sig(g, n))
    assert (b.degree, b.cover_genus, format_data(b)) == (degree, genus, data)
    assert hurwitz_check(b).status == REALIZABLE
    assert b.data[0][0] == 1


def test_cor1_needs_three_circles_on_a_planar_base():
    with pytest.raises(HypothesisViolated):
        plan_cor1(sig(0, 2))


def test_corM_tau_genus_formula():
    # genus of the degree-2M stage over a genus-1 surface with two degree-1 circles, M = 4
    assert corM_tau_genus(4, 1, [1, 1]) == 2 * 4 - 1 == 7


def test_corM_repeats_each_circle_twice_its_degree():
    phi = BranchingData(sig(1, 2), 2, ((2,), (2,)), 2)
    b = plan_corM(sig(1, 2), phi, 4)
    tau = next(st for st in b.stages if st.name == "tau")
    assert all(row == (2, 2, 2, 2) for row in tau.data)
    assert all(set(row) == {4} for row in b.data)
    assert b.degree % 2 == 0 and exact_identities(b)


def test_corM_needs_even_M():
    with pytest.raises(DivisibilityViolated):
        plan_corM(sig(1, 1), identity(sig(1, 1)), 3)


def test_corM_on_an_annulus_uses_a_cyclic_cover():
    b = plan_corM(sig(0, 2), identity(sig(0, 2)), 6)
    assert b.data == ((6,), (6,)) and b.cover_genus == 0 and hurwitz_check(b).status == REALIZABLE


def test_corM1_example():
    s = sig(1, 1)
    b = plan_corM1(s, plan_cor1(s), 4)
    assert format_data(b) == "(R1(1,1,2,4))"
    # 1/2 (M [2 d g + d (n - 2) - 1/2] + 2 - d n) with d = 2, M = 4, g = 1, n = 1
    theta = next(st for st in b.stages if st.name == "theta")
    assert Fraction(1, 2) * (4 * (4 + 2 * (-1) - Fraction(1, 2)) + 2 - 2) == theta.cover_genus == 3
    assert b.degree == 8 and exact_identities(b)


def test_corM1_needs_four_dividing_M():
    s = sig(1, 1)
    with pytest.raises(HypothesisViolated):
        plan_corM1(s, plan_cor1(s), 6)


@pytest.mark.parametrize("g, n", [(0, 3), (0, 4), (1, 1), (1, 2), (2, 1)])
def test_very_technical_shapes(g, n):
    s = sig(g, n)
    probe = None
    try:
        plan_very_technical(s, 1)
    except NotMultipleOfM0 as exc:
        probe = exc
    assert probe is not None
    M0 = 12 if g == 0 else 4
    plan = plan_very_technical(s, M0)
    assert plan.M0 == M0
    rows = plan.theta.data
    assert all(r == rows[0] for r in rows) and set(rows[0]) == {M0}
    for i, t in enumerate(plan.thetas):
        for j, row in enumerate(t.data):
            if j == i:
                ones = row.count(1)
                assert ones == M0 // 2 and row.count(M0 // 2) == 1 + (M0 // 2 == 1)
            else:
                assert set(row) == {M0}
        assert exact_identities(t)
    assert len(plan.out_of_scope) == 5


def test_very_technical_hypotheses():
    with pytest.raises(HypothesisViolated):
        plan_very_technical(sig(0, 2), 12)
    with pytest.raises(NotMultipleOfM0):
        plan_very_technical(sig(0, 3), 6)


def test_data_text_roundtrip():
    assert parse_data("(R1(1,3), R2(4))") == {"R1": (1, 3), "R2": (4,)}
    assert parse_data("R1(1,1),R2(2)") == {"R1": (1, 1), "R2": (2,)}
    with pytest.raises(ValueError):
        parse_data("R1(1,")


@given(st.integers(0, 3), st.integers(1, 6))
def test_every_cor1_plan_satisfies_the_identities(g, n):
    if g == 0 and n < 3:
        return
    assert exact_identities(plan_cor1(sig(g, n)))


def test_uniform_modulus_of_identity():
    assert corM_modulus(identity(sig(0, 3))) == 12
    assert corM_modulus(identity(sig(1, 1))) == 2

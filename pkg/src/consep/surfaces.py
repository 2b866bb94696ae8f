"""Branching data of finite covers of compact surfaces with boundary.

A cover ``S~ -> S`` of degree ``d`` is recorded by, for every boundary circle
``R_i`` of ``S``, the degrees with which the circles of ``S~`` above it wrap
around it. Realizability is decided by Euler characteristic and degree-sum
arithmetic in the cases where that arithmetic is known to be sufficient.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import (
    DivisibilityViolated, HypothesisViolated, NonOrientableUnsupported,
    NotMultipleOfM0, SignatureMismatch, VerificationFailed,
)
from .report import Report

REALIZABLE = "Realizable"
NOT_REALIZABLE = "NotRealizable"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class SurfaceSig:
    orientable: bool = True
    genus: int = 0
    boundary_labels: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "boundary_labels", tuple(self.boundary_labels))
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if len(set(self.boundary_labels)) != len(self.boundary_labels):
            raise ValueError("boundary labels must be distinct")

    @classmethod
    def standard(cls, genus: int, n: int, orientable: bool = True) -> "SurfaceSig":
        return cls(orientable, genus, tuple(f"R{i}" for i in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.boundary_labels)

    @property
    def euler(self) -> int:
        return euler_char(self)

    def first(self, label) -> "SurfaceSig":
        """Same surface with ``label`` moved to the front."""
        rest = tuple(x for x in self.boundary_labels if x != label)
        return replace(self, boundary_labels=(label,) + rest)

    def __str__(self) -> str:
        kind = "orientable" if self.orientable else "non-orientable"
        return f"{kind} genus {self.genus}, boundary {','.join(self.boundary_labels) or '-'}"


def euler_char(s: SurfaceSig) -> int:
    if s.orientable:
        return 2 - 2 * s.genus - s.n
    return 1 - s.genus - s.n


@dataclass(frozen=True)
class BranchingData:
    """A cover of ``base`` of the given degree and cover genus.

    ``data[i]`` lists the degrees of the cover's boundary circles above
    ``base.boundary_labels[i]``. ``stages`` optionally records the covers this
    one was composed from, innermost first.
    """

    base: SurfaceSig
    degree: int
    data: tuple
    cover_genus: int
    stages: tuple = field(default=(), compare=False)
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "data", tuple(tuple(int(x) for x in row) for row in self.data))
        if len(self.data) != self.base.n:
            raise ValueError(f"expected {self.base.n} degree lists, got {len(self.data)}")
        if self.degree < 1 or any(x < 1 for row in self.data for x in row):
            raise ValueError("degrees must be positive")

    @property
    def cover_boundary_count(self) -> int:
        return sum(len(row) for row in self.data)

    @property
    def cover_euler(self) -> int:
        return 2 - 2 * self.cover_genus - self.cover_boundary_count

    def cover_labels(self) -> tuple:
        return tuple(f"{lab}.{j}" for lab, row in zip(self.base.boundary_labels, self.data)
                     for j in range(1, len(row) + 1))

    def cover_signature(self) -> SurfaceSig:
        return SurfaceSig(True, self.cover_genus, self.cover_labels())

    def boundary_degrees(self) -> dict:
        """Cover boundary label -> (base label, degree)."""
        out = {}
        for lab, row in zip(self.base.boundary_labels, self.data):
            for j, x in enumerate(row, 1):
                out[f"{lab}.{j}"] = (lab, x)
        return out

    def row(self, label) -> tuple:
        return self.data[self.base.boundary_labels.index(label)]

    def identities(self) -> Report:
        """The two exact integer identities every cover satisfies."""
        rep = Report()
        bad = [lab for lab, row in zip(self.base.boundary_labels, self.data) if sum(row) != self.degree]
        rep.add("degree sums", not bad, f"labels {bad} do not sum to {self.degree}" if bad else "")
        lhs, rhs = self.cover_euler, self.degree * self.base.euler
        rep.add("euler characteristic", lhs == rhs, f"chi(cover) = {lhs}, d*chi(base) = {rhs}")
        rep.add("cover genus non-negative", self.cover_genus >= 0)
        return rep

    def with_base(self, base: SurfaceSig) -> "BranchingData":
        """Same cover with the base's labels listed in another order."""
        if sorted(base.boundary_labels) != sorted(self.base.boundary_labels) or \
                (base.genus, base.orientable) != (self.base.genus, self.base.orientable):
            raise SignatureMismatch("not the same surface")
        rows = tuple(self.row(lab) for lab in base.boundary_labels)
        return replace(self, base=base, data=rows)

    def __str__(self) -> str:
        return format_data(self)


def format_data(b: BranchingData) -> str:
    return "(" + ", ".join(f"{lab}({','.join(map(str, row))})"
                           for lab, row in zip(b.base.boundary_labels, b.data)) + ")"


_ROW = re.compile(r"\s*([A-Za-z_][\w.]*)\s*\(\s*([\d\s,]*)\)\s*,?")


def parse_data(text: str) -> dict:
    """``"R1(1,3), R2(4)"`` -> ``{"R1": (1, 3), "R2": (4,)}``."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")") and not _ROW.fullmatch(s):
        s = s[1:-1]
    out, pos = {}, 0
    while pos < len(s):
        m = _ROW.match(s, pos)
        if not m:
            raise ValueError(f"cannot parse branching data at position {pos}: {s[pos:pos + 10]!r}")
        out[m.group(1)] = tuple(int(x) for x in m.group(2).replace(" ", "").split(",") if x)
        pos = m.end()
    return out


def identity(s: SurfaceSig) -> BranchingData:
    return BranchingData(s, 1, tuple((1,) for _ in s.boundary_labels), s.genus, name="identity")


# -- realizability -----------------------------------------------------------


@dataclass(frozen=True)
class HurwitzVerdict:
    status: str
    reason: str = ""

    def __bool__(self) -> bool:
        return self.status == REALIZABLE


def _stage_list(b: BranchingData) -> tuple:
    return tuple(st for st in b.stages if isinstance(st, BranchingData))


def hurwitz_check(b: BranchingData) -> HurwitzVerdict:
    """Realizable, NotRealizable (an arithmetic condition fails) or Unknown."""
    if not b.base.orientable:
        raise NonOrientableUnsupported("realizability is only decided over orientable surfaces")
    sums = [lab for lab, row in zip(b.base.boundary_labels, b.data) if sum(row) != b.degree]
    if sums:
        return HurwitzVerdict(NOT_REALIZABLE, f"degrees over {sums[0]} do not sum to {b.degree}")
    if b.cover_genus < 0 or b.cover_euler != b.degree * b.base.euler:
        return HurwitzVerdict(NOT_REALIZABLE,
                              f"chi(cover) = {b.cover_euler} differs from {b.degree} * {b.base.euler}")
    g, n, d = b.base.genus, b.base.n, b.degree
    if g >= 1:
        return HurwitzVerdict(REALIZABLE, "base of positive genus")
    if n >= 3 and any(row == (d,) for row in b.data):
        return HurwitzVerdict(REALIZABLE, "planar base with a boundary covered by a single circle")
    if n == 2 and b.cover_genus == 0 and b.data == ((d,), (d,)):
        return HurwitzVerdict(REALIZABLE, "cyclic cover of an annulus")
    if n <= 2 and d == 1:
        return HurwitzVerdict(REALIZABLE, "identity")
    stages = _stage_list(b)
    if stages and all(hurwitz_check(st).status == REALIZABLE for st in stages):
        return HurwitzVerdict(REALIZABLE, f"composite of {len(stages)} realizable covers")
    return HurwitzVerdict(UNKNOWN, "planar base outside the decided cases")


def compose_branching(outer: BranchingData, inner: BranchingData) -> BranchingData:
    """Branching data of ``inner ∘ outer`` where ``outer`` covers ``inner``'s cover.

    A degree-1 ``inner`` over ``outer.base`` itself is accepted as the identity.
    """
    if inner.degree == 1 and outer.base == inner.base and inner.cover_genus == inner.base.genus:
        return outer
    if outer.base != inner.cover_signature():
        raise SignatureMismatch(f"outer base [{outer.base}] is not the cover [{inner.cover_signature()}]")
    rows = []
    for lab, row in zip(inner.base.boundary_labels, inner.data):
        rows.append(tuple(e * x for j, x in enumerate(row, 1) for e in outer.row(f"{lab}.{j}")))
    stages = (_stage_list(inner) or (inner,)) + (_stage_list(outer) or (outer,))
    return BranchingData(inner.base, inner.degree * outer.degree, tuple(rows), outer.cover_genus,
                         stages=stages)


def _require(cond: bool, clause: str, exc=HypothesisViolated) -> None:
    if not cond:
        raise exc(clause)


def _check_emitted(b: BranchingData) -> BranchingData:
    rep = b.identities()
    if not rep.ok:
        raise VerificationFailed("; ".join(f"{c.name}: {c.detail}" for c in rep.checks if not c.passed))
    return b


# -- plans -------------------------------------------------------------------


def plan_cor1(s: SurfaceSig) -> BranchingData:
    """Cover of degree 2 or 4 with positive genus and a circle of degree 1 over the first label."""
    _require(s.orientable, "base must be orientable", NonOrientableUnsupported)
    _require(s.n >= 1, "base needs at least one boundary circle")
    g, n = s.genus, s.n
    if g >= 1:
        return _check_emitted(BranchingData(s, 2, tuple((1, 1) for _ in range(n)), 2 * g - 1, name="cor1"))
    _require(n >= 3, "a planar base needs at least 3 boundary circles")
    if n % 2:
        rows = ((1, 3),) + tuple((4,) for _ in range(n - 1))
        genus = (3 * n - 7) // 2
    else:
        rows = ((1, 3), (1, 3)) + tuple((4,) for _ in range(n - 2))
        genus = (3 * n - 8) // 2
    return _check_emitted(BranchingData(s, 4, rows, genus, name="cor1"))


def corM_tau_genus(M: int, mid_genus: int, degrees) -> int:
    """Genus of the degree-``2M`` cover of a surface of genus ``mid_genus`` whose
    boundary circles have degrees ``degrees`` over the original base."""
    return M * (2 * mid_genus + len(degrees) - 2) - sum(degrees) + 1


def corM_modulus(phi: BranchingData) -> int:
    """Smallest modulus the uniform-degree plan accepts for ``phi``: ``lcm(2, d_l)``."""
    s = phi.base
    if s.genus == 0 and s.n == 2:
        return math.lcm(2, phi.degree)
    sigma = plan_cor1(phi.cover_signature())
    both = compose_branching(sigma, phi)
    return math.lcm(2, *(x for row in both.data for x in row))


def plan_corM(s: SurfaceSig, phi: BranchingData, M: int) -> BranchingData:
    """Cover of even degree factoring through ``phi`` with every boundary degree ``M``.

    Needs ``M`` even and divisible by every boundary degree of ``phi`` composed
    with the degree-2-or-4 cover of positive genus.
    """
    _require(s.orientable, "base must be orientable", NonOrientableUnsupported)
    _require(s.n >= 1, "base needs at least one boundary circle")
    _require(not (s.genus == 0 and s.n == 1), "base is a disc")
    if phi.base != s:
        raise SignatureMismatch("phi is not a cover of s")
    _require(M % 2 == 0, f"M = {M} must be even", DivisibilityViolated)
    if s.genus == 0 and s.n == 2:
        d = phi.degree
        _require(M % d == 0, f"degree {d} must divide M = {M}", DivisibilityViolated)
        cyc = BranchingData(phi.cover_signature(), M // d, tuple((M // d,) for _ in phi.cover_labels()),
                            0, name="cyclic")
        return _check_emitted(replace(compose_branching(cyc, phi), name="corM"))
    sigma = plan_cor1(phi.cover_signature())
    both = compose_branching(sigma, phi)
    degs = [x for row in both.data for x in row]
    bad = [x for x in degs if M % x]
    _require(not bad, f"boundary degrees {sorted(set(bad))} must divide M = {M}", DivisibilityViolated)
    mid = both.cover_signature()
    genus = corM_tau_genus(M, mid.genus, degs)
    tau = BranchingData(mid, 2 * M, tuple((M // x,) * (2 * x) for x in degs), genus, name="tau")
    _check_emitted(tau)
    return _check_emitted(replace(compose_branching(tau, both), name="corM"))


def _corM1_theta_genus(M: int, d: int, g: int, n: int) -> int:
    val = Fraction(1, 2) * (M * (2 * d * g + d * (n - 2) - Fraction(1, 2)) + 2 - d * n)
    if val.denominator != 1:
        raise VerificationFailed(f"genus {val} is not an integer")
    return int(val)


def corM1_modulus(phi: BranchingData) -> int:
    return math.lcm(4, *(x for row in phi.data for x in row))


def plan_corM1(s: SurfaceSig, phi: BranchingData, M: int) -> BranchingData:
    """Cover factoring through ``phi`` (even degree ``d``, a degree-1 circle
    over the first label) with data ``R1(1 x M/2, M/2, M x (d-1))`` and
    ``R_i(M x d)`` elsewhere."""
    _require(s.orientable, "base must be orientable", NonOrientableUnsupported)
    _require(s.n >= 1, "base needs at least one boundary circle")
    _require(s.genus >= 1 or s.n >= 3, "a planar base needs at least 3 boundary circles")
    if phi.base != s:
        raise SignatureMismatch("phi is not a cover of s")
    d = phi.degree
    _require(d % 2 == 0, f"degree of phi ({d}) must be even")
    _require(phi.cover_genus >= 1, "phi must have a cover of positive genus")
    _require(phi.data[0][0] == 1, "phi needs a circle of degree 1 first over the first label")
    _require(M % 4 == 0, f"4 must divide M = {M}", DivisibilityViolated)
    bad = sorted({x for row in phi.data for x in row if M % x})
    _require(not bad, f"boundary degrees {bad} must divide M = {M}", DivisibilityViolated)
    rows = []
    for i, row in enumerate(phi.data):
        for j, x in enumerate(row):
            if (i, j) == (0, 0):
                rows.append((1,) * (M // 2) + (M // 2,))
            else:
                rows.append((M // x,) * x)
    genus = _corM1_theta_genus(M, d, s.genus, s.n)
    theta = BranchingData(phi.cover_signature(), M, tuple(rows), genus, name="theta")
    _check_emitted(theta)
    out = compose_branching(theta, phi)
    # the circles of one row come out in the order of phi's circles; list the
    # degree-1 ones first as in the target shape
    out = replace(out, data=tuple(tuple(sorted(row)) for row in out.data), name="corM1")
    return _check_emitted(out)


@dataclass(frozen=True)
class VeryTechnicalPlan:
    theta: BranchingData
    thetas: tuple
    M0: int
    moduli: dict
    out_of_scope: tuple = (
        "no short loops in the uniform cover",
        "short arcs with ends on a boundary circle stay in it",
        "short loops in the i-th cover go into a degree-1 circle",
        "short arcs with ends on a degree-1 circle stay in it",
        "degree-1 circles are far apart",
    )


def plan_very_technical(s: SurfaceSig, M: int, n: int | None = None) -> VeryTechnicalPlan:
    """Uniform-degree cover and, for each label, a cover with one distinguished
    degree-1 circle, for every multiple ``M`` of a computed ``M0``.

    The metric coverings that the full statement composes with are replaced by
    identities; the metric clauses are listed in ``out_of_scope``.
    """
    _require(s.orientable, "base must be orientable", NonOrientableUnsupported)
    _require(s.euler <= -1, f"chi(S) = {s.euler} must be at most -1")
    _require(s.n >= 1, "base needs at least one boundary circle")
    if n is not None and n != s.n:
        raise HypothesisViolated(f"n = {n} but the signature has {s.n} boundary labels")
    base_id = identity(s)
    moduli = {"uniform": corM_modulus(base_id)}
    firsts = []
    for lab in s.boundary_labels:
        s_i = s.first(lab)
        delta = plan_cor1(s_i)
        firsts.append((lab, s_i, delta))
        moduli[lab] = corM1_modulus(delta)
    M0 = math.lcm(*moduli.values())
    if M % M0:
        raise NotMultipleOfM0(f"M = {M} is not a multiple of M0 = {M0}")
    theta = replace(plan_corM(s, base_id, M), name="Theta")
    thetas = []
    for lab, s_i, delta in firsts:
        t = plan_corM1(s_i, delta, M).with_base(s)
        thetas.append(replace(t, name=f"theta[{lab}]"))
    return VeryTechnicalPlan(theta, tuple(thetas), M0, moduli)


__all__ = [
    "BranchingData", "HurwitzVerdict", "NOT_REALIZABLE", "REALIZABLE", "SurfaceSig", "UNKNOWN",
    "VeryTechnicalPlan", "compose_branching", "corM1_modulus", "corM_tau_genus", "corM_modulus", "euler_char",
    "format_data", "hurwitz_check", "identity", "parse_data", "plan_cor1", "plan_corM", "plan_corM1",
    "plan_very_technical",
]

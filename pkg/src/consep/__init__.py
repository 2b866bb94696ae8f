"""Finite-quotient separation of subgroup conjugates in free groups, with the
graph-cover and surface-cover machinery behind it."""

from .assembly import (
    AssemblyParams, BaseComponent, BaseDecomposition, Piece, PieceComplex, PieceTemplate, assemble,
    blowup, build_S1, final_close, iterate_steps, make_template, pullback, standard_assembly,
    verify_cover_complex,
)
from .core import (
    CoreGraph, CoverGraph, OuterPair, build_core, complete_core, coset_table, fiber_product, fold,
    free_basis, intersect, is_conjugate_into, membership, rank, rose,
)
from .covers import (
    BranchedCoverMap, GirthCover, build_branched_cover, build_branched_cover_noncut, girth_amplify,
    homology_cover, rose_girth_cover, verify_branched_cover,
)
from .errors import *  # noqa: F401,F403
from .graphs import Graph, LabeledGraph, girth, is_cut_vertex, to_dot
from .report import Check, Report
from .surfaces import (
    BranchingData, SurfaceSig, compose_branching, hurwitz_check, plan_cor1, plan_corM, plan_corM1,
    plan_very_technical,
)
from .witness import (
    Conjugator, SCSResult, Witness, WitnessParams, build_delta, con_separate, finite_quotient, push_up, scs,
    verify_witness_properties,
)
from .words import format_word, inverse, multiply, parse_subgroup, parse_word, reduce_word

__version__ = "0.1.0"

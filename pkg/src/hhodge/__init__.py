"""Exact Rep(G)-valued Chern characters of Hurwitz-Hodge bundles.

The package computes the representation-ring-valued Chern character of the
dual Hurwitz-Hodge bundle on moduli of pointed admissible G-covers from a
closed-form relative Riemann-Hurwitz formula, computes the same class
independently by the direct Grothendieck-Riemann-Roch route, and verifies
the internal identities relating them, all in exact arithmetic.
"""

from .cyclo import Cyclotomic, cyc_arith, root_of_unity
from .graphs import DecoratedCutGraph, enumerate_cut_graphs, graph_invariants
from .groups import (
    FiniteGroup,
    GroupError,
    Subgroup,
    automorphisms,
    build_group,
    conjugacy_data,
    cyclic_subgroup,
    generated_subgroup,
)
from .hodge import (
    EquivariantSheafData,
    KExpression,
    ModuliContext,
    aut_transport,
    bch_hurwitz_hodge,
    bch_hurwitz_hodge_dual,
    bch_pushforward_general,
    bch_s_node,
    bch_s_puncture,
    bch_s_puncture_dual,
    boundary_restriction_crrt,
    ch_hodge_base,
    ch_hurwitz_hodge_grr,
    dualizing_sheaf_data,
    isotypic_class,
    monodromy_vectors,
    rank_closed_form_node,
    rank_closed_form_puncture,
    rank_rh,
    run_verification_grid,
    structure_sheaf_data,
    verify_identities,
)
from .repring import (
    VirtualCharacter,
    cyclic_irrep_char,
    d_mk,
    dual_char,
    eta,
    i_g,
    induce,
    perm_character,
    regular_character,
    restrict,
    trivial_character,
)
from .series import (
    RationalPolynomial,
    TruncSeries,
    bernoulli_polynomial,
    delta_bernoulli,
    f_r_at_one_series,
    f_r_eval_at_root,
    frk_series,
    iif_series,
)
from .tautring import Monomial, RepTautClass, RingContext, TautClass, convert_classes

__version__ = "0.1.0"

"""Twisted involutions of the Weyl groups W(B_n) and W(D_n).

The submodules build on each other:

* :mod:`twinv.exact_ring` -- integer polynomials, Laurent polynomials, Q(u)
* :mod:`twinv.signed_weyl` -- signed permutations, lengths, descents
* :mod:`twinv.twisted` -- the ``⋉`` operation, rho, reduced I-expressions
* :mod:`twinv.braid_rewrite` -- braid rewriting rules and their verifiers
* :mod:`twinv.hecke` -- Hecke algebra, involution module and the map eta
"""
from .braid_rewrite import (
    LEMMAS,
    MoveSite,
    RewriteGraph,
    RewriteRule,
    TimeBudgetExceeded,
    applicable_moves,
    apply_move,
    find_ablation_witness,
    rewrite_graph,
    rule_ids,
    rule_set,
    verify_classification,
    verify_connectivity,
    verify_preservation,
)
from .exact_ring import IntPoly, LaurentPoly, PoleError, RatFunc
from .hecke import (
    HeckeElement,
    ModuleElement,
    check_hecke_relations,
    check_module_relations,
    coset_reps_D,
    eta,
    eta_table,
    module_action,
    t_mul_gen,
    verify_coset_reps,
    verify_eta,
    x_empty,
)
from .signed_weyl import (
    CapExceeded,
    GroupType,
    Root,
    SignedPermutation,
    format_word,
    parse_word,
)
from .twisted import (
    ASCENT,
    CaseReport,
    all_involutions,
    classify_double_coset,
    count_reduced_iexprs,
    enumerate_reduced_iexprs,
    eval_iexpr,
    exchange_apply,
    is_reduced_iexpr,
    rho,
    twisted_mult,
)

__version__ = "0.1.0"

__all__ = [
    "all_involutions",
    "applicable_moves",
    "apply_move",
    "ASCENT",
    "CapExceeded",
    "CaseReport",
    "check_hecke_relations",
    "check_module_relations",
    "classify_double_coset",
    "coset_reps_D",
    "count_reduced_iexprs",
    "enumerate_reduced_iexprs",
    "eta",
    "eta_table",
    "eval_iexpr",
    "exchange_apply",
    "find_ablation_witness",
    "format_word",
    "GroupType",
    "HeckeElement",
    "IntPoly",
    "is_reduced_iexpr",
    "LaurentPoly",
    "LEMMAS",
    "module_action",
    "ModuleElement",
    "MoveSite",
    "parse_word",
    "rewrite_graph",
    "RewriteGraph",
    "RewriteRule",
    "rho",
    "PoleError",
    "RatFunc",
    "Root",
    "rule_ids",
    "rule_set",
    "SignedPermutation",
    "t_mul_gen",
    "TimeBudgetExceeded",
    "twisted_mult",
    "verify_classification",
    "verify_connectivity",
    "verify_coset_reps",
    "verify_eta",
    "verify_preservation",
    "x_empty",
]

"""Exact shuffle-algebra, Lyndon-word, unitriangular-group and Magnus-expansion computations."""

from .arith import binomial, h_gcd, moebius, necklace_phi, p_adic_valuation
from .indec import (
    decomposable_generators,
    indec_dim_mod_p,
    lyndon_basis_check,
    rank_mod_p,
    smith_normal_form,
)
from .magnus import (
    TruncSeries,
    check_rho_homomorphism,
    check_shuffle_relation,
    epsilon,
    magnus_eval,
    rho_w,
    trunc_inv,
    trunc_mul,
)
from .shuffle_poly import WordPoly, coefficient, concat_mul, infiltration, radford_Q, shuffle, shuffle_power
from .unipotent import (
    FiniteGroupSet,
    UniMatrix,
    element_order,
    generate_group,
    group_exponent_formula,
    lower_p_central_series,
    quotient_mod,
    uni_inv,
    uni_mul,
    uni_pow,
    verify_exponent,
    verify_filtration_lemma,
)
from .words import Alphabet, CFLFactorization, cfl_factorize, compare_lex, is_lyndon, lyndon_words

__version__ = "0.1.0"

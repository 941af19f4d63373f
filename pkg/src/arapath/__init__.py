"""Arithmetical rank of path ideals: constructions, certificates and projective dimension."""

from .groebner import (Budget, GroebnerBasis, GroebnerBudgetExceeded, buchberger, ideal_contains, normal_form,
                       s_polynomial)
from .hochster import BettiTable, HochsterCapExceeded, SimplicialComplex, betti_table, projective_dimension
from .ideals import (MonomialIdeal, RadicalEqualityReport, ideal_sum, monomial_ideal_contains, parse_ideal,
                     radical_membership, verify_radical_equality)
from .paths import (AraCertificate, BlockPair, PairUnavailable, PathParams, VerificationFailure, ara_formula,
                    blocks, check_lemma1_hypothesis, construct_certificate, decompose_nt, get_block_pair,
                    lemma1_project, padding_monomials, path_ideal, search_block_pair, substitute_blocks)
from .ring import Monomial, MonomialOrder, ParseError, Polynomial, PrimeField, Ring, parse_polynomial

__all__ = [
    "AraCertificate", "BettiTable", "BlockPair", "Budget", "GroebnerBasis", "GroebnerBudgetExceeded",
    "HochsterCapExceeded", "Monomial", "MonomialIdeal", "MonomialOrder", "PairUnavailable", "ParseError",
    "PathParams", "Polynomial", "PrimeField", "RadicalEqualityReport", "Ring", "SimplicialComplex",
    "VerificationFailure", "ara_formula", "betti_table", "blocks", "buchberger", "check_lemma1_hypothesis",
    "construct_certificate", "decompose_nt", "get_block_pair", "ideal_contains", "ideal_sum", "lemma1_project",
    "monomial_ideal_contains", "normal_form", "padding_monomials", "parse_ideal", "parse_polynomial",
    "path_ideal", "projective_dimension", "radical_membership", "s_polynomial", "search_block_pair",
    "substitute_blocks", "verify_radical_equality",
]

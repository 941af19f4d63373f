"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from arapath.ring import Monomial, Polynomial, Ring


def monomials(nvars: int, max_exp: int = 2, square_free: bool = False):
    top = 1 if square_free else max_exp
    return st.lists(st.integers(0, top), min_size=nvars, max_size=nvars).map(Monomial.from_dense)


def nonunit_monomials(nvars: int, square_free: bool = False):
    return monomials(nvars, square_free=square_free).filter(lambda m: not m.is_one())


def polynomials(ring: Ring, max_terms: int = 4, max_exp: int = 2):
    term = st.tuples(st.integers(-5, 5), monomials(ring.nvars, max_exp))
    return st.lists(term, max_size=max_terms).map(lambda ts: Polynomial.from_terms(ring, ts))


def nonzero_polynomials(ring: Ring, max_terms: int = 4, max_exp: int = 2):
    return polynomials(ring, max_terms, max_exp).filter(lambda f: not f.is_zero())

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from arapath.groebner import (BUDGET_ENV, Budget, GroebnerBudgetExceeded, buchberger, ideal_contains,
                              is_groebner_basis, normal_form, s_polynomial)
from arapath.ring import Monomial, Polynomial, Ring

from strategies import nonunit_monomials, nonzero_polynomials, polynomials

R4 = Ring.of(4)


def _oracle_reduced_gb(F, ring):
    """Reduced degrevlex basis from sympy, as monic polynomials of ``ring``."""
    xs = sympy.symbols(f"x1:{ring.nvars + 1}")
    exprs = [sympy.sympify(str(f).replace("^", "**"), locals={f"x{i + 1}": x for i, x in enumerate(xs)}) for f in F]
    G = sympy.groebner(exprs, *xs, order="grevlex", modulus=ring.p)
    out = []
    for g in G.exprs:
        terms = sympy.Poly(g, *xs, modulus=ring.p).terms()
        out.append(Polynomial.from_dense(ring, {e: int(c) % ring.p for e, c in terms}).monic())
    return sorted(out, key=str)


def test_normal_form_examples():
    R = Ring.of(2)
    assert normal_form(R.parse("x1^2"), [R.parse("x1")]).is_zero()
    assert normal_form(R.parse("x1*x2 + x2"), [R.parse("x1")]) == R.parse("x2")


def test_normal_form_of_block_product():
    f = R4.parse("x1*x2*x3*x4")
    g1, g2 = R4.parse("x1*x2 + x3*x4"), R4.parse("x2*x3")
    # f = x1*x4*g2, so f is in the ideal; against a Groebner basis the remainder is 0
    assert normal_form(f, buchberger([g1, g2]).basis).is_zero()
    assert normal_form(f, [g2, g1]).is_zero()
    # {g1, g2} is not a Groebner basis, so with g1 first the division stalls on a nonzero remainder
    r = normal_form(f, [g1, g2])
    assert r == R4.parse("-x3^2*x4^2")
    assert ideal_contains(f - r, [g1, g2])
    assert not any(g.leading_monomial.divides(m) for g in (g1, g2) for _, m in r.terms)


def test_s_polynomial_examples():
    R = Ring.of(3)
    assert s_polynomial(R.parse("x1^2"), R.parse("x1*x2 + x2^2")) == R.parse("-x1*x2^2")
    f = R.parse("x1*x2 + x3")
    assert s_polynomial(f, f).is_zero()
    assert s_polynomial(R.parse("x1*x2 - x3"), R.parse("x2")) == R.parse("-x3")
    with pytest.raises(ValueError):
        s_polynomial(R.zero(), f)


def test_buchberger_examples():
    R = Ring.of(3)
    assert buchberger([R.var(1), R.var(2)]).basis == [R.var(1), R.var(2)]
    assert buchberger([R.parse("x1*x2 - x3"), R.parse("x2")]).basis == [R.var(2), R.var(3)]
    # z = x2
    unit = buchberger([Ring.of(2).parse("x1^3"), Ring.of(2).parse("1 - x2*x1")])
    assert unit.is_unit() and unit.basis == [Ring.of(2).one()]


def test_ideal_contains_examples():
    R = Ring.of(3)
    assert ideal_contains(R.var(3), [R.parse("x1*x2 - x3"), R.var(2)])
    assert not ideal_contains(R.var(1), [R.parse("x1*x2")])
    assert ideal_contains(R.zero(), [R.parse("x1*x2")])
    assert not ideal_contains(R.var(1), [])


def test_budget_exceeded_is_explicit():
    R = Ring.of(3)
    F = [R.parse("x1^2 - x2*x3"), R.parse("x2^2 - x1*x3"), R.parse("x3^2 - x1*x2 + x1")]
    with pytest.raises(GroebnerBudgetExceeded) as info:
        buchberger(F, budget=Budget(max_pairs=1))
    assert info.value.reason == "pair reductions"
    F = [R.parse("x1^2*x2 - x3^2"), R.parse("x1*x2^2 - x3 + x1"), R.parse("x2^3 + x1*x3^2 - 1")]
    with pytest.raises(GroebnerBudgetExceeded) as info:
        buchberger(F, budget=Budget(max_degree=3))
    assert info.value.reason == "degree cap"


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv(BUDGET_ENV, "7")
    assert Budget.from_env().max_pairs == 7
    monkeypatch.delenv(BUDGET_ENV)
    assert Budget.from_env() == Budget()
    with pytest.raises(ValueError):
        Budget(max_pairs=0)


def test_ring_mismatch():
    with pytest.raises(ValueError):
        buchberger([Ring.of(2).var(1), Ring.of(3).var(1)])
    with pytest.raises(ValueError):
        normal_form(Ring.of(2).var(1), [Ring.of(3).var(1)])


def test_runs_are_deterministic():
    R = Ring.of(4, 7)
    F = [R.parse("x1*x2 + 3*x3^2"), R.parse("x2*x4 - x1"), R.parse("x3*x4 + x2 + 1")]
    a, b = buchberger(F), buchberger(F)
    assert a.basis == b.basis and a.pairs_reduced == b.pairs_reduced


def test_reduced_basis_is_reduced():
    R = Ring.of(4, 7)
    G = buchberger([R.parse("x1*x2 + 3*x3^2"), R.parse("x2*x4 - x1"), R.parse("x3*x4 + x2 + 1")]).basis
    for i, g in enumerate(G):
        assert g.leading_coefficient == 1
        for j, h in enumerate(G):
            if i != j:
                assert not any(h.leading_monomial.divides(m) for _, m in g.terms)


polysets = st.lists(nonzero_polynomials(Ring.of(3, 7), max_terms=3, max_exp=2), min_size=1, max_size=3)


@given(polysets)
def test_output_passes_exhaustive_s_pair_check(F):
    G = buchberger(F).basis
    assert is_groebner_basis(G)
    for f in F:
        assert normal_form(f, G).is_zero()


@given(polysets)
def test_matches_sympy_reduced_basis(F):
    ring = F[0].ring
    ours = sorted(buchberger(F).basis, key=str)
    assert ours == _oracle_reduced_gb(F, ring)


@given(polysets, polynomials(Ring.of(3, 7), max_terms=5, max_exp=3))
def test_normal_form_idempotent(F, f):
    G = buchberger(F).basis
    r = normal_form(f, G)
    assert normal_form(r, G) == r
    # also for arbitrary (non-Groebner) divisor lists
    r2 = normal_form(f, F)
    assert normal_form(r2, F) == r2


@given(st.lists(nonunit_monomials(4), min_size=1, max_size=3))
def test_monomial_input_gives_minimal_generators(mons):
    R = Ring.of(4)
    G = buchberger([R.monomial(m) for m in mons]).basis
    minimal = {m for m in mons if not any(o.divides(m) and o != m for o in mons)}
    assert {g.leading_monomial for g in G} == minimal
    assert all(len(g) == 1 for g in G)


@given(st.lists(nonunit_monomials(4), min_size=1, max_size=3), st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_monomial_membership_agrees_with_divisibility(mons, exps):
    R = Ring.of(4)
    m = Monomial.from_dense(exps)
    assert ideal_contains(R.monomial(m), [R.monomial(g) for g in mons]) == any(g.divides(m) for g in mons)

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arapath.ring import Monomial, MonomialOrder, ParseError, Polynomial, PrimeField, Ring, parse_polynomial

from strategies import monomials, polynomials


def test_field_examples():
    F7 = PrimeField(7)
    assert F7.add(5, 4) == 2
    assert F7.inv(3) == 5
    assert F7.mul(F7.inv(3), 3) == 1
    with pytest.raises(ZeroDivisionError):
        PrimeField(32003).inv(0)


@pytest.mark.parametrize("p", [0, 1, 4, 8, 2 ** 31])
def test_field_rejects_non_primes(p):
    with pytest.raises(ValueError):
        PrimeField(p)


def test_largest_allowed_prime():
    assert PrimeField(2 ** 31 - 1).p == 2 ** 31 - 1


@given(st.integers(1, 6), st.integers(1, 6))
def test_field_inverse_gf7(a, b):
    F = PrimeField(7)
    assert F.mul(a, F.inv(a)) == 1
    assert F.sub(F.add(a, b), b) == a % 7


def test_compare_examples():
    drl = MonomialOrder("degrevlex", 3)
    assert drl.compare(Monomial({1: 1, 2: 1}), Monomial({3: 2})) > 0
    lex = MonomialOrder("lex", 2)
    assert lex.compare(Monomial({1: 1}), Monomial({2: 5})) > 0
    m = Monomial({1: 2, 2: 1})
    assert drl.compare(m, m) == 0 and lex.compare(m, m) == 0


def test_degrevlex_breaks_ties_on_last_variable():
    drl = MonomialOrder("degrevlex", 3)
    # same degree: the one with the smaller power of x3 is larger
    assert drl.compare(Monomial({1: 1, 3: 1}), Monomial({2: 2})) < 0
    assert drl.compare(Monomial({1: 2}), Monomial({1: 1, 2: 1})) > 0


@pytest.mark.parametrize("kind", ["lex", "degrevlex"])
@given(data=st.data())
def test_order_is_multiplicative_with_unit_minimal(kind, data):
    order = MonomialOrder(kind, 3)
    a, b, c = (data.draw(monomials(3, 3)) for _ in range(3))
    if order.compare(a, b) > 0:
        assert order.compare(a * c, b * c) > 0
    assert order.compare(a, Monomial()) >= 0


def test_monomial_basics():
    m = Monomial({2: 1, 1: 3})
    assert m.items() == ((1, 3), (2, 1))
    assert m.degree == 4 and m.support == {1, 2}
    assert Monomial({1: 0, 2: 1}) == Monomial({2: 1})
    assert Monomial().is_one()
    assert Monomial.product([1, 2, 3]) == Monomial({1: 1, 2: 1, 3: 1})
    assert Monomial({1: 1}).divides(m) and not m.divides(Monomial({1: 1}))
    assert m / Monomial({1: 1}) == Monomial({1: 2, 2: 1})
    assert m.lcm(Monomial({3: 1})) == Monomial({1: 3, 2: 1, 3: 1})
    assert m.gcd(Monomial({1: 1, 3: 1})) == Monomial({1: 1})
    assert m.shift(2) == Monomial({3: 3, 4: 1})
    assert str(m) == "x1^3*x2"
    with pytest.raises(ValueError):
        Monomial({1: 1}) / Monomial({2: 1})


def test_exponent_overflow_is_checked():
    with pytest.raises(OverflowError):
        Monomial({1: 2 ** 30}) * Monomial({1: 2 ** 30})


def test_parse_examples():
    R = Ring.of(4)
    f = parse_polynomial("x1*x2 + x3*x4", R)
    assert len(f) == 2
    assert parse_polynomial("x2*x1 - x1*x2", R).is_zero()
    assert parse_polynomial("x1^2*x1", R) == R.monomial(Monomial({1: 3}))


def test_parse_variants_and_coefficients():
    R = Ring.of(4, 7)
    assert R.parse("x1x2") == R.parse("x1*x2")
    assert R.parse("2x1") == R.parse("2*x1")
    assert R.parse(" 3 x1 x2 ") == R.parse("3*x1*x2")
    assert R.parse("9*x1") == R.parse("2*x1")
    assert R.parse("-x1 + 8") == R.parse("1 - x1")
    assert R.parse("0").is_zero()


@pytest.mark.parametrize("text,pos", [("x1 +", 4), ("x1^", 3), ("y1", 0), ("x5", 0), ("x0", 0), ("", 0)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_polynomial(text, Ring.of(4))
    assert info.value.position == pos


def test_arith_examples():
    R = Ring.of(4)
    f = R.parse("x1*x2 + x3*x4")
    assert f - R.parse("x3*x4") == R.parse("x1*x2")
    assert R.var(3) * R.parse("x1*x2 + x4") == R.parse("x1*x2*x3 + x3*x4")
    assert (f + (-f)).is_zero()
    assert f.mul_monomial(Monomial({1: 1}), 2) == R.parse("2*x1^2*x2 + 2*x1*x3*x4")
    assert f.scale(0).is_zero()


def test_ring_mismatch():
    with pytest.raises(ValueError):
        Ring.of(4).var(1) + Ring.of(3).var(1)
    with pytest.raises(ValueError):
        Ring.of(2, 7).var(1) * Ring.of(2, 5).var(1)


def test_terms_are_canonical():
    R = Ring.of(3)
    f = R.parse("x3 + x1^2 + 5*x1*x2 + 2")
    mons = [m for _, m in f.terms]
    assert mons == sorted(mons, key=R.order.key, reverse=True)
    assert f.leading_monomial == Monomial({1: 2})
    assert f.leading_coefficient == 1
    assert str(f) == "x1^2 + 5*x1*x2 + x3 + 2"


def test_printing_uses_symmetric_coefficients():
    R = Ring.of(4)
    assert str(R.parse("-x3*x4^2 - 3*x1 + 2")) == "-x3*x4^2 - 3*x1 + 2"


def test_evaluate_shift_and_filter():
    R = Ring.of(4, 7)
    f = R.parse("x1*x2 + 3*x4")
    assert f.evaluate([2, 3, 0, 1]) == (6 + 3) % 7
    assert f.shift(1, Ring.of(5, 7)) == Ring.of(5, 7).parse("x2*x3 + 3*x5")
    assert f.filter_terms(lambda m: m.max_index <= 2) == R.parse("x1*x2")


RINGS = [Ring.of(3, p) for p in (2, 7, 32003)]


@pytest.mark.parametrize("ring", RINGS, ids=lambda r: f"p{r.p}")
@given(data=st.data())
def test_distributive_law(ring, data):
    f, g, h = (data.draw(polynomials(ring)) for _ in range(3))
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f


@pytest.mark.parametrize("ring", RINGS, ids=lambda r: f"p{r.p}")
@given(data=st.data())
def test_print_parse_roundtrip(ring, data):
    f = data.draw(polynomials(ring, max_terms=6, max_exp=3))
    assert parse_polynomial(str(f), ring) == f


@given(st.lists(st.tuples(st.integers(-9, 9), monomials(3)), max_size=6), st.randoms(use_true_random=False))
def test_normalisation_ignores_insertion_order(terms, rnd):
    R = Ring.of(3, 7)
    shuffled = list(terms)
    rnd.shuffle(shuffled)
    f = Polynomial.from_terms(R, terms)
    assert f == Polynomial.from_terms(R, shuffled)
    assert Polynomial.from_terms(R, f.terms) == f
    assert all(c != 0 for c, _ in f.terms)

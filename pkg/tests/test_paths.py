import pytest
from hypothesis import given
from hypothesis import strategies as st

from arapath.ideals import MonomialIdeal, ideal_sum, parse_ideal, verify_radical_equality
from arapath.paths import (AraCertificate, PairUnavailable, PathParams, ara_formula, block_ideal, blocks,
                           builtin_pair, candidate_pairs, check_lemma1_hypothesis, construct_certificate,
                           decompose_nt, get_block_pair, lemma1_project, padding_monomials, parse_pair_config,
                           path_ideal, search_block_pair, substitute_blocks)
from arapath.ring import Monomial, Ring

from strategies import polynomials


def _strs(polys):
    return [str(f) for f in polys]


def test_path_ideal_examples():
    assert path_ideal(4, 2).to_text() == "x1*x2; x2*x3; x3*x4"
    assert path_ideal(5, 5).to_text() == "x1*x2*x3*x4*x5"
    I = path_ideal(7, 3)
    assert len(I) == 5 and I.generators[-1] == Monomial.product([5, 6, 7])
    with pytest.raises(ValueError):
        path_ideal(2, 3)


@pytest.mark.parametrize("n,t,value", [
    (4, 2, 2), (5, 2, 3), (6, 2, 4), (7, 3, 3), (9, 4, 3), (11, 5, 3), (14, 5, 4),
])
def test_ara_formula_examples(n, t, value):
    assert ara_formula(n, t) == value


@pytest.mark.parametrize("n,t,k,d", [(6, 2, 2, 0), (5, 2, 1, 2), (4, 2, 1, 1), (3, 3, 0, 3)])
def test_decompose_examples(n, t, k, d):
    assert decompose_nt(n, t) == PathParams(n, t, k, d)


def test_path_params_validated():
    with pytest.raises(ValueError):
        PathParams(6, 2, 1, 3)


def test_blocks_examples():
    assert blocks(decompose_nt(4, 2)) == [list(path_ideal(4, 2).generators)]
    two = blocks(decompose_nt(7, 2))
    assert [[str(m) for m in b] for b in two] == [["x1*x2", "x2*x3", "x3*x4"], ["x4*x5", "x5*x6", "x6*x7"]]
    for t in range(1, 6):
        (only,) = blocks(decompose_nt(2 * t, t))
        assert MonomialIdeal(Ring.of(2 * t), only) == block_ideal(t)
    with pytest.raises(ValueError):
        blocks(decompose_nt(6, 2))
    assert len(blocks(decompose_nt(6, 2), allow_leftover=True)) == 2


def test_each_shifted_pair_certifies_its_own_block():
    pair = get_block_pair(2)
    R = Ring.of(10)
    gens = substitute_blocks(pair, 3, R)
    assert len(gens) == 6
    for b, block in enumerate(blocks(decompose_nt(10, 2))):
        assert verify_radical_equality(gens[2 * b:2 * b + 2], MonomialIdeal(R, block)).verdict
    assert verify_radical_equality(gens, path_ideal(10, 2)).verdict


def test_builtin_pairs():
    p1 = get_block_pair(1)
    assert _strs(p1.pair) == ["x1", "x2"] and p1.provenance == "builtin" and p1.verified
    p2 = get_block_pair(2)
    assert _strs(p2.pair) == ["x1*x2 + x3*x4", "x2*x3"] and p2.verified
    assert builtin_pair(3) is None


def test_builtin_t2_pair_hand_check():
    # on x2x3 = 0 and x1x2 + x3x4 = 0: x2 = 0 forces x3x4 = 0, x3 = 0 forces x1x2 = 0
    R = Ring.of(4)
    g1, g2 = get_block_pair(2).pair
    assert (R.parse("x3*x4") ** 2 - R.parse("x3*x4") * g1 + R.parse("x1*x4") * g2).is_zero()


def test_missing_pair_is_a_structured_error():
    with pytest.raises(PairUnavailable) as info:
        get_block_pair(3)
    assert "pair unavailable for t=3" in str(info.value)
    with pytest.raises(PairUnavailable):
        get_block_pair(3, ["builtin", "config", "search"], search_budget=0)


def test_search_examples():
    found = search_block_pair(2, budget=16)
    assert found is not None and found.provenance == "search"
    assert _strs(found.pair) == ["x1*x2 + x3*x4", "x2*x3"]
    assert _strs(search_block_pair(1, budget=1).pair) == ["x1", "x2"]
    assert search_block_pair(3, budget=0) is None


def test_search_finds_pairs_for_t3_and_t4():
    for t in (3, 4):
        pair = search_block_pair(t)
        assert pair is not None and pair.verified
        assert verify_radical_equality(list(pair.pair), block_ideal(t)).verdict


def test_search_t3_pair_against_sympy():
    sympy = pytest.importorskip("sympy")
    g1, g2 = search_block_pair(3).pair
    xs = sympy.symbols("x1:7")
    loc = {f"x{i + 1}": x for i, x in enumerate(xs)}
    z = sympy.Symbol("z")
    F = [sympy.sympify(str(g).replace("^", "**"), locals=loc) for g in (g1, g2)]
    for m in block_ideal(3).generators:
        target = sympy.sympify(str(m), locals=loc)
        G = sympy.groebner(F + [1 - z * target], *xs, z, order="grevlex", modulus=32003)
        assert G.exprs == [1]
    for g in F:
        # each polynomial lies in the monomial ideal: every term divisible by a window
        for term in sympy.Poly(g, *xs).monoms():
            assert any(all(term[v - 1] >= 1 for v in m.support) for m in block_ideal(3).generators)


def test_candidates_are_deterministic():
    a = [tuple(_strs(c)) for c in list(candidate_pairs(3))[:20]]
    b = [tuple(_strs(c)) for c in list(candidate_pairs(3))[:20]]
    assert a == b and len(set(a)) == len(a)


def test_config_accepts_and_rejects():
    cfg = parse_pair_config("# pairs\nt=2: x1*x2 + x3*x4 | x2*x3\nt=2: x1*x2 | x3*x4\nt=3: x1 + | x2\nbogus\n")
    assert cfg.get(2).provenance == "config" and cfg.get(2).verified
    assert cfg.get(3) is None
    assert len(cfg.rejected) == 3
    assert "does not verify" in cfg.rejected[0]
    dup = parse_pair_config("t=2: x1*x2 + x3*x4 | x2*x3\nt=2: x2*x3 | x1*x2 + x3*x4")
    assert "duplicate" in dup.rejected[0]
    assert get_block_pair(2, ["config"], config=cfg).provenance == "config"


def test_config_pair_drives_construction():
    line = search_block_pair(3).to_config_line()
    cfg = parse_pair_config(line)
    cert = construct_certificate(7, 3, pair_sources=["config"], config=cfg)
    assert cert.count == 3 and cert.verdict == "pass" and cert.pair_provenance == "config"


def test_padding_examples():
    J, ext = padding_monomials(decompose_nt(6, 2))
    assert J.to_text() == "x6*x7" and ext == 7
    J, ext = padding_monomials(decompose_nt(8, 3))
    assert J.to_text() == "x7*x8*x9; x8*x9*x10" and ext == 10
    assert ideal_sum(path_ideal(8, 3), J) == path_ideal(10, 3)
    with pytest.raises(ValueError):
        padding_monomials(decompose_nt(9, 4))


@pytest.mark.parametrize("n,t", [(n, t) for t in range(2, 6) for n in range(t, 15) if n % (t + 1) < t - 1])
def test_padding_reaches_exact_fit(n, t):
    params = decompose_nt(n, t)
    J, ext = padding_monomials(params)
    assert decompose_nt(ext, t).d == t - 1
    assert ideal_sum(path_ideal(n, t), J) == path_ideal(ext, t)
    assert check_lemma1_hypothesis(path_ideal(n, t).with_ring(J.ring), J).holds
    assert all(g.max_index > n for g in J.generators)


def test_lemma1_hypothesis_examples():
    R = Ring.of(7)
    check = check_lemma1_hypothesis(path_ideal(6, 2).with_ring(R), parse_ideal("x6*x7", R))
    assert check.holds and check.witnesses == {Monomial.product([6, 7]): 7}
    R5 = Ring.of(5)
    bad = check_lemma1_hypothesis(parse_ideal("x1*x2; x1*x3; x4*x5", R5), parse_ideal("x1", R5))
    assert not bad and bad.failing == Monomial({1: 1})
    assert check_lemma1_hypothesis(path_ideal(4, 2), MonomialIdeal(Ring.of(4))).holds


def test_projection_examples():
    R = Ring.of(7)
    out = lemma1_project([R.parse("x4*x5 + x6*x7"), R.parse("x5*x6")], 6)
    assert _strs(out) == ["x4*x5", "x5*x6"]
    f = R.parse("x1*x2 + x3")
    assert lemma1_project([f], 6) == [f]
    assert lemma1_project([R.var(7)], 6) == []


@given(st.lists(polynomials(Ring.of(5, 7), max_terms=5), max_size=4), st.integers(0, 5))
def test_projection_idempotent(F, keep):
    once = lemma1_project(F, keep)
    assert lemma1_project(once, keep) == once
    assert all(m.max_index <= keep for f in once for _, m in f.terms)


@pytest.mark.parametrize("n,t", [(n, t) for t in range(1, 6) for n in range(t, 15)])
def test_formula_consistency(n, t):
    value = ara_formula(n, t)
    assert value >= 1
    if t == 1:
        assert value == n
    if n == t:
        assert value == 1


def test_construct_examples():
    c4 = construct_certificate(4, 2, verify=True)
    assert _strs(c4.generators) == ["x1*x2 + x3*x4", "x2*x3"]
    c5 = construct_certificate(5, 2, verify=True)
    assert _strs(c5.generators) == ["x1*x2 + x3*x4", "x2*x3", "x4*x5"]
    assert any(s.startswith("leftover") for s in c5.steps)
    c6 = construct_certificate(6, 2, verify=True)
    assert _strs(c6.generators) == ["x1*x2 + x3*x4", "x2*x3", "x4*x5", "x5*x6"]
    assert "projection: dropped terms involving x7" in c6.steps
    for c in (c4, c5, c6):
        assert c.verdict == "pass" and c.count == c.formula_value == c.pd_value and c.tight


def test_construct_certificate_dict_shape():
    d = construct_certificate(4, 2, verify=True).as_dict()
    assert set(d) == {"params", "generators", "count", "formula", "pd", "tight", "pair", "verification", "steps"}
    assert d["verification"]["verdict"] == "pass"
    assert {c["kind"] for c in d["verification"]["checks"]} == {"forward", "backward"}


def test_degraded_certificate():
    cert = construct_certificate(20, 3)
    assert cert.degraded and cert.gap == 18 - 10
    assert cert.count == 18 and cert.pd_value is None
    assert cert.generators == path_ideal(20, 3).polynomials()


def test_verification_off_and_default_policy():
    cert = construct_certificate(12, 2, verify=False)
    assert cert.verdict == "off" and cert.count == 8 and cert.pd_value == 8
    assert isinstance(cert, AraCertificate)


def test_two_blocks_glue_shifted_pairs():
    cert = construct_certificate(7, 2, verify=True)
    assert _strs(cert.generators) == ["x1*x2 + x3*x4", "x2*x3", "x4*x5 + x6*x7", "x5*x6"]
    assert cert.verdict == "pass"


@pytest.mark.parametrize("n", range(1, 7))
def test_t1_certificates(n):
    cert = construct_certificate(n, 1, verify=True)
    assert cert.count == n and cert.verdict == "pass"

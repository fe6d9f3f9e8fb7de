import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import calibrate_shuffle_relation, magnus_exponential, magnus_integer
from shuffle_lab.acceptance import load_calibration, shuffle_pairs
from shuffle_lab.magnus import (
    TruncSeries,
    check_functoriality,
    check_magnus_homomorphism,
    check_rho_homomorphism,
    check_shuffle_relation,
    epsilon,
    invert_group_word,
    magnus_eval,
    parse_group_word,
    random_group_word,
    render_group_word,
    rho_w,
    shuffle_relation_sweep,
    trunc_inv,
    trunc_mul,
)
from shuffle_lab.unipotent import UniMatrix, element_order
from shuffle_lab.words import Alphabet

XY = Alphabet.from_letters("xy")
X, Y = (0,), (1,)


def series(text, D, q, alph=XY):
    terms = {}
    for part in text.split("+"):
        part = part.strip()
        c, _, w = part.rpartition("*")
        terms[alph.parse(w) if not w.isdigit() else ()] = int(c) if c else (int(w) if w.isdigit() else 1)
    return TruncSeries(alph.size, D, q, terms)


def gw(text):
    return parse_group_word(text, XY)


def test_trunc_mul_examples():
    f = series("1 + 2*x + xy", 3, 7)
    assert trunc_mul(f, TruncSeries.one(2, 3, 7)) == f
    one_x, one_y = TruncSeries.letter(0, 2, 2, 5), TruncSeries.letter(1, 2, 2, 5)
    assert trunc_mul(one_x, one_y) == series("1 + x + y + xy", 2, 5)
    geo = TruncSeries(2, 2, 5, {(): 1, X: -1, (0, 0): 1})
    assert trunc_mul(one_x, geo) == TruncSeries.one(2, 2, 5)


def test_trunc_mul_mismatch():
    with pytest.raises(ValueError):
        trunc_mul(TruncSeries.one(2, 2, 5), TruncSeries.one(2, 3, 5))


def test_trunc_inv_examples():
    assert trunc_inv(TruncSeries.one(2, 3, 9)) == TruncSeries.one(2, 3, 9)
    D = 5
    expected = TruncSeries(2, D, 27, {X * i: (-1) ** i for i in range(D + 1)})
    assert trunc_inv(TruncSeries.letter(0, 2, D, 27)) == expected
    assert trunc_inv(TruncSeries.letter(0, 2, 2, 4)) == series("1 + 3*x + xx", 2, 4)
    with pytest.raises(ValueError):
        trunc_inv(TruncSeries(2, 2, 4, {(): 2, X: 1}))


def test_trunc_inv_nonunit_constant_term_scaling():
    f = TruncSeries(2, 4, 25, {(): 3, X: 1, (0, 1): 7, (1,): 4})
    assert trunc_mul(f, trunc_inv(f)) == TruncSeries.one(2, 4, 25) == trunc_mul(trunc_inv(f), f)


def test_degree_bound_enforced():
    with pytest.raises(ValueError):
        TruncSeries(2, 1, 5, {(0, 1): 1})
    with pytest.raises(ValueError):
        epsilon(gw("x"), (0, 1), 5, D=1)


def test_magnus_eval_examples():
    assert magnus_eval((), 5, 3) == TruncSeries.one(2, 3, 5)
    assert magnus_eval(gw("xy"), 5, 2) == series("1 + x + y + xy", 2, 5)
    assert magnus_eval(gw("xX"), 5, 4) == TruncSeries.one(2, 4, 5)


def test_epsilon_examples():
    assert epsilon(gw("xy"), (0, 1), 5) == 1
    assert epsilon(gw("xy"), (1, 0), 5) == 0
    assert epsilon(gw("xyX"), (), 5, D=2) == 1
    assert epsilon(gw("xx"), X, 5, D=2) == 2


def test_parse_group_word():
    assert gw("xY") == ((0, 1), (1, -1)) == gw("xy^-1")
    assert gw("1") == () == gw("")
    assert render_group_word(gw("xyX"), XY) == "xyX"
    with pytest.raises(ValueError):
        gw("xz")


@pytest.mark.parametrize("q", [4, 8, 9, 25, 125])
def test_magnus_eval_matches_integer_oracle(q):
    rng = random.Random(q)
    for _ in range(60):
        sigma = random_group_word(rng, 2)
        D = rng.randint(1, 5)
        exact = magnus_integer(sigma, D)
        assert magnus_eval(sigma, q, D) == TruncSeries(2, D, q, exact)


@pytest.mark.parametrize("q", [4, 8, 9, 25])
def test_magnus_homomorphism(q):
    assert check_magnus_homomorphism(q, 5, trials=80, seed=q).passed


@pytest.mark.parametrize("p,a,b", [(2, 3, 2), (2, 3, 1), (3, 2, 1), (5, 3, 1)])
def test_functoriality(p, a, b):
    assert check_functoriality(p, a, b, 4, trials=80, seed=p).passed


def test_reduce_requires_divisor():
    with pytest.raises(ValueError):
        TruncSeries.one(2, 2, 9).reduce(2)


def test_rho_examples():
    w = XY.parse("xy")
    assert rho_w(gw("x"), w, 2, 3) == UniMatrix.elementary(2, 3, 1, 2)
    assert rho_w((), XY.parse("xyx"), 3, 5) == UniMatrix.identity(3, 5)
    word = XY.parse("xyxx")
    for c in (0, 1):
        R = rho_w(((c, 1),), word, 4, 3)
        for i in range(1, 5):
            for j in range(i + 1, 6):
                assert R[i, j] == (int(word[i - 1] == c) if j == i + 1 else 0)


def test_rho_modulus_and_cyclic_image():
    for p in (2, 3):
        R = rho_w(gw("x"), X, 4, p)
        assert R.q == p**4 and element_order(R) == p**4


def test_rho_parameter_errors():
    with pytest.raises(ValueError):
        rho_w(gw("x"), XY.parse("xyx"), 2, 3)
    with pytest.raises(ValueError):
        rho_w(gw("x"), (), 2, 3)


@pytest.mark.parametrize("w,n", [("xy", 2), ("xyx", 3), ("x", 4), ("yxxy", 5), ("xy", 5)])
def test_rho_homomorphism(w, n):
    rep = check_rho_homomorphism(XY.parse(w), n, 3, trials=120, seed=len(w))
    assert rep.passed, rep.failures[:1]


def test_rho_homomorphism_batch():
    assert check_rho_homomorphism(Alphabet(2).words(3), 4, 2, trials=60, seed=4).passed
    with pytest.raises(ValueError):
        check_rho_homomorphism([(0,), (0, 1)], 3, 2)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 1), st.sampled_from([1, -1])), max_size=12).map(tuple),
       st.integers(0, 12), st.integers(0, 1))
def test_rho_depends_only_on_magnus_coefficients(sigma, cut, letter):
    # inserting x x^-1 changes the word but not its expansion
    cut = min(cut, len(sigma))
    padded = sigma[:cut] + ((letter, 1), (letter, -1)) + sigma[cut:]
    assert magnus_eval(padded, 27, 4) == magnus_eval(sigma, 27, 4)
    w = (0, 1, 1, 0)
    assert rho_w(padded, w, 5, 3, m=2) == rho_w(sigma, w, 5, 3, m=2)


def test_inverse_word_gives_inverse_series():
    rng = random.Random(5)
    for _ in range(30):
        s = random_group_word(rng, 2)
        assert trunc_mul(magnus_eval(s, 8, 4), magnus_eval(invert_group_word(s), 8, 4)) == TruncSeries.one(2, 4, 8)


# -- shuffle relations ------------------------------------------------------------


def test_shuffle_relation_examples():
    assert check_shuffle_relation(X, Y, gw("xy"), 125)
    assert check_shuffle_relation(X, Y, gw("xy"), 125, normalization="shuffle")
    # naive form: eps_x^2 = 4 but 2*eps_xx = 2
    assert not check_shuffle_relation(X, X, gw("xx"), 125, normalization="shuffle")
    assert check_shuffle_relation(X, X, gw("xx"), 125)
    with pytest.raises(ValueError):
        check_shuffle_relation((), X, gw("x"), 5)


def test_shuffle_relation_random_sweep_q125():
    rep = shuffle_relation_sweep([(X, Y)], 125, 1000, seed=3)
    assert rep.passed and rep.trials == 1000


def test_naive_shuffle_relation_fails_in_sweep():
    rep = shuffle_relation_sweep(shuffle_pairs(3), 125, 50, seed=1, normalization="shuffle")
    assert not rep.passed


def test_infiltration_relation_holds_over_integers():
    # integer-level oracle: no modulus at all
    from oracles import all_words, riffle_count

    rng = random.Random(9)
    for _ in range(40):
        sigma = random_group_word(rng, 2, 8)
        E = magnus_integer(sigma, 4)
        for u, v in shuffle_pairs(4):
            rhs = sum(riffle_count(u, v, w, True) * E.get(w, 0)
                      for k in range(max(len(u), len(v)), len(u) + len(v) + 1) for w in all_words(2, k))
            assert E.get(u, 0) * E.get(v, 0) == rhs


def test_exponential_expansion_is_a_shuffle_character():
    # sanity of the calibration sweep's third candidate
    E = magnus_exponential(((0, 1), (1, -1), (0, 1)), 2)
    assert E[(0,)] * E[(1,)] == E[(0, 1)] + E[(1, 0)]


def test_calibration_fixture_is_reproducible():
    shipped = load_calibration()
    assert calibrate_shuffle_relation() == shipped
    by_name = {c["candidate"]: c for c in shipped["candidates"]}
    assert by_name["shuffle / x->1+x"]["failures"] > 0
    assert by_name["infiltration / x->1+x"]["failures"] == 0
    assert shipped["selected"] == "infiltration"
    naive = shipped["naive_counterexample"]
    assert (naive["lhs"], naive["shuffle_rhs"], naive["infiltration_rhs"]) == (4, 2, 4)


def test_report_json():
    rep = check_functoriality(3, 2, 1, 3, trials=5, seed=2).to_json()
    assert list(rep) == ["check", "params", "trials", "failures", "seed", "passed"]
    assert rep["passed"] and rep["seed"] == 2

import random

import pytest

from thompsonfrac import fixtures
from thompsonfrac.cantor import CPoint, ParseError, SdiUnion, random_cpoint
from thompsonfrac.groups import GroupError
from thompsonfrac.loops import LoopElement, jones_act, loop_mul, random_loop, support, tau, tau_adapted
from thompsonfrac.thompson import A, IDENTITY, VElement, random_v

from oracles import jones_at, loop_at, random_bits, tau_raw, triple_arrays


def loop(t, text):
    return LoopElement.parse(t, text)


def test_product_with_inverse_is_identity(small_triple):
    rng = random.Random(1)
    for _ in range(50):
        a = random_loop(rng, small_triple)
        assert (a * a.inverse()).is_identity()


def test_complementary_halves_tile_to_a_constant():
    t = fixtures.get("z3inv")
    got = loop(t, "0:2; 1:0") * loop(t, "0:0; 1:2")
    assert got == LoopElement.constant(t, 2)
    assert str(got) == "ε:2"


def test_disjoint_supports_commute():
    t = fixtures.get("s3")
    a, b = loop(t, "0:1; 1:0"), loop(t, "0:0; 10:3; 11:0")
    assert a * b == b * a


def test_product_matches_pointwise_oracle(small_triple):
    rng = random.Random(2)
    mul = small_triple.group.mul
    for _ in range(200):
        a, b = random_loop(rng, small_triple, 5), random_loop(rng, small_triple, 5)
        ab = loop_mul(a, b)
        for _ in range(6):
            s = random_bits(rng)
            assert loop_at(ab.cells, s) == mul(loop_at(a.cells, s), loop_at(b.cells, s))


def test_canonical_form_merges_equal_siblings():
    t = fixtures.get("z2")
    assert loop(t, "00:1; 01:1; 1:0").cells == (("0", 1), ("1", 0))
    assert loop(t, "00:0; 01:0; 1:0").is_identity()


def test_parse_errors():
    t = fixtures.get("z3inv")
    with pytest.raises(ParseError):
        loop(t, "0:1; 10:1")
    with pytest.raises(ParseError):
        loop(t, "0:5; 1:0")
    with pytest.raises(ParseError):
        loop(t, "0 1")


def test_text_round_trip(small_triple):
    rng = random.Random(3)
    for _ in range(50):
        a = random_loop(rng, small_triple, 4)
        assert loop(small_triple, str(a)) == a


def test_mixed_triples_rejected():
    with pytest.raises(GroupError):
        LoopElement.constant(fixtures.get("z3"), 1) * LoopElement.constant(fixtures.get("z3inv"), 1)


def test_non_automorphism_triples_rejected():
    t = fixtures.get("z4dbl")
    a = LoopElement.constant(t, 1)
    with pytest.raises(GroupError):
        a * a
    with pytest.raises(GroupError):
        jones_act(t, A, a)


# supports

def test_support_examples():
    t = fixtures.get("z3inv")
    assert support(LoopElement.identity(t)).cells == ()
    assert support(loop(t, "0:1; 1:0")).cells == ("0",)
    assert support(loop(t, "00:1; 01:1; 1:0")).cells == ("0",)


def test_support_against_pointwise_oracle(small_triple):
    rng = random.Random(4)
    for _ in range(100):
        a = random_loop(rng, small_triple, 5)
        s_ = support(a)
        for _ in range(10):
            s = random_bits(rng)
            x = CPoint(s[:12], "01")
            assert s_.contains_point(x) == (loop_at(a.cells, x.expand(40)) != 0)


# τ

def test_tau_of_identity():
    t = fixtures.get("s3_inner")
    assert tau(t, IDENTITY, CPoint("01", "1")).is_identity()


def test_tau_contraction_is_alpha0():
    t = fixtures.get("v4_swap")
    assert tau(t, A, CPoint("00", "1")) == t.a0
    t = fixtures.get("s3_inner")
    assert tau(t, A, CPoint("00", "1")) == t.a0


def test_tau_on_cocf_triple():
    t = fixtures.get("z3inv")
    got = tau(t, A, CPoint("", "1"))
    assert got == t.a1.power(1 - 2) == t.a1.inverse()


def test_tau_matches_raw_and_is_refinement_independent():
    rng = random.Random(5)
    for name in ("s3_inner", "z5_2", "v4_swap", "z4inv"):
        t = fixtures.get(name)
        a0, a1 = triple_arrays(t)
        for _ in range(100):
            v, x = random_v(rng, 8), random_cpoint(rng)
            d, c = v.pair_at(x)
            assert list(tau(t, v, x).image) == tau_raw(a0, a1, d, c)
            w = x.expand(len(d) + rng.randint(0, 5))
            assert tau_adapted(t, v, w) == tau(t, v, x)


def test_tau_rejects_non_automorphisms():
    with pytest.raises(GroupError):
        tau(fixtures.get("z4dbl"), A, CPoint("", "0"))


# the Jones action

def test_untwisted_action_is_a_shift():
    t = fixtures.get("s3")
    rng = random.Random(6)
    for _ in range(100):
        v, a = random_v(rng, 6), random_loop(rng, t)
        got = jones_act(t, v, a)
        vi = v.inverse()
        for _ in range(5):
            x = random_cpoint(rng, 6)
            assert got(x) == a(vi.apply(x))


def test_identity_acts_trivially(small_triple):
    rng = random.Random(7)
    for _ in range(30):
        a = random_loop(rng, small_triple)
        assert jones_act(small_triple, IDENTITY, a) == a


def test_single_cell_twist():
    t = fixtures.get("z3inv")
    for g in range(3):
        got = jones_act(t, A, LoopElement.on_cell(t, "1", g))
        assert got == LoopElement.on_cell(t, "11", t.a1.inverse()(g))


def test_action_matches_formula_pointwise():
    rng = random.Random(8)
    for name in ("z3inv", "s3_inner", "z5_3", "v4_swap"):
        t = fixtures.get(name)
        for _ in range(100):
            v, a = random_v(rng, 8), random_loop(rng, t, 4)
            got = jones_act(t, v, a)
            for _ in range(5):
                s = random_bits(rng)
                assert loop_at(got.cells, s) == jones_at(t, v.pairs, a.cells, s)


def test_action_laws(small_triple):
    rng = random.Random(9)
    t = small_triple
    for _ in range(100):
        v, w = random_v(rng, 6), random_v(rng, 6)
        a, b = random_loop(rng, t, 4), random_loop(rng, t, 4)
        assert jones_act(t, v * w, a) == jones_act(t, v, jones_act(t, w, a))
        assert jones_act(t, v, a * b) == jones_act(t, v, a) * jones_act(t, v, b)
        x = random_cpoint(rng)
        assert tau(t, v * w, x) == tau(t, v, w.apply(x)) * tau(t, w, x)


def test_support_equivariance():
    rng = random.Random(10)
    for name in ("z3inv", "s3_inner", "v4_swap"):
        t = fixtures.get(name)
        for _ in range(100):
            v, a = random_v(rng, 8), random_loop(rng, t, 4)
            depth = max(len(d) for d, _ in v.pairs) + a.depth()
            cells = a.support().refined(depth)
            assert support(jones_act(t, v, a)) == SdiUnion.of(v.image_word(w) for w in cells)

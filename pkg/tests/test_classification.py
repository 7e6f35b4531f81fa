import itertools
import random

import pytest

from thompsonfrac import centralizers as ce
from thompsonfrac import fixtures
from thompsonfrac.cantor import SdiUnion
from thompsonfrac.classification import (
    FAILS,
    HOLDS,
    INCONCLUSIVE,
    ISOMORPHIC,
    NOT_FOUND,
    NOT_ISOMORPHIC,
    SWAP,
    WITNESS_FOUND,
    ID,
    IsoWitness,
    build_iso,
    cocf_check,
    cor28_decide,
    outer_order,
    prop24_search,
    prop24_verdict,
    witness_holds,
)
from thompsonfrac.fraction import FractionElement, random_fraction
from thompsonfrac.groups import GroupError, GroupMap, isomorphisms
from thompsonfrac.loops import random_loop
from thompsonfrac.thompson import fix_generators

from oracles import invert_perm, loop_at, tau_raw, triple_arrays

CELLS3 = ["".join(p) for p in itertools.product("01", repeat=3)]


# an independent commutant oracle

def _commutes_with(t, row, v_pairs) -> bool:
    """π_v(a) = a for the depth-3 array ``row``, straight from the definition."""
    a0, a1 = triple_arrays(t)
    cells = list(zip(CELLS3, row))
    for d, c in v_pairs:
        tau = tau_raw(a0, a1, d, c)
        for u in CELLS3:
            if loop_at(cells, c + u) != tau[loop_at(cells, d + u)]:
                return False
    return True


def _fixed(t):
    a0, a1 = triple_arrays(t)
    return [g for g in range(t.group.order) if a0[g] == g and a1[g] == g]


def _fix_family(t):
    """Arbitrary on the cells under 0, one α-fixed constant elsewhere."""
    n = t.group.order
    return {tuple(list(ins) + [z] * 4) for ins in itertools.product(range(n), repeat=4) for z in _fixed(t)}


def _stab_family(t):
    return {tuple([z1] * 4 + [z2] * 4) for z1 in _fixed(t) for z2 in _fixed(t)}


I0 = SdiUnion.of(["0"])


@pytest.mark.parametrize("name", ["z2", "z4inv"])
def test_fix_commutant(name):
    t = fixtures.get(name)
    res = ce.lemma26_fix(t, I0)
    assert res.ok and res.found == _fix_family(t)
    assert ce.crosscheck(t, res, fix_generators(I0, 3))


@pytest.mark.parametrize("name", ["z2", "z4inv"])
def test_stab_commutant(name):
    t = fixtures.get(name)
    res = ce.lemma26_stab(t, I0)
    assert res.ok and res.found == _stab_family(t)
    assert ce.crosscheck(t, res, ce.stab_generators(I0, 3))


def test_fix_commutant_exhaustive_oracle_on_z2():
    t = fixtures.get("z2")
    gens = [v.pairs for v in fix_generators(I0, 3)]
    brute = {row for row in itertools.product(range(2), repeat=8) if all(_commutes_with(t, row, g) for g in gens)}
    assert brute == ce.lemma26_fix(t, I0).found


def test_stab_commutant_oracle_sample_on_z4inv():
    t = fixtures.get("z4inv")
    gens = [v.pairs for v in ce.stab_generators(I0, 3)]
    found = ce.lemma26_stab(t, I0).found
    rng = random.Random(1)
    rows = [tuple(rng.randrange(4) for _ in range(8)) for _ in range(300)] + sorted(found)
    for row in rows:
        assert all(_commutes_with(t, row, g) for g in gens) == (row in found)


def test_center_search():
    for name, size in (("z2", 2), ("z4inv", 2), ("s3", 1), ("z3inv", 1)):
        t = fixtures.get(name)
        depth = 3 if t.group.order <= 4 else 2
        got = ce.center_search(t, depth)
        assert got == ce.center_expected(t, depth) and len(got) == size
    assert ce.v_center_witnesses(2)


def test_containment_helpers():
    rng = random.Random(2)
    t = fixtures.get("z3inv")
    b = random_loop(rng, t)
    assert all(v is not None for v in ce.commuting_candidates(rng, b, 2))


# the sufficient condition

def test_identity_witness():
    t = fixtures.get("s3_inner")
    w = prop24_search(t, t)
    assert w is not None and w.sigma == ID and w.holds()
    assert w.beta.is_identity() and (w.h0, w.h1) == (0, 0)


def test_swap_witness():
    t1, t2 = fixtures.get("z3inv"), fixtures.get("z3inv_swap")
    w = prop24_search(t1, t2)
    assert w is not None and w.sigma == SWAP and w.holds()
    v = prop24_verdict(t1, t2)
    assert v.verdict == WITNESS_FOUND and v.witness["sigma"] == "swap"


def test_no_witness_between_z4_and_z4inv():
    v = prop24_verdict(fixtures.get("z4"), fixtures.get("z4inv"))
    assert v.verdict == NOT_FOUND and "not a proof" in v.reason


def test_witness_condition_by_raw_arrays():
    """Every returned witness satisfies the condition recomputed on raw image arrays."""
    for n1, n2 in itertools.product(("z3inv", "z3inv_swap", "s3_inner", "s3_inner2", "s3", "z5_2", "z5_3"), repeat=2):
        t1, t2 = fixtures.get(n1), fixtures.get(n2)
        w = prop24_search(t1, t2)
        if w is None:
            continue
        b = list(w.beta.image)
        bi = invert_perm(b)
        g = t2.group
        src = triple_arrays(t1)
        dst = triple_arrays(t2)
        for i, h in ((0, w.h0), (1, w.h1)):
            conj = [b[src[i][bi[x]]] for x in range(g.order)]
            twisted = [g.mul(g.mul(h, conj[x]), g.inv(h)) for x in range(g.order)]
            assert twisted == dst[w.sigma[i]]


def test_witness_search_is_complete_on_small_fixtures():
    """No witness found means the raw brute-force search finds none either."""
    for n1, n2 in itertools.product(("z4", "z4inv", "z3inv", "z3inv0"), repeat=2):
        t1, t2 = fixtures.get(n1), fixtures.get(n2)
        brute = any(
            witness_holds(t1, t2, beta, sigma, (h0, h1))
            for beta in isomorphisms(t1.group, t2.group)
            for sigma in (ID, SWAP)
            for h0 in range(t2.group.order)
            for h1 in range(t2.group.order)
        )
        assert brute == (prop24_search(t1, t2) is not None)


# explicit isomorphisms

ISO_PAIRS = [("z3inv", "z3inv_swap"), ("s3_inner", "s3"), ("s3_inner", "s3_inner2"), ("z3inv_swap", "z3inv"), ("v4_swap", "v4_swap")]


@pytest.mark.parametrize("n1,n2", ISO_PAIRS)
def test_build_iso_is_a_homomorphism_with_inverse(n1, n2):
    t1, t2 = fixtures.get(n1), fixtures.get(n2)
    w = prop24_search(t1, t2)
    assert w is not None
    theta = build_iso(w)
    inv = theta.inverse()
    rng = random.Random(n1 + n2)
    for _ in range(60):
        x, y = random_fraction(rng, t1), random_fraction(rng, t1)
        assert theta(x * y) == theta(x) * theta(y)
        assert inv(theta(x)) == x
        z = random_fraction(rng, t2)
        assert theta(inv(z)) == z


@pytest.mark.parametrize("n1,n2", ISO_PAIRS)
def test_build_iso_maps_loops_to_loops_with_spatial_support(n1, n2):
    t1, t2 = fixtures.get(n1), fixtures.get(n2)
    w = prop24_search(t1, t2)
    theta = build_iso(w)
    rng = random.Random(n2 + n1)
    for _ in range(60):
        a = random_loop(rng, t1, 4)
        y = theta(FractionElement.of_loop(a))
        assert y.v.is_identity()
        sup = a.support()
        expect = sup if w.sigma == ID else SdiUnion.of(c.translate(str.maketrans("01", "10")) for c in sup.cells)
        assert y.a.support() == expect
        # preimages of loops are loops too
        b = random_loop(rng, t2, 4)
        assert theta.inverse()(FractionElement.of_loop(b)).v.is_identity()


def test_build_iso_rejects_bad_witness():
    t1, t2 = fixtures.get("z3inv"), fixtures.get("z3inv_swap")
    w = IsoWitness(t1, t2, GroupMap.identity(t1.group), ID, 0, 0)
    assert not w.holds()
    with pytest.raises(GroupError):
        build_iso(w)


# the inner-automorphism corollary

def test_cor28_examples():
    assert cor28_decide(fixtures.get("s3_inner"), fixtures.get("s3")).verdict == ISOMORPHIC
    assert cor28_decide(fixtures.get("s3_inner"), fixtures.get("s3_inner2")).verdict == ISOMORPHIC
    assert cor28_decide(fixtures.get("z4"), fixtures.get("z4inv")).verdict == NOT_ISOMORPHIC
    assert cor28_decide(fixtures.get("z4inv"), fixtures.get("z4")).verdict == NOT_ISOMORPHIC
    assert cor28_decide(fixtures.get("z2"), fixtures.get("z3")).verdict == NOT_ISOMORPHIC
    assert cor28_decide(fixtures.get("z3inv"), fixtures.get("z3inv_swap")).verdict == INCONCLUSIVE


def test_cor28_rejects_non_automorphisms():
    with pytest.raises(GroupError):
        cor28_decide(fixtures.get("z4dbl"), fixtures.get("z4"))


def test_cor28_consistent_with_witnesses():
    """An Isomorphic verdict always comes with an explicit witness."""
    names = [n for n in fixtures.NAMES if fixtures.get(n).autos]
    for n1, n2 in itertools.product(names, repeat=2):
        t1, t2 = fixtures.get(n1), fixtures.get(n2)
        v = cor28_decide(t1, t2)
        if v.verdict == ISOMORPHIC:
            assert prop24_search(t1, t2) is not None
        if prop24_search(t1, t2) is not None:
            assert v.verdict != NOT_ISOMORPHIC


# the coCF family

def _out_order_raw(t):
    """Order of α₁ modulo inner automorphisms, by brute force on arrays."""
    g = t.group
    inner = {tuple(g.mul(g.mul(h, x), g.inv(h)) for x in range(g.order)) for h in range(g.order)}
    a1 = list(t.a1.image)
    p = list(range(g.order))
    for k in range(1, 100):
        p = [a1[x] for x in p]
        if tuple(p) in inner:
            return k
    raise AssertionError


def test_cocf_examples():
    v = cocf_check(fixtures.get("z5_2"), fixtures.get("z5_4"))
    assert v.verdict == FAILS and "orders 4 vs 2" in v.reason
    assert cocf_check(fixtures.get("z5_2"), fixtures.get("z5_3")).verdict == HOLDS
    for name in ("z3inv", "z4inv", "z5_2", "v4_swap"):
        assert cocf_check(fixtures.get(name), fixtures.get(name)).verdict == HOLDS


def test_outer_orders_against_raw():
    for name in ("z3inv", "z4inv", "z5_2", "z5_3", "z5_4", "v4_swap"):
        t = fixtures.get(name)
        assert outer_order(t) == _out_order_raw(t)


def test_cocf_requires_trivial_alpha0():
    with pytest.raises(GroupError):
        cocf_check(fixtures.get("z3inv_swap"), fixtures.get("z3inv"))


def test_verdict_json_shape():
    j = cocf_check(fixtures.get("z5_2"), fixtures.get("z5_3")).to_json()
    assert j["verdict"] == HOLDS and "beta" in j["witness"]
    j = prop24_verdict(fixtures.get("z4"), fixtures.get("z4inv")).to_json()
    assert set(j) == {"verdict", "reason"}

import itertools
import json
import random

import pytest

from thompsonfrac import fixtures
from thompsonfrac.groups import (
    BoundExceeded,
    FiniteGroup,
    GroupError,
    GroupMap,
    Triple,
    aut_group,
    alpha_word,
    conjugation_map,
    cyclic,
    dihedral,
    direct_product,
    gamma_alpha_fixed,
    h_q_alpha,
    inner_auts,
    inversion,
    is_inner,
    isomorphisms,
    load_triple,
    out_class,
    quaternion,
    symmetric,
    tanushevski_kernel,
    tanushevski_reduce,
    triple_from_json,
)

from oracles import alpha_raw, brute_automorphisms, brute_inner, endomorphism_arrays, table_of, words_killing


def test_table_validation():
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [1, 1]])
    with pytest.raises(GroupError):
        FiniteGroup([[1, 0], [0, 1]])
    # a Latin square that is not associative
    bad = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(GroupError):
        FiniteGroup(bad)


def test_group_map_must_be_multiplicative():
    z4 = cyclic(4)
    with pytest.raises(GroupError):
        GroupMap(z4, z4, [0, 1, 1, 0])


# α words

def test_alpha_of_empty_word_is_identity():
    t = fixtures.get("z3inv")
    assert alpha_word(t, "").is_identity()


def test_alpha_letter_order():
    t = fixtures.get("z4dbl")
    assert alpha_word(t, "01") == t.a1 * t.a0
    assert list(alpha_word(t, "01").image) == alpha_raw(list(t.a0.image), list(t.a1.image), "01")


def test_alpha_word_example_on_z3():
    t = fixtures.get("z3inv")
    m = alpha_word(t, "110")
    assert list(m.image) == alpha_raw([0, 1, 2], [0, 2, 1], "110") == [0, 1, 2]


def test_alpha_concatenation_random():
    rng = random.Random(1)
    for name in ("s3_inner", "z5_2", "v4_swap", "z4dbl"):
        t = fixtures.get(name)
        raw0, raw1 = list(t.a0.image), list(t.a1.image)
        for _ in range(100):
            m = "".join(rng.choice("01") for _ in range(rng.randint(0, 8)))
            n = "".join(rng.choice("01") for _ in range(rng.randint(0, 8)))
            assert alpha_word(t, m + n) == alpha_word(t, n) * alpha_word(t, m)
            assert list(alpha_word(t, m + n).image) == alpha_raw(raw0, raw1, m + n)


# automorphism groups

@pytest.mark.parametrize("g,n_aut,n_inn", [
    (cyclic(2), 1, 1),
    (cyclic(3), 2, 1),
    (cyclic(4), 2, 1),
    (cyclic(5), 4, 1),
    (symmetric(3), 6, 6),
    (direct_product(cyclic(2), cyclic(2)), 6, 1),
    (cyclic(6), 2, 1),
])
def test_aut_counts_against_brute_force(g, n_aut, n_inn):
    tab = table_of(g)
    brute = brute_automorphisms(tab)
    assert len(brute) == n_aut
    assert sorted(a.image for a in aut_group(g)) == sorted(brute)
    assert len(inner_auts(g)) == len(brute_inner(tab)) == n_inn


def test_larger_groups_aut_counts():
    assert len(aut_group(dihedral(4))) == 8 and len(inner_auts(dihedral(4))) == 4
    assert len(aut_group(quaternion())) == 24 and len(inner_auts(quaternion())) == 4
    assert len(aut_group(symmetric(4))) == 24


def test_out_classes_are_cosets():
    for g in (cyclic(5), symmetric(3), dihedral(4), direct_product(cyclic(2), cyclic(2)), quaternion(), cyclic(12)):
        auts = aut_group(g)
        inn = inner_auts(g)
        tokens = {a.image: out_class(g, a) for a in auts}
        for a in auts:
            for i in inn:
                assert out_class(g, a * i) == tokens[a.image]
                # Inn is normal in Aut
                assert is_inner(g, a * i * a.inverse())
        for a, b in itertools.combinations(auts, 2):
            same = is_inner(g, a.inverse() * b)
            assert (tokens[a.image] == tokens[b.image]) == same


def test_bound_is_enforced(monkeypatch):
    monkeypatch.setenv("THOMPSON_MAX_GROUP", "4")
    with pytest.raises(BoundExceeded):
        aut_group(cyclic(5))


def test_isomorphisms_between_relabelled_groups():
    g = symmetric(3)
    perm = [0, 3, 5, 1, 4, 2]
    inv = [perm.index(k) for k in range(6)]
    tab = [[perm[g.mul(inv[a], inv[b])] for b in range(6)] for a in range(6)]
    h = FiniteGroup(tab)
    isos = isomorphisms(g, h)
    assert len(isos) == 6
    assert isomorphisms(cyclic(4), direct_product(cyclic(2), cyclic(2))) == []


# fixed subgroups

def test_fixed_subgroup_examples():
    assert gamma_alpha_fixed(fixtures.get("s3")) == set(range(6))
    assert gamma_alpha_fixed(fixtures.get("z4inv")) == {x for x in range(4) if (-x) % 4 == x} == {0, 2}
    assert gamma_alpha_fixed(fixtures.get("z3inv")) == {0}


def test_fixed_subgroup_is_a_subgroup():
    for name in fixtures.NAMES:
        t = fixtures.get(name)
        h = gamma_alpha_fixed(t)
        g = t.group
        assert all(g.mul(a, b) in h and g.inv(a) in h for a in h for b in h)


# reduction

def test_reduction_of_trivial_endomorphisms():
    g = symmetric(3)
    t = Triple(g, GroupMap.trivial(g), GroupMap.trivial(g))
    q, proj = tanushevski_reduce(t)
    assert q.group.order == 1


def test_reduction_doubling_example():
    t = fixtures.get("z4dbl")
    n_set, level = tanushevski_kernel(t)
    assert n_set == {0, 1, 2, 3} and level == 2
    assert [words_killing(list(t.a0.image), list(t.a1.image), g, 4) for g in range(4)] == [0, 2, 1, 2]
    q, _ = tanushevski_reduce(t)
    assert q.group.order == 1


def test_reduction_leaves_automorphism_triples_alone():
    t = fixtures.get("s3_inner")
    q, proj = tanushevski_reduce(t)
    assert q.group.order == 6 and proj.injective


def test_reduced_joint_map_injective_random():
    rng = random.Random(2)
    groups = [cyclic(4), cyclic(6), cyclic(8), direct_product(cyclic(2), cyclic(2)), symmetric(3), dihedral(4)]
    for _ in range(60):
        g = rng.choice(groups)
        endos = [GroupMap(g, g, f) for f in endomorphism_arrays(g)]
        t = Triple(g, rng.choice(endos), rng.choice(endos))
        q, proj = tanushevski_reduce(t)
        pairs = {(q.a0(x), q.a1(x)) for x in q.group.elements()}
        assert len(pairs) == q.group.order
        killed = {x for x in g.elements() if words_killing(list(t.a0.image), list(t.a1.image), x, g.order) is not None}
        assert proj.kernel() == killed


# twisting elements

def test_h_single_letter_and_two_letters():
    t = fixtures.get("s3_inner")
    g = t.group
    for h0, h1 in itertools.product(range(6), repeat=2):
        assert h_q_alpha(t, h0, h1, "0") == h0
        assert h_q_alpha(t, h0, h1, "1") == h1
        assert h_q_alpha(t, h0, h1, "01") == g.mul(h1, t.a1(h0))


def test_h_concatenation_law():
    rng = random.Random(3)
    for name in ("s3_inner", "z3inv", "v4_swap", "z5_3"):
        t = fixtures.get(name)
        g = t.group
        for _ in range(100):
            h0, h1 = rng.randrange(g.order), rng.randrange(g.order)
            q = "".join(rng.choice("01") for _ in range(rng.randint(0, 6)))
            m = "".join(rng.choice("01") for _ in range(rng.randint(0, 6)))
            lhs = h_q_alpha(t, h0, h1, q + m)
            rhs = g.mul(h_q_alpha(t, h0, h1, m), alpha_word(t, m)(h_q_alpha(t, h0, h1, q)))
            assert lhs == rhs


def test_twisted_alpha_is_conjugated_alpha():
    rng = random.Random(4)
    t = fixtures.get("s3_inner")
    g = t.group
    for _ in range(50):
        h0, h1 = rng.randrange(6), rng.randrange(6)
        tw = Triple(g, conjugation_map(g, h0) * t.a0, conjugation_map(g, h1) * t.a1)
        q = "".join(rng.choice("01") for _ in range(rng.randint(0, 6)))
        assert alpha_word(tw, q) == conjugation_map(g, h_q_alpha(t, h0, h1, q)) * alpha_word(t, q)


def test_h_rejects_non_automorphisms():
    with pytest.raises(GroupError):
        h_q_alpha(fixtures.get("z4dbl"), 1, 1, "0")


# files

def test_fixture_files_round_trip(tmp_path):
    for name in fixtures.NAMES:
        t = fixtures.get(name)
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(t.to_json()))
        u = load_triple(str(path))
        assert u.group == t.group and u.a0 == t.a0 and u.a1 == t.a1
        assert fixtures.load(fixtures.fixture_path(name)).a1 == t.a1


def test_triple_file_rejects_non_endomorphism():
    data = fixtures.get("z3inv").to_json()
    data["alpha1"] = [0, 0, 1]
    with pytest.raises(GroupError):
        triple_from_json(data)


def test_inversion_needs_abelian_group():
    with pytest.raises(GroupError):
        inversion(symmetric(3))

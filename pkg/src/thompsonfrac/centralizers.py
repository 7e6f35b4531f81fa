"""Exhaustive commutant and center searches at bounded depth, and the
containment samplers used for the non-isomorphism argument.

Loop elements constant on the depth-``n`` cells are stored as integer arrays
of length ``2**n`` indexed by the cells in lexicographic order; commuting with
``v`` then becomes a family of equalities ``a[j] == τ(a[i])``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .cantor import SdiUnion, full_depth, split_to_depth
from .fraction import FractionElement, WreathElement, commutes, wreath_act
from .groups import FiniteGroup, GroupError, Triple, gamma_alpha_fixed
from .loops import LoopElement, jones_act
from .thompson import A, B, IDENTITY, VElement, fix_generators

C_GEN = VElement.from_pairs([("0", "11"), ("10", "0"), ("11", "10")])
PI0 = VElement.from_pairs([("0", "10"), ("10", "0"), ("11", "11")])
V_GENERATORS = (A, B, C_GEN, PI0)


def _split_pair(d: str, c: str, depth: int):
    if len(d) >= depth and len(c) >= depth:
        yield d, c
        return
    yield from _split_pair(d + "0", c + "0", depth)
    yield from _split_pair(d + "1", c + "1", depth)


def commute_constraints(t: Triple, v: VElement, depth: int) -> list:
    """``(i, j, perm)`` meaning ``a[j] == perm[a[i]]`` for ``π_v(a) = a``."""
    t.require_autos()
    index = {w: k for k, w in enumerate(full_depth(depth))}
    seen = set()
    out = []
    for d0, c0 in v.pairs:
        for d, c in _split_pair(d0, c0, depth):
            tau = t.tau_cell(d, c)
            key = (index[d[:depth]], index[c[:depth]], tau.image)
            if key not in seen:
                seen.add(key)
                out.append((key[0], key[1], np.asarray(tau.image)))
    return out


def all_arrays(g: FiniteGroup, depth: int, values=None) -> np.ndarray:
    vals = np.asarray(sorted(values) if values is not None else list(g.elements()))
    n = 2 ** depth
    if len(vals) ** n > 4 ** 8 * 4:
        raise GroupError("exhaustive search too large")
    grids = np.meshgrid(*([vals] * n), indexing="ij")
    return np.stack([x.ravel() for x in grids], axis=1)


def filter_commuting(t: Triple, cands: np.ndarray, gens, depth: int) -> np.ndarray:
    keep = np.ones(len(cands), dtype=bool)
    for v in gens:
        for i, j, perm in commute_constraints(t, v, depth):
            keep &= cands[:, j] == perm[cands[:, i]]
    return cands[keep]


def array_to_loop(t: Triple, row, depth: int) -> LoopElement:
    return LoopElement.from_cells(t, zip(full_depth(depth), (int(x) for x in row)), check=False)


def rows(arr: np.ndarray) -> set:
    return {tuple(int(x) for x in r) for r in arr}


def _cells_in(u: SdiUnion, depth: int) -> list:
    cells = full_depth(depth)
    return [k for k, w in enumerate(cells) if u.contains_cell(w)]


def expected_fix_commutant(t: Triple, u: SdiUnion, depth: int) -> set:
    """``L_IΓ · D_{I^c}(Γ^α)``: anything on ``I``, one α-fixed constant off it."""
    inside = _cells_in(u, depth)
    outside = [k for k in range(2 ** depth) if k not in inside]
    out = set()
    for ins in itertools.product(list(t.group.elements()), repeat=len(inside)):
        for z in sorted(gamma_alpha_fixed(t)):
            row = [0] * 2 ** depth
            for k, g in zip(inside, ins):
                row[k] = g
            for k in outside:
                row[k] = z
            out.add(tuple(row))
    return out


def expected_stab_commutant(t: Triple, u: SdiUnion, depth: int) -> set:
    """``D_I(Γ^α) · D_{I^c}(Γ^α)``."""
    inside = set(_cells_in(u, depth))
    fixed = sorted(gamma_alpha_fixed(t))
    return {
        tuple(z1 if k in inside else z2 for k in range(2 ** depth))
        for z1 in fixed
        for z2 in fixed
    }


def stab_generators(u: SdiUnion, depth: int) -> list:
    return fix_generators(u, depth) + fix_generators(u.complement(), depth)


@dataclass
class CommutantResult:
    found: set
    expected: set
    rejected_sample: list

    @property
    def ok(self) -> bool:
        return self.found == self.expected


def commutant_search(t: Triple, gens, expected: set, depth: int = 3, sample: int = 50, seed: int = 0) -> CommutantResult:
    cands = all_arrays(t.group, depth)
    found_arr = filter_commuting(t, cands, gens, depth)
    found = rows(found_arr)
    rng = np.random.default_rng(seed)
    rejected = [r for r in cands[rng.choice(len(cands), size=min(sample * 4, len(cands)), replace=False)]
                if tuple(int(x) for x in r) not in found][:sample]
    return CommutantResult(found, expected, [tuple(int(x) for x in r) for r in rejected])


def jones_commutes_all(t: Triple, a: LoopElement, gens) -> bool:
    """Direct route: ``π_v(a) = a`` for every generator."""
    return all(jones_act(t, v, a) == a for v in gens)


def crosscheck(t: Triple, result: CommutantResult, gens, depth: int = 3) -> bool:
    """Every found array commutes by the direct route; every sampled reject fails."""
    for row in result.found:
        if not jones_commutes_all(t, array_to_loop(t, row, depth), gens):
            return False
    for row in result.rejected_sample:
        if jones_commutes_all(t, array_to_loop(t, row, depth), gens):
            return False
    return True


def lemma26_fix(t: Triple, u: SdiUnion, depth: int = 3) -> CommutantResult:
    return commutant_search(t, fix_generators(u, depth), expected_fix_commutant(t, u, depth), depth)


def lemma26_stab(t: Triple, u: SdiUnion, depth: int = 3) -> CommutantResult:
    return commutant_search(t, stab_generators(u, depth), expected_stab_commutant(t, u, depth), depth)


def center_search(t: Triple, depth: int = 3) -> set:
    """Depth-``n`` loop elements commuting with the V generators and every constant."""
    g = t.group
    cands = all_arrays(g, depth)
    found = filter_commuting(t, cands, V_GENERATORS, depth)
    central = np.asarray([g.is_central(x) for x in g.elements()])
    found = found[central[found].all(axis=1)]
    return rows(found)


def center_expected(t: Triple, depth: int = 3) -> set:
    g = t.group
    return {tuple([z] * 2 ** depth) for z in gamma_alpha_fixed(t) if g.is_central(z)}


def v_center_witnesses(max_depth: int = 2) -> bool:
    """Each non-identity ``v`` on depth-≤n partitions fails to commute with a generator.

    G → V is a homomorphism, so a central ``(a, v)`` needs ``v`` central in V.
    """
    parts = [full_depth(k) for k in range(1, max_depth + 1)]
    for cells in parts:
        for perm in itertools.permutations(cells):
            v = VElement.from_lists(list(cells), list(perm))
            if v.is_identity():
                continue
            if all(v * s == s * v for s in V_GENERATORS):
                return False
    return True


# samplers for the containment claims

def random_w_f(rng, points) -> VElement:
    """An element fixing every point of ``points`` with slope 0 there.

    Cells through the points are kept fixed; the remaining cells are permuted
    onto a random partition of the remainder.
    """
    depth = 1
    while True:
        owners = {p.expand(depth)[:depth] for p in points}
        if len(owners) == len(points):
            break
        depth += 1
    keep = sorted(owners)
    rest = [w for w in full_depth(depth) if w not in owners]
    if not rest:
        return IDENTITY
    n_extra = rng.randint(0, 3)
    dom = list(rest)
    cod = list(rest)
    for _ in range(n_extra):
        k = rng.randrange(len(dom))
        w = dom.pop(k)
        dom += [w + "0", w + "1"]
        k = rng.randrange(len(cod))
        w = cod.pop(k)
        cod += [w + "0", w + "1"]
    rng.shuffle(cod)
    return VElement.from_lists(keep + dom, keep + cod)


def wreath_w_f_commutes(t: Triple, a: WreathElement, v: VElement) -> bool:
    return wreath_act(t, v, a) == a


def commuting_candidates(rng, b: LoopElement, n: int = 8) -> list:
    """Elements permuting equal-valued cells of a refinement of ``b``, plus random ones."""
    from .thompson import random_v

    depth = b.depth() + rng.randint(0, 1)
    cells = b.at_depth(depth)
    groups: dict = {}
    for w, g in cells:
        groups.setdefault(g, []).append(w)
    out = []
    for _ in range(n):
        dom, cod = [], []
        for ws in groups.values():
            p = list(ws)
            rng.shuffle(p)
            dom += ws
            cod += p
        out.append(VElement.from_lists(dom, cod))
    out += [random_v(rng, 6) for _ in range(n)]
    return out


def loop_centralizer_stabilizes(t: Triple, b: LoopElement, v: VElement) -> bool | None:
    """``None`` if ``v`` does not commute with ``b``; otherwise whether ``v`` stabilizes its support."""
    x = FractionElement.of_loop(b)
    y = FractionElement.of_v(t, v)
    if not commutes(x, y):
        return None
    s = b.support()
    image = SdiUnion.of(v.image_word(w) for w in split_to_depth(list(s.cells), _adapt_depth(v, s)))
    return image == s


def _adapt_depth(v: VElement, s: SdiUnion) -> int:
    return max([len(d) for d, _ in v.pairs] + [len(w) for w in s.cells] + [0])


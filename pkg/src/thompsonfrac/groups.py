"""Coefficient groups, their endomorphisms, and triples ``(Γ, α₀, α₁)``.

Finite groups are multiplication tables with the identity at index 0;
elements are table indices.  ``DyadicPair`` is the single infinite group,
``Z[1/2] × Z[1/2]`` under addition, with elements ``(t, r)`` of Fractions.
"""

from __future__ import annotations

import itertools
import json
import os
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

DEFAULT_MAX_GROUP = 24


class GroupError(ValueError):
    """Invalid group data or a request outside the supported range."""


class BoundExceeded(GroupError):
    pass


def max_group_order() -> int:
    raw = os.environ.get("THOMPSON_MAX_GROUP")
    return int(raw) if raw else DEFAULT_MAX_GROUP


class FiniteGroup:
    finite = True

    def __init__(self, mul, names=None, validate: bool = True):
        table = np.asarray(mul, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupError("multiplication table must be a nonempty square array")
        self.order = int(table.shape[0])
        self.table = table
        self.table.setflags(write=False)
        self.names = list(names) if names is not None else None
        self.e = 0
        if validate:
            self._validate()
        inv = np.empty(self.order, dtype=np.int64)
        for g in range(self.order):
            inv[g] = int(np.nonzero(table[g] == 0)[0][0])
        self.inv_table = inv
        self.inv_table.setflags(write=False)

    def _validate(self):
        n, t = self.order, self.table
        if t.min() < 0 or t.max() >= n:
            raise GroupError("table entries out of range")
        if not (np.array_equal(t[0], np.arange(n)) and np.array_equal(t[:, 0], np.arange(n))):
            raise GroupError("index 0 is not the identity")
        for row in t:
            if len(set(row.tolist())) != n:
                raise GroupError("table is not a Latin square")
        for col in t.T:
            if len(set(col.tolist())) != n:
                raise GroupError("table is not a Latin square")
        # (ab)c == a(bc) for all triples, vectorized
        if not np.array_equal(t[t, :], _assoc_rhs(t)):
            raise GroupError("operation is not associative")

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inv_table[a])

    def elements(self) -> range:
        return range(self.order)

    def name(self, g: int) -> str:
        return self.names[g] if self.names else str(g)

    def conj(self, h: int, g: int) -> int:
        """``h g h⁻¹``."""
        return int(self.table[self.table[h, g], self.inv_table[h]])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv(g), -k
        out = 0
        for _ in range(k):
            out = self.mul(out, g)
        return out

    def elem_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mul(x, g)
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def center(self) -> list:
        t = self.table
        return [g for g in range(self.order) if np.array_equal(t[g], t[:, g])]

    def is_central(self, g: int) -> bool:
        return bool(np.array_equal(self.table[g], self.table[:, g]))

    def commute(self, a: int, b: int) -> bool:
        return self.table[a, b] == self.table[b, a]

    def generated(self, gens) -> set:
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = int(self.table[x, g])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def minimal_generators(self) -> tuple:
        if self.order == 1:
            return ()
        cached = getattr(self, "_gens", None)
        if cached is not None:
            return cached
        nontrivial = list(range(1, self.order))
        for k in range(1, 4):
            for combo in itertools.combinations(nontrivial, k):
                if len(self.generated(combo)) == self.order:
                    self._gens = combo
                    return combo
        # greedy fallback for groups needing more than three generators
        gens: list = []
        span = {0}
        for g in nontrivial:
            if g not in span:
                gens.append(g)
                span = self.generated(gens)
        self._gens = tuple(gens)
        return self._gens

    def to_json(self) -> dict:
        d = {"order": self.order, "mul": self.table.tolist()}
        if self.names:
            d["names"] = self.names
        return d

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


def _assoc_rhs(t):
    # entry [a, b, c] = a(bc)
    return t[np.arange(t.shape[0])[:, None, None], t[None, :, :]]


class GroupMap:
    """A map between finite groups given by its image array."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, image, validate: bool = True):
        self.source = source
        self.target = target
        self.image = tuple(int(x) for x in image)
        if len(self.image) != source.order:
            raise GroupError("image length differs from source order")
        self.arr = np.asarray(self.image, dtype=np.int64)
        if validate and not self._is_hom():
            raise GroupError("map is not multiplicative")

    def _is_hom(self) -> bool:
        s, t, f = self.source.table, self.target.table, self.arr
        if f.min() < 0 or f.max() >= self.target.order:
            return False
        return bool(np.array_equal(f[s], t[f[:, None], f[None, :]]))

    @classmethod
    def identity(cls, g: FiniteGroup) -> "GroupMap":
        return cls(g, g, range(g.order), validate=False)

    @classmethod
    def trivial(cls, g: FiniteGroup, h: FiniteGroup | None = None) -> "GroupMap":
        h = g if h is None else h
        return cls(g, h, [0] * g.order, validate=False)

    @classmethod
    def conjugation(cls, g: FiniteGroup, h: int) -> "GroupMap":
        """``ad(h): x ↦ h x h⁻¹``."""
        return cls(g, g, [g.conj(h, x) for x in range(g.order)], validate=False)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def compose(self, other: "GroupMap") -> "GroupMap":
        """``self ∘ other``."""
        return GroupMap(other.source, self.target, self.arr[other.arr], validate=False)

    def __mul__(self, other: "GroupMap") -> "GroupMap":
        return self.compose(other)

    @property
    def injective(self) -> bool:
        return len(set(self.image)) == self.source.order

    @property
    def surjective(self) -> bool:
        return len(set(self.image)) == self.target.order

    @property
    def is_automorphism(self) -> bool:
        return self.source == self.target and self.injective

    def inverse(self) -> "GroupMap":
        if not (self.injective and self.surjective):
            raise GroupError("map is not invertible")
        inv = [0] * self.source.order
        for x, y in enumerate(self.image):
            inv[y] = x
        return GroupMap(self.target, self.source, inv, validate=False)

    def power(self, k: int) -> "GroupMap":
        base = self if k >= 0 else self.inverse()
        out = GroupMap.identity(self.source)
        for _ in range(abs(k)):
            out = base * out
        return out

    def kernel(self) -> set:
        return {x for x, y in enumerate(self.image) if y == 0}

    def is_identity(self) -> bool:
        return self.image == tuple(range(self.source.order))

    def __eq__(self, other):
        return isinstance(other, GroupMap) and self.image == other.image and self.target == other.target

    def __hash__(self):
        return hash(self.image)

    def __repr__(self):
        return f"GroupMap({list(self.image)})"


class DyadicPair:
    """``Z[1/2] × Z[1/2]`` under addition; elements are ``(t, r)`` Fraction pairs."""

    finite = False
    order = None

    def __init__(self):
        self.e = (Fraction(0), Fraction(0))

    @staticmethod
    def elem(t, r) -> tuple:
        t, r = Fraction(t), Fraction(r)
        for q in (t, r):
            d = q.denominator
            if d & (d - 1):
                raise GroupError(f"{q} is not a dyadic rational")
        return (t, r)

    def mul(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def inv(self, a):
        return (-a[0], -a[1])

    def conj(self, h, g):
        return g

    def power(self, g, k: int):
        return (g[0] * k, g[1] * k)

    def is_abelian(self) -> bool:
        return True

    def is_central(self, g) -> bool:
        return True

    def commute(self, a, b) -> bool:
        return True

    def name(self, g) -> str:
        return f"({g[0]},{g[1]})"

    def __eq__(self, other):
        return isinstance(other, DyadicPair)

    def __hash__(self):
        return hash("DyadicPair")

    def __repr__(self):
        return "DyadicPair()"


class DyadicMap:
    """Linear map ``(t, r) ↦ (a t + b r, c t + d r)`` on ``DyadicPair``."""

    def __init__(self, group: DyadicPair, a=1, b=0, c=0, d=1):
        self.source = self.target = group
        self.m = tuple(Fraction(x) for x in (a, b, c, d))

    def __call__(self, g):
        a, b, c, d = self.m
        return (a * g[0] + b * g[1], c * g[0] + d * g[1])

    def compose(self, other: "DyadicMap") -> "DyadicMap":
        a, b, c, d = self.m
        p, q, r, s = other.m
        return DyadicMap(self.source, a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s)

    __mul__ = compose

    def inverse(self) -> "DyadicMap":
        a, b, c, d = self.m
        det = a * d - b * c
        if det == 0:
            raise GroupError("map is not invertible")
        return DyadicMap(self.source, d / det, -b / det, -c / det, a / det)

    def power(self, k: int) -> "DyadicMap":
        base = self if k >= 0 else self.inverse()
        out = DyadicMap(self.source)
        for _ in range(abs(k)):
            out = base * out
        return out

    @property
    def is_automorphism(self) -> bool:
        a, b, c, d = self.m
        det = a * d - b * c
        if det == 0:
            return False
        # the inverse must preserve dyadic rationals
        return all(_is_dyadic(x) for x in self.inverse().m)

    def is_identity(self) -> bool:
        return self.m == (1, 0, 0, 1)

    def __eq__(self, other):
        return isinstance(other, DyadicMap) and self.m == other.m

    def __hash__(self):
        return hash(self.m)

    def __repr__(self):
        return f"DyadicMap{self.m}"


def _is_dyadic(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0


def identity_map(g):
    return DyadicMap(g) if isinstance(g, DyadicPair) else GroupMap.identity(g)


def conjugation_map(g, h):
    return DyadicMap(g) if isinstance(g, DyadicPair) else GroupMap.conjugation(g, h)


class Triple:
    """A group with two endomorphisms ``α₀, α₁``."""

    def __init__(self, group, a0, a1, name: str | None = None):
        for a in (a0, a1):
            if a.source != group or a.target != group:
                raise GroupError("endomorphisms must act on the triple's group")
        self.group = group
        self.a0 = a0
        self.a1 = a1
        self.name = name
        self._alpha = {"": identity_map(group), "0": a0, "1": a1}
        self._alpha_inv: dict = {}
        self._tau: dict = {}

    @cached_property
    def autos(self) -> bool:
        return self.a0.is_automorphism and self.a1.is_automorphism

    def letter(self, i: str):
        return self.a0 if i == "0" else self.a1

    def alpha(self, m: str):
        """``α_m``: letters act first-to-last, so ``α_{m m'} = α_{m'} ∘ α_m``."""
        got = self._alpha.get(m)
        if got is None:
            got = self.letter(m[-1]) * self.alpha(m[:-1])
            self._alpha[m] = got
        return got

    def alpha_inv(self, m: str):
        got = self._alpha_inv.get(m)
        if got is None:
            got = self.alpha(m).inverse()
            self._alpha_inv[m] = got
        return got

    def tau_cell(self, d: str, c: str):
        """``α_c⁻¹ ∘ α_d`` for a cell ``d`` sent onto ``c``."""
        got = self._tau.get((d, c))
        if got is None:
            got = self.alpha_inv(c) * self.alpha(d)
            self._tau[(d, c)] = got
        return got

    def require_autos(self):
        if not self.autos:
            raise GroupError("operation requires both endomorphisms to be automorphisms")

    def to_json(self) -> dict:
        if not isinstance(self.group, FiniteGroup):
            raise GroupError("only finite triples serialize")
        return {"group": self.group.to_json(), "alpha0": list(self.a0.image), "alpha1": list(self.a1.image)}

    def __repr__(self):
        return f"Triple({self.name or self.group!r})"


def alpha_word(t: Triple, m: str):
    return t.alpha(m)


def triple_from_json(data: dict, name: str | None = None) -> Triple:
    try:
        gdata = data["group"]
        g = FiniteGroup(gdata["mul"], gdata.get("names"))
        if "order" in gdata and gdata["order"] != g.order:
            raise GroupError("declared order does not match table")
        a0 = data["alpha0"] if "alpha0" in data else data["a0"]
        a1 = data["alpha1"] if "alpha1" in data else data["a1"]
    except (KeyError, TypeError) as exc:
        raise GroupError(f"malformed triple: {exc}") from exc
    return Triple(g, GroupMap(g, g, a0), GroupMap(g, g, a1), name)


def load_triple(path: str) -> Triple:
    with open(path) as fh:
        return triple_from_json(json.load(fh), os.path.basename(path))


# constructors

def cyclic(n: int) -> FiniteGroup:
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, validate=False)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    n, m = g.order, h.order
    tab = np.empty((n * m, n * m), dtype=np.int64)
    for a in range(n * m):
        for b in range(n * m):
            tab[a, b] = g.table[a // m, b // m] * m + h.table[a % m, b % m]
    return FiniteGroup(tab, validate=False)


def symmetric(n: int) -> FiniteGroup:
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # composition (p q)(i) = p(q(i)); identity is the first permutation
    tab = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    names = ["".join(map(str, p)) for p in perms]
    return FiniteGroup(tab, names, validate=False)


def dihedral(n: int) -> FiniteGroup:
    # r^k s^f encoded as k + n f
    size = 2 * n
    tab = np.empty((size, size), dtype=np.int64)
    for a in range(size):
        k1, f1 = a % n, a // n
        for b in range(size):
            k2, f2 = b % n, b // n
            k = (k1 + (-k2 if f1 else k2)) % n
            tab[a, b] = k + n * (f1 ^ f2)
    return FiniteGroup(tab, validate=False)


def quaternion() -> FiniteGroup:
    # 1, -1, i, -i, j, -j, k, -k
    units = [(1, "1"), (-1, "1"), (1, "i"), (-1, "i"), (1, "j"), (-1, "j"), (1, "k"), (-1, "k")]
    rule = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    index = {u: i for i, u in enumerate(units)}
    tab = []
    for sa, a in units:
        row = []
        for sb, b in units:
            s, c = rule[(a, b)]
            row.append(index[(sa * sb * s, c)])
        tab.append(row)
    names = [("-" if s < 0 else "") + c for s, c in units]
    return FiniteGroup(tab, names, validate=False)


def map_from(g: FiniteGroup, f) -> GroupMap:
    return GroupMap(g, g, [f(x) for x in range(g.order)])


def cyclic_mult(g: FiniteGroup, k: int) -> GroupMap:
    """``x ↦ k x`` on a cyclic group in additive encoding."""
    return GroupMap(g, g, [(k * x) % g.order for x in range(g.order)])


def inversion(g: FiniteGroup) -> GroupMap:
    if not g.is_abelian():
        raise GroupError("inversion is a homomorphism only for abelian groups")
    return GroupMap(g, g, g.inv_table)


# automorphism enumeration

def _check_bound(g: FiniteGroup):
    if g.order > max_group_order():
        raise BoundExceeded(f"group order {g.order} exceeds enumeration bound {max_group_order()}")


def aut_group(g: FiniteGroup) -> list:
    _check_bound(g)
    return list(_aut_cached(g))


@lru_cache(maxsize=64)
def _aut_cached(g: FiniteGroup) -> tuple:
    gens = g.minimal_generators()
    if not gens:
        return (GroupMap.identity(g),)
    orders = [g.elem_order(x) for x in range(g.order)]
    cands = [[y for y in range(g.order) if orders[y] == orders[s]] for s in gens]
    out = []
    for images in itertools.product(*cands):
        f = _extend_into(g, g, gens, images)
        if f is not None and len(set(f)) == g.order:
            out.append(GroupMap(g, g, f, validate=False))
    out.sort(key=lambda m: m.image)
    return tuple(out)


def inner_auts(g: FiniteGroup) -> list:
    _check_bound(g)
    seen = {}
    for h in range(g.order):
        m = GroupMap.conjugation(g, h)
        seen.setdefault(m.image, m)
    return [seen[k] for k in sorted(seen)]


def out_class(g: FiniteGroup, a: GroupMap) -> tuple:
    """Canonical token of the coset ``a ∘ Inn(g)``: its lexicographically least image."""
    return min((a * i).image for i in inner_auts(g))


def is_inner(g: FiniteGroup, a: GroupMap) -> bool:
    return any(a == i for i in inner_auts(g))


def gamma_alpha_fixed(t: Triple) -> set:
    g = t.group
    return {x for x in g.elements() if t.a0(x) == x and t.a1(x) == x}


def _coset_table(g: FiniteGroup, normal: set):
    """Quotient table and projection, identity coset first."""
    label = [-1] * g.order
    reps = []
    for x in range(g.order):
        if label[x] >= 0:
            continue
        k = len(reps)
        reps.append(x)
        for n in normal:
            label[g.mul(x, n)] = k
    q = len(reps)
    tab = [[label[g.mul(reps[i], reps[j])] for j in range(q)] for i in range(q)]
    return FiniteGroup(tab), label, reps


def tanushevski_kernel(t: Triple) -> tuple:
    """The subgroup killed by some full level of words, and the level where it stabilizes.

    ``K_n`` is the intersection of the kernels of all ``α_w`` with ``|w| = n``;
    it satisfies ``K_{n+1} = {g : α₀(g), α₁(g) ∈ K_n}``.
    """
    g = t.group
    k = {0}
    n = 0
    while True:
        nxt = {x for x in g.elements() if t.a0(x) in k and t.a1(x) in k}
        if nxt == k:
            return k, n
        k = nxt
        n += 1


def tanushevski_reduce(t: Triple):
    """Quotient triple with ``g ↦ (ᾱ₀(g), ᾱ₁(g))`` injective, and the quotient map."""
    g = t.group
    n_set, _ = tanushevski_kernel(t)
    q, label, reps = _coset_table(g, n_set)
    a0 = GroupMap(q, q, [label[t.a0(r)] for r in reps])
    a1 = GroupMap(q, q, [label[t.a1(r)] for r in reps])
    proj = GroupMap(g, q, label)
    return Triple(q, a0, a1, t.name), proj


def h_q_alpha(t: Triple, h0, h1, q: str):
    """Twisting element with ``h_{q' i} = h_i · α_i(h_{q'})``."""
    t.require_autos()
    g = t.group
    h = g.e
    for letter in q:
        hi = h0 if letter == "0" else h1
        h = g.mul(hi, t.letter(letter)(h))
    return h


def twisted_triple(t: Triple, h0, h1) -> Triple:
    """``(Γ, ad(h₀)∘α₀, ad(h₁)∘α₁)``."""
    g = t.group
    return Triple(g, conjugation_map(g, h0) * t.a0, conjugation_map(g, h1) * t.a1)


def transport_triple(t: Triple, beta: GroupMap, target: FiniteGroup) -> Triple:
    """``(Γ', β α₀ β⁻¹, β α₁ β⁻¹)`` for an isomorphism ``β: Γ → Γ'``."""
    bi = beta.inverse()
    return Triple(target, beta * t.a0 * bi, beta * t.a1 * bi)


def isomorphisms(g: FiniteGroup, h: FiniteGroup) -> list:
    """All isomorphisms ``g → h`` (brute force over generator images)."""
    _check_bound(g)
    _check_bound(h)
    if g.order != h.order:
        return []
    gens = g.minimal_generators()
    if not gens:
        return [GroupMap(g, h, [0], validate=False)]
    go = [g.elem_order(x) for x in range(g.order)]
    ho = [h.elem_order(x) for x in range(h.order)]
    if sorted(go) != sorted(ho):
        return []
    cands = [[y for y in range(h.order) if ho[y] == go[s]] for s in gens]
    out = []
    for images in itertools.product(*cands):
        f = _extend_into(g, h, gens, images)
        if f is not None and len(set(f)) == h.order:
            out.append(GroupMap(g, h, f, validate=False))
    out.sort(key=lambda m: m.image)
    return out


def _extend_into(g: FiniteGroup, h: FiniteGroup, gens, images):
    f = [-1] * g.order
    f[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s, im in zip(gens, images):
                y = g.mul(x, s)
                fy = h.mul(f[x], im)
                if f[y] < 0:
                    f[y] = fy
                    nxt.append(y)
                elif f[y] != fy:
                    return None
        frontier = nxt
    for x in range(g.order):
        for s, im in zip(gens, images):
            if f[g.mul(x, s)] != h.mul(f[x], im):
                return None
    return f


def dyadic_triple() -> Triple:
    g = DyadicPair()
    alpha = DyadicMap(g, 1, 0, 0, Fraction(1, 2))
    return Triple(g, alpha, alpha, "dyadic")

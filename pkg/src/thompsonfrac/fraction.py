"""The fraction group ``LΓ ⋊ V`` and the labelled-tree picture behind it."""

from __future__ import annotations

from dataclasses import dataclass

from .cantor import (
    CPoint,
    ParseError,
    SdiUnion,
    digit_sum,
    full_depth,
    is_sdp,
    path_complement,
)
from .groups import FiniteGroup, GroupError, Triple, gamma_alpha_fixed, tanushevski_kernel
from .loops import LoopElement, jones_act, parse_element
from .thompson import IDENTITY, VElement


@dataclass(frozen=True, eq=False)
class FractionElement:
    """The product ``a · v`` with ``a ∈ LΓ`` and ``v ∈ V``."""

    a: LoopElement
    v: VElement

    @property
    def triple(self) -> Triple:
        return self.a.triple

    @classmethod
    def identity(cls, t: Triple) -> "FractionElement":
        return cls(LoopElement.identity(t), IDENTITY)

    @classmethod
    def of_v(cls, t: Triple, v: VElement) -> "FractionElement":
        return cls(LoopElement.identity(t), v)

    @classmethod
    def of_loop(cls, a: LoopElement) -> "FractionElement":
        return cls(a, IDENTITY)

    @classmethod
    def parse(cls, t: Triple, text: str) -> "FractionElement":
        if "|" not in text:
            raise ParseError("fraction element must look like '[loop] | [v-table]'")
        left, right = text.split("|", 1)
        left = left.strip().strip("[]").strip()
        right = right.strip().strip("[]").strip()
        a = LoopElement.parse(t, left) if left else LoopElement.identity(t)
        v = VElement.parse(right) if right else IDENTITY
        return cls(a, v)

    def __str__(self):
        return f"[{self.a}] | [{self.v}]"

    def __repr__(self):
        return f"FractionElement({str(self)!r})"

    def __eq__(self, other):
        return isinstance(other, FractionElement) and self.a == other.a and self.v == other.v

    def __hash__(self):
        return hash((self.a, self.v))

    def __mul__(self, other: "FractionElement") -> "FractionElement":
        return g_mul(self, other)

    def inverse(self) -> "FractionElement":
        return g_inv(self)

    def is_identity(self) -> bool:
        return self.a.is_identity() and self.v.is_identity()


def g_mul(x: FractionElement, y: FractionElement) -> FractionElement:
    """``(a, v)(b, w) = (a · π_v(b), v w)``."""
    t = x.triple
    if t is not y.triple:
        raise GroupError("elements belong to different triples")
    return FractionElement(x.a * jones_act(t, x.v, y.a), x.v * y.v)


def g_inv(x: FractionElement) -> FractionElement:
    """``(a, v)⁻¹ = (π_{v⁻¹}(a⁻¹), v⁻¹)``."""
    vi = x.v.inverse()
    return FractionElement(jones_act(x.triple, vi, x.a.inverse()), vi)


def g_prod(*items: FractionElement) -> FractionElement:
    acc = items[0]
    for x in items[1:]:
        acc = acc * x
    return acc


def commutes(x: FractionElement, y: FractionElement) -> bool:
    return x * y == y * x


def commutator(x: FractionElement, y: FractionElement) -> FractionElement:
    """``x y x⁻¹ y⁻¹``."""
    return x * y * x.inverse() * y.inverse()


def conjugate(x: FractionElement, y: FractionElement) -> FractionElement:
    """``x y x⁻¹``."""
    return x * y * x.inverse()


def random_fraction(rng, t: Triple, max_depth: int = 3, max_leaves: int = 6) -> FractionElement:
    from .loops import random_loop
    from .thompson import random_v

    return FractionElement(random_loop(rng, t, max_depth), random_v(rng, max_leaves))


# labelled trees and the directed system

@dataclass(frozen=True)
class LabelledTree:
    """Leaves of a binary tree (as sorted words) with one group label per leaf."""

    leaves: tuple
    labels: tuple

    def __post_init__(self):
        if len(self.leaves) != len(self.labels):
            raise ParseError("one label per leaf is required")
        if not is_sdp(self.leaves):
            raise ParseError("leaves do not form a tree")
        order = sorted(range(len(self.leaves)), key=lambda i: self.leaves[i])
        object.__setattr__(self, "leaves", tuple(self.leaves[i] for i in order))
        object.__setattr__(self, "labels", tuple(self.labels[i] for i in order))

    @classmethod
    def parse(cls, t: Triple, text: str) -> "LabelledTree":
        pos = 0
        s = text.replace(" ", "")
        leaves, labels = [], []

        def node(prefix: str):
            nonlocal pos
            if pos < len(s) and s[pos] == "(":
                pos += 1
                node(prefix + "0")
                if pos >= len(s) or s[pos] != ",":
                    raise ParseError(f"expected ',' at {pos} in {text!r}")
                pos += 1
                node(prefix + "1")
                if pos >= len(s) or s[pos] != ")":
                    raise ParseError(f"expected ')' at {pos} in {text!r}")
                pos += 1
                return
            start = pos
            while pos < len(s) and s[pos] not in "(),":
                pos += 1
            tok = s[start:pos]
            if not tok:
                raise ParseError(f"missing leaf label at {start} in {text!r}")
            leaves.append(prefix)
            labels.append(parse_element(t, tok[1:] if tok.startswith("g") else tok))

        node("")
        if pos != len(s):
            raise ParseError(f"trailing input in {text!r}")
        return cls(tuple(leaves), tuple(labels))

    def format(self, t: Triple) -> str:
        lab = dict(zip(self.leaves, self.labels))

        def render(prefix: str) -> str:
            if prefix in lab:
                return f"g{t.group.name(lab[prefix])}"
            return f"({render(prefix + '0')},{render(prefix + '1')})"

        return render("")


def phi_forest(t: Triple, lt: LabelledTree, forest) -> LabelledTree:
    """Grow a tree below each leaf; a leaf labelled ``g`` at relative path ``p`` gets ``α_p(g)``.

    ``forest`` holds one partition (relative words) per leaf, in leaf order.
    """
    if len(forest) != len(lt.leaves):
        raise ParseError("forest roots must match the tree's leaves")
    leaves, labels = [], []
    for leaf, g, sub in zip(lt.leaves, lt.labels, forest):
        sub = list(sub) if sub else [""]
        if not is_sdp(sub):
            raise ParseError("each forest component must be a tree")
        for p in sub:
            leaves.append(leaf + p)
            labels.append(t.alpha(p)(g))
    return LabelledTree(tuple(leaves), tuple(labels))


def elementary_forest(n: int, k: int) -> list:
    """Caret on leaf ``k`` (1-based) of ``n`` leaves."""
    if not 1 <= k <= n:
        raise IndexError("leaf index out of range")
    return [["0", "1"] if i == k - 1 else [""] for i in range(n)]


def push_to(t: Triple, lt: LabelledTree, leaves) -> LabelledTree:
    """Push ``lt`` to a refinement given by ``leaves``."""
    forest = []
    for leaf in lt.leaves:
        sub = [w[len(leaf):] for w in leaves if w.startswith(leaf)]
        forest.append(sub)
    return phi_forest(t, lt, forest)


def lt_equiv(t: Triple, x: LabelledTree, y: LabelledTree) -> bool:
    """Equality in the direct limit of the labelled-tree system."""
    joined = sorted(set(_join_leaves(x.leaves, y.leaves)))
    # a difference dies in the limit iff it lies in the level-stable kernel
    _, depth = tanushevski_kernel(t) if isinstance(t.group, FiniteGroup) else (None, 0)
    deep = [w + p for w in joined for p in full_depth(depth)]
    return push_to(t, x, deep).labels == push_to(t, y, deep).labels


def _join_leaves(a, b) -> list:
    out = []
    for u in a:
        for w in b:
            if w.startswith(u):
                out.append(w)
            elif u.startswith(w):
                out.append(u)
    return out


def kappa_t(t: Triple, lt: LabelledTree) -> LoopElement:
    """Loop element with value ``α_ℓ⁻¹(g_ℓ)`` on each leaf cell ``ℓ``."""
    t.require_autos()
    return LoopElement.from_cells(t, [(w, t.alpha_inv(w)(g)) for w, g in zip(lt.leaves, lt.labels)])


def cloning_map(t: Triple, n: int, k: int, g) -> tuple:
    """``(g₁,…,g_{k−1}, α₀(g_k), α₁(g_k), g_{k+1},…,g_n)``."""
    g = tuple(g)
    if len(g) != n:
        raise ValueError("tuple length must equal n")
    if not 1 <= k <= n:
        raise IndexError("k must satisfy 1 <= k <= n")
    return g[:k - 1] + (t.a0(g[k - 1]), t.a1(g[k - 1])) + g[k:]


# centralizers and the center

def center_elements(t: Triple) -> list:
    """Constant loops valued in ``Z(Γ)^α``."""
    t.require_autos()
    g = t.group
    fixed = gamma_alpha_fixed(t)
    return [FractionElement.of_loop(LoopElement.constant(t, z)) for z in sorted(fixed) if g.is_central(z)]


def split_into(dom: list, cod: list, pairs: list) -> VElement:
    """Element with the given explicit pairs; remaining domain and codomain cells matched in order.

    The shorter remainder is refined by splitting its last cell until sizes agree.
    """
    dom, cod = sorted(dom), sorted(cod)
    while len(dom) < len(cod):
        last = dom.pop()
        dom = sorted(dom + [last + "0", last + "1"])
    while len(cod) < len(dom):
        last = cod.pop()
        cod = sorted(cod + [last + "0", last + "1"])
    return VElement.from_pairs(list(pairs) + list(zip(dom, cod)))


def commutator_witness(w: str) -> tuple:
    """For a proper sdi ``I_w``, return ``(v, J)`` with ``v(J) = I ∪ J`` and ``I ∩ J = ∅``."""
    if not w:
        raise ValueError("sdi must be proper")
    comp = path_complement(w)
    k = comp[0]
    j = k + "1"
    dom_rest = [c for c in comp if c != k] + [k + "0", w]
    cod_rest = [c for c in comp if c != k] + [k + "0"]
    v = split_into(dom_rest, cod_rest, [(j + "0", w), (j + "1", j)])
    return v, SdiUnion.of([j])


# the restricted wreath product over the dyadic tail class

@dataclass(frozen=True, eq=False)
class WreathElement:
    """Finitely supported map from the tail class of ``0^∞`` to Γ."""

    triple: Triple
    points: tuple

    @classmethod
    def of(cls, t: Triple, items) -> "WreathElement":
        e = t.group.e
        acc: dict = {}
        for x, g in items:
            if x.per != "0":
                raise ValueError(f"point {x} is not in the dyadic class")
            acc[x] = g
        pts = tuple(sorted(((x, g) for x, g in acc.items() if g != e), key=lambda p: str(p[0])))
        return cls(t, pts)

    def __eq__(self, other):
        return isinstance(other, WreathElement) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __str__(self):
        return "; ".join(f"{x}:{self.triple.group.name(g)}" for x, g in self.points) or "e"

    def support(self) -> list:
        return [x for x, _ in self.points]

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        g = self.triple.group
        acc = dict(self.points)
        for x, h in other.points:
            acc[x] = g.mul(acc.get(x, g.e), h)
        return WreathElement.of(self.triple, acc.items())


def wreath_act(t: Triple, v: VElement, a: WreathElement) -> WreathElement:
    """``(v·a)(v x) = α^{log₂ v'(x)}(a(x))`` with ``α = α₀``."""
    alpha = t.a0
    if not alpha.is_automorphism:
        raise GroupError("wreath action needs an automorphism")
    return WreathElement.of(t, [(v.apply(x), alpha.power(v.slope(x))(g)) for x, g in a.points])


def random_wreath(rng, t: Triple, n_points: int = 3, max_pre: int = 5) -> WreathElement:
    from .cantor import random_dyadic_point

    values = [g for g in t.group.elements() if g != t.group.e]
    return WreathElement.of(t, [(random_dyadic_point(rng, max_pre), rng.choice(values)) for _ in range(n_points)])


def cocf_exponent(v: VElement, x: CPoint) -> int:
    """``f(m_I) − f(m_{v(I)})`` with ``f`` the digit sum."""
    d, c = v.pair_at(x)
    return digit_sum(d) - digit_sum(c)


"""Cocycles on V, elementary automorphisms of ``LΓ ⋊ V`` and the map Ξ.

Integer-valued locally constant functions (slope data) are kept as sorted
``(word, int)`` cell lists and turned into loop elements by exponentiating a
central element.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cantor import ZERO, CPoint, digit_sum, flip_word
from .fraction import FractionElement
from .groups import DyadicPair, GroupError, Triple, conjugation_map, gamma_alpha_fixed
from .loops import LoopElement, _join, _merge_equal_siblings, jones_act
from .thompson import IDENTITY, NormalizerElement, VElement, random_fixing, transport


def is_untwisted(t: Triple) -> bool:
    return t.a0.is_identity() and t.a1.is_identity()


def require_untwisted(t: Triple):
    if not is_untwisted(t):
        raise GroupError("operation is defined for untwisted triples only")


def require_central_fixed(t: Triple, z):
    g = t.group
    if not g.is_central(z):
        raise GroupError(f"{g.name(z)} is not central")
    if t.a0(z) != z or t.a1(z) != z:
        raise GroupError(f"{g.name(z)} is not fixed by both endomorphisms")


# slope functions

def ell(v: VElement, x: CPoint) -> int:
    """``log₂ v'(v⁻¹ x)``."""
    return v.inverse().slope(x) * -1


def ell_cells(v: VElement) -> list:
    """``ℓ_v`` as cells over the codomain partition."""
    return sorted((c, len(d) - len(c)) for d, c in v.pairs)


def push_cells(cells, phi: NormalizerElement) -> list:
    """``f^φ = f ∘ φ⁻¹`` for a cell function ``f``."""
    out = []
    for d, c in phi.v.pairs:
        for w, val in cells:
            if w.startswith(d):
                out.append((c + w[len(d):], val))
            elif d.startswith(w):
                out.append((c, val))
    if phi.flip:
        out = [(flip_word(w), val) for w, val in out]
    out.sort()
    return out


def shift_cells(cells, v: VElement) -> list:
    return push_cells(cells, NormalizerElement(False, v))


def power_loop(t: Triple, z, cells) -> LoopElement:
    g = t.group
    return LoopElement(t, _merge_equal_siblings(sorted((w, g.power(z, n)) for w, n in cells)))


def push_loop(a: LoopElement, phi: NormalizerElement) -> LoopElement:
    return LoopElement(a.triple, _merge_equal_siblings(push_cells(a.cells, phi)))


def map_loop(a: LoopElement, beta) -> LoopElement:
    """``β̄(a)``: apply ``β`` to every value."""
    return LoopElement(a.triple, _merge_equal_siblings([(w, beta(g)) for w, g in a.cells]))


def retarget(a: LoopElement, t: Triple) -> LoopElement:
    return LoopElement(t, a.cells)


# normalizer maps

class NormalizerMap:
    """A map ``f`` on the dyadic points that normalizes G."""

    triple: Triple

    def conj_loop(self, a: LoopElement) -> LoopElement:
        """``f a f⁻¹``."""
        return a

    def cob(self, v: VElement) -> LoopElement:
        """``f (f^v)⁻¹``."""
        raise NotImplementedError

    def inverse(self) -> "NormalizerMap":
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class LoopMap(NormalizerMap):
    f: LoopElement

    @property
    def triple(self):
        return self.f.triple

    def conj_loop(self, a):
        return self.f * a * self.f.inverse()

    def cob(self, v):
        return self.f * jones_act(self.triple, v, self.f).inverse()

    def inverse(self):
        return LoopMap(self.f.inverse())


@dataclass(frozen=True, eq=False)
class DigitSum(NormalizerMap):
    """``x ↦ ζ^{Σ xᵢ}`` for a central ``ζ``; its coboundary on ``w ← d`` is ``ζ^{Σw − Σd}``."""

    triple: Triple
    zeta: object

    def __post_init__(self):
        require_central_fixed(self.triple, self.zeta)

    def cob(self, v):
        return power_loop(self.triple, self.zeta, sorted((c, digit_sum(c) - digit_sum(d)) for d, c in v.pairs))

    def inverse(self):
        return DigitSum(self.triple, self.triple.group.inv(self.zeta))


@dataclass(frozen=True, eq=False)
class ZetaGamma(NormalizerMap):
    """``ζ^{γ_φ}``; its coboundary is ``ζ^{(ℓ_{φ⁻¹vφ})^φ − k_φ ℓ_v}``."""

    triple: Triple
    zeta: object
    phi: NormalizerElement

    def __post_init__(self):
        require_central_fixed(self.triple, self.zeta)

    def exponent_cells(self, v: VElement) -> list:
        u = self.phi.inverse().conjugate(v)
        k = k_phi(self.phi)
        pushed = push_cells(ell_cells(u), self.phi)
        return _join(pushed, ell_cells(v), lambda a, b: a - k * b)

    def cob(self, v):
        return power_loop(self.triple, self.zeta, self.exponent_cells(v))

    def inverse(self):
        return ZetaGamma(self.triple, self.triple.group.inv(self.zeta), self.phi)


def k_phi(phi: NormalizerElement) -> int:
    """Length of the prime word of the tail class of ``φ⁻¹(0^∞)``."""
    return len(phi.inverse().apply(ZERO).tail_word())


def gamma_phi(phi: NormalizerElement, x: CPoint, v: VElement | None = None) -> int:
    """``γ_φ(x) = log₂((φ⁻¹vφ)'(φ⁻¹0)) − k_φ log₂ v'(0)`` for any ``v`` with ``v(0^∞) = x``."""
    if x.per != "0":
        raise ValueError(f"{x} is not in the tail class of 0")
    if v is None:
        v = zero_mover(x)
    elif v.apply(ZERO) != x:
        raise ValueError("auxiliary element does not send 0^∞ to x")
    u = phi.inverse().conjugate(v)
    return u.slope(phi.inverse().apply(ZERO)) - k_phi(phi) * v.slope(ZERO)


def zero_mover(x: CPoint, rng=None) -> VElement:
    """An element sending ``0^∞`` to ``x``; random when ``rng`` is given."""
    v = transport("0", x.pre + "0")
    if rng is not None:
        v = v * random_fixing(rng, ZERO)
    return v


# cocycles

class Cocycle:
    triple: Triple

    def __call__(self, v: VElement) -> LoopElement:
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class Slope(Cocycle):
    """``s(ζ)_v = ζ^{ℓ_v}``."""

    triple: Triple
    zeta: object

    def __post_init__(self):
        require_central_fixed(self.triple, self.zeta)

    def __call__(self, v):
        return power_loop(self.triple, self.zeta, ell_cells(v))


@dataclass(frozen=True, eq=False)
class Coboundary(Cocycle):
    f: NormalizerMap

    @property
    def triple(self):
        return self.f.triple

    def __call__(self, v):
        return self.f.cob(v)


@dataclass(frozen=True, eq=False)
class HTwist(Cocycle):
    """``c_v`` on the cell ``v(I)`` equals ``α_{v(I)}⁻¹(h_{v(I)}⁻¹ h_I)``."""

    triple: Triple
    h0: object
    h1: object
    _h: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.triple.require_autos()

    def h(self, q: str):
        got = self._h.get(q)
        if got is None:
            if not q:
                got = self.triple.group.e
            else:
                hi = self.h0 if q[-1] == "0" else self.h1
                got = self.triple.group.mul(hi, self.triple.letter(q[-1])(self.h(q[:-1])))
            self._h[q] = got
        return got

    def __call__(self, v):
        t, g = self.triple, self.triple.group
        cells = [(c, t.alpha_inv(c)(g.mul(g.inv(self.h(c)), self.h(d)))) for d, c in v.pairs]
        return LoopElement(t, _merge_equal_siblings(sorted(cells)))


@dataclass(frozen=True, eq=False)
class Product(Cocycle):
    parts: tuple

    @property
    def triple(self):
        return self.parts[0].triple

    def __call__(self, v):
        acc = LoopElement.identity(self.triple)
        for c in self.parts:
            acc = acc * c(v)
        return acc


@dataclass(frozen=True, eq=False)
class Corrupted(Cocycle):
    """A cocycle multiplied by a fixed loop off the identity (negative control)."""

    base: Cocycle
    noise: LoopElement

    @property
    def triple(self):
        return self.base.triple

    def __call__(self, v):
        c = self.base(v)
        return c if v.is_identity() else c * self.noise


def cocycle_eval(c: Cocycle, v: VElement) -> LoopElement:
    return c(v)


@dataclass
class CheckReport:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, index: int, passed: bool, detail: str = ""):
        self.cases += 1
        if not passed:
            self.failures.append((index, detail))


def cocycle_identity_holds(c: Cocycle, v: VElement, w: VElement) -> bool:
    """``c_{vw} = c_v · π_v(c_w)``."""
    return c(v * w) == c(v) * jones_act(c.triple, v, c(w))


def cocycle_check(c: Cocycle, trials: int, seed: int, max_leaves: int = 8) -> CheckReport:
    import random

    from .thompson import random_v

    report = CheckReport("cocycle")
    for i in range(trials):
        rng = random.Random(seed * 1_000_003 + i)
        v, w = random_v(rng, max_leaves), random_v(rng, max_leaves)
        ok = cocycle_identity_holds(c, v, w)
        report.record(i, ok, "" if ok else f"v={v}; w={w}")
    return report


# elementary automorphisms

class ElementaryAut:
    def __call__(self, x: FractionElement) -> FractionElement:
        raise NotImplementedError

    def inverse(self) -> "ElementaryAut":
        raise NotImplementedError

    def then(self, other: "ElementaryAut") -> "Composite":
        """``other ∘ self``."""
        return Composite((other, self))


@dataclass(frozen=True, eq=False)
class Spatial(ElementaryAut):
    """``A_{φ,β}(av) = β̄(a)^φ · φvφ⁻¹``."""

    triple: Triple
    phi: NormalizerElement
    beta: object

    def __post_init__(self):
        require_untwisted(self.triple)
        if not self.beta.is_automorphism:
            raise GroupError("β must be an automorphism")

    def __call__(self, x):
        a = push_loop(map_loop(x.a, self.beta), self.phi)
        return FractionElement(a, self.phi.conjugate(x.v))

    def inverse(self):
        return Spatial(self.triple, self.phi.inverse(), self.beta.inverse())


@dataclass(frozen=True, eq=False)
class Adjoint(ElementaryAut):
    """``ad(f)(av) = f a (f^v)⁻¹ v``."""

    f: NormalizerMap

    def __post_init__(self):
        if not isinstance(self.f, LoopMap):
            require_untwisted(self.f.triple)

    def __call__(self, x):
        return FractionElement(self.f.conj_loop(x.a) * self.f.cob(x.v), x.v)

    def inverse(self):
        return Adjoint(self.f.inverse())


@dataclass(frozen=True, eq=False)
class SlopeTwist(ElementaryAut):
    """``F_ζ(av) = ζ^{ℓ_v} a v``."""

    triple: Triple
    zeta: object

    def __post_init__(self):
        require_central_fixed(self.triple, self.zeta)

    def __call__(self, x):
        return FractionElement(power_loop(self.triple, self.zeta, ell_cells(x.v)) * x.a, x.v)

    def inverse(self):
        return SlopeTwist(self.triple, self.triple.group.inv(self.zeta))


@dataclass(frozen=True, eq=False)
class Composite(ElementaryAut):
    """``maps[0] ∘ maps[1] ∘ …``."""

    maps: tuple

    def __call__(self, x):
        for m in reversed(self.maps):
            x = m(x)
        return x

    def inverse(self):
        return Composite(tuple(m.inverse() for m in reversed(self.maps)))


@dataclass(frozen=True, eq=False)
class Quadruple:
    zeta: object
    f: NormalizerMap
    phi: NormalizerElement
    beta: object


def quadruple_from_json(t: Triple, data: dict) -> Quadruple:
    """Read ``{zeta, f, phi, beta}``.

    ``f`` is ``null`` (identity), ``{"loop": "0:1; 1:0"}``, ``{"digit_sum": ζ}``
    or ``{"zeta_gamma": ζ, "phi": table}``; ``phi`` is a table with optional
    leading ``~``; ``beta`` is an index array.
    """
    from .cantor import ParseError
    from .groups import GroupMap

    try:
        zeta, fspec, phi_text, beta = data["zeta"], data.get("f"), data.get("phi", ""), data["beta"]
    except KeyError as exc:
        raise ParseError(f"quadruple is missing {exc}") from exc
    if fspec is None:
        f = LoopMap(LoopElement.identity(t))
    elif "loop" in fspec:
        f = LoopMap(LoopElement.parse(t, fspec["loop"]))
    elif "digit_sum" in fspec:
        f = DigitSum(t, int(fspec["digit_sum"]))
    elif "zeta_gamma" in fspec:
        f = ZetaGamma(t, int(fspec["zeta_gamma"]), NormalizerElement.parse(fspec.get("phi", "")))
    else:
        raise ParseError(f"unknown normalizer map {fspec!r}")
    return Quadruple(int(zeta), f, NormalizerElement.parse(phi_text), GroupMap(t.group, t.group, beta))


def quadruple_to_json(q: Quadruple) -> dict:
    f = q.f
    if isinstance(f, LoopMap):
        fspec = {"loop": str(f.f).replace("ε", "e")}
    elif isinstance(f, DigitSum):
        fspec = {"digit_sum": f.zeta}
    else:
        fspec = {"zeta_gamma": f.zeta, "phi": str(f.phi).replace("ε", "e")}
    return {"zeta": q.zeta, "f": fspec, "phi": str(q.phi).replace("ε", "e"), "beta": list(q.beta.image)}


def xi(t: Triple, q: Quadruple) -> Composite:
    """``Ξ(ζ, f, φ, β) = F_ζ ∘ ad(f) ∘ A_{φ,β}``."""
    require_untwisted(t)
    return Composite((SlopeTwist(t, q.zeta), Adjoint(q.f), Spatial(t, q.phi, q.beta)))


def xi_apply(t: Triple, q: Quadruple, x: FractionElement) -> FractionElement:
    return xi(t, q)(x)


def kernel_quadruple(t: Triple, g) -> Quadruple:
    """``(e, ḡ, id, ad(g⁻¹))``."""
    grp = t.group
    return Quadruple(
        grp.e,
        LoopMap(LoopElement.constant(t, g)),
        NormalizerElement(False, IDENTITY),
        conjugation_map(grp, grp.inv(g)),
    )


def xi_kernel_check(t: Triple, g, samples) -> bool:
    m = xi(t, kernel_quadruple(t, g))
    return all(m(x) == x for x in samples)


def apply_aut(e: ElementaryAut, x: FractionElement) -> FractionElement:
    return e(x)


# the dyadic example

def require_dyadic(t: Triple):
    if not isinstance(t.group, DyadicPair) or t.a0 != t.a1 or t.a0.m != (1, 0, 0, Fraction(1, 2)):
        raise GroupError("the zeta morphism is defined for the dyadic pair triple only")


def zeta_morphism_eval(x) -> Fraction:
    """``Σ Leb(I_k) · r_k`` over the loop part; the V part is ignored."""
    a = x.a if isinstance(x, FractionElement) else x
    require_dyadic(a.triple)
    return sum((Fraction(1, 2 ** len(w)) * g[1] for w, g in a.cells), Fraction(0))


def zeta_central(t: Triple, s: Fraction) -> FractionElement:
    """The central element ``(s, 0)`` as a constant loop."""
    return FractionElement.of_loop(LoopElement.constant(t, (Fraction(s), Fraction(0))))


def nonspatial_aut(x: FractionElement) -> FractionElement:
    """``g ↦ g · ζ(g)``."""
    return x * zeta_central(x.triple, zeta_morphism_eval(x))


def nonspatial_aut_inverse(x: FractionElement) -> FractionElement:
    """``g ↦ g · ζ(g)⁻¹``."""
    return x * zeta_central(x.triple, -zeta_morphism_eval(x))


def central_fixed_elements(t: Triple) -> list:
    g = t.group
    return sorted(z for z in gamma_alpha_fixed(t) if g.is_central(z))


@dataclass(eq=False)
class TwistMap:
    """``θ(av) = a · c_v · v`` from the twisted group onto the base group.

    ``c`` is the h-twist cocycle over ``base``; the twisted triple is
    ``(Γ, ad(h₀)∘α₀, ad(h₁)∘α₁)``.  The inverse is ``bw ↦ b · c_w⁻¹ · w``.
    """

    base: Triple
    h0: object
    h1: object
    twisted: Triple = None

    def __post_init__(self):
        self.cocycle = HTwist(self.base, self.h0, self.h1)
        if self.twisted is None:
            from .groups import twisted_triple

            self.twisted = twisted_triple(self.base, self.h0, self.h1)

    def __call__(self, x: FractionElement) -> FractionElement:
        a = retarget(x.a, self.base)
        return FractionElement(a * self.cocycle(x.v), x.v)

    def inverse_apply(self, y: FractionElement) -> FractionElement:
        a = y.a * self.cocycle(y.v).inverse()
        return FractionElement(retarget(a, self.twisted), y.v)


def support_image(phi: NormalizerElement, u) -> "SdiUnion":
    """``φ(u)`` for a finite union of cells."""
    from .cantor import SdiUnion, split_to_depth

    depth = max([len(d) for d, _ in phi.v.pairs] + [0])
    return SdiUnion.of(phi.image_word(w) for w in split_to_depth(list(u.cells), depth))


def gamma_difference(phi: NormalizerElement, v: VElement, x: CPoint) -> int:
    """Right side of ``γ_φ(vx) − γ_φ(x)``."""
    u = phi.inverse().conjugate(v)
    return u.slope(phi.inverse().apply(x)) - k_phi(phi) * v.slope(x)

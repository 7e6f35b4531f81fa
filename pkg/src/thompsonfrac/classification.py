"""Explicit isomorphisms between fraction groups and classification verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field

from .automorphisms import TwistMap, map_loop, retarget
from .cantor import flip_word
from .fraction import FractionElement
from .groups import (
    FiniteGroup,
    GroupError,
    GroupMap,
    Triple,
    aut_group,
    conjugation_map,
    isomorphisms,
    out_class,
    is_inner,
)
from .loops import LoopElement, _merge_equal_siblings

ID = (0, 1)
SWAP = (1, 0)

ISOMORPHIC = "Isomorphic"
NOT_ISOMORPHIC = "NotIsomorphic"
INCONCLUSIVE = "Inconclusive"
WITNESS_FOUND = "WitnessFound"
NOT_FOUND = "NotFound"
HOLDS = "Holds"
FAILS = "Fails"


@dataclass(frozen=True, eq=False)
class IsoWitness:
    """Data ``(β, σ, h₀, h₁)`` with ``α̃_{σ(i)} = ad(hᵢ) ∘ β αᵢ β⁻¹``."""

    source: Triple
    target: Triple
    beta: GroupMap
    sigma: tuple
    h0: int
    h1: int

    def holds(self) -> bool:
        return witness_holds(self.source, self.target, self.beta, self.sigma, (self.h0, self.h1))

    def to_json(self) -> dict:
        name = self.target.group.name
        return {
            "beta": list(self.beta.image),
            "sigma": "swap" if self.sigma == SWAP else "id",
            "h0": name(self.h0),
            "h1": name(self.h1),
        }


def witness_holds(t1: Triple, t2: Triple, beta: GroupMap, sigma, hs) -> bool:
    bi = beta.inverse()
    for i in (0, 1):
        gamma = beta * t1.letter(str(i)) * bi
        if conjugation_map(t2.group, hs[i]) * gamma != t2.letter(str(sigma[i])):
            return False
    return True


def _flip_loop(a: LoopElement, t: Triple) -> LoopElement:
    return LoopElement(t, _merge_equal_siblings(sorted((flip_word(w), g) for w, g in a.cells)))


@dataclass(eq=False)
class IsoMap:
    """``θ = (twist) ∘ (flip, when σ swaps) ∘ (diagonal β)``, with its inverse.

    The stages pass through the triples ``γ = (Γ̃, βα₀β⁻¹, βα₁β⁻¹)`` and
    ``γ'`` (``γ`` with letters swapped when ``σ`` swaps); the last stage is the
    inverse of the twist map from the target onto ``γ'``.
    """

    witness: IsoWitness
    gamma: Triple = field(init=False)
    base: Triple = field(init=False)
    twist: TwistMap = field(init=False)

    def __post_init__(self):
        w = self.witness
        if not w.holds():
            raise GroupError("witness condition fails")
        t1, t2 = w.source, w.target
        t1.require_autos()
        t2.require_autos()
        bi = w.beta.inverse()
        g0, g1 = w.beta * t1.a0 * bi, w.beta * t1.a1 * bi
        self.gamma = Triple(t2.group, g0, g1)
        hs = (w.h0, w.h1)
        if w.sigma == SWAP:
            self.base = Triple(t2.group, g1, g0)
            k = (hs[1], hs[0])
        else:
            self.base = self.gamma
            k = hs
        self.twist = TwistMap(self.base, k[0], k[1], t2)

    @property
    def swaps(self) -> bool:
        return self.witness.sigma == SWAP

    def __call__(self, x: FractionElement) -> FractionElement:
        a = map_loop(retarget(x.a, self.gamma), self.witness.beta)
        v = x.v
        if self.swaps:
            a, v = _flip_loop(a, self.base), v.mirrored()
        return self.twist.inverse_apply(FractionElement(a, v))

    def inverse_apply(self, y: FractionElement) -> FractionElement:
        x = self.twist(y)
        a, v = x.a, x.v
        if self.swaps:
            a, v = _flip_loop(a, self.gamma), v.mirrored()
        a = map_loop(a, self.witness.beta.inverse())
        return FractionElement(retarget(a, self.witness.source), v)

    def inverse(self) -> "_Inverse":
        return _Inverse(self)

    def flips(self) -> bool:
        return self.swaps


@dataclass(frozen=True, eq=False)
class _Inverse:
    forward: IsoMap

    def __call__(self, y):
        return self.forward.inverse_apply(y)

    def inverse(self):
        return self.forward


def build_iso(w: IsoWitness) -> IsoMap:
    return IsoMap(w)


# searches

def _require_finite(*ts: Triple):
    for t in ts:
        if not isinstance(t.group, FiniteGroup):
            raise GroupError("classification needs finite groups")


def _conj_solutions(g: FiniteGroup, target: GroupMap, source: GroupMap) -> list:
    """All ``h`` with ``ad(h) ∘ source = target``."""
    return [h for h in g.elements() if conjugation_map(g, h) * source == target]


def prop24_search(t1: Triple, t2: Triple):
    """Least witness ``(β, σ, h₀, h₁)``; β by image, identity σ first, then least h."""
    _require_finite(t1, t2)
    for beta in isomorphisms(t1.group, t2.group):
        bi = beta.inverse()
        gammas = (beta * t1.a0 * bi, beta * t1.a1 * bi)
        for sigma in (ID, SWAP):
            sols = [_conj_solutions(t2.group, t2.letter(str(sigma[i])), gammas[i]) for i in (0, 1)]
            if sols[0] and sols[1]:
                return IsoWitness(t1, t2, beta, sigma, min(sols[0]), min(sols[1]))
    return None


@dataclass
class Verdict:
    verdict: str
    reason: str
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "reason": self.reason}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def prop24_verdict(t1: Triple, t2: Triple) -> Verdict:
    w = prop24_search(t1, t2)
    if w is None:
        return Verdict(NOT_FOUND, "no (β, σ, h₀, h₁) satisfies the sufficient condition; this is not a proof of non-isomorphism")
    return Verdict(WITNESS_FOUND, "sufficient condition satisfied", w.to_json())


def all_inner(t: Triple) -> bool:
    return is_inner(t.group, t.a0) and is_inner(t.group, t.a1)


def cor28_decide(t1: Triple, t2: Triple) -> Verdict:
    _require_finite(t1, t2)
    t1.require_autos()
    t2.require_autos()
    iso = bool(isomorphisms(t1.group, t2.group))
    if not iso:
        return Verdict(NOT_ISOMORPHIC, "coefficient groups are not isomorphic")
    in1, in2 = all_inner(t1), all_inner(t2)
    if in1 and in2:
        return Verdict(ISOMORPHIC, "isomorphic coefficient groups and all automorphisms inner")
    if in1 or in2:
        side = "left" if in2 else "right"
        return Verdict(NOT_ISOMORPHIC, f"one side has only inner automorphisms but the {side} side does not")
    return Verdict(INCONCLUSIVE, "neither side has only inner automorphisms")


def out_subgroup(g: FiniteGroup, a: GroupMap) -> frozenset:
    """Classes of ``⟨a⟩`` in ``Out(g)`` as canonical tokens."""
    out = set()
    p = GroupMap.identity(g)
    while True:
        tok = out_class(g, p)
        if tok in out:
            break
        out.add(tok)
        p = a * p
    return frozenset(out)


def cocf_check(t1: Triple, t2: Triple) -> Verdict:
    """Search ``β`` with ``β⟨α₁⟩β⁻¹ = ⟨α̃₁⟩`` in ``Out``; failure rules out isomorphism."""
    _require_finite(t1, t2)
    for t in (t1, t2):
        if not t.a0.is_identity():
            raise GroupError("coCF triples need α₀ = id")
        t.require_autos()
    isos = isomorphisms(t1.group, t2.group)
    if not isos:
        return Verdict(FAILS, "coefficient groups are not isomorphic")
    target = out_subgroup(t2.group, t2.a1)
    src_order = len(out_subgroup(t1.group, t1.a1))
    for beta in isos:
        bi = beta.inverse()
        if out_subgroup(t2.group, beta * t1.a1 * bi) == target:
            return Verdict(HOLDS, "β maps the Out-subgroup generated by α₁ onto the one generated by α̃₁",
                           {"beta": list(beta.image)})
    return Verdict(FAILS, f"no isomorphism matches the Out-subgroups (orders {src_order} vs {len(target)})")


def outer_order(t: Triple) -> int:
    return len(out_subgroup(t.group, t.a1))


def automorphism_count(g: FiniteGroup) -> int:
    return len(aut_group(g))

"""Randomized and exhaustive identity suites behind ``thompsonfrac check``.

Every case draws from its own generator seeded with ``seed * 1_000_003 + i``,
so a failing case can be replayed alone and the report does not depend on the
order cases run in.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import automorphisms as au
from . import centralizers as ce
from .cantor import SdiUnion, full_depth, random_cpoint, random_dyadic_point
from .classification import build_iso, prop24_search
from .fraction import (
    FractionElement,
    center_elements,
    cocf_exponent,
    commutator,
    commutator_witness,
    random_fraction,
    random_wreath,
)
from .groups import DyadicPair, GroupError, GroupMap, Triple, aut_group, gamma_alpha_fixed, twisted_triple
from .loops import LoopElement, jones_act, random_loop, tau, tau_adapted
from .thompson import FLIP, IDENTITY, NormalizerElement, random_normalizer, random_v


def case_rng(seed: int, i: int) -> random.Random:
    return random.Random(seed * 1_000_003 + i)


@dataclass
class SuiteReport:
    suite: str
    seed: int
    cases: int = 0
    failures: list = field(default_factory=list)
    info: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, index: int, passed: bool, detail=""):
        self.cases += 1
        if not passed:
            self.failures.append((index, detail() if callable(detail) else detail))

    def render(self) -> str:
        lines = [f"suite: {self.suite}", f"seed: {self.seed}", f"cases: {self.cases}", f"failures: {len(self.failures)}"]
        lines += self.info
        for i, d in sorted(self.failures, key=lambda f: f[0]):
            lines.append(f"failure {i}: {d}")
        lines.append("result: " + ("pass" if self.ok else "FAIL"))
        return "\n".join(lines)


def _small_v(rng):
    return random_v(rng, 6, max_depth=5)


# group-axioms

def suite_group_axioms(t: Triple, seed: int, iters: int) -> SuiteReport:
    r = SuiteReport("group-axioms", seed)
    for i in range(iters):
        rng = case_rng(seed, i)
        x, y, z = (random_v(rng, 8, max_depth=5) for _ in range(3))
        r.record(i, (x * y) * z == x * (y * z) and (x * x.inverse()).is_identity(), lambda: f"V: {x}; {y}; {z}")
        a, b, c = (random_loop(rng, t) for _ in range(3))
        r.record(i, (a * b) * c == a * (b * c) and (a * a.inverse()).is_identity(), lambda: f"loop: {a}; {b}; {c}")
        if t.autos:
            f, g, h = (random_fraction(rng, t) for _ in range(3))
            r.record(i, (f * g) * h == f * (g * h) and (f * f.inverse()).is_identity(), lambda: f"G: {f}; {g}; {h}")
    return r


# action-laws

def suite_action_laws(t: Triple, seed: int, iters: int) -> SuiteReport:
    t.require_autos()
    r = SuiteReport("action-laws", seed)
    for i in range(iters):
        rng = case_rng(seed, i)
        v, w = _small_v(rng), _small_v(rng)
        a, b = random_loop(rng, t), random_loop(rng, t)
        r.record(i, jones_act(t, v * w, a) == jones_act(t, v, jones_act(t, w, a)), lambda: f"π_vw: v={v}; w={w}; a={a}")
        r.record(i, jones_act(t, v, a * b) == jones_act(t, v, a) * jones_act(t, v, b), lambda: f"π_v(ab): v={v}; a={a}; b={b}")
        x = random_cpoint(rng)
        d, _ = v.pair_at(x)
        word = x.expand(len(d) + rng.randint(0, 4))
        r.record(i, tau_adapted(t, v, word) == tau(t, v, x), lambda: f"τ refinement: v={v}; x={x}")
        r.record(i, tau(t, v * w, x) == tau(t, v, w.apply(x)) * tau(t, w, x), lambda: f"τ composition: v={v}; w={w}; x={x}")
    return r


# cocycle

def _central_fixed(t: Triple) -> list:
    return au.central_fixed_elements(t)


def suite_cocycle(t: Triple, seed: int, iters: int) -> SuiteReport:
    t.require_autos()
    r = SuiteReport("cocycle", seed)
    g = t.group
    zetas = [z for z in _central_fixed(t) if z != g.e] or [g.e]
    for i in range(iters):
        rng = case_rng(seed, i)
        v, w = _small_v(rng), _small_v(rng)
        cocycles = [au.Slope(t, rng.choice(zetas)),
                    au.HTwist(t, rng.choice(list(g.elements())), rng.choice(list(g.elements()))),
                    au.Coboundary(au.LoopMap(random_loop(rng, t)))]
        if au.is_untwisted(t):
            zeta = rng.choice(zetas)
            cocycles += [au.Coboundary(au.DigitSum(t, zeta)),
                         au.Coboundary(au.ZetaGamma(t, zeta, random_normalizer(rng, 5)))]
        for c in cocycles:
            r.record(i, au.cocycle_identity_holds(c, v, w), lambda: f"{type(c).__name__}: v={v}; w={w}")
        tw = au.TwistMap(t, cocycles[1].h0, cocycles[1].h1)
        x, y = random_fraction(rng, tw.twisted), random_fraction(rng, tw.twisted)
        ok = tw(x * y) == tw(x) * tw(y) and tw.inverse_apply(tw(x)) == x
        r.record(i, ok, lambda: f"θ: h=({g.name(tw.h0)},{g.name(tw.h1)}); x={x}; y={y}")
    return r


# centralizer and center

def _exhaustive_depth(t: Triple) -> int:
    n = t.group.order
    for depth in (3, 2, 1):
        if n ** (2 ** depth) <= 4 ** 8 * 4:
            return depth
    raise GroupError("group too large for the exhaustive search")


def suite_centralizer(t: Triple, seed: int, iters: int) -> SuiteReport:
    t.require_autos()
    r = SuiteReport("centralizer", seed)
    depth = _exhaustive_depth(t)
    r.info.append(f"depth: {depth}")
    for k, cell in enumerate(["0", "10"]):
        u = SdiUnion.of([cell])
        fix = ce.lemma26_fix(t, u, depth)
        stab = ce.lemma26_stab(t, u, depth)
        r.record(k, fix.ok and ce.crosscheck(t, fix, ce.fix_generators(u, depth), depth),
                 lambda: f"fix commutant on {cell}: found {len(fix.found)}, expected {len(fix.expected)}")
        r.record(k, stab.ok and ce.crosscheck(t, stab, ce.stab_generators(u, depth), depth),
                 lambda: f"stab commutant on {cell}: found {len(stab.found)}, expected {len(stab.expected)}")
        r.info.append(f"I = {cell}: |fix commutant| = {len(fix.found)}, |stab commutant| = {len(stab.found)}")
    # derived subgroup realization
    fixed = sorted(gamma_alpha_fixed(t))
    cells = [w for n in (1, 2) for w in full_depth(n)]
    for k, w in enumerate(cells, start=2):
        v, j = commutator_witness(w)
        for z in fixed:
            gj = FractionElement.of_loop(LoopElement.on_cell(t, j.cells[0], z))
            got = commutator(FractionElement.of_v(t, v), gj)
            want = FractionElement.of_loop(LoopElement.on_cell(t, w, z))
            r.record(k, got == want, lambda: f"[v, g_J] on {w} with g={t.group.name(z)}")
    return r


def suite_center(t: Triple, seed: int, iters: int) -> SuiteReport:
    t.require_autos()
    r = SuiteReport("center", seed)
    depth = _exhaustive_depth(t)
    found = ce.center_search(t, depth)
    expected = ce.center_expected(t, depth)
    listed = center_elements(t)
    r.record(0, found == expected, f"exhaustive center {len(found)} vs expected {len(expected)}")
    r.record(1, len(listed) == len(expected), f"center_elements gives {len(listed)}")
    r.record(2, ce.v_center_witnesses(), "a non-identity v commutes with every generator")
    r.info.append(f"|Z| = {len(listed)}")
    return r


# theorem33

def _random_aut(rng, t: Triple):
    return rng.choice(aut_group(t.group))


def _random_phi(rng, i: int):
    return FLIP if i % 3 == 0 else NormalizerElement(i % 3 == 2, random_v(rng, 5))


def suite_theorem33(t: Triple, seed: int, iters: int) -> SuiteReport:
    au.require_untwisted(t)
    r = SuiteReport("theorem33", seed)
    g = t.group
    zetas = _central_fixed(t)
    for i in range(iters):
        rng = case_rng(seed, i)
        x, y = random_fraction(rng, t), random_fraction(rng, t)
        phi, beta, zeta = _random_phi(rng, i), _random_aut(rng, t), rng.choice(zetas)
        f = random_loop(rng, t)
        ap = au.Spatial(t, phi, beta)
        lhs = au.Composite((ap, au.Adjoint(au.LoopMap(f)), ap.inverse()))
        rhs = au.Adjoint(au.LoopMap(au.push_loop(au.map_loop(f, beta), phi)))
        r.record(i, lhs(x) == rhs(x), lambda: f"A ad(f) A⁻¹: φ={phi}; f={f}; x={x}")
        ab = au.Spatial(t, NormalizerElement(False, IDENTITY), beta)
        lhs = au.Composite((ab, au.SlopeTwist(t, zeta), ab.inverse()))
        r.record(i, lhs(x) == au.SlopeTwist(t, beta(zeta))(x), lambda: f"A_β F_ζ A_β⁻¹: ζ={g.name(zeta)}; x={x}")
        aphi = au.Spatial(t, phi, GroupMap.identity(g))
        lhs = au.Composite((aphi, au.SlopeTwist(t, zeta), aphi.inverse()))
        rhs = au.Composite((au.SlopeTwist(t, g.power(zeta, au.k_phi(phi))), au.Adjoint(au.ZetaGamma(t, zeta, phi))))
        r.record(i, lhs(x) == rhs(x), lambda: f"A_φ F_ζ A_φ⁻¹: φ={phi}; ζ={g.name(zeta)}; x={x}")
        h = rng.choice(list(g.elements()))
        r.record(i, au.xi(t, au.kernel_quadruple(t, h))(x) == x, lambda: f"kernel: g={g.name(h)}; x={x}")
        q = au.Quadruple(zeta, au.LoopMap(f), phi, beta)
        m = au.xi(t, q)
        r.record(i, m(x * y) == m(x) * m(y) and m.inverse()(m(x)) == x, lambda: f"Ξ hom: x={x}; y={y}")
    return r


# gamma-phi

def suite_gamma_phi(t: Triple | None, seed: int, iters: int) -> SuiteReport:
    r = SuiteReport("gamma-phi", seed)
    base = random.Random(seed)
    phis = [FLIP] + [NormalizerElement(False, random_v(base, 6)) for _ in range(5)]
    for i in range(iters):
        rng = case_rng(seed, i)
        phi = phis[i % len(phis)]
        x = random_dyadic_point(rng)
        v1, v2 = au.zero_mover(x, rng), au.zero_mover(x, rng)
        g1, g2 = au.gamma_phi(phi, x, v1), au.gamma_phi(phi, x, v2)
        r.record(i, g1 == g2, lambda: f"independence: φ={phi}; x={x}; v={v1}; v'={v2}")
        v = random_v(rng, 6)
        lhs = au.gamma_phi(phi, v.apply(x)) - au.gamma_phi(phi, x)
        r.record(i, lhs == au.gamma_difference(phi, v, x), lambda: f"difference law: φ={phi}; v={v}; x={x}")
    return r


# spatial-support

def _iso_maps(t: Triple, rng) -> list:
    g = t.group
    out = []
    swapped = Triple(g, t.a1, t.a0)
    tw = twisted_triple(t, rng.choice(list(g.elements())), rng.choice(list(g.elements())))
    for target in (swapped, tw):
        w = prop24_search(t, target)
        if w is not None:
            out.append((build_iso(w), FLIP if w.sigma == (1, 0) else NormalizerElement(False, IDENTITY)))
    return out


def suite_spatial_support(t: Triple, seed: int, iters: int) -> SuiteReport:
    t.require_autos()
    r = SuiteReport("spatial-support", seed)
    g = t.group
    maps = _iso_maps(t, random.Random(seed))
    for i in range(iters):
        rng = case_rng(seed, i)
        a = random_loop(rng, t, max_depth=4)
        s = a.support()
        for m, phi in maps:
            img = m(FractionElement.of_loop(a))
            r.record(i, img.v.is_identity() and img.a.support() == au.support_image(phi, s),
                     lambda: f"iso map: a={a}")
        if au.is_untwisted(t):
            phi = random_normalizer(rng, 5)
            zeta = rng.choice(_central_fixed(t))
            m = au.Composite((au.Spatial(t, phi, _random_aut(rng, t)), au.Adjoint(au.LoopMap(random_loop(rng, t))),
                              au.SlopeTwist(t, zeta)))
            img = m(FractionElement.of_loop(a))
            r.record(i, img.v.is_identity() and img.a.support() == au.support_image(phi, s),
                     lambda: f"elementary: φ={phi}; a={a}")
    r.info.append(f"build_iso maps: {len(maps)}")
    return r


# wreath-containment

def suite_wreath_containment(t: Triple, seed: int, iters: int) -> SuiteReport:
    t.require_autos()
    r = SuiteReport("wreath-containment", seed)
    seen = 0
    for i in range(iters):
        rng = case_rng(seed, i)
        a = random_wreath(rng, t)
        v = ce.random_w_f(rng, a.support())
        r.record(i, ce.wreath_w_f_commutes(t, a, v), lambda: f"W_F: a={a}; v={v}")
        b = random_loop(rng, t)
        for u in ce.commuting_candidates(rng, b, 4):
            res = ce.loop_centralizer_stabilizes(t, b, u)
            if res is not None:
                seen += 1
                r.record(i, res, lambda: f"C_V(b): b={b}; v={u}")
    r.info.append(f"commuting pairs examined: {seen}")
    return r


# cocf

def suite_cocf(t: Triple, seed: int, iters: int) -> SuiteReport:
    t.require_autos()
    if not t.a0.is_identity():
        raise GroupError("the coCF suite needs α₀ = id")
    r = SuiteReport("cocf", seed)
    for i in range(iters):
        rng = case_rng(seed, i)
        v, x = random_v(rng, 8), random_cpoint(rng)
        n = cocf_exponent(v, x)
        r.record(i, tau(t, v, x) == t.a1.power(n), lambda: f"v={v}; x={x}; N={n}")
    return r


# zeta-example

def random_dyadic_fraction(rng, t: Triple) -> FractionElement:
    vals = [(Fraction(rng.randint(-8, 8), 2 ** rng.randint(0, 3)), Fraction(rng.randint(-8, 8), 2 ** rng.randint(0, 3)))
            for _ in range(4)]
    return FractionElement(random_loop(rng, t, values=vals), random_v(rng, 6))


def suite_zeta_example(t: Triple | None, seed: int, iters: int) -> SuiteReport:
    from .groups import dyadic_triple

    d = t if t is not None and isinstance(t.group, DyadicPair) else dyadic_triple()
    r = SuiteReport("zeta-example", seed)
    for i in range(iters):
        rng = case_rng(seed, i)
        x, y = random_dyadic_fraction(rng, d), random_dyadic_fraction(rng, d)
        z = au.zeta_morphism_eval
        r.record(i, z(x * y) == z(x) + z(y), lambda: f"multiplicative: x={x}; y={y}")
        v = FractionElement.of_v(d, random_v(rng, 6))
        r.record(i, z(v * x * v.inverse()) == z(x), lambda: f"V-invariance: v={v.v}; x={x}")
        r.record(i, au.nonspatial_aut_inverse(au.nonspatial_aut(x)) == x, lambda: f"inverse: x={x}")
        r.record(i, au.nonspatial_aut(x * y) == au.nonspatial_aut(x) * au.nonspatial_aut(y), lambda: f"hom: x={x}; y={y}")
    return r


SUITES = {
    "group-axioms": (suite_group_axioms, "z3inv"),
    "action-laws": (suite_action_laws, "z3inv"),
    "cocycle": (suite_cocycle, "z3inv"),
    "centralizer": (suite_centralizer, "z4inv"),
    "center": (suite_center, "z4inv"),
    "theorem33": (suite_theorem33, "s3"),
    "gamma-phi": (suite_gamma_phi, None),
    "spatial-support": (suite_spatial_support, "s3_inner"),
    "wreath-containment": (suite_wreath_containment, "z3inv0"),
    "cocf": (suite_cocf, "z3inv"),
    "zeta-example": (suite_zeta_example, None),
}


def run_suite(name: str, t: Triple | None, seed: int = 0, iters: int = 100) -> SuiteReport:
    fn, _ = SUITES[name]
    start = time.perf_counter()
    report = fn(t, seed, iters)
    report.elapsed = time.perf_counter() - start
    return report


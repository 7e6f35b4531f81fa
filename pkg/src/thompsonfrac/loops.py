"""The loop group ``LΓ`` of locally constant maps and the Jones action of V."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cantor import CPoint, ParseError, SdiUnion, format_word, is_sdp, parse_word, split_to_depth
from .groups import DyadicPair, GroupError, Triple
from .thompson import VElement


def _merge_equal_siblings(cells) -> tuple:
    stack: list = []
    for w, g in cells:
        while stack and w and w[-1] == "1" and stack[-1][0] == w[:-1] + "0" and stack[-1][1] == g:
            stack.pop()
            w = w[:-1]
        stack.append((w, g))
    return tuple(stack)


@dataclass(frozen=True, eq=False)
class LoopElement:
    """Value ``g`` on each cell ``w``; cells sorted and canonical."""

    triple: Triple
    cells: tuple

    @classmethod
    def from_cells(cls, triple: Triple, cells, check: bool = True) -> "LoopElement":
        cells = sorted((w, g) for w, g in cells)
        if check and not is_sdp([w for w, _ in cells]):
            raise ParseError("loop cells do not form a standard dyadic partition")
        return cls(triple, _merge_equal_siblings(cells))

    @classmethod
    def constant(cls, triple: Triple, g) -> "LoopElement":
        return cls(triple, (("", g),))

    @classmethod
    def identity(cls, triple: Triple) -> "LoopElement":
        return cls.constant(triple, triple.group.e)

    @classmethod
    def on_cell(cls, triple: Triple, w: str, g) -> "LoopElement":
        """``g`` on the sdi ``w`` and the identity elsewhere."""
        e = triple.group.e
        cells = [(w, g)] + [(w[:i] + ("1" if w[i] == "0" else "0"), e) for i in range(len(w))]
        return cls.from_cells(triple, cells, check=False)

    @classmethod
    def on_union(cls, triple: Triple, u: SdiUnion, g) -> "LoopElement":
        e = triple.group.e
        cells = [(c, g) for c in u.cells] + [(c, e) for c in u.complement().cells]
        return cls.from_cells(triple, cells, check=False)

    @classmethod
    def parse(cls, triple: Triple, text: str) -> "LoopElement":
        cells = []
        for part in text.split(";"):
            part = part.strip()
            if not part:
                continue
            if ":" not in part:
                raise ParseError(f"expected word:element, got {part!r}")
            w, g = part.split(":", 1)
            cells.append((parse_word(w), parse_element(triple, g)))
        if not cells:
            raise ParseError("empty loop element")
        return cls.from_cells(triple, cells)

    def __str__(self):
        name = self.triple.group.name
        return "; ".join(f"{format_word(w)}:{name(g)}" for w, g in self.cells)

    def __repr__(self):
        return f"LoopElement({str(self)!r})"

    def __eq__(self, other):
        return isinstance(other, LoopElement) and self.cells == other.cells

    def __hash__(self):
        return hash(self.cells)

    def __mul__(self, other: "LoopElement") -> "LoopElement":
        return loop_mul(self, other)

    def inverse(self) -> "LoopElement":
        self.triple.require_autos()
        inv = self.triple.group.inv
        return LoopElement(self.triple, tuple((w, inv(g)) for w, g in self.cells))

    def is_identity(self) -> bool:
        return self.cells == (("", self.triple.group.e),)

    def __call__(self, x: CPoint):
        for w, g in self.cells:
            if x.starts_with(w):
                return g
        raise AssertionError("cells do not cover the point")

    def value_on(self, w: str):
        """Value on the sdi ``w`` if the element is constant there."""
        vals = {g for c, g in self.cells if c.startswith(w) or w.startswith(c)}
        if len(vals) != 1:
            raise ValueError(f"not constant on {format_word(w)}")
        return vals.pop()

    def refined(self, cells) -> list:
        """Cells of the common refinement with the partition ``cells``."""
        return _join(self.cells, [(c, None) for c in cells], lambda g, _: g)

    def at_depth(self, depth: int) -> list:
        return [(w, self.value_on(w)) for w in split_to_depth([w for w, _ in self.cells], depth)]

    def support(self) -> SdiUnion:
        return support(self)

    def depth(self) -> int:
        return max(len(w) for w, _ in self.cells)


def parse_element(triple: Triple, text: str):
    text = text.strip()
    g = triple.group
    if isinstance(g, DyadicPair):
        body = text.strip("()")
        parts = body.split(",")
        if len(parts) != 2:
            raise ParseError(f"dyadic element must be (t,r): {text!r}")
        return g.elem(Fraction(parts[0].strip()), Fraction(parts[1].strip()))
    if g.names and text in g.names:
        return g.names.index(text)
    try:
        k = int(text)
    except ValueError as exc:
        raise ParseError(f"bad group element {text!r}") from exc
    if not 0 <= k < g.order:
        raise ParseError(f"group element {k} out of range")
    return k


def _join(xs, ys, op) -> list:
    """Pointwise combination of two sorted cell lists over their common refinement."""
    out = []
    i = j = 0
    n, m = len(xs), len(ys)
    while i < n and j < m:
        a, ga = xs[i]
        b, gb = ys[j]
        if a == b:
            out.append((a, op(ga, gb)))
            i += 1
            j += 1
        elif b.startswith(a):
            out.append((b, op(ga, gb)))
            j += 1
            if j == m or not ys[j][0].startswith(a):
                i += 1
        elif a.startswith(b):
            out.append((a, op(ga, gb)))
            i += 1
            if i == n or not xs[i][0].startswith(b):
                j += 1
        else:
            raise ValueError("cell lists are not partitions of the same space")
    return out


def loop_mul(a: LoopElement, b: LoopElement) -> LoopElement:
    if a.triple is not b.triple:
        raise GroupError("loop elements belong to different triples")
    a.triple.require_autos()
    return LoopElement(a.triple, _merge_equal_siblings(_join(a.cells, b.cells, a.triple.group.mul)))


def support(a: LoopElement) -> SdiUnion:
    e = a.triple.group.e
    return SdiUnion.of(w for w, g in a.cells if g != e)


def tau(t: Triple, v: VElement, x: CPoint):
    """``τ_{v,x} = α_{v(I)}⁻¹ ∘ α_I`` for the cell ``I`` of ``v`` containing ``x``."""
    t.require_autos()
    d, c = v.pair_at(x)
    return t.tau_cell(d, c)


def tau_adapted(t: Triple, v: VElement, w: str):
    """τ computed from an arbitrary adapted sdi ``w``."""
    t.require_autos()
    return t.alpha_inv(v.image_word(w)) * t.alpha(w)


def jones_act(t: Triple, v: VElement, a: LoopElement) -> LoopElement:
    """``π_v(a)(v x) = τ_{v,x}(a(x))``."""
    t.require_autos()
    out = []
    for d, c in v.pairs:
        tau_dc = t.tau_cell(d, c)
        for w, g in a.cells:
            if w.startswith(d):
                out.append((c + w[len(d):], tau_dc(g)))
            elif d.startswith(w):
                out.append((c, tau_dc(g)))
    out.sort()
    return LoopElement(a.triple, _merge_equal_siblings(out))


def loop_mul_many(items) -> LoopElement:
    it = iter(items)
    acc = next(it)
    for x in it:
        acc = acc * x
    return acc


def random_loop(rng, t: Triple, max_depth: int = 3, max_cells: int = 8, values=None) -> LoopElement:
    from .cantor import random_sdp

    cells = random_sdp(rng, max_depth, max_cells)
    if values is None:
        values = list(t.group.elements())
    return LoopElement.from_cells(t, [(w, rng.choice(values)) for w in cells], check=False)

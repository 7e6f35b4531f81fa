"""Thompson's group V as reduced prefix-replacement tables, and the bit-flip.

A ``VElement`` stores pairs ``(dom, cod)`` meaning ``v(dom·x) = cod·x``.  The
table is kept reduced and sorted by domain, so equality is structural.
Products follow function composition: ``v * w`` applies ``w`` first.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernel
from .cantor import (
    CPoint,
    ParseError,
    SdiUnion,
    check_word,
    flip_word,
    format_word,
    is_sdp,
    parse_word,
    path_complement,
    random_sdp_with,
    sdiunion_complement,
    sdp_diagnostic,
    split_to_depth,
)


@dataclass(frozen=True)
class VElement:
    pairs: tuple

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(self.pairs))

    @classmethod
    def from_pairs(cls, pairs, check: bool = True) -> "VElement":
        pairs = [(check_word(d), check_word(c)) for d, c in pairs]
        if check:
            for side, words in (("domain", [d for d, _ in pairs]), ("codomain", [c for _, c in pairs])):
                if not is_sdp(words):
                    raise ParseError(f"{side} is not a standard dyadic partition: {sdp_diagnostic(words)}")
        return cls(kernel.reduce_pairs(pairs))

    @classmethod
    def from_lists(cls, dom, cod) -> "VElement":
        if len(dom) != len(cod):
            raise ParseError("domain and codomain sizes differ")
        return cls.from_pairs(zip(dom, cod))

    @classmethod
    def identity(cls) -> "VElement":
        return cls((("", ""),))

    @classmethod
    def parse(cls, text: str) -> "VElement":
        text = text.strip()
        if text in ("id", "1", "e"):
            return cls.identity()
        pairs = []
        for tok in text.replace(",", " ").split():
            if "->" not in tok:
                raise ParseError(f"expected dom->cod, got {tok!r}")
            d, c = tok.split("->", 1)
            pairs.append((parse_word(d), parse_word(c)))
        if not pairs:
            raise ParseError("empty table")
        return cls.from_pairs(pairs)

    def __str__(self):
        return " ".join(f"{format_word(d)}->{format_word(c)}" for d, c in self.pairs)

    def __repr__(self):
        return f"VElement({str(self)!r})"

    def __mul__(self, other: "VElement") -> "VElement":
        return VElement(kernel.compose_reduce(self.pairs, other.pairs))

    def inverse(self) -> "VElement":
        return VElement(kernel.reduce_pairs([(c, d) for d, c in self.pairs]))

    def __pow__(self, n: int) -> "VElement":
        base = self if n >= 0 else self.inverse()
        out = VElement.identity()
        for _ in range(abs(n)):
            out = base * out
        return out

    def is_identity(self) -> bool:
        return self.pairs == (("", ""),)

    @property
    def domain(self) -> list:
        return [d for d, _ in self.pairs]

    @property
    def codomain(self) -> list:
        return [c for _, c in self.pairs]

    def pair_at(self, x: CPoint) -> tuple:
        for d, c in self.pairs:
            if x.starts_with(d):
                return d, c
        raise AssertionError("domain is not a partition")

    def pair_containing(self, w: str) -> tuple | None:
        """The pair whose domain cell contains the sdi ``w``, if any."""
        for d, c in self.pairs:
            if w.startswith(d):
                return d, c
        return None

    def apply(self, x: CPoint) -> CPoint:
        d, c = self.pair_at(x)
        return x.drop(len(d)).prepend(c)

    def image_word(self, w: str) -> str:
        """Prefix of ``v(I_w)``; requires ``v`` adapted to ``w``."""
        p = self.pair_containing(w)
        if p is None:
            raise ValueError(f"element not adapted to {format_word(w)}")
        d, c = p
        return c + w[len(d):]

    def is_adapted(self, w: str) -> bool:
        return self.pair_containing(w) is not None

    def slope(self, x: CPoint) -> int:
        d, c = self.pair_at(x)
        return len(d) - len(c)

    def refined(self, cells) -> list:
        """Table with domain refined so each domain cell lies in one of ``cells``.

        ``cells`` must be a partition of the space.
        """
        out = []
        for d, c in self.pairs:
            for u in cells:
                if u.startswith(d):
                    out.append((u, c + u[len(d):]))
                elif d.startswith(u):
                    out.append((d, c))
                    break
        return out

    def refined_codomain(self, cells) -> list:
        """Table with codomain refined so each codomain cell lies in one of ``cells``."""
        return [(d, c) for c, d in self.inverse().refined(cells)]

    def fixes_cell(self, w: str) -> bool:
        """True iff ``v`` is the identity on the sdi ``w``."""
        for d, c in self.pairs:
            if w.startswith(d):
                return d == c
            if d.startswith(w) and d != c:
                return False
        return True

    def fixes(self, u: SdiUnion) -> bool:
        return all(self.fixes_cell(c) for c in u.cells)

    def support(self) -> SdiUnion:
        """Closure of the set of moved points, as a finite union of sdi."""
        return SdiUnion.of(d for d, c in self.pairs if d != c)

    def mirrored(self) -> "VElement":
        """Conjugate by the bit-flip."""
        return VElement(kernel.reduce_pairs([(flip_word(d), flip_word(c)) for d, c in self.pairs]))


def v_compose(v: VElement, w: VElement) -> VElement:
    return v * w


def v_apply(v: VElement, x: CPoint) -> CPoint:
    return v.apply(x)


def v_slope(v: VElement, x: CPoint) -> int:
    return v.slope(x)


def codomain_order(v: VElement) -> list:
    return [c for _, c in v.pairs]


def is_in_F(v: VElement) -> bool:
    cods = codomain_order(v)
    return cods == sorted(cods)


def is_in_T(v: VElement) -> bool:
    cods = codomain_order(v)
    s = sorted(cods)
    k = cods.index(s[0])
    return cods[k:] + cods[:k] == s


A = VElement.from_pairs([("00", "0"), ("01", "10"), ("1", "11")])
B = VElement.from_pairs([("0", "0"), ("100", "10"), ("101", "110"), ("11", "111")])
SIGMA = VElement.from_pairs([("0", "1"), ("1", "0")])
IDENTITY = VElement.identity()


@dataclass(frozen=True)
class NormalizerElement:
    """``flip^a ∘ v`` with ``a`` in {0, 1}."""

    flip: bool
    v: VElement

    @classmethod
    def of_v(cls, v: VElement) -> "NormalizerElement":
        return cls(False, v)

    @classmethod
    def from_parts(cls, flip_pre: bool, v: VElement, flip_post: bool) -> "NormalizerElement":
        # flip^a v flip^b = flip^(a+b) (flip^b v flip^b)
        if flip_post:
            v = v.mirrored()
        return cls(bool(flip_pre) != bool(flip_post), v)

    @classmethod
    def parse(cls, text: str) -> "NormalizerElement":
        text = text.strip()
        flip = text.startswith("~")
        rest = text[1:].strip() if flip else text
        v = VElement.parse(rest) if rest else VElement.identity()
        return cls(flip, v)

    def __str__(self):
        return ("~" if self.flip else "") + str(self.v)

    def __mul__(self, other: "NormalizerElement") -> "NormalizerElement":
        v = self.v.mirrored() if other.flip else self.v
        return NormalizerElement(self.flip != other.flip, v * other.v)

    def inverse(self) -> "NormalizerElement":
        vi = self.v.inverse()
        return NormalizerElement(self.flip, vi.mirrored() if self.flip else vi)

    def apply(self, x: CPoint) -> CPoint:
        y = self.v.apply(x)
        return y.flipped() if self.flip else y

    def image_word(self, w: str) -> str:
        c = self.v.image_word(w)
        return flip_word(c) if self.flip else c

    def conjugate(self, u: VElement) -> VElement:
        """``φ u φ⁻¹``."""
        c = self.v * u * self.v.inverse()
        return c.mirrored() if self.flip else c

    def is_identity(self) -> bool:
        return not self.flip and self.v.is_identity()

    def slope(self, x: CPoint) -> int:
        return self.v.slope(x)


FLIP = NormalizerElement(True, IDENTITY)


def normalizer_conjugate(phi: NormalizerElement, v: VElement) -> VElement:
    return phi.conjugate(v)


def make_contraction(j: str, target: str) -> VElement:
    """Element adapted to ``j`` with ``v(I_j) = I_target``.

    It is the identity outside the parent cell of the shorter word.
    """
    check_word(j)
    check_word(target)
    if j == target or not (target.startswith(j) or j.startswith(target)):
        raise ValueError("one word must be a proper prefix of the other")
    if not j or not target:
        raise ValueError("the full space cannot be contracted or expanded")
    if target.startswith(j):
        return _expansion(j, target)
    return _expansion(target, j).inverse()


def _expansion(s: str, long: str) -> VElement:
    t = long[len(s):]
    k = len(t)
    parent = s[:-1]
    b = parent + ("1" if s[-1] == "0" else "0")
    cod_rest = sorted([s + t[:i] + ("1" if t[i] == "0" else "0") for i in range(k)] + [b])
    dom_rest = [b + "1" * i + "0" for i in range(k)] + [b + "1" * k]
    dom_rest.sort()
    pairs = [(s, long)] + list(zip(dom_rest, cod_rest))
    pairs += [(c, c) for c in path_complement(parent)]
    return VElement.from_pairs(pairs)


def transport(p: str, q: str) -> VElement:
    """An element with ``v(p·y) = q·y`` for all ``y``."""
    if (p == "") != (q == ""):
        raise ValueError("the full space is only mapped onto itself")
    if p == "":
        return IDENTITY
    cp = path_complement(p)
    cq = path_complement(q)
    while len(cp) < len(cq):
        cp = _split_last(cp)
    while len(cq) < len(cp):
        cq = _split_last(cq)
    return VElement.from_pairs([(p, q)] + list(zip(sorted(cp), sorted(cq))))


def _split_last(cells: list) -> list:
    cells = sorted(cells)
    last = cells.pop()
    return cells + [last + "0", last + "1"]


def fix_generators(u: SdiUnion, depth: int) -> list:
    """Elements fixing ``u`` pointwise: transpositions of complement cells plus contractions."""
    comp = sdiunion_complement(u)
    if not comp:
        raise ValueError("union covers the whole space")
    cells = split_to_depth(comp.cells, depth)
    fixed = [(c, c) for c in u.cells]
    out = []
    for i in range(len(cells)):
        for k in range(i + 1, len(cells)):
            table = fixed + [(c, c) for c in cells]
            table[len(fixed) + i] = (cells[i], cells[k])
            table[len(fixed) + k] = (cells[k], cells[i])
            out.append(VElement.from_pairs(table))
    for idx, c in enumerate(cells):
        table = fixed + [(w, w) for w in cells if w != c]
        table += [(c + "00", c + "0"), (c + "01", c + "10"), (c + "1", c + "11")]
        out.append(VElement.from_pairs(table))
    return out


def random_v(rng, max_leaves: int = 16, min_leaves: int = 1, max_depth: int | None = None) -> VElement:
    """Random tree pair with a uniform leaf permutation, reduced."""
    n = rng.randint(min_leaves, max_leaves)
    dom = random_sdp_with(rng, n, max_depth)
    cod = random_sdp_with(rng, n, max_depth)
    rng.shuffle(cod)
    return VElement.from_lists(dom, cod)


def random_f(rng, max_leaves: int = 16, max_depth: int | None = None) -> VElement:
    n = rng.randint(1, max_leaves)
    return VElement.from_lists(random_sdp_with(rng, n, max_depth), random_sdp_with(rng, n, max_depth))


def random_t(rng, max_leaves: int = 16, max_depth: int | None = None) -> VElement:
    n = rng.randint(1, max_leaves)
    cod = random_sdp_with(rng, n, max_depth)
    k = rng.randrange(n)
    return VElement.from_lists(random_sdp_with(rng, n, max_depth), cod[k:] + cod[:k])


def random_normalizer(rng, max_leaves: int = 16) -> NormalizerElement:
    return NormalizerElement(rng.random() < 0.5, random_v(rng, max_leaves))


def random_fixing(rng, x: CPoint, max_leaves: int = 8) -> VElement:
    """Random element of the stabilizer of ``x``.

    Composes a random element with a transport that sends its image cell of
    ``x`` back to a cell through ``x`` with the same tail.
    """
    v = random_v(rng, max_leaves)
    y = v.apply(x)
    if y == x:
        return v
    # v sends I_d (containing x) to I_c; pick a prefix p of y past c long
    # enough that y = p·z and x = q·z share the tail z
    d, c = v.pair_at(x)
    k = len(d) + len(x.pre) + len(x.per)
    q = x.expand(k)
    p = c + q[len(d):]
    return transport(p, q) * v


def fixing_contraction(x: CPoint, k: int = 1) -> VElement:
    """Element fixing ``x`` that expands a cell through ``x`` by ``k`` periods."""
    j = x.pre + x.per
    return make_contraction(j, j + x.per * k)

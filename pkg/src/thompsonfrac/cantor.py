"""Binary words, standard dyadic cells and eventually periodic points of the Cantor space.

A word is a ``str`` over ``"01"``.  A standard dyadic interval (sdi) is
identified with its prefix word; the empty word is the whole space.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

EMPTY_SYMBOLS = ("ε", "e", "")


class ParseError(ValueError):
    """Malformed text input."""


def check_word(w: str) -> str:
    if not isinstance(w, str) or w.strip("01"):
        raise ParseError(f"not a binary word: {w!r}")
    return w


def parse_word(s: str) -> str:
    s = s.strip()
    if s in EMPTY_SYMBOLS:
        return ""
    return check_word(s)


def format_word(w: str) -> str:
    return w if w else "ε"


def flip_word(w: str) -> str:
    return w.translate(_FLIP)


_FLIP = str.maketrans("01", "10")


def digit_sum(w: str) -> int:
    return w.count("1")


def comparable(a: str, b: str) -> bool:
    return a.startswith(b) or b.startswith(a)


def is_prefix_free(words: Iterable[str]) -> bool:
    ws = sorted(words)
    return all(not ws[i + 1].startswith(ws[i]) for i in range(len(ws) - 1))


def measure(words: Iterable[str]) -> Fraction:
    """Exact total measure sum 2^-|w|."""
    return sum((Fraction(1, 2 ** len(w)) for w in words), Fraction(0))


def covers_exactly(words: Iterable[str]) -> bool:
    ws = list(words)
    if not ws:
        return False
    depth = max(len(w) for w in ws)
    return sum(1 << (depth - len(w)) for w in ws) == 1 << depth


def is_sdp(words: Iterable[str]) -> bool:
    """True iff the words are the prefixes of a partition of the Cantor space."""
    ws = list(words)
    if len(set(ws)) != len(ws):
        return False
    return is_prefix_free(ws) and covers_exactly(ws)


def sdp_diagnostic(words: Iterable[str]) -> str:
    """Why a word list fails to be a partition: repeats, overlaps, or gaps."""
    ws = sorted(words)
    if not ws:
        return "no cells"
    problems = []
    dup = sorted({w for w in ws if ws.count(w) > 1})
    if dup:
        problems.append("repeated " + ", ".join(format_word(w) for w in dup))
    uniq = sorted(set(ws))
    over = [(a, b) for i, a in enumerate(uniq) for b in uniq[i + 1:] if b.startswith(a)]
    if over:
        problems.append("overlapping " + ", ".join(f"{format_word(a)}/{format_word(b)}" for a, b in over))
    else:
        gaps = SdiUnion.of(uniq).complement().cells
        if gaps:
            problems.append("uncovered " + ", ".join(format_word(w) for w in gaps))
    return "; ".join(problems) or "ok"


def path_complement(w: str) -> list[str]:
    """Cells partitioning the complement of the sdi ``w``, sorted."""
    return sorted(w[:i] + ("1" if w[i] == "0" else "0") for i in range(len(w)))


def complete_to_sdp(w: str) -> list[str]:
    return sorted([w] + path_complement(w))


def full_depth(n: int, prefix: str = "") -> list[str]:
    """All cells of depth ``n`` below ``prefix``, in lexicographic order."""
    if n == 0:
        return [prefix]
    return [prefix + format(i, f"0{n}b") for i in range(2 ** n)]


def split_to_depth(cells: Iterable[str], depth: int) -> list[str]:
    out = []
    for c in cells:
        out.extend(full_depth(depth - len(c), c) if len(c) < depth else [c])
    return sorted(out)


@dataclass(frozen=True)
class Sdp:
    """A standard dyadic partition, cells in lexicographic order."""

    cells: tuple

    def __post_init__(self):
        cells = tuple(sorted(check_word(c) for c in self.cells))
        if not is_sdp(cells):
            raise ParseError(f"not a standard dyadic partition: {cells}")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def parse(cls, text: str) -> "Sdp":
        parts = [p for p in text.replace(",", " ").split() if p]
        return cls(tuple(parse_word(p) for p in parts))

    def __str__(self):
        return ",".join(format_word(c) for c in self.cells)

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)


def sdp_common_refinement(p: Sdp, q: Sdp) -> Sdp:
    """Coarsest partition refining both ``p`` and ``q``."""
    cells = set()
    for a in p.cells:
        for b in q.cells:
            if b.startswith(a):
                cells.add(b)
            elif a.startswith(b):
                cells.add(a)
    return Sdp(tuple(cells))


def _merge_siblings(cells: Iterable[str]) -> tuple:
    stack: list[str] = []
    for c in sorted(cells):
        while stack and c and c[-1] == "1" and stack[-1] == c[:-1] + "0":
            stack.pop()
            c = c[:-1]
        stack.append(c)
    return tuple(stack)


@dataclass(frozen=True)
class SdiUnion:
    """A finite union of sdi in canonical form (prefix-free, siblings merged)."""

    cells: tuple = ()

    @classmethod
    def of(cls, cells: Iterable[str]) -> "SdiUnion":
        ws = sorted(set(check_word(c) for c in cells))
        kept: list[str] = []
        for w in ws:
            # sorted order puts a covering prefix right before its extensions
            if kept and w.startswith(kept[-1]):
                continue
            kept.append(w)
        return cls(_merge_siblings(kept))

    @classmethod
    def parse(cls, text: str) -> "SdiUnion":
        text = text.strip()
        if text in ("∅", "{}", "empty"):
            return cls()
        return cls.of(parse_word(p) for p in text.replace(",", " ").split())

    def __str__(self):
        return ",".join(format_word(c) for c in self.cells) if self.cells else "∅"

    def __bool__(self):
        return bool(self.cells)

    def measure(self) -> Fraction:
        return measure(self.cells)

    def is_full(self) -> bool:
        return self.cells == ("",)

    def contains_cell(self, w: str) -> bool:
        """True iff the sdi ``w`` lies inside the union."""
        return any(w.startswith(c) for c in self.cells)

    def meets_cell(self, w: str) -> bool:
        return any(comparable(w, c) for c in self.cells)

    def contains_point(self, x: "CPoint") -> bool:
        return any(cpoint_in_sdi(x, c) for c in self.cells)

    def union(self, other: "SdiUnion") -> "SdiUnion":
        return SdiUnion.of(self.cells + other.cells)

    def complement(self) -> "SdiUnion":
        return sdiunion_complement(self)

    def refined(self, depth: int) -> list[str]:
        return split_to_depth(self.cells, depth)


def sdiunion_complement(u: SdiUnion) -> SdiUnion:
    out: list[str] = []

    def walk(prefix: str) -> None:
        if any(prefix.startswith(c) for c in u.cells):
            return
        if not any(c.startswith(prefix) for c in u.cells):
            out.append(prefix)
            return
        walk(prefix + "0")
        walk(prefix + "1")

    walk("")
    return SdiUnion.of(out)


def primitive_root(w: str) -> str:
    n = len(w)
    for k in range(1, n + 1):
        if n % k == 0 and w[:k] * (n // k) == w:
            return w[:k]
    return w


def least_rotation(w: str) -> str:
    return min(w[i:] + w[:i] for i in range(len(w)))


def rotate(w: str, k: int) -> str:
    """Drop the first ``k`` letters of ``w^∞`` and return the next period."""
    k %= len(w)
    return w[k:] + w[:k]


@dataclass(frozen=True)
class CPoint:
    """The eventually periodic sequence ``pre · per^∞`` in canonical form."""

    pre: str
    per: str

    def __post_init__(self):
        pre, per = cpoint_normal_form(self.pre, self.per)
        object.__setattr__(self, "pre", pre)
        object.__setattr__(self, "per", per)

    @classmethod
    def parse(cls, text: str) -> "CPoint":
        text = text.strip()
        if not (text.endswith(")") and "(" in text):
            raise ParseError(f"point must look like 'pre.(period)': {text!r}")
        head, per = text[:-1].split("(", 1)
        head = head.rstrip(".")
        return cls(parse_word(head) if head else "", check_word(per))

    def __str__(self):
        return f"{self.pre}.({self.per})" if self.pre else f"({self.per})"

    def expand(self, n: int) -> str:
        s = self.pre
        if len(s) < n:
            s += self.per * ((n - len(s)) // len(self.per) + 1)
        return s[:n]

    def starts_with(self, w: str) -> bool:
        return self.expand(len(w)) == w

    def drop(self, k: int) -> "CPoint":
        """The point with its first ``k`` letters removed."""
        if k <= len(self.pre):
            return CPoint(self.pre[k:], self.per)
        return CPoint("", rotate(self.per, k - len(self.pre)))

    def prepend(self, w: str) -> "CPoint":
        return CPoint(w + self.pre, self.per)

    def flipped(self) -> "CPoint":
        return CPoint(flip_word(self.pre), flip_word(self.per))

    def tail_word(self) -> str:
        return tail_class_word(self)


def cpoint_normal_form(pre: str, per: str) -> tuple:
    check_word(pre)
    check_word(per)
    if not per:
        raise ValueError("period must be nonempty")
    per = primitive_root(per)
    while pre and pre[-1] == per[-1]:
        pre = pre[:-1]
        per = per[-1] + per[:-1]
    return pre, per


def cpoint_canonicalize(pre: str, per: str) -> CPoint:
    return CPoint(pre, per)


def cpoint_in_sdi(x: CPoint, w: str) -> bool:
    return x.starts_with(w)


def tail_class_word(x: CPoint) -> str:
    """Canonical prime word of the tail class (least rotation of the period)."""
    return least_rotation(x.per)


ZERO = CPoint("", "0")
ONE = CPoint("", "1")


def random_word(rng, max_len: int, min_len: int = 0) -> str:
    n = rng.randint(min_len, max_len)
    return "".join(rng.choice("01") for _ in range(n))


def random_cpoint(rng, max_pre: int = 4, max_per: int = 4) -> CPoint:
    return CPoint(random_word(rng, max_pre), random_word(rng, max_per, 1))


def random_dyadic_point(rng, max_pre: int = 5) -> CPoint:
    """A random point of the tail class of ``0``."""
    return CPoint(random_word(rng, max_pre), "0")


def random_sdp(rng, max_depth: int, max_cells: int = 16, split_prob: float = 0.6) -> list[str]:
    """Random partition by recursive splitting, depth and cell count bounded."""
    cells = [""]
    changed = True
    while changed and len(cells) < max_cells:
        changed = False
        i = rng.randrange(len(cells))
        c = cells[i]
        if len(c) < max_depth and rng.random() < split_prob:
            cells[i:i + 1] = [c + "0", c + "1"]
            changed = True
        elif any(len(w) < max_depth for w in cells) and rng.random() < split_prob:
            changed = True
    return sorted(cells)


def random_sdp_with(rng, n_cells: int, max_depth: int | None = None) -> list[str]:
    """Random partition with exactly ``n_cells`` cells."""
    cells = [""]
    while len(cells) < n_cells:
        choices = [i for i, c in enumerate(cells) if max_depth is None or len(c) < max_depth]
        if not choices:
            raise ValueError("cannot reach cell count within depth")
        i = rng.choice(choices)
        c = cells[i]
        cells[i:i + 1] = [c + "0", c + "1"]
    return sorted(cells)

"""Tree-pair diagrams for F(p+1): construction, reduction, products and words.

A tree is held in its text form, ``"."`` for a leaf and ``"(" + children + ")"``
for a caret with exactly ``p + 1`` children.  The same text is the canonical
serialisation, so a reduced diagram *is* its own hash key.  Nested tuples
(``()`` for a leaf) are used wherever the structure has to be walked.

Products follow functional notation: ``multiply(x, y)`` is ``x o y``, i.e.
apply ``y`` first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from thompson_metric import _backend
from thompson_metric._kernels_py import LEAF, parse as _parse, unparse as _unparse


class ArityMismatch(ValueError):
    pass


class Letter(NamedTuple):
    """Generator ``x_index`` raised to ``exponent`` (+1 or -1)."""

    index: int
    exponent: int = 1

    def inv(self) -> "Letter":
        return Letter(self.index, -self.exponent)

    def __str__(self):
        return f"{self.index}" if self.exponent == 1 else f"{self.index}^-1"


class Interval(NamedTuple):
    lo: Fraction
    hi: Fraction


def check_p(p: int) -> int:
    if not isinstance(p, int) or p < 1:
        raise ValueError(f"p must be a positive integer, got {p!r}")
    return p


# -- trees ------------------------------------------------------------------

def parse_tree(text: str, p: int) -> tuple:
    """Parse and validate a tree in text form."""
    tree = _parse(text)
    stack = [tree]
    while stack:
        t = stack.pop()
        if t:
            if len(t) != p + 1:
                raise ArityMismatch(f"caret with {len(t)} children in a {p + 1}-ary tree: {text!r}")
            stack.extend(t)
    return tree


def format_tree(tree: tuple) -> str:
    return _unparse(tree)


def caret(p: int, children: dict[int, tuple] | None = None) -> tuple:
    """One caret; ``children`` maps child positions to subtrees, the rest are leaves."""
    children = children or {}
    return tuple(children.get(c, LEAF) for c in range(p + 1))


def caret_count(text: str) -> int:
    return text.count("(")


def leaf_count(text: str) -> int:
    return text.count(".")


def leaf_indices(text: str) -> list[int]:
    """Leaf numbers, left to right; there are ``p * carets + 1`` of them."""
    return list(range(leaf_count(text)))


def leaf_intervals(text: str, p: int) -> list[Interval]:
    """Subintervals of [0, 1] represented by the leaves, in leaf order."""
    out: list[Interval] = []
    n = p + 1

    def walk(t, lo, hi):
        if not t:
            out.append(Interval(lo, hi))
            return
        step = (hi - lo) / n
        for j, c in enumerate(t):
            walk(c, lo + j * step, lo + (j + 1) * step)

    walk(_parse(text), Fraction(0), Fraction(1))
    return out


def contains(big: str, small: str) -> bool:
    """True when every caret of ``small`` is present in ``big`` (same root)."""

    def walk(b, s):
        if not s:
            return True
        if not b:
            return False
        return all(walk(cb, cs) for cb, cs in zip(b, s))

    return walk(_parse(big), _parse(small))


# -- diagrams ---------------------------------------------------------------

@dataclass(frozen=True)
class TreePairDiagram:
    """Element of F(p+1) as (negative/domain tree, positive/range tree)."""

    p: int
    neg: str
    pos: str

    def __post_init__(self):
        if leaf_count(self.neg) != leaf_count(self.pos):
            raise ValueError(f"leaf counts differ: {self.neg!r} vs {self.pos!r}")

    @property
    def neg_tree(self) -> tuple:
        return _parse(self.neg)

    @property
    def pos_tree(self) -> tuple:
        return _parse(self.pos)

    @property
    def carets(self) -> int:
        return caret_count(self.neg)

    def is_identity(self) -> bool:
        return self.neg == self.pos == "."

    def is_reduced(self) -> bool:
        return reduce(self) == self

    def __mul__(self, other: "TreePairDiagram") -> "TreePairDiagram":
        return multiply(self, other)

    def __invert__(self) -> "TreePairDiagram":
        return inverse(self)

    def __str__(self):
        return f"p={self.p};neg={self.neg};pos={self.pos}"


def from_trees(p: int, neg: tuple, pos: tuple) -> TreePairDiagram:
    return TreePairDiagram(p, _unparse(neg), _unparse(pos))


def identity(p: int) -> TreePairDiagram:
    return TreePairDiagram(check_p(p), ".", ".")


def reduce(x: TreePairDiagram) -> TreePairDiagram:
    """Unique minimal representative."""
    neg, pos = _backend.reduce(x.p, x.neg, x.pos)
    if neg is x.neg and pos is x.pos:
        return x
    return TreePairDiagram(x.p, neg, pos)


def product_unreduced(x: TreePairDiagram, y: TreePairDiagram) -> tuple[TreePairDiagram, bool]:
    """The refined but unreduced diagram of ``x o y``, and whether ``x`` had to grow.

    ``grew`` is False exactly when the product needed no carets added to ``x``.
    """
    if x.p != y.p:
        raise ArityMismatch(f"cannot multiply F({x.p + 1}) by F({y.p + 1})")
    neg, pos, grew = _backend.product(x.p, x.neg, x.pos, y.neg, y.pos)
    return TreePairDiagram(x.p, neg, pos), grew


def multiply(x: TreePairDiagram, y: TreePairDiagram) -> TreePairDiagram:
    """Reduced diagram of ``x o y``."""
    prod, _ = product_unreduced(x, y)
    return reduce(prod)


def inverse(x: TreePairDiagram) -> TreePairDiagram:
    return TreePairDiagram(x.p, x.pos, x.neg)


def canonical_key(x: TreePairDiagram) -> str:
    return str(reduce(x))


_KEY_RE = re.compile(r"^p=(\d+);neg=([().]+);pos=([().]+)$")


def parse_diagram(text: str) -> TreePairDiagram:
    """Inverse of ``str(diagram)``; validates arity and leaf counts."""
    m = _KEY_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a diagram: {text!r}")
    p = check_p(int(m.group(1)))
    parse_tree(m.group(2), p)
    parse_tree(m.group(3), p)
    return TreePairDiagram(p, m.group(2), m.group(3))


# -- generators -------------------------------------------------------------

@lru_cache(maxsize=None)
def make_generator(p: int, i: int) -> TreePairDiagram:
    """Minimal diagram of the finite generator ``x_i``, ``0 <= i <= p``.

    The negative tree of ``x_i`` (``i < p``) carries the second caret on root
    child ``i`` and the positive tree carries it on the last child; ``x_p`` is
    ``x_0`` placed below the root's last child.  With functional composition
    these satisfy ``x_i x_j = x_(j+p) x_i`` for ``i < j``, and ``x_0`` maps
    ``[3/4, 1]`` onto ``[1/2, 1]`` when ``p = 1``.
    """
    check_p(p)
    if not 0 <= i <= p:
        raise ValueError(f"generator index {i} outside 0..{p}")
    top = caret(p)
    if i < p:
        neg = caret(p, {i: top})
        pos = caret(p, {p: top})
    else:
        neg = caret(p, {p: caret(p, {0: top})})
        pos = caret(p, {p: caret(p, {p: top})})
    return from_trees(p, neg, pos)


@lru_cache(maxsize=None)
def make_infinite_generator(p: int, n: int) -> TreePairDiagram:
    """``x_n`` of the infinite presentation, ``x_n = x_0 x_(n-p) x_0^-1`` for ``n > p``."""
    if n < 0:
        raise ValueError(f"generator index must be non-negative, got {n}")
    if n <= p:
        return make_generator(p, n)
    x0 = make_generator(p, 0)
    return multiply(multiply(x0, make_infinite_generator(p, n - p)), inverse(x0))


def letter_diagram(p: int, letter: Letter) -> TreePairDiagram:
    g = make_infinite_generator(p, letter.index)
    return g if letter.exponent == 1 else inverse(g)


def letters(p: int) -> list[Letter]:
    """The ``2(p+1)`` letters of X u X^-1 in the fixed BFS order."""
    out = []
    for i in range(p + 1):
        out.append(Letter(i, 1))
        out.append(Letter(i, -1))
    return out


# -- words ------------------------------------------------------------------

_TOKEN_RE = re.compile(r"^(\d+)(\^(-?1))?$")


def parse_word(text: str) -> tuple[Letter, ...]:
    """Parse ``"0 1 12 11^-1 0^-1"`` style words; commas are accepted as separators."""
    out = []
    for tok in text.replace(",", " ").split():
        m = _TOKEN_RE.match(tok)
        if not m:
            raise ValueError(f"bad word token {tok!r}")
        exp = int(m.group(3)) if m.group(3) else 1
        out.append(Letter(int(m.group(1)), exp))
    return tuple(out)


def format_word(word: Iterable[Letter]) -> str:
    return " ".join(str(l) for l in word)


def power(index: int, k: int) -> tuple[Letter, ...]:
    """``x_index ** k`` as a word."""
    return (Letter(index, 1 if k > 0 else -1),) * abs(k)


def word_inverse(word: Sequence[Letter]) -> tuple[Letter, ...]:
    return tuple(l.inv() for l in reversed(word))


def evaluate_word(p: int, word: Iterable[Letter] | str) -> TreePairDiagram:
    """Reduced diagram of the product of the letters, left to right."""
    if isinstance(word, str):
        word = parse_word(word)
    x = identity(p)
    for letter in word:
        x = multiply(x, letter_diagram(p, letter))
    return x


def commutator(a: Sequence[Letter], b: Sequence[Letter]) -> tuple[Letter, ...]:
    """``[a, b] = a b a^-1 b^-1``."""
    return tuple(a) + tuple(b) + word_inverse(a) + word_inverse(b)

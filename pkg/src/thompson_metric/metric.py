"""Fordham's word metric on F(p+1) with respect to {x_0, ..., x_p}.

The length of an element is the sum, over caret pairs of its minimal diagram,
of a weight read off the pair of refined caret types.  The table is data, not
branches, so it can be checked for symmetry and totality mechanically.
"""

from __future__ import annotations

from enum import Enum
from functools import lru_cache
from typing import NamedTuple

from thompson_metric.carets import CaretType, all_types, analyse, classify
from thompson_metric.diagram import (
    Letter,
    TreePairDiagram,
    contains,
    letter_diagram,
    multiply,
    product_unreduced,
    reduce,
)


class IllegalPairing(ValueError):
    """A caret pair that cannot occur in a diagram (only L0 pairs with L0)."""


# Upper triangle over kinds; the rest is filled by symmetry.  A tuple entry
# ``(a_field, op, b_field, yes, no)`` compares the index fields of the two
# types (``a`` is the row type) and picks ``yes`` when the comparison holds.
_TABLE = {
    ("L0", "L0"): 0,
    ("LL", "LL"): 2, ("LL", "R0"): 1, ("LL", "RR"): 1, ("LL", "R"): 1, ("LL", "M0"): 2, ("LL", "M"): 2,
    ("R0", "R0"): 0, ("R0", "RR"): 2, ("R0", "R"): 2, ("R0", "M0"): 1, ("R0", "M"): 3,
    ("RR", "RR"): 2, ("RR", "R"): 2, ("RR", "M0"): 1, ("RR", "M"): 3,
    ("R", "R"): 2, ("R", "M0"): ("i", "<=", "i", 3, 1), ("R", "M"): 3,
    ("M0", "M0"): 2, ("M0", "M"): ("i", "<", "j", 2, 4),
    ("M", "M"): 4,
}


def _entry(a: CaretType, b: CaretType):
    if (a.kind, b.kind) in _TABLE:
        return _TABLE[a.kind, b.kind], a, b
    if (b.kind, a.kind) in _TABLE:
        return _TABLE[b.kind, a.kind], b, a
    raise IllegalPairing(f"no weight for ({a}, {b})")


def weight(a: CaretType, b: CaretType) -> int:
    """Weight of a caret pair with negative type ``a`` and positive type ``b``."""
    rule, x, y = _entry(a, b)
    if isinstance(rule, int):
        return rule
    xf, op, yf, yes, no = rule
    a_val, b_val = getattr(x, xf), getattr(y, yf)
    return yes if (a_val < b_val if op == "<" else a_val <= b_val) else no


@lru_cache(maxsize=None)
def weight_table(p: int) -> dict[tuple[CaretType, CaretType], int]:
    """Every legal type pair for this ``p`` with its weight."""
    out = {}
    for a in all_types(p):
        for b in all_types(p):
            try:
                out[a, b] = weight(a, b)
            except IllegalPairing:
                pass
    return out


class CaretWeight(NamedTuple):
    index: int
    neg: CaretType
    pos: CaretType
    weight: int


class LengthReport(NamedTuple):
    total: int
    per_caret: list[CaretWeight]

    def table(self) -> str:
        lines = [f"{'caret':>5}  {'neg':<8} {'pos':<8} weight"]
        for c in self.per_caret:
            lines.append(f"{c.index:>5}  {str(c.neg):<8} {str(c.pos):<8} {c.weight}")
        lines.append(f"total {self.total}")
        return "\n".join(lines)


def pair_types(x: TreePairDiagram) -> list[tuple[CaretType, CaretType]]:
    """Refined (negative, positive) type of each caret pair of ``x`` as given (no reduction)."""
    return list(zip(classify(x.neg, x.p), classify(x.pos, x.p)))


def length_report(x: TreePairDiagram, table=None) -> LengthReport:
    x = reduce(x)
    wt = weight if table is None else (lambda a, b: table[a, b])
    per = [CaretWeight(k, a, b, wt(a, b)) for k, (a, b) in enumerate(pair_types(x))]
    return LengthReport(sum(c.weight for c in per), per)


def word_length(x: TreePairDiagram) -> int:
    """Geodesic length of ``x`` in the Cayley graph for X = {x_0, ..., x_p}."""
    x = reduce(x)
    return sum(weight(a, b) for a, b in pair_types(x))


# -- behaviour under right multiplication by one letter ----------------------

def _check_letter(w: TreePairDiagram, g: Letter) -> None:
    if not 0 <= g.index <= w.p:
        raise ValueError(f"letter x_{g.index} is not a finite generator of F({w.p + 1})")


def subtree_condition(w: TreePairDiagram, g: Letter) -> bool:
    """``w g`` can be formed without adding carets to ``w``'s minimal diagram."""
    _check_letter(w, g)
    w = reduce(w)
    return contains(w.neg, letter_diagram(w.p, g).pos)


def minimality_condition(w: TreePairDiagram, g: Letter) -> bool:
    """The unreduced diagram of ``w g`` is already minimal."""
    _check_letter(w, g)
    prod, _ = product_unreduced(reduce(w), letter_diagram(w.p, g))
    return reduce(prod) == prod


class LengthChange(Enum):
    INCREASES = "increases"
    DECREASES_BY_ONE = "decreases_by_one"
    SINGLE_CARET_CHANGE = "single_caret_change"


def predicted_length_relation(w: TreePairDiagram, g: Letter) -> LengthChange:
    if not subtree_condition(w, g):
        return LengthChange.INCREASES
    if not minimality_condition(w, g):
        return LengthChange.DECREASES_BY_ONE
    return LengthChange.SINGLE_CARET_CHANGE


class CaretChange(NamedTuple):
    index: int
    old: tuple[CaretType, CaretType]
    new: tuple[CaretType, CaretType]
    delta: int


def caret_type_diff(w: TreePairDiagram, g: Letter) -> list[CaretChange]:
    """Caret pairs whose type pair differs between ``w`` and the unreduced ``w g``."""
    w = reduce(w)
    if not subtree_condition(w, g):
        raise ValueError(f"subtree condition fails for {w} and x_{g.index}^{g.exponent}")
    prod, _ = product_unreduced(w, letter_diagram(w.p, g))
    out = []
    for k, (old, new) in enumerate(zip(pair_types(w), pair_types(prod))):
        if old != new:
            out.append(CaretChange(k, old, new, weight(*new) - weight(*old)))
    return out


def right_multiply(w: TreePairDiagram, g: Letter) -> TreePairDiagram:
    return multiply(w, letter_diagram(w.p, g))

"""Caret types, caret numbering and the refined classification behind the metric.

Pipeline: base types (L, R, M(i)) are assigned top-down from the parent's type
and the child position; carets are then numbered by an in-order walk whose
split point depends on the base type; refined types come last and read the
numbering (successor = larger number), never the other way round.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from thompson_metric._kernels_py import parse as _parse


class ClassificationError(RuntimeError):
    pass


class CaretType(NamedTuple):
    """Refined caret type.

    ``kind`` is one of ``L0 LL R0 RR R M0 M``.  For ``R`` the index ``i`` is
    the subscript j of R_j; for ``M0`` it is the superscript; ``M`` carries
    superscript ``i`` and subscript ``j``.
    """

    kind: str
    i: int = 0
    j: int = 0

    def __str__(self):
        if self.kind == "R":
            return f"R({self.i})"
        if self.kind == "M0":
            return f"M0({self.i})"
        if self.kind == "M":
            return f"M({self.i},{self.j})"
        return self.kind

    @property
    def base(self) -> str:
        return self.kind[0]


L0 = CaretType("L0")
LL = CaretType("LL")
R0 = CaretType("R0")
RR = CaretType("RR")


def R(j: int) -> CaretType:
    return CaretType("R", j)


def M0(i: int) -> CaretType:
    return CaretType("M0", i)


def M(i: int, j: int) -> CaretType:
    return CaretType("M", i, j)


def all_types(p: int) -> list[CaretType]:
    out = [L0, LL, R0, RR]
    out += [R(j) for j in range(1, p + 1)]
    out += [M0(i) for i in range(1, p + 1)]
    out += [M(i, j) for i in range(1, p + 1) for j in range(1, i + 1)]
    return out


# Base types are ("L", 0), ("R", 0) and ("M", i).

def child_base(p: int, parent: tuple[str, int], c: int, parent_is_root: bool) -> tuple[str, int]:
    """Base type of the caret hanging from child position ``c`` (0-based)."""
    kind, i = parent
    if kind == "L":
        if c == 0:
            return ("L", 0)
        if c == p and parent_is_root:
            return ("R", 0)
        return ("M", c)
    if kind == "R":
        if c == 0:
            return ("M", p)
        if c == p:
            return ("R", 0)
        return ("M", c)
    if c <= p - i:
        return ("M", i + c)
    return ("M", c - (p - i))


def children_before(p: int, base: tuple[str, int]) -> int:
    """How many children precede the caret itself in the node order."""
    kind, i = base
    return 1 if kind in "LR" else p - i + 1


@dataclass(frozen=True)
class CaretInfo:
    """Per-caret data of one tree, indexed by caret number."""

    base: tuple[tuple[str, int], ...]
    parent: tuple[int, ...]
    position: tuple[int, ...]
    children: tuple[tuple[tuple[int, int], ...], ...]
    types: tuple[CaretType, ...]

    def __len__(self):
        return len(self.types)

    def dump(self) -> str:
        return "\n".join(f"{k}:{t}" for k, t in enumerate(self.types))


def analyse(tree: tuple | str, p: int) -> CaretInfo:
    """Base types, numbering, tree links and refined types of every caret."""
    if isinstance(tree, str):
        tree = _parse(tree)
    base: list = []
    parent: list = []
    position: list = []
    children: list = []

    def number(t, btype, is_root, pos) -> int:
        split = children_before(p, btype)
        kids = []
        for c in range(split):
            if t[c]:
                kids.append((c, number(t[c], child_base(p, btype, c, is_root), False, c)))
        me = len(base)
        base.append(btype)
        parent.append(-1)
        position.append(pos)
        children.append(None)
        for c in range(split, p + 1):
            if t[c]:
                kids.append((c, number(t[c], child_base(p, btype, c, is_root), False, c)))
        for _, k in kids:
            parent[k] = me
        children[me] = tuple(kids)
        return me

    if tree:
        number(tree, ("L", 0), True, -1)
    types = _refine(p, base, children)
    return CaretInfo(tuple(base), tuple(parent), tuple(position), tuple(children), tuple(types))


def _refine(p: int, base: list, children: list) -> list[CaretType]:
    n = len(base)
    all_right_after = [True] * (n + 1)
    for k in range(n - 1, -1, -1):
        all_right_after[k] = all_right_after[k + 1] and base[k][0] == "R"
    types = []
    for k in range(n):
        kind, i = base[k]
        succ_children = [num for _, num in children[k] if num > k]
        if kind == "L":
            types.append(L0 if k == 0 else LL)
        elif kind == "R":
            if all_right_after[k + 1]:
                types.append(R0)
            elif base[k + 1][0] == "R":
                types.append(RR)
            else:
                if not succ_children:
                    raise ClassificationError(f"right caret {k} has successors but no child successor")
                first = base[min(succ_children)]
                types.append(R(p if first[0] == "R" else first[1]))
        else:
            if not succ_children:
                types.append(M0(i))
            else:
                first = base[min(succ_children)]
                if first[0] != "M" or first[1] > i:
                    raise ClassificationError(f"middle caret {k} of type M{i} has child successor {first}")
                types.append(M(i, first[1]))
    if n and types.count(L0) != 1:
        raise ClassificationError("tree must have exactly one L0 caret")
    return types


def number_carets(tree: tuple | str, p: int) -> dict[tuple[int, ...], int]:
    """Caret number keyed by the caret's path of child positions from the root."""
    info = analyse(tree, p)
    out = {}
    for k in range(len(info)):
        path = []
        j = k
        while info.parent[j] >= 0:
            path.append(info.position[j])
            j = info.parent[j]
        out[tuple(reversed(path))] = k
    return out


def base_types(tree: tuple | str, p: int) -> list[tuple[str, int]]:
    return list(analyse(tree, p).base)


def classify(tree: tuple | str, p: int) -> list[CaretType]:
    """Refined type of every caret, indexed by caret number."""
    return list(analyse(tree, p).types)

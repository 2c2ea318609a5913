"""Pure-Python tree-pair kernels.

Trees travel as their text encoding: ``"."`` for a leaf, ``"(" + children + ")"``
for a caret.  Internally a tree is a nested tuple where ``()`` is a leaf and a
caret is the tuple of its ``p + 1`` children.

This module and the compiled ``_kernels`` extension expose the same three
functions; ``thompson_metric._backend`` picks one at import time.
"""

from __future__ import annotations

LEAF: tuple = ()


def parse(text: str) -> tuple:
    stack: list[list] = [[]]
    for ch in text:
        if ch == ".":
            stack[-1].append(LEAF)
        elif ch == "(":
            stack.append([])
        elif ch == ")":
            children = stack.pop()
            stack[-1].append(tuple(children))
        else:
            raise ValueError(f"bad character {ch!r} in tree {text!r}")
    if len(stack) != 1 or len(stack[0]) != 1:
        raise ValueError(f"malformed tree {text!r}")
    return stack[0][0]


def unparse(tree: tuple) -> str:
    out: list[str] = []

    def walk(t):
        if not t:
            out.append(".")
            return
        out.append("(")
        for c in t:
            walk(c)
        out.append(")")

    walk(tree)
    return "".join(out)


def _extensions(a: tuple, b: tuple, ext_a: list, ext_b: list) -> None:
    """Fill the subtrees of ``a | b`` hanging below each leaf of ``a`` and of ``b``."""
    if not a:
        ext_a.append(b)
        ext_b.extend([LEAF] * _leaf_count(b))
    elif not b:
        ext_b.append(a)
        ext_a.extend([LEAF] * _leaf_count(a))
    else:
        for ca, cb in zip(a, b):
            _extensions(ca, cb, ext_a, ext_b)


def _leaf_count(t: tuple) -> int:
    if not t:
        return 1
    return sum(_leaf_count(c) for c in t)


def _graft(t: tuple, subs: list, pos: list) -> tuple:
    if not t:
        s = subs[pos[0]]
        pos[0] += 1
        return s
    return tuple(_graft(c, subs, pos) for c in t)


def product(p: int, xneg: str, xpos: str, yneg: str, ypos: str) -> tuple[str, str, bool]:
    """Unreduced diagram of ``x o y`` plus a flag telling whether ``x`` had to grow.

    ``y``'s positive tree and ``x``'s negative tree are refined to their common
    upper bound; the result is ``(y_neg*, x_pos*)``.
    """
    tneg = parse(xneg)
    spos = parse(ypos)
    ext_t: list = []
    ext_s: list = []
    _extensions(tneg, spos, ext_t, ext_s)
    grew = any(ext_t)
    neg = _graft(parse(yneg), ext_s, [0])
    pos = _graft(parse(xpos), ext_t, [0]) if grew else parse(xpos)
    return unparse(neg), unparse(pos), grew


def _exposed_starts(t: tuple, out: set, counter: list) -> None:
    if not t:
        counter[0] += 1
        return
    if not any(t):
        out.add(counter[0])
        counter[0] += len(t)
        return
    for c in t:
        _exposed_starts(c, out, counter)


def _collapse(t: tuple, starts: set, counter: list) -> tuple:
    if not t:
        counter[0] += 1
        return t
    if not any(t) and counter[0] in starts:
        counter[0] += len(t)
        return LEAF
    return tuple(_collapse(c, starts, counter) for c in t)


def reduce(p: int, neg: str, pos: str) -> tuple[str, str]:
    """Cancel exposed caret pairs with matching leaf indices until none remain."""
    tn = parse(neg)
    tp = parse(pos)
    changed = False
    while True:
        sn: set = set()
        sp: set = set()
        _exposed_starts(tn, sn, [0])
        _exposed_starts(tp, sp, [0])
        common = sn & sp
        if not common:
            break
        changed = True
        tn = _collapse(tn, common, [0])
        tp = _collapse(tp, common, [0])
    if not changed:
        return neg, pos
    return unparse(tn), unparse(tp)

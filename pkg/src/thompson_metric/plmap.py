"""Exact piecewise-linear homeomorphisms of [0, 1].

An independent semantic model of F(p+1): a map is its normalised breakpoint
list, so two maps are equal iff the tuples are equal.  Only ``Fraction`` is
used; there is no floating point anywhere in this module.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from thompson_metric.diagram import TreePairDiagram, leaf_intervals

Point = tuple[Fraction, Fraction]


class InvalidMap(ValueError):
    pass


def _in_ring(q: Fraction, n: int) -> bool:
    """``q`` lies in Z[1/n]."""
    d = q.denominator
    while d > 1:
        g = gcd(d, n)
        if g == 1:
            return False
        d //= g
    return True


def _is_power(q: Fraction, n: int) -> bool:
    """``q == n**k`` for some integer ``k``."""
    if q <= 0:
        return False
    a, b = q.numerator, q.denominator
    if a != 1 and b != 1:
        return False
    m = a if b == 1 else b
    while m % n == 0:
        m //= n
    return m == 1


def _normalise(points) -> tuple[Point, ...]:
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    out = [pts[0]]
    for pt in pts[1:]:
        if len(out) >= 2:
            (x0, y0), (x1, y1) = out[-2], out[-1]
            if (y1 - y0) * (pt[0] - x1) == (pt[1] - y1) * (x1 - x0):
                out[-1] = pt
                continue
        out.append(pt)
    return tuple(out)


@dataclass(frozen=True)
class PLMap:
    """Breakpoints ``(x, y)`` from ``(0, 0)`` to ``(1, 1)`` of a map in F(n)."""

    n: int
    points: tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", _normalise(self.points))
        self.validate()

    def validate(self) -> None:
        pts = self.points
        if pts[0] != (0, 0) or pts[-1] != (1, 1):
            raise InvalidMap(f"map must fix 0 and 1: {self}")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if not (x1 > x0 and y1 > y0):
                raise InvalidMap(f"not strictly increasing: {self}")
            if not _is_power((y1 - y0) / (x1 - x0), self.n):
                raise InvalidMap(f"slope {(y1 - y0) / (x1 - x0)} not a power of {self.n}")
        for x, y in pts:
            if not (_in_ring(x, self.n) and _in_ring(y, self.n)):
                raise InvalidMap(f"breakpoint ({x}, {y}) outside Z[1/{self.n}]")

    def __call__(self, t: Fraction) -> Fraction:
        xs = [x for x, _ in self.points]
        k = min(bisect_right(xs, t) - 1, len(xs) - 2)
        (x0, y0), (x1, y1) = self.points[k], self.points[k + 1]
        return y0 + (t - x0) * (y1 - y0) / (x1 - x0)

    def slopes(self) -> list[Fraction]:
        return [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(self.points, self.points[1:])]

    def __str__(self):
        return " ".join(f"({x},{y})" for x, y in self.points)


def identity_map(n: int) -> PLMap:
    return PLMap(n, ((0, 0), (1, 1)))


def diagram_to_map(x: TreePairDiagram) -> PLMap:
    """Map sending the k-th negative leaf interval affinely onto the k-th positive one."""
    dom = leaf_intervals(x.neg, x.p)
    rng = leaf_intervals(x.pos, x.p)
    pts = [(d.lo, r.lo) for d, r in zip(dom, rng)]
    pts.append((Fraction(1), Fraction(1)))
    return PLMap(x.p + 1, tuple(pts))


def invert(f: PLMap) -> PLMap:
    return PLMap(f.n, tuple((y, x) for x, y in f.points))


def compose(f: PLMap, g: PLMap) -> PLMap:
    """``f o g``: apply ``g`` first."""
    if f.n != g.n:
        raise ValueError(f"cannot compose maps of F({f.n}) and F({g.n})")
    ginv = invert(g)
    xs = {x for x, _ in g.points} | {ginv(x) for x, _ in f.points}
    return PLMap(f.n, tuple((x, f(g(x))) for x in sorted(xs)))


def map_equals(f: PLMap, g: PLMap) -> bool:
    return f.n == g.n and f.points == g.points

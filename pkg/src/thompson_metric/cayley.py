"""Brute-force Cayley-graph oracle: balls, geodesics, dead ends, divergence.

Everything here works from the definitions.  The BFS ball is the ground truth
the caret-weight metric is checked against; the other helpers only use
``word_length`` once that agreement has been established for the ball.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import IO, Iterable, Iterator, Mapping, NamedTuple, Sequence

from thompson_metric.diagram import (
    Letter,
    TreePairDiagram,
    canonical_key,
    check_p,
    evaluate_word,
    identity,
    inverse,
    letter_diagram,
    letters,
    multiply,
    parse_diagram,
)
from thompson_metric.metric import word_length
from thompson_metric.plmap import diagram_to_map, map_equals

DEFAULT_CAP = 5_000_000


class CapExceeded(RuntimeError):
    """The ball would hold more entries than the configured cap."""


class OracleDisagreement(AssertionError):
    """Two independent element-equality checks disagreed."""


class _NotADeadEnd:
    def __repr__(self):
        return "NOT_A_DEAD_END"

    def __str__(self):
        return "not-a-dead-end"


NOT_A_DEAD_END = _NotADeadEnd()


class Entry(NamedTuple):
    distance: int
    diagram: TreePairDiagram
    parent: str | None
    letter: Letter | None


@dataclass(frozen=True)
class DistanceMap:
    """Exact distances for the ball of a given radius, keyed by canonical key.

    Entries are stored in discovery order: distance first, then the order in
    which the fixed letter sequence reached them.
    """

    p: int
    radius: int
    entries: Mapping[str, Entry] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    def __len__(self):
        return len(self.entries)

    def __contains__(self, key):
        return self._key(key) in self.entries

    def __getitem__(self, key) -> Entry:
        return self.entries[self._key(key)]

    def __iter__(self) -> Iterator[str]:
        return iter(self.entries)

    @staticmethod
    def _key(key) -> str:
        return key if isinstance(key, str) else canonical_key(key)

    def distance(self, key) -> int:
        return self[key].distance

    def get_distance(self, key) -> int | None:
        e = self.entries.get(self._key(key))
        return None if e is None else e.distance

    def sphere_sizes(self) -> list[int]:
        out = [0] * (self.radius + 1)
        for e in self.entries.values():
            out[e.distance] += 1
        return out

    def items(self):
        return self.entries.items()

    def path_to(self, key) -> tuple[Letter, ...]:
        """Geodesic word recovered from the parent links."""
        word = []
        e = self[key]
        while e.parent is not None:
            word.append(e.letter)
            e = self.entries[e.parent]
        return tuple(reversed(word))

    def write(self, fh: IO[str]) -> None:
        """One ``key<TAB>distance<TAB>parent_key`` line per entry; the root's parent is ``-``."""
        for key, e in self.entries.items():
            fh.write(f"{key}\t{e.distance}\t{e.parent or '-'}\n")

    @classmethod
    def read(cls, fh: IO[str]) -> "DistanceMap":
        entries: dict[str, Entry] = {}
        p = None
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            try:
                key, dist, parent = line.split("\t")
            except ValueError:
                raise ValueError(f"line {lineno}: expected 3 tab-separated fields") from None
            x = parse_diagram(key)
            p = x.p if p is None else p
            parent = None if parent == "-" else parent
            letter = None
            if parent is not None:
                letter = _connecting_letter(entries[parent].diagram, x)
            entries[key] = Entry(int(dist), x, parent, letter)
        if p is None:
            raise ValueError("empty distance map")
        radius = max(e.distance for e in entries.values())
        return cls(p, radius, entries)


def _connecting_letter(a: TreePairDiagram, b: TreePairDiagram) -> Letter:
    for g in letters(a.p):
        if multiply(a, letter_diagram(a.p, g)) == b:
            return g
    raise ValueError(f"{b} is not one letter away from {a}")


def bfs_ball(
    p: int,
    radius: int,
    cap: int = DEFAULT_CAP,
    spot_check: float = 0.01,
    seed: int = 0,
) -> DistanceMap:
    """Ball of the given radius around the identity, by breadth-first search.

    Neighbours are ``w g`` for the ``2(p+1)`` letters in ``letters(p)`` order;
    the first discoverer becomes the parent, so the map is deterministic.  A
    fraction ``spot_check`` of duplicate hits is re-checked with exact PL maps.
    """
    check_p(p)
    if radius < 0:
        raise ValueError("radius must be non-negative")
    rng = random.Random(seed)
    gens = [(g, letter_diagram(p, g)) for g in letters(p)]
    e = identity(p)
    entries: dict[str, Entry] = {str(e): Entry(0, e, None, None)}
    frontier = [(str(e), e)]
    for d in range(1, radius + 1):
        nxt = []
        for key, w in frontier:
            for g, gd in gens:
                v = multiply(w, gd)
                vk = str(v)
                old = entries.get(vk)
                if old is None:
                    entries[vk] = Entry(d, v, key, g)
                    nxt.append((vk, v))
                    if len(entries) > cap:
                        raise CapExceeded(f"ball of radius {radius} exceeds cap {cap} at distance {d}")
                elif spot_check and rng.random() < spot_check:
                    if not map_equals(diagram_to_map(v), diagram_to_map(old.diagram)):
                        raise OracleDisagreement(f"key {vk} shared by elements with different PL maps")
        frontier = nxt
    return DistanceMap(p, radius, entries)


class Mismatch(NamedTuple):
    key: str
    bfs: int
    metric: int


def verify_metric(ball: DistanceMap, length=word_length) -> list[Mismatch]:
    """Every element where the caret-weight length disagrees with the BFS distance."""
    out = []
    for key, e in ball.items():
        m = length(e.diagram)
        if m != e.distance:
            out.append(Mismatch(key, e.distance, m))
    return out


def neighbours(w: TreePairDiagram) -> list[tuple[Letter, TreePairDiagram]]:
    return [(g, multiply(w, letter_diagram(w.p, g))) for g in letters(w.p)]


def _length_in(ball: DistanceMap | None, x: TreePairDiagram) -> int:
    if ball is not None:
        d = ball.get_distance(str(x))
        if d is not None:
            return d
    return word_length(x)


def is_dead_end_by_definition(w: TreePairDiagram, ball: DistanceMap | None = None) -> bool:
    n = _length_in(ball, w)
    return all(_length_in(ball, v) <= n for _, v in neighbours(w))


def find_dead_ends(ball: DistanceMap) -> list[str]:
    """Keys of all dead ends of length at most ``radius - 1``, in ball order."""
    if ball.radius < 1:
        raise ValueError("dead-end search needs radius >= 1")
    return [
        key
        for key, e in ball.items()
        if e.distance < ball.radius and is_dead_end_by_definition(e.diagram, ball)
    ]


def dead_end_depth(w: TreePairDiagram, max_depth: int = 3):
    """Depth of a dead end, ``NOT_A_DEAD_END``, or ``None`` if deeper than ``max_depth``.

    The depth is the largest ``m`` such that every path of length at most
    ``m`` from ``w`` stays in the ball of radius ``|w|``; equivalently one less
    than the length of the shortest path that leaves it.
    """
    n = word_length(w)
    if not is_dead_end_by_definition(w):
        return NOT_A_DEAD_END
    layer = {str(w): w}
    for step in range(1, max_depth + 2):
        nxt = {}
        for x in layer.values():
            for _, v in neighbours(x):
                nxt.setdefault(str(v), v)
        if any(word_length(v) > n for v in nxt.values()):
            return step - 1
        layer = nxt
    return None


# -- geodesics --------------------------------------------------------------

def extract_geodesic(w: TreePairDiagram, order: Sequence[Letter] | None = None) -> tuple[Letter, ...]:
    """A geodesic word for ``w`` by greedy descent from the end.

    The last letter is the first ``h`` in ``order`` (default: lowest index,
    positive exponent first) with ``|w h^-1| = |w| - 1``.
    """
    order = tuple(letters(w.p)) if order is None else tuple(order)
    word: list[Letter] = []
    cur = w
    n = word_length(cur)
    while n:
        for h in order:
            v = multiply(cur, inverse(letter_diagram(w.p, h)))
            if word_length(v) == n - 1:
                word.append(h)
                cur, n = v, n - 1
                break
        else:
            raise RuntimeError(f"no length-decreasing letter at {cur}; metric is inconsistent")
    return tuple(reversed(word))


def geodesic_vertices(p: int, word: Sequence[Letter]) -> list[TreePairDiagram]:
    out = [identity(p)]
    for g in word:
        out.append(multiply(out[-1], letter_diagram(p, g)))
    return out


def geodesic_variants(w: TreePairDiagram, samples: int = 24, seed: int = 0) -> list[tuple[Letter, ...]]:
    """Distinct greedy geodesics to ``w`` under several tie-break orders.

    All orders are used when there are at most ``samples`` of them; otherwise a
    seeded sample (always including the default order) is drawn.
    """
    base = letters(w.p)
    perms = list(itertools.permutations(base)) if len(base) <= 4 else None
    if perms is None or len(perms) > samples:
        rng = random.Random(seed)
        perms = [tuple(base)]
        for _ in range(samples - 1):
            perm = list(base)
            rng.shuffle(perm)
            perms.append(tuple(perm))
    seen: dict[tuple[Letter, ...], None] = {}
    for order in perms:
        seen.setdefault(extract_geodesic(w, order), None)
    return list(seen)


def distance(a: TreePairDiagram, b: TreePairDiagram, ball: DistanceMap | None = None) -> int:
    return _length_in(ball, multiply(inverse(a), b))


def fellow_traveller_divergence(
    u: TreePairDiagram,
    v: TreePairDiagram,
    ball: DistanceMap | None = None,
    samples: int = 24,
    seed: int = 0,
    max_gap: int = 2,
) -> int:
    """Smallest synchronous divergence over sampled geodesic pairs to ``u`` and ``v``.

    For one pair of geodesics the divergence is the largest distance between
    vertices at equal distance from the identity.  ``u`` and ``v`` must be
    within ``max_gap`` of each other.
    """
    gap = distance(u, v, ball)
    if gap > max_gap:
        raise ValueError(f"endpoints are {gap} apart; at most {max_gap} allowed")
    paths_u = [geodesic_vertices(u.p, g) for g in geodesic_variants(u, samples, seed)]
    paths_v = [geodesic_vertices(v.p, g) for g in geodesic_variants(v, samples, seed)]
    cache: dict[tuple[str, str], int] = {}

    def d(a, b):
        k = (str(a), str(b))
        if k not in cache:
            cache[k] = distance(a, b, ball)
        return cache[k]

    best = None
    for pu in paths_u:
        for pv in paths_v:
            worst = max(d(a, b) for a, b in zip(pu, pv))
            if best is None or worst < best:
                best = worst
    return best


def divergence_profile(ws: Iterable[TreePairDiagram], letter: Letter = Letter(0), **kw) -> list[int]:
    """Divergence between ``w g`` and ``w g^-1`` for each ``w``."""
    out = []
    for w in ws:
        g = letter_diagram(w.p, letter)
        out.append(fellow_traveller_divergence(multiply(w, g), multiply(w, inverse(g)), **kw))
    return out


def check_parent_links(ball: DistanceMap) -> list[str]:
    """Keys whose recorded parent path does not evaluate back to the key."""
    bad = []
    for key in ball:
        word = ball.path_to(key)
        if len(word) != ball.distance(key) or str(evaluate_word(ball.p, word)) != key:
            bad.append(key)
    return bad

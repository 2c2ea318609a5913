"""Seesaw words and dead ends: constructors, recognisers and verifiers."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from thompson_metric.carets import CaretInfo, CaretType, analyse, number_carets
from thompson_metric.cayley import (
    NOT_A_DEAD_END,
    DistanceMap,
    dead_end_depth,
    is_dead_end_by_definition,
    neighbours,
)
from thompson_metric.diagram import (
    Letter,
    TreePairDiagram,
    evaluate_word,
    format_word,
    inverse,
    letter_diagram,
    letters,
    multiply,
    power,
    reduce,
)
from thompson_metric.metric import word_length

SCHEMA = "thompson-metric/1"


class ParityViolation(AssertionError):
    """A single letter left the length unchanged; impossible with even relators."""


# -- seesaw words ------------------------------------------------------------

@dataclass(frozen=True)
class SeesawParams:
    p: int
    m: int
    n: int
    k: int = 1

    def validate(self) -> None:
        if self.p < 1:
            raise ValueError("p must be >= 1")
        if self.m < 2 or self.n < 1:
            raise ValueError(f"need m >= 2 and n >= 1, got m={self.m}, n={self.n}")

    def check_swing(self) -> None:
        """The swing guarantee needs ``0 < k < min(m - 1, n - 1)``."""
        self.validate()
        bound = min(self.m - 1, self.n - 1)
        if not 0 < self.k < bound:
            raise ValueError(f"swing k={self.k} must satisfy 0 < k < {bound}")


def seesaw_normal_form(p: int, m: int, n: int) -> tuple[Letter, ...]:
    """The normal-form word of the seesaw family, letters exactly as written."""
    word = list(power(0, m - 1))
    word.append(Letter(p))
    word.append(Letter(n * p * p + (m + n) * p))
    for i in range(1, p * n + 1):
        word.append(Letter(n * p * p + (m + n - i + 1) * p - i, -1))
    word.extend(power(0, -m))
    return tuple(word)


READINGS = ("action", "literal")


def seesaw_letters(sp: SeesawParams, reading: str = "action") -> tuple[Letter, ...]:
    """Letters to evaluate for the family.

    ``action`` flips every exponent, matching how letters act on trees in this
    library; ``literal`` evaluates the normal form as written.
    """
    sp.validate()
    word = seesaw_normal_form(sp.p, sp.m, sp.n)
    if reading == "action":
        return tuple(l.inv() for l in word)
    if reading == "literal":
        return word
    raise ValueError(f"unknown reading {reading!r}; choose from {READINGS}")


def seesaw_word(sp: SeesawParams, reading: str = "action") -> TreePairDiagram:
    return evaluate_word(sp.p, seesaw_letters(sp, reading))


def seesaw_shape(w: TreePairDiagram) -> tuple[int, int]:
    """(number of LL carets, number of right carets other than the last) in ``w.neg``."""
    info = analyse(w.neg, w.p)
    ll = sum(t.kind == "LL" for t in info.types)
    rights = sum(b[0] == "R" for b in info.base)
    return ll, max(rights - 1, 0)


@dataclass
class SeesawResult:
    ok: bool
    length: int
    exclusion: str
    failures: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _excluded(g: Letter, l: int, exclusion: str) -> set[Letter]:
    if exclusion == "literal":
        return {g}
    return {g} if l > 0 else {g.inv()}


def verify_seesaw(w: TreePairDiagram, g: Letter = Letter(0), k: int = 1, exclusion: str = "intent") -> SeesawResult:
    """Check both seesaw conditions for swing ``k`` with respect to ``g``.

    ``exclusion="intent"`` skips ``g`` after positive powers and ``g^-1``
    after negative ones; ``"literal"`` always skips just ``g``.
    """
    if exclusion not in ("intent", "literal"):
        raise ValueError(f"unknown exclusion rule {exclusion!r}")
    p = w.p
    n = word_length(w)
    res = SeesawResult(True, n, exclusion)
    for sign in (1, -1):
        step = letter_diagram(p, Letter(g.index, g.exponent * sign))
        x = w
        for q in range(1, k + 1):
            x = multiply(x, step)
            l = sign * q
            lx = word_length(x)
            if lx != n - q:
                res.ok = False
                res.failures.append(f"|w g^{l}| = {lx}, expected {n - q}")
            if q < k:
                skip = _excluded(g, l, exclusion)
                for h in letters(p):
                    if h in skip:
                        continue
                    lh = word_length(multiply(x, letter_diagram(p, h)))
                    if lh < lx:
                        res.ok = False
                        res.failures.append(f"|w g^{l} {h}| = {lh} < {lx}")
    return res


def seesaw_profile(w: TreePairDiagram, k: int, g: Letter = Letter(0)) -> list[tuple[int, int]]:
    """``(q, |w g^q|)`` for ``q = -k..k``."""
    rows = {0: word_length(w)}
    for sign in (1, -1):
        step = letter_diagram(w.p, Letter(g.index, g.exponent * sign))
        x = w
        for q in range(1, k + 1):
            x = multiply(x, step)
            rows[sign * q] = word_length(x)
    return sorted(rows.items())


def profile_csv(rows: Iterable[tuple[int, int]]) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["q", "length"])
    out.writerows(rows)
    return buf.getvalue()


# -- dead ends ---------------------------------------------------------------

def is_dead_end(w: TreePairDiagram) -> bool:
    """No one-letter extension of ``w`` is longer than ``w``."""
    n = word_length(w)
    lengths = [word_length(v) for _, v in neighbours(w)]
    if n in lengths:
        raise ParityViolation(f"a letter preserved the length of {w}")
    return all(l < n for l in lengths)


MISSING = "MISSING_CARET"


@dataclass
class DeadEndReport:
    key: str
    is_dead_end: bool
    labels: dict[str, int]
    pairs: dict[str, list[str]]
    violations: list[str]

    def to_json(self) -> str:
        return json.dumps({"schema": SCHEMA, **asdict(self)}, sort_keys=True)


def _anchor_paths(p: int) -> dict[str, tuple[int, ...]]:
    paths = {"B": (), "A": (0,)}
    for i in range(1, p):
        paths[f"C{i}"] = (i,)
    paths["E"] = (p,)
    paths["D"] = (p, 0)
    paths["F"] = (p, p)
    return paths


def _has_left_ancestor(info: CaretInfo, k: int) -> bool:
    j = info.parent[k]
    while j >= 0:
        if info.base[j][0] == "L":
            return True
        j = info.parent[j]
    return False


def _middle_ok(i: int, neg: CaretType, pos: CaretType) -> bool:
    if neg.kind == "M":
        return True
    if pos.kind == "LL":
        return True
    if pos.kind == "R":
        return pos.i <= i
    if pos.kind == "M0":
        return pos.i <= i
    if pos.kind == "M":
        return pos.j <= i
    return False


def _check_pair(name: str, p: int, neg: CaretType, pos: CaretType, pos_info: CaretInfo, k: int) -> str | None:
    """Table of allowed (negative, positive) type pairs for each labelled caret."""
    ok: bool
    if name == "B":
        ok = neg.kind == "LL" and pos.kind == "LL"
    elif name == "A":
        ok = pos.base == "L" or (pos.base == "M" and _has_left_ancestor(pos_info, k))
    elif name.startswith("C"):
        i = int(name[1:])
        ok = neg.base == "M" and neg.i == i and _middle_ok(i, neg, pos)
    elif name == "D":
        ok = neg.base == "M" and neg.i == p and not (neg.kind == "M0" and pos.kind in ("RR", "R0"))
    elif name == "E":
        ok = (neg.kind, pos.kind) in {("R0", "RR"), ("RR", "R0"), ("RR", "RR")}
    elif name == "F":
        ok = neg.base == "R" and pos.base == "R"
    else:
        raise KeyError(name)
    return None if ok else f"{name}: ({neg}, {pos}) not allowed"


def structural_dead_end_check(w: TreePairDiagram) -> DeadEndReport:
    """Recognise a dead end from the shape of its minimal diagram alone."""
    w = reduce(w)
    p = w.p
    neg_info = analyse(w.neg, p)
    pos_info = analyse(w.pos, p)
    numbers = number_carets(w.neg, p) if w.carets else {}
    labels: dict[str, int] = {}
    pairs: dict[str, list[str]] = {}
    violations: list[str] = []
    for name, path in _anchor_paths(p).items():
        k = numbers.get(path)
        if k is None:
            violations.append(f"{MISSING}: {name}")
            continue
        labels[name] = k
        neg, pos = neg_info.types[k], pos_info.types[k]
        pairs[name] = [str(neg), str(pos)]
        v = _check_pair(name, p, neg, pos, pos_info, k)
        if v:
            violations.append(v)
    return DeadEndReport(str(w), not violations, labels, pairs, violations)


def depth_witnesses(p: int, reading: str = "action") -> list[tuple[Letter, ...]]:
    """The three-letter witness family ``x_0^-1 x_i x_j`` (``i, j`` in 1..p).

    In the ``action`` reading every exponent is flipped, as for the seesaw
    normal form.
    """
    out = []
    for i in range(1, p + 1):
        for j in range(1, p + 1):
            word = (Letter(0, -1), Letter(i), Letter(j))
            out.append(tuple(l.inv() for l in word) if reading == "action" else word)
    return out


@dataclass
class DepthReport:
    ok: bool
    depth: int | None
    length: int
    witnesses: dict[str, int]
    literal_witnesses: dict[str, int]


def verify_depth_two(w: TreePairDiagram) -> DepthReport:
    """Exhaustive depth plus the explicit witness family for a dead end."""
    if not is_dead_end(w):
        raise ValueError(f"{w} is not a dead end")
    n = word_length(w)
    depth = dead_end_depth(w, max_depth=2)
    wit = {format_word(u): word_length(multiply(w, evaluate_word(w.p, u))) for u in depth_witnesses(w.p)}
    lit = {format_word(u): word_length(multiply(w, evaluate_word(w.p, u))) for u in depth_witnesses(w.p, "literal")}
    ok = depth == 2 and all(v > n for v in wit.values())
    return DepthReport(ok, depth, n, wit, lit)


def dead_end_census(ball: DistanceMap, max_depth: int = 3) -> dict:
    """Definitional and structural dead-end sets over the interior of a ball.

    ``mismatches`` lists every interior key on which the two recognisers
    disagree; a healthy census has none.
    """
    definitional, structural, mismatches = [], set(), []
    for key, e in ball.items():
        if e.distance >= ball.radius:
            continue
        by_def = is_dead_end_by_definition(e.diagram, ball)
        by_shape = structural_dead_end_check(e.diagram).is_dead_end
        if by_def:
            definitional.append(key)
        if by_shape:
            structural.add(key)
        if by_def != by_shape:
            mismatches.append(key)
    dead = []
    for key in definitional:
        x = ball[key].diagram
        depth = dead_end_depth(x, max_depth)
        dead.append({
            "key": key,
            "length": ball.distance(key),
            "depth": None if depth is NOT_A_DEAD_END else depth,
        })
    return {
        "schema": SCHEMA,
        "p": ball.p,
        "radius": ball.radius,
        "ball_size": len(ball),
        "sphere_sizes": ball.sphere_sizes(),
        "dead_ends": dead,
        "structural_count": len(structural),
        "recognizer_mismatches": mismatches,
    }

from fractions import Fraction as Q

import pytest
from hypothesis import given

from conftest import diagrams, random_word
from oracles import all_diagrams
from thompson_metric.diagram import (
    canonical_key,
    evaluate_word,
    identity,
    inverse,
    make_generator,
    multiply,
    parse_word,
)
from thompson_metric.plmap import (
    InvalidMap,
    PLMap,
    compose,
    diagram_to_map,
    identity_map,
    invert,
    map_equals,
)


def test_identity_map():
    assert diagram_to_map(identity(1)).points == ((0, 0), (1, 1))


def test_x0_map_p1():
    f = diagram_to_map(make_generator(1, 0))
    assert f.points == ((0, 0), (Q(1, 4), Q(1, 2)), (Q(1, 2), Q(3, 4)), (1, 1))
    assert sorted(f.slopes()) == [Q(1, 2), 1, 2]
    assert str(f) == "(0,0) (1/4,1/2) (1/2,3/4) (1,1)"


def test_collinear_breakpoints_merge():
    f = PLMap(2, ((0, 0), (Q(1, 2), Q(1, 2)), (1, 1)))
    assert map_equals(f, identity_map(2))


def test_distinct_generators_differ():
    assert not map_equals(diagram_to_map(make_generator(1, 0)), diagram_to_map(make_generator(1, 1)))


@pytest.mark.parametrize("points", [
    ((0, 0), (Q(1, 3), Q(2, 3)), (1, 1)),  # breakpoint not dyadic
    ((0, 0), (Q(1, 4), Q(3, 4)), (1, 1)),  # slope 3
    ((0, Q(1, 2)), (1, 1)),
])
def test_invalid_maps(points):
    with pytest.raises(InvalidMap):
        PLMap(2, points)


def test_relator_composes_to_identity():
    f = identity_map(2)
    for letter in reversed(parse_word("0 1^-1 2 1 0^-1 2^-1")):
        f = compose(f, diagram_to_map(evaluate_word(1, [letter])))
    assert map_equals(f, identity_map(2))


@given(diagrams())
def test_reduction_preserves_map(x):
    from thompson_metric.diagram import reduce

    assert diagram_to_map(x) == diagram_to_map(reduce(x))


@given(diagrams())
def test_invert_matches_inverse(x):
    f = diagram_to_map(x)
    assert invert(f) == diagram_to_map(inverse(x))
    assert invert(invert(f)) == f
    assert map_equals(compose(f, invert(f)), identity_map(x.p + 1))


@given(diagrams(p=2, max_carets=6), diagrams(p=2, max_carets=6))
def test_homomorphism(a, b):
    assert map_equals(diagram_to_map(multiply(a, b)), compose(diagram_to_map(a), diagram_to_map(b)))


def test_homomorphism_on_words(rng):
    for p in (1, 2, 3):
        for _ in range(100):
            u = random_word(rng, p, rng.randint(0, 12))
            v = random_word(rng, p, rng.randint(0, 12))
            a, b = evaluate_word(p, u), evaluate_word(p, v)
            assert diagram_to_map(multiply(a, b)) == compose(diagram_to_map(a), diagram_to_map(b))


@pytest.mark.parametrize("p", [1, 2])
def test_faithful_on_small_diagrams(p):
    by_key = {}
    for x in all_diagrams(p, 3):
        by_key.setdefault(canonical_key(x), set()).add(diagram_to_map(x).points)
    # one map per element, and distinct elements have distinct maps
    assert all(len(v) == 1 for v in by_key.values())
    maps = [next(iter(v)) for v in by_key.values()]
    assert len(set(maps)) == len(maps)


def test_compose_rejects_mixed_bases():
    with pytest.raises(ValueError):
        compose(identity_map(2), identity_map(3))

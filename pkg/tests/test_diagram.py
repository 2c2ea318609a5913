from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import diagrams, random_diagram, random_word, words
from oracles import finite_relators, functional
from thompson_metric.diagram import (
    ArityMismatch,
    Letter,
    TreePairDiagram,
    canonical_key,
    caret,
    contains,
    evaluate_word,
    format_tree,
    format_word,
    identity,
    inverse,
    leaf_indices,
    leaf_intervals,
    letters,
    make_generator,
    make_infinite_generator,
    multiply,
    parse_diagram,
    parse_tree,
    parse_word,
    product_unreduced,
    reduce,
)
from thompson_metric.metric import word_length


def test_x0_at_p1_is_the_classical_generator():
    assert canonical_key(make_generator(1, 0)) == "p=1;neg=((..).);pos=(.(..))"


def test_generators_small_p():
    assert str(make_generator(2, 0)) == "p=2;neg=((...)..);pos=(..(...))"
    assert str(make_generator(2, 1)) == "p=2;neg=(.(...).);pos=(..(...))"
    x1 = make_generator(1, 1)
    assert x1.carets == 3
    assert str(x1) == "p=1;neg=(.((..).));pos=(.(.(..)))"


def test_generator_index_out_of_range():
    with pytest.raises(ValueError):
        make_generator(2, 3)
    with pytest.raises(ValueError):
        make_generator(2, -1)


def test_infinite_generators():
    assert make_infinite_generator(1, 1) == make_generator(1, 1)
    x2 = make_infinite_generator(1, 2)
    assert x2.carets == 4 and word_length(x2) == 3
    x0 = make_generator(2, 0)
    x3 = multiply(multiply(x0, make_generator(2, 1)), inverse(x0))
    assert make_infinite_generator(2, 5) == multiply(multiply(x0, x3), inverse(x0))


def test_identity_and_inverse():
    e = identity(1)
    assert str(e) == "p=1;neg=.;pos=."
    x0 = make_generator(1, 0)
    assert multiply(x0, inverse(x0)).is_identity()
    assert inverse(e) == e


def test_multiply_x1_x0():
    prod = multiply(make_generator(1, 1), make_generator(1, 0))
    assert str(prod) == "p=1;neg=((.(..)).);pos=(.(.(..)))"


def test_arity_mismatch():
    with pytest.raises(ArityMismatch):
        multiply(make_generator(1, 0), make_generator(2, 0))
    with pytest.raises(ArityMismatch):
        parse_tree("(..)", 2)


def test_leaf_count_balance_enforced():
    with pytest.raises(ValueError):
        TreePairDiagram(1, "(..)", ".")


def test_reduce_single_pair():
    assert reduce(TreePairDiagram(2, "(...)", "(...)")).is_identity()


def test_unreduced_product_flag():
    x0 = make_generator(1, 0)
    prod, grew = product_unreduced(identity(1), x0)
    assert grew
    prod, grew = product_unreduced(multiply(x0, x0), inverse(x0))
    assert not grew


def test_leaf_numbering_and_intervals():
    assert leaf_indices(".") == [0]
    assert leaf_indices("(...)") == [0, 1, 2]
    assert leaf_intervals(".", 1) == [(0, 1)]
    assert leaf_intervals("(..)", 1) == [(0, Fraction(1, 2)), (Fraction(1, 2), 1)]
    thirds = leaf_intervals("(...)", 2)
    assert [(i.lo, i.hi) for i in thirds] == [(0, Fraction(1, 3)), (Fraction(1, 3), Fraction(2, 3)), (Fraction(2, 3), 1)]


@given(diagrams())
def test_intervals_partition_unit_interval(x):
    ivs = leaf_intervals(x.neg, x.p)
    assert ivs[0].lo == 0 and ivs[-1].hi == 1
    for a, b in zip(ivs, ivs[1:]):
        assert a.hi == b.lo
    for iv in ivs:
        assert iv.lo < iv.hi
        for end in iv:
            # denominator divides a power of N
            assert (x.p + 1) ** 64 % end.denominator == 0


@given(diagrams())
def test_leaf_count_formula(x):
    assert len(leaf_indices(x.neg)) == x.p * x.carets + 1


@given(diagrams())
def test_reduce_idempotent(x):
    r = reduce(x)
    assert reduce(r) == r
    assert r.is_reduced()


@given(diagrams(p=2, max_carets=6), diagrams(p=2, max_carets=6), diagrams(p=2, max_carets=6))
def test_associativity(a, b, c):
    a, b, c = reduce(a), reduce(b), reduce(c)
    assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


@given(diagrams())
def test_group_laws(x):
    x = reduce(x)
    e = identity(x.p)
    assert multiply(x, e) == x == multiply(e, x)
    assert multiply(x, inverse(x)).is_identity()
    assert inverse(inverse(x)) == x


def test_serialisation_round_trip(rng):
    for p in (1, 2, 3):
        for _ in range(50):
            x = random_diagram(rng, p, rng.randint(0, 7))
            assert parse_diagram(str(x)) == x


@pytest.mark.parametrize("bad", ["p=1;neg=(..);pos=(...)", "p=0;neg=.;pos=.", "neg=.;pos=.", "p=1;neg=(..;pos=(..)"])
def test_parse_diagram_rejects(bad):
    with pytest.raises(ValueError):
        parse_diagram(bad)


def test_word_syntax():
    w = parse_word("0 1 12 11^-1 0^-1")
    assert w == (Letter(0), Letter(1), Letter(12), Letter(11, -1), Letter(0, -1))
    assert format_word(w) == "0 1 12 11^-1 0^-1"
    assert parse_word("0,1") == (Letter(0), Letter(1))
    assert parse_word("") == ()
    with pytest.raises(ValueError):
        parse_word("0 x")


def test_evaluate_word_basics():
    assert evaluate_word(1, "").is_identity()
    assert evaluate_word(1, "0 0^-1").is_identity()


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_finite_relators(p):
    for name, word in finite_relators(p):
        assert evaluate_word(p, functional(word)).is_identity(), name


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_infinite_presentation(p):
    for i in range(1, 2 * p + 3):
        for j in range(i + 1, 2 * p + 3):
            lhs = multiply(make_infinite_generator(p, i), make_infinite_generator(p, j))
            rhs = multiply(make_infinite_generator(p, j + p), make_infinite_generator(p, i))
            assert lhs == rhs, (i, j)


def test_relator_example_p1():
    word = parse_word("0 1^-1 2 1 0^-1 2^-1")
    assert evaluate_word(1, functional(word)).is_identity()
    assert not evaluate_word(1, word).is_identity()


@given(st.data())
def test_word_inverse(data):
    p = data.draw(st.integers(1, 3))
    w = data.draw(words(p))
    x = evaluate_word(p, w)
    assert evaluate_word(p, tuple(l.inv() for l in reversed(w))) == inverse(x)


def test_contains():
    assert contains("((..).)", "(..)")
    assert not contains("(..)", "((..).)")
    assert contains(".", ".")


def test_caret_helper():
    assert format_tree(caret(2, {1: caret(2)})) == "(.(...).)"


def test_letter_order():
    assert letters(1) == [Letter(0, 1), Letter(0, -1), Letter(1, 1), Letter(1, -1)]


def test_random_words_are_reduced(rng):
    for _ in range(100):
        p = rng.randint(1, 3)
        x = evaluate_word(p, random_word(rng, p, 8))
        assert x.is_reduced()

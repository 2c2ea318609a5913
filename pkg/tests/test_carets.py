import pytest
from hypothesis import given

from conftest import diagrams, random_tree
from thompson_metric.carets import (
    L0,
    LL,
    M,
    M0,
    R,
    R0,
    CaretType,
    all_types,
    analyse,
    base_types,
    classify,
    number_carets,
)
from thompson_metric.diagram import format_tree, product_unreduced, reduce, letter_diagram
from thompson_metric.metric import minimality_condition, subtree_condition


def _by_path(tree, p, values):
    numbering = number_carets(tree, p)
    return {path: values[k] for path, k in numbering.items()}


def test_single_caret():
    assert base_types("(..)", 1) == [("L", 0)]
    assert number_carets("(..)", 1) == {(): 0}
    assert classify("(..)", 1) == [L0]


def test_root_children_p2():
    tree = "((...)(...)(...))"
    by_path = _by_path(tree, 2, base_types(tree, 2))
    assert by_path[(0,)] == ("L", 0)
    assert by_path[(1,)] == ("M", 1)
    assert by_path[(2,)] == ("R", 0)


def test_first_child_of_right_caret_is_top_middle():
    tree = "(..((...)..))"
    assert _by_path(tree, 2, base_types(tree, 2))[(2, 0)] == ("M", 2)


def test_left_vine_numbered_bottom_up():
    assert number_carets("(((..).).)", 1) == {(0, 0): 0, (0,): 1, (): 2}
    assert classify("(((..).).)", 1) == [L0, LL, LL]


@pytest.mark.parametrize("k", [2, 3, 5])
def test_right_vine(k):
    tree = "."
    for _ in range(k):
        tree = f"(.{tree})"
    assert classify(tree, 1) == [L0] + [R0] * (k - 1)


def test_right_caret_followed_by_middle_child():
    assert classify("(..(.(...).))", 2) == [L0, R(1), M0(1)]


def test_middle_caret_without_child_successor():
    assert classify("(..((...)..))", 2) == [L0, M0(2), R0]


def test_all_types_counts():
    for p in range(1, 5):
        assert len(all_types(p)) == 4 + 2 * p + p * (p + 1) // 2


def test_dump_format():
    info = analyse("(..(.(...).))", 2)
    assert info.dump() == "0:L0\n1:R(1)\n2:M0(1)"
    assert str(M(2, 1)) == "M(2,1)"


def test_leaf_has_no_carets():
    assert classify(".", 3) == []


@given(diagrams(max_carets=12))
def test_exactly_one_first_caret(x):
    for tree in (x.neg, x.pos):
        types = classify(tree, x.p)
        if types:
            assert types.count(L0) == 1 and types[0] == L0


@given(diagrams(max_carets=12))
def test_middle_subscript_bounded(x):
    for t in classify(x.neg, x.p) + classify(x.pos, x.p):
        if t.kind == "M":
            assert 1 <= t.j <= t.i <= x.p
        if t.kind in ("R", "M0"):
            assert 1 <= t.i <= x.p


@given(diagrams(max_carets=12))
def test_numbering_is_bijection(x):
    numbering = number_carets(x.neg, x.p)
    assert sorted(numbering.values()) == list(range(x.carets))
    assert len(numbering) == x.carets


def _is_ancestor(a, b):
    return len(a) < len(b) and b[: len(a)] == a


def test_ancestry_and_succession_independent(rng):
    seen = set()
    for _ in range(200):
        p = rng.randint(1, 3)
        tree = format_tree(random_tree(rng, p, rng.randint(3, 10)))
        numbering = number_carets(tree, p)
        for a, na in numbering.items():
            for b, nb in numbering.items():
                if a != b:
                    seen.add((_is_ancestor(a, b), na < nb))
    assert seen == {(True, True), (True, False), (False, True), (False, False)}


def test_single_caret_change_under_both_conditions(rng):
    from conftest import random_word
    from thompson_metric.diagram import evaluate_word, letters

    checked = 0
    for _ in range(300):
        p = rng.randint(1, 3)
        w = evaluate_word(p, random_word(rng, p, rng.randint(2, 10)))
        for g in letters(p):
            if subtree_condition(w, g) and minimality_condition(w, g):
                prod, _ = product_unreduced(reduce(w), letter_diagram(p, g))
                neg_diff = [k for k, (a, b) in enumerate(zip(classify(w.neg, p), classify(prod.neg, p))) if a != b]
                assert len(neg_diff) == 1
                assert classify(w.pos, p) == classify(prod.pos, p)
                checked += 1
    assert checked > 100


def test_caret_type_fields():
    t = CaretType("M", 3, 2)
    assert t.base == "M" and (t.i, t.j) == (3, 2)
    assert LL.base == "L"

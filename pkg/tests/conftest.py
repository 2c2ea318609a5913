import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from thompson_metric.diagram import Letter, TreePairDiagram, format_tree

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_tree(rng: random.Random, p: int, carets: int) -> tuple:
    """Grow a tree by hanging carets on uniformly chosen leaves."""
    if carets == 0:
        return ()
    tree = ((),) * (p + 1)
    leaves = [(c,) for c in range(p + 1)]  # paths to leaves
    for _ in range(carets - 1):
        path = leaves.pop(rng.randrange(len(leaves)))
        tree = _replace(tree, path, ((),) * (p + 1))
        leaves.extend(path + (c,) for c in range(p + 1))
    return tree


def _replace(t, path, sub):
    if not path:
        return sub
    i = path[0]
    return t[:i] + (_replace(t[i], path[1:], sub),) + t[i + 1:]


def random_diagram(rng: random.Random, p: int, carets: int) -> TreePairDiagram:
    a = random_tree(rng, p, carets)
    b = random_tree(rng, p, carets)
    return TreePairDiagram(p, format_tree(a), format_tree(b))


def random_word(rng: random.Random, p: int, length: int) -> tuple[Letter, ...]:
    return tuple(Letter(rng.randint(0, p), rng.choice((1, -1))) for _ in range(length))


@st.composite
def diagrams(draw, p=None, max_carets=8):
    p = draw(st.integers(1, 3)) if p is None else p
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(0, max_carets))
    return random_diagram(random.Random(seed), p, n)


@st.composite
def words(draw, p, max_len=10):
    return tuple(
        draw(st.lists(st.builds(Letter, st.integers(0, p), st.sampled_from((1, -1))), max_size=max_len))
    )


@pytest.fixture
def rng():
    return random.Random(20240611)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

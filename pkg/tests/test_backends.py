import os
import subprocess
import sys

import pytest

from conftest import random_diagram
from thompson_metric import _backend, _kernels_py

compiled = pytest.importorskip("thompson_metric._kernels")


def test_backend_selected():
    assert _backend.BACKEND in ("cython", "python")


def test_pure_python_forced_by_environment():
    env = dict(os.environ, THOMPSON_METRIC_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "from thompson_metric import BACKEND; print(BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("p", [1, 2, 3])
def test_reduce_agrees(rng, p):
    for _ in range(400):
        x = random_diagram(rng, p, rng.randint(0, 9))
        assert compiled.reduce(p, x.neg, x.pos) == _kernels_py.reduce(p, x.neg, x.pos)


@pytest.mark.parametrize("p", [1, 2, 3])
def test_product_agrees(rng, p):
    for _ in range(400):
        x = random_diagram(rng, p, rng.randint(0, 7))
        y = random_diagram(rng, p, rng.randint(0, 7))
        a = compiled.product(p, x.neg, x.pos, y.neg, y.pos)
        b = _kernels_py.product(p, x.neg, x.pos, y.neg, y.pos)
        assert a == b


def test_unchanged_inputs_returned_as_is():
    neg, pos = "((..).)", "(.(..))"
    for k in (compiled, _kernels_py):
        a, b = k.reduce(1, neg, pos)
        assert a is neg and b is pos

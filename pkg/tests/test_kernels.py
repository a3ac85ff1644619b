import os
import random
import subprocess
import sys

import pytest

from regsys import _kernels_py as py
from regsys import kernels
from regsys.equivalence import feedback_generators
from regsys.ring import RingContext

compiled = kernels.compiled
needs_ext = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")


def rand(rng, p, r, c):
    return [[rng.randrange(p) for _ in range(c)] for _ in range(r)]


@needs_ext
@pytest.mark.parametrize("p", [2, 3, 7, 101, 2**31 - 1])
def test_field_kernels_agree(p):
    rng = random.Random(p)
    for _ in range(40):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        a = rand(rng, p, r, c)
        if rng.random() < 0.3:
            a[-1] = list(a[0])  # force rank deficiency
        assert compiled.field_rank(a, p, r, c) == py.field_rank(a, p, r, c)
        assert compiled.field_smith(a, p, r, c) == py.field_smith(a, p, r, c)
        sq = rand(rng, p, r, r)
        assert compiled.field_inverse(sq, p, r) == py.field_inverse(sq, p, r)


@needs_ext
def test_matmul_agrees():
    rng = random.Random(0)
    mod = 2 * 3 * 5 * 7 * 11 * 13 * 17 * 19 * 23
    for _ in range(20):
        a, b = rand(rng, mod, 3, 4), rand(rng, mod, 4, 5)
        assert compiled.matmul(a, b, mod, 3, 4, 5) == py.matmul(a, b, mod, 3, 4, 5)


@needs_ext
@pytest.mark.parametrize("mod,n,m", [(6, 1, 1), (2, 2, 1), (6, 1, 2), (3, 2, 1)])
def test_orbit_labels_agree(mod, n, m):
    gens = feedback_generators(RingContext(mod), n, m)
    assert compiled.orbit_labels(mod, n, m, gens) == py.orbit_labels(mod, n, m, gens)


def test_large_moduli_use_python():
    assert kernels.for_modulus(2**61 - 1) is py


def test_pure_python_switch():
    env = dict(os.environ, REGSYS_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from regsys import kernels; print(kernels.backend_name())"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"

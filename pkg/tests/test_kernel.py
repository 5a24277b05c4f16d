import os
import subprocess
import sys

import pytest

from dp3castles import kernel
from dp3castles.castle import build_castle
from dp3castles.matchings import _run, count_matchings, weighted_sum, weighted_sum_framed

compiled = pytest.importorskip("dp3castles._kernel")

POINTS = [(0, 1, 1), (1, 1, 1), (-1, 3, 1), (2, 1, 1)]


def test_compiled_backend_selected():
    assert kernel.BACKEND == "cython"


@pytest.mark.parametrize("p", POINTS)
def test_backends_agree(p):
    c = build_castle(*p)
    assert count_matchings(c, backend="python") == count_matchings(c, backend="cython")
    assert weighted_sum(c, backend="python") == weighted_sum(c, backend="cython")
    assert weighted_sum_framed(c, backend="python") == weighted_sum_framed(c, backend="cython")


@pytest.mark.parametrize("p", POINTS)
def test_collect_mode_agrees(p):
    c = build_castle(*p)
    a = _run(c, kernel.MODE_COLLECT, limit=50, backend="python")
    b = _run(c, kernel.MODE_COLLECT, limit=50, backend="cython")
    assert a[0] == b[0] and sorted(map(tuple, a[1])) == sorted(map(tuple, b[1]))


def test_limit_stops_early():
    c = build_castle(-1, 3, 1)
    for backend in ("python", "cython"):
        assert count_matchings(c, backend=backend, limit=7) == 7


def test_env_forces_fallback():
    env = dict(os.environ, DP3_KERNEL="python")
    out = subprocess.run(
        [sys.executable, "-c", "from dp3castles import kernel; print(kernel.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"

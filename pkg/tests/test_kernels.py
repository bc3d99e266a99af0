import os
import random
import subprocess
import sys

import pytest

from rgc import kernels
from rgc.complex import iso_classes
from rgc.ribbon import RibbonGraph, relabel

compiled = pytest.mark.skipif(kernels.compiled_backend is None, reason="compiled extension not built")


def _sample(seed=1):
    rng = random.Random(seed)
    out = []
    for E in range(1, 6):
        for V in range(1, E + 2):
            for code in iso_classes(V, E):
                G = RibbonGraph.from_code(code)
                perm = list(range(2 * E))
                rng.shuffle(perm)
                out.append(relabel(G, perm))
    return out


@compiled
def test_backends_agree():
    py, c = kernels.python_backend, kernels.compiled_backend
    for G in _sample():
        s, i = list(G.sigma), list(G.iota)
        for d in (0, 1):
            assert py.canonical(s, i, d) == c.canonical(s, i, d)
            assert py.expand(s, i, d) == c.expand(s, i, d)
            assert py.expand(s, i, d, True) == c.expand(s, i, d, True)
        assert py.code_only(s, i) == c.code_only(s, i)
        assert py.canonical_labels(s, i) == c.canonical_labels(s, i)


@compiled
def test_compiled_rejects_oversized():
    n = 400
    s = list(range(n))
    i = [k ^ 1 for k in range(n)]
    with pytest.raises(ValueError):
        kernels.compiled_backend.canonical(s, i, 0)


def test_pure_python_switch():
    env = dict(os.environ, RGC_PURE_PYTHON="1")
    r = subprocess.run([sys.executable, "-c", "import rgc; print(rgc.BACKEND)"],
                       capture_output=True, text=True, env=env)
    assert r.stdout.strip() == "python"


def test_pure_python_results_match(tmp_path):
    env = dict(os.environ, RGC_PURE_PYTHON="1", RGC_CACHE_DIR=str(tmp_path))
    prog = "from rgc.complex import cohomology; print([r.dim for r in cohomology(1, 1, edges=(1, 5))])"
    r = subprocess.run([sys.executable, "-c", prog], capture_output=True, text=True, env=env)
    assert r.stdout.strip() == "[1, 0, 0, 0, 0]"

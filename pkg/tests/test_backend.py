import os
import subprocess
import sys

import numpy as np
import pytest

from trigft import quadrature as quad
from trigft.harmonic import _backend
from trigft.harmonic.cone import JACOBIAN_STEP, NORTH, SOUTH

compiled_only = pytest.mark.skipif("compiled" not in _backend.KERNELS, reason="compiled kernel not built")


def test_python_kernel_always_present():
    assert "python" in _backend.KERNELS
    assert _backend.weight_grid is _backend.KERNELS[_backend.BACKEND]


@compiled_only
@pytest.mark.parametrize("anchor, th_mid", [(NORTH, 0.7), (SOUTH, 2.3)])
@pytest.mark.parametrize("t", [(0.0, 0.0, 0.0), (0.2, 0.4, 0.1), (-0.5, 0.3, 0.6)])
def test_kernels_agree(anchor, th_mid, t):
    nodes = quad.NODES15
    r = 2.0 + 1.5 * nodes
    th = th_mid + 0.3 * nodes
    ph = 3.0 + 2.0 * nodes
    ps = 3.0 + 3.0 * nodes
    a = _backend.KERNELS["compiled"](r, th, ph, ps, np.array(t), anchor, JACOBIAN_STEP)
    b = _backend.KERNELS["python"](r, th, ph, ps, np.array(t), anchor, JACOBIAN_STEP)
    assert a.shape == b.shape == (15, 15, 15, 15)
    assert np.max(np.abs(a - b)) <= 1e-13 * np.max(np.abs(b))


def _backend_in_subprocess(extra_env):
    env = dict(os.environ)
    env.pop("TRIGFT_PURE_PYTHON", None)
    env.update(extra_env)
    code = "from trigft.harmonic import _backend; print(_backend.BACKEND)"
    return subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env,
                          check=True).stdout.strip()


def test_pure_python_switch():
    assert _backend_in_subprocess({"TRIGFT_PURE_PYTHON": "1"}) == "python"


@compiled_only
def test_compiled_is_default():
    assert _backend_in_subprocess({}) == "compiled"

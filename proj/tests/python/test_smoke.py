import math
import os
import sys

module_dir = os.environ.get("GAMMALAB_MODULE_DIR")
if module_dir:
    sys.path.insert(0, module_dir)

import _gammalab as gl  # noqa: E402


def test_hilbert_norm_matches_mc():
    grid = gl.TimeGrid.uniform(0.0, 1.0, 8)
    x = gl.SpaceModel.hilbert(4)
    f = gl.random_step(grid, x, 1, 7)
    exact = gl.gamma_norm_hilbert(f).value
    mc = gl.gamma_norm_mc(f, 4096, 7)
    assert abs(mc.value - exact) <= 3.0 * mc.stderr


def test_mc_deterministic():
    grid = gl.TimeGrid.uniform(0.0, 1.0, 8)
    f = gl.random_step(grid, gl.SpaceModel.hilbert(3), 1, 11)
    a = gl.gamma_norm_mc(f, 512, 3).value
    b = gl.gamma_norm_mc(f, 512, 3).value
    assert a == b


def test_sqfn_constant():
    c = gl.sqfn_constant(gl.HoloFn.sqrt_exp())
    assert abs(c - 1.0 / math.sqrt(2.0)) < 1e-4


def test_sectorial_calculus_scalar():
    a = gl.SectorialOp.diagonal([1.0])
    fa = a.hinf_calculus(gl.HoloFn.z_over_1pz_sq(), 1.0)
    assert abs(fa[0, 0].real - 0.25) < 1e-6


def test_maxreg_constant_hilbert():
    a = gl.SectorialOp.diagonal([0.5, 1.0, 4.0])
    c = gl.maxreg_constant(a, 10, 19)
    assert 0.3 < c <= 1.05


def test_ito_isometry():
    grid = gl.TimeGrid.uniform(0.0, 1.0, 16)
    f = gl.random_step(grid, gl.SpaceModel.hilbert(3), 2, 23)
    g = gl.AdaptedProcess.deterministic(f, 512)
    w = gl.CylindricalBM(grid, 2, 512, 23)
    lhs, rhs, ratio = gl.ito_isomorphism_check(g, w, 2.0)
    assert 1.0 - 0.25 <= ratio <= 4.0 + 0.5


def test_exponent_row():
    row = gl.deterministic_exponent_row(64, 0.75, 1)
    assert row.conclusive
    assert abs(row.time_exp_measured - 0.25) < 0.05

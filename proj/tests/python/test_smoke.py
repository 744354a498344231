import math

import pytest

import delaylogistic as dlg


def test_version():
    assert dlg.__version__


def test_equilibrium():
    params = dlg.ModelParams(5.0, 5.0, 3.0)
    assert dlg.equilibrium(params) == pytest.approx(5.54138126514911, abs=1e-12)
    assert dlg.equilibrium(dlg.ModelParams(2.0, 5.0, 0.0)) == pytest.approx(5.0)
    with pytest.raises(ValueError):
        dlg.ModelParams(-1.0, 5.0, 0.0)


def test_kernels_and_transforms():
    assert dlg.kernel("dirac") is not None
    tf = dlg.KernelTransforms(dlg.gamma_kernel(2))
    assert tf.C(2.0) == pytest.approx(0.0, abs=1e-14)
    assert tf.C(0.0) == pytest.approx(1.0)
    assert tf.S(0.0) == pytest.approx(0.0)
    with pytest.raises(ValueError):
        dlg.kernel("triangle")
    with pytest.raises(ValueError):
        dlg.uniform_kernel(2.5)


def test_hopf_closed_form():
    tau = dlg.hopf_delay_d0(dlg.dirac_kernel(), 2.0)
    assert tau == pytest.approx(math.pi / 4.0, abs=1e-10)
    assert dlg.hopf_delay_d0(dlg.gamma_kernel(1), 2.0) is None


def test_hopf_curve_and_crossings():
    curve = dlg.hopf_curve_dpos(dlg.gamma_kernel(2), 5.0, 3.0)
    assert len(curve.points) > 50
    params = dlg.ModelParams(5.0, 5.0, 3.0)
    pts = dlg.hopf_crossings(params, dlg.gamma_kernel(2))
    assert len(pts) == 2
    assert pts[0].tau_m == pytest.approx(1.341016069094313, abs=1e-9)
    assert pts[0].crossing == dlg.CrossingDirection.LeftToRight
    assert pts[1].crossing == dlg.CrossingDirection.RightToLeft


def test_classify_and_oracle():
    params = dlg.ModelParams(5.0, 5.0, 3.0)
    kern = dlg.gamma_kernel(2)
    assert dlg.classify(params, kern, 0.5).state == dlg.Stability.Stable
    assert dlg.classify(params, kern, 5.0).state == dlg.Stability.Unstable
    assert dlg.gamma_eigen_oracle(params, 2, 5.0) > 0.0
    th = dlg.gamma_thresholds(5.0, 3.0)
    assert th.r_star == pytest.approx(3.675)


def test_simulate():
    params = dlg.ModelParams(2.0, 5.0, 0.0)
    cfg = dlg.SimConfig()
    cfg.t_end = 60.0
    cfg.step = 0.005
    traj = dlg.simulate(params, dlg.dirac_kernel(), 0.5, cfg)
    assert len(traj.times) == len(traj.values)
    assert all(v > 0.0 for v in traj.values)
    assert traj.values[-1] == pytest.approx(5.0, rel=1e-3)


def test_bifurcation_and_phase():
    params = dlg.ModelParams(2.0, 5.0, 0.0)
    cfg = dlg.SimConfig()
    cfg.t_end = 120.0
    cfg.step = 0.005
    cfg.amplitude_tol = 2e-3
    rows = dlg.bifurcation_sweep(params, dlg.dirac_kernel(), 0.7, 0.9, 5, cfg)
    assert len(rows) == 5
    switches = dlg.oscillation_switches(rows)
    assert len(switches) >= 1
    traj = dlg.simulate(params, dlg.dirac_kernel(), 0.95, cfg)
    pp = dlg.phase_portrait(traj)
    assert pp.limit_cycle
    assert len(pp.n) == len(pp.delayed)

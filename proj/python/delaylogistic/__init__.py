"""Delayed logistic model with distributed delay kernels.

Equilibria, kernel transforms, Hopf bifurcation analysis, and time-domain
simulation; thin Python layer over the C++ core.
"""

from typing import Union

from ._core import (  # noqa: F401
    BifurcationRow,
    CrossingDirection,
    CrossingFrequency,
    DiracKernel,
    GammaKernel,
    GammaThresholds,
    HopfCurve,
    HopfPoint,
    KernelTransforms,
    UniformKernel,
    ModelParams,
    PhasePortrait,
    SimConfig,
    Stability,
    StabilityVerdict,
    Trajectory,
    bifurcation_sweep,
    characteristic,
    classify,
    crossing_frequencies_d0,
    dirac_kernel,
    equilibrium,
    gamma_eigen_oracle,
    gamma_kernel,
    gamma_thresholds,
    hopf_crossings,
    hopf_curve_dpos,
    hopf_delay_d0,
    kernel,
    oscillation_switches,
    phase_portrait,
    simulate,
    simulate_dirac,
    simulate_gamma_chain,
    simulate_gamma_direct,
    simulate_uniform,
    transversality_dpos,
    uniform_kernel,
)

Kernel = Union[UniformKernel, DiracKernel, GammaKernel]

__version__ = "0.1.0"

#pragma once

#include <optional>
#include <vector>

#include "dlg/model.hpp"

// Time-domain integration of the nonlinear model with each kernel family,
// plus bifurcation-diagram sweeps and phase-portrait extraction.

namespace dlg {

struct SimConfig {
    double step = 0.0;           // 0 -> auto: max(1e-4, 1e-3 * tau_m)
    double t_end = 200.0;
    double transient_frac = 0.6; // discarded fraction of the horizon
    double history_value = 0.0;  // constant history n0; 0 -> auto: 0.8 * n*
    double amplitude_tol = 1e-4; // oscillation threshold, relative to n*
};

struct Trajectory {
    std::vector<double> times;
    std::vector<double> values;   // n(t)
    std::vector<double> delayed;  // delayed feedback channel at matching times
};

struct BifurcationRow {
    double tau_m;
    double n_min = 0.0;
    double n_max = 0.0;
    bool oscillating = false;
    bool failed = false;  // simulation error; sweep continues
};

struct PhasePortrait {
    std::vector<double> n;
    std::vector<double> delayed;
    bool limit_cycle = false;
};

/// Discrete-delay model; tau = 0 falls back to the plain logistic ODE.
Trajectory simulate_dirac(const ModelParams& params, double tau, SimConfig config = {});

/// Uniform kernel: the history integral over [tau(1-sigma/2), tau(1+sigma/2)]
/// is evaluated by composite trapezoid over the stored history each step.
Trajectory simulate_uniform(const ModelParams& params, double tau, double sigma,
                            SimConfig config = {});

/// Gamma kernel via the linear chain trick: a (p+1)-dimensional ODE system
/// with x_i(0) = n0; the delayed feedback channel is x_p.
Trajectory simulate_gamma_chain(const ModelParams& params, int p, double tau_m,
                                SimConfig config = {});

/// Gamma kernel by direct quadrature of the distributed-delay integral
/// (p <= 4); serves as an oracle against simulate_gamma_chain.
Trajectory simulate_gamma_direct(const ModelParams& params, int p, double tau_m,
                                 SimConfig config = {});

/// Dispatch on the kernel family (gamma uses the chain reduction).
Trajectory simulate(const ModelParams& params, const Kernel& kernel, double tau_m,
                    SimConfig config = {});

/// Asymptotic min/max amplitude per tau_m over [tau_lo, tau_hi]; rows are
/// ordered by tau_m and per-row failures are recorded without aborting.
std::vector<BifurcationRow> bifurcation_sweep(const ModelParams& params, const Kernel& kernel,
                                              double tau_lo, double tau_hi, int n_points,
                                              SimConfig config = {});

/// tau_m midpoints where the oscillation flag flips, in sweep order.
std::vector<double> oscillation_switches(const std::vector<BifurcationRow>& rows);

/// Post-transient (n(t), delayed(t)) pairs with closed-curve detection.
PhasePortrait phase_portrait(const Trajectory& trajectory, double transient_frac = 0.6,
                             double closure_tol = 1e-2);

}  // namespace dlg

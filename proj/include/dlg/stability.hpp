#pragma once

#include <optional>
#include <vector>

#include "dlg/model.hpp"

// Linear stability analysis of the positive equilibrium: pure-imaginary
// crossings of the characteristic equation, transversality, Hopf curves in
// the (r, tau_m) plane, and crossing-counting classification.

namespace dlg {

inline constexpr double kDefaultOmegaMax = 8.0 * 3.14159265358979323846;

enum class CrossingDirection { LeftToRight, RightToLeft };

struct HopfPoint {
    double omega;   // normalized crossing frequency
    double r;       // growth rate at the crossing
    double tau_m;   // mean delay at the crossing
    CrossingDirection crossing;
};

struct HopfCurve {
    std::vector<HopfPoint> points;  // ordered by omega
    Kernel kernel;
    double K = 0.0;
    double D = 0.0;
    // omega where S -> 0 inside the admissible band, if any (tau_m diverges
    // and r approaches a vertical asymptote there; gamma p=3: omega = 3*sqrt(3)).
    std::optional<double> asymptote_omega;
};

enum class Stability { Stable, Unstable };

struct StabilityVerdict {
    Stability state;
    // Distance in tau_m to the nearest Hopf crossing; empty when no crossing
    // exists for these parameters.
    std::optional<double> margin;
    bool marginal = false;  // within tie-break tolerance of a crossing
};

struct GammaThresholds {
    double r_star;   // p=2 existence threshold, 49 D / (8 K)
    double r_lower;  // p=3 lower threshold, 9 D / (4 K)
    double r_upper;  // p=3 vertical asymptote, 49 D / (8 K)
};

GammaThresholds gamma_thresholds(double K, double D);

struct CrossingFrequency {
    double omega;
    double c_prime;  // C'(omega) at the root
};

/// Roots of C(omega) = 0 in [1e-6, omega_max] (D = 0 crossing condition),
/// found by sign scan plus bisection.  Empty for gamma p=1, where C has no
/// real roots.
std::vector<CrossingFrequency> crossing_frequencies_d0(const Kernel& kernel,
                                                       double omega_max = kDefaultOmegaMax);

/// First Hopf delay for D = 0: tau_m* = omega0 / (r S(omega0)) where omega0
/// is the smallest root of C with C'(omega0) < 0.  Empty when no such root
/// exists (equilibrium stable for all tau_m).
std::optional<double> hopf_delay_d0(const Kernel& kernel, double r,
                                    double omega_max = kDefaultOmegaMax);

/// Hopf bifurcation curve in the (r, tau_m) plane for D > 0, parametrized by
/// omega over the admissible band C(omega) in (-1, 0), S(omega) > 0:
///   n*(omega) = K / (1 + C(omega)),
///   r(omega)  = D K / (n* (n* - K)),
///   tau_m     = omega K / (r n* S(omega)).
HopfCurve hopf_curve_dpos(const Kernel& kernel, double K, double D,
                          double omega_max = kDefaultOmegaMax, int n_points = 600);

/// Sign of Re(d lambda / d tau_m) at a pure-imaginary crossing of the given
/// parameter point, via the bracket
///   r tau_m n* S'(omega) - K + (K omega / tau_m) dtau_m/domega
/// with dtau_m/domega taken analytically along the fixed-(r,K,D) crossing
/// relation.  Throws std::domain_error on a degenerate (tangential) crossing.
CrossingDirection transversality_dpos(const Kernel& kernel, double K, double D,
                                      const HopfPoint& point);

/// All Hopf crossings in tau_m for fixed (r, K, D), ordered by tau_m.
/// Covers both D = 0 and D > 0.
std::vector<HopfPoint> hopf_crossings(const ModelParams& params, const Kernel& kernel,
                                      double omega_max = kDefaultOmegaMax);

/// Stability of n* at the given mean delay, by signed crossing counting
/// along increasing tau_m.
StabilityVerdict classify(const ModelParams& params, const Kernel& kernel, double tau_m,
                          double omega_max = kDefaultOmegaMax);

/// Independent oracle for gamma kernels (p <= 8): multiplies Delta(lambda)
/// by (lambda + p)^p, solves the resulting degree-(p+1) polynomial by
/// companion-matrix eigenvalues, and returns the maximal real part among
/// roots that back-substitute into Delta.
double gamma_eigen_oracle(const ModelParams& params, int p, double tau_m);

}  // namespace dlg

#include "dlg/stability.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace dlg {

namespace {

constexpr double kScanStep = 1e-3;
constexpr double kBisectTol = 1e-12;
constexpr double kBandEps = 1e-8;        // omega margin at admissible-band endpoints
constexpr double kDegenerateTol = 1e-10;
constexpr double kMarginalTol = 1e-9;

// Sign-scan on a uniform grid followed by bisection refinement.
std::vector<double> scan_roots(const std::function<double(double)>& f, double lo, double hi,
                               double step = kScanStep) {
    std::vector<double> roots;
    double a = lo;
    double fa = f(a);
    for (double b = lo + step; b <= hi + 0.5 * step; b += step) {
        const double x = std::min(b, hi);
        double fx = f(x);
        if (fa == 0.0) {
            roots.push_back(a);
        } else if (fa * fx < 0.0) {
            double l = a, r = x, fl = fa;
            while (r - l > kBisectTol) {
                const double m = 0.5 * (l + r);
                const double fm = f(m);
                if (fl * fm <= 0.0) {
                    r = m;
                } else {
                    l = m;
                    fl = fm;
                }
            }
            roots.push_back(0.5 * (l + r));
        }
        a = x;
        fa = fx;
        if (x >= hi) break;
    }
    return roots;
}

// Signed transversality expression Re(d lambda / d tau_m)^{-1} at a crossing
// for D > 0, using the analytic dtau_m/domega of the fixed-(r,K,D) crossing
// relation tau_m(omega) = -K omega C / (r (n*-K) S).
double transversality_value(const KernelTransforms& tf, double K, double ns,
                            const HopfPoint& pt) {
    const double w = pt.omega;
    const double C = tf.C(w), S = tf.S(w), Cp = tf.Cprime(w), Sp = tf.Sprime(w);
    const double r = pt.r, tau = pt.tau_m;
    const double dtau_domega =
        -(tau * ns / ((ns - K) * w)) * (C + w * (Cp * S - C * Sp) / S);
    const double bracket = r * tau * ns * Sp - K + (K * w / tau) * dtau_domega;
    const double re = r * (ns - K) + r * ns * C;
    const double im = r * ns * S;
    const double q2 = re * re + im * im;
    return r * (ns - K) / q2 * bracket;
}

}  // namespace

GammaThresholds gamma_thresholds(double K, double D) {
    if (!(K > 0.0) || !(D >= 0.0))
        throw std::invalid_argument("gamma_thresholds: require K > 0, D >= 0");
    return GammaThresholds{49.0 * D / (8.0 * K), 9.0 * D / (4.0 * K), 49.0 * D / (8.0 * K)};
}

std::vector<CrossingFrequency> crossing_frequencies_d0(const Kernel& kernel, double omega_max) {
    const KernelTransforms tf(kernel);
    std::vector<CrossingFrequency> out;
    for (double w : scan_roots([&](double x) { return tf.C(x); }, 1e-6, omega_max))
        out.push_back(CrossingFrequency{w, tf.Cprime(w)});
    return out;
}

std::optional<double> hopf_delay_d0(const Kernel& kernel, double r, double omega_max) {
    if (!(r > 0.0)) throw std::invalid_argument("hopf_delay_d0: r must be > 0");
    const KernelTransforms tf(kernel);
    for (const auto& cf : crossing_frequencies_d0(kernel, omega_max)) {
        if (cf.c_prime < 0.0) return cf.omega / (r * tf.S(cf.omega));
    }
    return std::nullopt;
}

CrossingDirection transversality_dpos(const Kernel& kernel, double K, double D,
                                      const HopfPoint& point) {
    if (!(D > 0.0)) throw std::invalid_argument("transversality_dpos: D must be > 0");
    const KernelTransforms tf(kernel);
    const double ns = K / (1.0 + tf.C(point.omega));
    const double val = transversality_value(tf, K, ns, point);
    if (std::abs(val) < kDegenerateTol)
        throw std::domain_error("transversality_dpos: degenerate (tangential) crossing");
    return val > 0.0 ? CrossingDirection::LeftToRight : CrossingDirection::RightToLeft;
}

HopfCurve hopf_curve_dpos(const Kernel& kernel, double K, double D, double omega_max,
                          int n_points) {
    if (!(D > 0.0)) throw std::invalid_argument("hopf_curve_dpos: D must be > 0");
    if (!(K > 0.0)) throw std::invalid_argument("hopf_curve_dpos: K must be > 0");
    if (n_points < 2) throw std::invalid_argument("hopf_curve_dpos: n_points must be >= 2");
    const KernelTransforms tf(kernel);
    HopfCurve curve;
    curve.kernel = kernel;
    curve.K = K;
    curve.D = D;

    const double lo = 1e-6;
    const double dw = (omega_max - lo) / (n_points - 1);
    bool prev_admissible_c = false;  // C in (-1,0) at previous sample
    double prev_w = lo, prev_s = 0.0;
    for (int i = 0; i < n_points; ++i) {
        const double w = lo + i * dw;
        const double C = tf.C(w);
        const double S = tf.S(w);
        const bool admissible_c = C > -1.0 + kBandEps && C < -kBandEps;
        // S -> 0 inside the band marks a vertical asymptote of the curve.
        if (!curve.asymptote_omega && admissible_c && prev_admissible_c && prev_s > 0.0 &&
            S <= 0.0) {
            const auto roots = scan_roots([&](double x) { return tf.S(x); }, prev_w, w, dw);
            if (!roots.empty()) curve.asymptote_omega = roots.front();
        }
        prev_admissible_c = admissible_c;
        prev_w = w;
        prev_s = S;
        if (!admissible_c || !(S > kBandEps)) continue;
        const double ns = K / (1.0 + C);
        const double r = D * K / (ns * (ns - K));
        const double tau = w * K / (r * ns * S);
        HopfPoint pt{w, r, tau, CrossingDirection::LeftToRight};
        const double val = transversality_value(tf, K, ns, pt);
        if (std::abs(val) < kDegenerateTol) continue;  // reject tangency
        pt.crossing = val > 0.0 ? CrossingDirection::LeftToRight : CrossingDirection::RightToLeft;
        curve.points.push_back(pt);
    }
    return curve;
}

std::vector<HopfPoint> hopf_crossings(const ModelParams& params, const Kernel& kernel,
                                      double omega_max) {
    validate(kernel);
    const KernelTransforms tf(kernel);
    const double ns = equilibrium(params);
    std::vector<HopfPoint> out;
    if (params.D == 0.0) {
        for (const auto& cf : crossing_frequencies_d0(kernel, omega_max)) {
            const double S = tf.S(cf.omega);
            if (!(S > 1e-9)) continue;  // would require negative (or divergent) tau_m
            if (std::abs(cf.c_prime) < kDegenerateTol) continue;
            out.push_back(HopfPoint{cf.omega, params.r, cf.omega / (params.r * S),
                                    cf.c_prime < 0.0 ? CrossingDirection::LeftToRight
                                                     : CrossingDirection::RightToLeft});
        }
    } else {
        const double c_target = params.K / ns - 1.0;
        const auto roots =
            scan_roots([&](double w) { return tf.C(w) - c_target; }, 1e-6, omega_max);
        for (double w : roots) {
            const double S = tf.S(w);
            if (!(S > 1e-9)) continue;
            const double tau = w * params.K / (params.r * ns * S);
            HopfPoint pt{w, params.r, tau, CrossingDirection::LeftToRight};
            const double val = transversality_value(tf, params.K, ns, pt);
            if (std::abs(val) < kDegenerateTol) continue;
            pt.crossing =
                val > 0.0 ? CrossingDirection::LeftToRight : CrossingDirection::RightToLeft;
            out.push_back(pt);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const HopfPoint& a, const HopfPoint& b) { return a.tau_m < b.tau_m; });
    return out;
}

StabilityVerdict classify(const ModelParams& params, const Kernel& kernel, double tau_m,
                          double omega_max) {
    if (!(tau_m >= 0.0)) throw std::invalid_argument("classify: tau_m must be >= 0");
    const auto crossings = hopf_crossings(params, kernel, omega_max);
    StabilityVerdict verdict{Stability::Stable, std::nullopt, false};
    if (crossings.empty()) return verdict;

    int net = 0;
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& pt : crossings) {
        margin = std::min(margin, std::abs(tau_m - pt.tau_m));
        if (std::abs(tau_m - pt.tau_m) < kMarginalTol) {
            verdict.marginal = true;  // linearization inconclusive; report unstable
        } else if (pt.tau_m < tau_m) {
            net += pt.crossing == CrossingDirection::LeftToRight ? 1 : -1;
        }
    }
    verdict.margin = margin;
    verdict.state =
        (net != 0 || verdict.marginal) ? Stability::Unstable : Stability::Stable;
    return verdict;
}

double gamma_eigen_oracle(const ModelParams& params, int p, double tau_m) {
    if (p < 1 || p > 8) throw std::invalid_argument("gamma_eigen_oracle: require 1 <= p <= 8");
    if (!(tau_m > 0.0)) throw std::invalid_argument("gamma_eigen_oracle: tau_m must be > 0");
    const double ns = equilibrium(params);
    const double a = tau_m * params.r * (ns - params.K) / params.K;
    const double b = tau_m * params.r * ns / params.K;

    // (lambda + p)^p (lambda + a) + b p^p, coefficients in ascending order.
    const int n = p + 1;
    std::vector<double> base(p + 1, 0.0);  // (lambda + p)^p
    base[0] = 1.0;
    for (int k = 0; k < p; ++k) {
        for (int j = k + 1; j > 0; --j) base[j] = base[j - 1] + p * base[j];
        base[0] *= p;
    }
    std::vector<double> coeff(n + 1, 0.0);
    for (int k = 0; k <= p; ++k) {
        coeff[k + 1] += base[k];
        coeff[k] += a * base[k];
    }
    coeff[0] += b * std::pow(static_cast<double>(p), p);

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeff[i] / coeff[n];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("gamma_eigen_oracle: eigenvalue iteration failed");

    const Kernel kernel = make_gamma(p);
    double max_re = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const std::complex<double> lam = solver.eigenvalues()(i);
        if (std::abs(lam + static_cast<double>(p)) < 1e-12) continue;
        const auto cp = characteristic(params, kernel, tau_m, lam);
        if (std::abs(cp.delta) > 1e-6 * (1.0 + std::abs(lam))) continue;  // spurious
        max_re = std::max(max_re, lam.real());
    }
    if (!std::isfinite(max_re))
        throw std::runtime_error("gamma_eigen_oracle: no polynomial root satisfies Delta");
    return max_re;
}

}  // namespace dlg

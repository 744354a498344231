#include "dlg/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace dlg {

namespace {

// Uniform-grid history with constant pre-history and 4-point (cubic)
// Lagrange interpolation.  Lookups slightly beyond the last stored point
// (at most one step, from RK stages) extrapolate through the last stencil.
class History {
public:
    History(double step, double n0, std::size_t reserve) : h_(step), n0_(n0) {
        values_.reserve(reserve);
        values_.push_back(n0);
    }

    void push(double v) { values_.push_back(v); }
    double step() const { return h_; }
    std::size_t size() const { return values_.size(); }

    double at_index(long i) const {
        if (i <= 0) return n0_;
        if (i >= static_cast<long>(values_.size()))
            return values_.back();
        return values_[static_cast<std::size_t>(i)];
    }

    double eval(double t) const {
        if (t <= 0.0) return n0_;
        double pos = t / h_;
        const long last = static_cast<long>(values_.size()) - 1;
        long i = static_cast<long>(std::floor(pos));
        i = std::clamp(i, 1L, last - 2 >= 1 ? last - 2 : 1L);
        const double x = pos - i;  // in [0,1] away from clamped edges
        const double ym1 = at_index(i - 1), y0 = at_index(i), y1 = at_index(i + 1),
                     y2 = at_index(i + 2);
        // Lagrange cubic through nodes -1, 0, 1, 2.
        const double a = x + 1.0, b = x, c = x - 1.0, d = x - 2.0;
        return -ym1 * b * c * d / 6.0 + y0 * a * c * d / 2.0 - y1 * a * b * d / 2.0 +
               y2 * a * b * c / 6.0;
    }

private:
    double h_;
    double n0_;
    std::vector<double> values_;
};

struct Resolved {
    double step;
    double n0;
    std::size_t n_steps;
};

Resolved resolve(const ModelParams& params, double tau_m, const SimConfig& config,
                 bool delayed) {
    double step = config.step;
    if (step <= 0.0) {
        step = delayed ? std::max(1e-4, 1e-3 * tau_m) : 1e-3;
        if (delayed && step >= tau_m / 20.0) step = tau_m / 40.0;
    }
    if (delayed && step >= tau_m / 20.0) {
        std::ostringstream msg;
        msg << "simulate: step " << step << " violates step < tau_m/20 = " << tau_m / 20.0;
        throw std::invalid_argument(msg.str());
    }
    if (!(config.t_end > 0.0)) throw std::invalid_argument("simulate: t_end must be > 0");
    double n0 = config.history_value;
    if (n0 <= 0.0) n0 = 0.8 * equilibrium(params);
    const std::size_t n_steps = static_cast<std::size_t>(std::ceil(config.t_end / step));
    return Resolved{step, n0, n_steps};
}

// Classic RK4 over dn/dt = r n (1 - I(t)/K) + D where the delayed feedback
// I(t) depends on stored history only.
Trajectory integrate_scalar(const ModelParams& params, const Resolved& rv,
                            const std::function<double(const History&, double)>& feedback) {
    const double h = rv.step;
    History hist(h, rv.n0, rv.n_steps + 1);
    Trajectory traj;
    traj.times.reserve(rv.n_steps + 1);
    traj.values.reserve(rv.n_steps + 1);
    traj.delayed.reserve(rv.n_steps + 1);

    auto f = [&](double n, double I) {
        return params.r * n * (1.0 - I / params.K) + params.D;
    };

    double n = rv.n0;
    double t = 0.0;
    double I0 = feedback(hist, 0.0);
    traj.times.push_back(0.0);
    traj.values.push_back(n);
    traj.delayed.push_back(I0);
    for (std::size_t k = 0; k < rv.n_steps; ++k) {
        const double Ih = feedback(hist, t + 0.5 * h);
        const double I1 = feedback(hist, t + h);
        const double k1 = f(n, I0);
        const double k2 = f(n + 0.5 * h * k1, Ih);
        const double k3 = f(n + 0.5 * h * k2, Ih);
        const double k4 = f(n + h * k3, I1);
        n += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
        if (!std::isfinite(n) || n <= 0.0) {
            std::ostringstream msg;
            msg << "simulate: state became " << (std::isfinite(n) ? "non-positive" : "non-finite")
                << " at t=" << t << " (step=" << h << ")";
            throw std::runtime_error(msg.str());
        }
        hist.push(n);
        I0 = I1;
        traj.times.push_back(t);
        traj.values.push_back(n);
        traj.delayed.push_back(I0);
    }
    return traj;
}

// Composite trapezoid of w(s) * hist(t - s) over [s_lo, s_hi].
double trapezoid_history(const History& hist, double t, double s_lo, double s_hi,
                         std::size_t n_sub, const std::function<double(double)>& weight) {
    const double ds = (s_hi - s_lo) / static_cast<double>(n_sub);
    double acc = 0.5 * (weight(s_lo) * hist.eval(t - s_lo) + weight(s_hi) * hist.eval(t - s_hi));
    for (std::size_t j = 1; j < n_sub; ++j) {
        const double s = s_lo + ds * static_cast<double>(j);
        acc += weight(s) * hist.eval(t - s);
    }
    return acc * ds;
}

// Upper tail mass of the gamma kernel: Q(p, x) = e^{-x} sum_{k<p} x^k/k!.
double gamma_tail(int p, double x) {
    double term = std::exp(-x);
    double acc = term;
    for (int k = 1; k < p; ++k) {
        term *= x / k;
        acc += term;
    }
    return acc;
}

}  // namespace

Trajectory simulate_dirac(const ModelParams& params, double tau, SimConfig config) {
    if (tau < 0.0) throw std::invalid_argument("simulate_dirac: tau must be >= 0");
    if (tau == 0.0) {
        const Resolved rv = resolve(params, 0.0, config, false);
        return integrate_scalar(params, rv,
                                [](const History& hist, double t) { return hist.eval(t); });
    }
    const Resolved rv = resolve(params, tau, config, true);
    return integrate_scalar(params, rv, [tau](const History& hist, double t) {
        return hist.eval(t - tau);
    });
}

Trajectory simulate_uniform(const ModelParams& params, double tau, double sigma,
                            SimConfig config) {
    validate(UniformKernel{sigma});
    if (!(tau > 0.0)) throw std::invalid_argument("simulate_uniform: tau must be > 0");
    const Resolved rv = resolve(params, tau, config, true);
    const double s_lo = tau * (1.0 - 0.5 * sigma);
    const double s_hi = tau * (1.0 + 0.5 * sigma);
    const std::size_t n_sub = std::max<std::size_t>(
        64, static_cast<std::size_t>(std::ceil((s_hi - s_lo) / rv.step)));
    const double inv_width = 1.0 / (sigma * tau);
    return integrate_scalar(params, rv, [=](const History& hist, double t) {
        return trapezoid_history(hist, t, s_lo, s_hi, n_sub,
                                 [inv_width](double) { return inv_width; });
    });
}

Trajectory simulate_gamma_chain(const ModelParams& params, int p, double tau_m,
                                SimConfig config) {
    validate(GammaKernel{p});
    if (!(tau_m > 0.0)) throw std::invalid_argument("simulate_gamma_chain: tau_m must be > 0");
    const Resolved rv = resolve(params, tau_m, config, false);
    const double gamma = static_cast<double>(p) / tau_m;
    const double h = rv.step;

    // State (n, x_1, ..., x_p); x_0 = n.  Constant initial history puts every
    // chain variable at n0.
    std::vector<double> y(static_cast<std::size_t>(p) + 1, rv.n0);
    std::vector<double> k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), w(y.size());

    auto deriv = [&](const std::vector<double>& s, std::vector<double>& out) {
        out[0] = params.r * s[0] * (1.0 - s[static_cast<std::size_t>(p)] / params.K) + params.D;
        for (int i = 1; i <= p; ++i)
            out[static_cast<std::size_t>(i)] =
                gamma * (s[static_cast<std::size_t>(i - 1)] - s[static_cast<std::size_t>(i)]);
    };

    Trajectory traj;
    traj.times.reserve(rv.n_steps + 1);
    traj.values.reserve(rv.n_steps + 1);
    traj.delayed.reserve(rv.n_steps + 1);
    traj.times.push_back(0.0);
    traj.values.push_back(y[0]);
    traj.delayed.push_back(y.back());

    double t = 0.0;
    for (std::size_t step_i = 0; step_i < rv.n_steps; ++step_i) {
        deriv(y, k1);
        for (std::size_t j = 0; j < y.size(); ++j) w[j] = y[j] + 0.5 * h * k1[j];
        deriv(w, k2);
        for (std::size_t j = 0; j < y.size(); ++j) w[j] = y[j] + 0.5 * h * k2[j];
        deriv(w, k3);
        for (std::size_t j = 0; j < y.size(); ++j) w[j] = y[j] + h * k3[j];
        deriv(w, k4);
        for (std::size_t j = 0; j < y.size(); ++j)
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        t += h;
        if (!std::isfinite(y[0]) || y[0] <= 0.0) {
            std::ostringstream msg;
            msg << "simulate_gamma_chain: state became "
                << (std::isfinite(y[0]) ? "non-positive" : "non-finite") << " at t=" << t;
            throw std::runtime_error(msg.str());
        }
        traj.times.push_back(t);
        traj.values.push_back(y[0]);
        traj.delayed.push_back(y.back());
    }
    return traj;
}

Trajectory simulate_gamma_direct(const ModelParams& params, int p, double tau_m,
                                 SimConfig config) {
    validate(GammaKernel{p});
    if (p > 4) throw std::invalid_argument("simulate_gamma_direct: p must be <= 4 (cost guard)");
    if (!(tau_m > 0.0)) throw std::invalid_argument("simulate_gamma_direct: tau_m must be > 0");
    const Resolved rv = resolve(params, tau_m, config, false);
    const double gamma = static_cast<double>(p) / tau_m;

    // Truncate the kernel support where the remaining mass drops below 1e-10.
    double x_max = static_cast<double>(p);
    while (gamma_tail(p, x_max) > 1e-10) x_max += 1.0;
    const double s_max = x_max / gamma;

    double fact = 1.0;
    for (int k = 2; k < p; ++k) fact *= k;
    const double norm = std::pow(gamma, p) / fact;
    auto weight = [=](double s) { return norm * std::pow(s, p - 1) * std::exp(-gamma * s); };

    const std::size_t n_sub = std::max<std::size_t>(
        256, static_cast<std::size_t>(std::ceil(s_max / rv.step)));
    return integrate_scalar(params, rv, [=](const History& hist, double t) {
        return trapezoid_history(hist, t, 0.0, s_max, n_sub, weight);
    });
}

Trajectory simulate(const ModelParams& params, const Kernel& kernel, double tau_m,
                    SimConfig config) {
    if (const auto* u = std::get_if<UniformKernel>(&kernel))
        return simulate_uniform(params, tau_m, u->sigma, config);
    if (std::holds_alternative<DiracKernel>(kernel)) return simulate_dirac(params, tau_m, config);
    return simulate_gamma_chain(params, std::get<GammaKernel>(kernel).p, tau_m, config);
}

namespace {

struct Amplitudes {
    double n_min, n_max;   // over the post-transient window
    double first, last;    // amplitudes over the two halves of that window
};

Amplitudes window_amplitudes(const Trajectory& traj, double transient_frac) {
    const std::size_t n = traj.values.size();
    const std::size_t start = static_cast<std::size_t>(transient_frac * n);
    const std::size_t mid = start + (n - start) / 2;
    Amplitudes a{traj.values[start], traj.values[start], 0.0, 0.0};
    double lo1 = traj.values[start], hi1 = lo1, lo2 = traj.values[mid], hi2 = lo2;
    for (std::size_t i = start; i < n; ++i) {
        const double v = traj.values[i];
        a.n_min = std::min(a.n_min, v);
        a.n_max = std::max(a.n_max, v);
        if (i < mid) {
            lo1 = std::min(lo1, v);
            hi1 = std::max(hi1, v);
        } else {
            lo2 = std::min(lo2, v);
            hi2 = std::max(hi2, v);
        }
    }
    a.first = hi1 - lo1;
    a.last = hi2 - lo2;
    return a;
}

}  // namespace

std::vector<BifurcationRow> bifurcation_sweep(const ModelParams& params, const Kernel& kernel,
                                              double tau_lo, double tau_hi, int n_points,
                                              SimConfig config) {
    if (!(tau_lo > 0.0) || !(tau_hi > tau_lo))
        throw std::invalid_argument("bifurcation_sweep: require 0 < tau_lo < tau_hi");
    if (n_points < 2) throw std::invalid_argument("bifurcation_sweep: n_points must be >= 2");
    const double ns = equilibrium(params);
    const double tol_abs = config.amplitude_tol * ns;

    std::vector<BifurcationRow> rows;
    rows.reserve(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        const double tau = tau_lo + (tau_hi - tau_lo) * i / (n_points - 1);
        BifurcationRow row{tau};
        try {
            SimConfig local = config;
            // Slow transients near a Hopf point: extend the horizon until the
            // amplitude trend settles (at most 3 doublings).
            for (int attempt = 0;; ++attempt) {
                const Trajectory traj = simulate(params, kernel, tau, local);
                const Amplitudes amp = window_amplitudes(traj, local.transient_frac);
                const bool settled =
                    (amp.first <= tol_abs && amp.last <= tol_abs) ||
                    std::abs(amp.last - amp.first) <= 0.05 * std::max(amp.first, amp.last);
                if (settled || attempt == 3) {
                    row.n_min = amp.n_min;
                    row.n_max = amp.n_max;
                    row.oscillating = amp.last > tol_abs;
                    break;
                }
                local.t_end *= 2.0;
            }
        } catch (const std::exception&) {
            row.failed = true;
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<double> oscillation_switches(const std::vector<BifurcationRow>& rows) {
    std::vector<double> out;
    const BifurcationRow* prev = nullptr;
    for (const auto& row : rows) {
        if (row.failed) continue;
        if (prev && row.oscillating != prev->oscillating)
            out.push_back(0.5 * (prev->tau_m + row.tau_m));
        prev = &row;
    }
    return out;
}

PhasePortrait phase_portrait(const Trajectory& trajectory, double transient_frac,
                             double closure_tol) {
    if (trajectory.values.empty())
        throw std::invalid_argument("phase_portrait: empty trajectory");
    const std::size_t n = trajectory.values.size();
    const std::size_t start = static_cast<std::size_t>(transient_frac * n);
    PhasePortrait pp;
    pp.n.assign(trajectory.values.begin() + start, trajectory.values.end());
    pp.delayed.assign(trajectory.delayed.begin() + start, trajectory.delayed.end());

    const Amplitudes amp = window_amplitudes(trajectory, transient_frac);
    double mean = 0.0;
    for (double v : pp.n) mean += v;
    mean /= static_cast<double>(pp.n.size());
    // A closed curve: persistent amplitude whose first and last post-transient
    // excursions agree within tolerance.
    pp.limit_cycle = amp.last > 1e-3 * mean &&
                     std::abs(amp.last - amp.first) < closure_tol * std::max(amp.first, amp.last);
    return pp;
}

}  // namespace dlg

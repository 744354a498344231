#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dlg/simulate.hpp"
#include "dlg/stability.hpp"

using namespace dlg;

namespace {

constexpr double kPi = 3.14159265358979323846;

double tail_amplitude(const Trajectory& traj, double frac = 0.6) {
    const std::size_t start = static_cast<std::size_t>(frac * traj.values.size());
    double lo = traj.values[start], hi = lo;
    for (std::size_t i = start; i < traj.values.size(); ++i) {
        lo = std::min(lo, traj.values[i]);
        hi = std::max(hi, traj.values[i]);
    }
    return hi - lo;
}

double sup_diff(const Trajectory& a, const Trajectory& b) {
    const std::size_t n = std::min(a.values.size(), b.values.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    return worst;
}

}  // namespace

TEST_CASE("trajectories stay positive and bounded") {
    SimConfig config;
    config.t_end = 60.0;
    config.step = 5e-3;
    for (double tau : {0.3, 0.9}) {
        for (double D : {0.0, 3.0}) {
            const ModelParams params(2.0, 5.0, D);
            for (const Trajectory& traj :
                 {simulate_dirac(params, tau, config), simulate_uniform(params, tau, 1.0, config),
                  simulate_gamma_chain(params, 3, tau, config)}) {
                REQUIRE(!traj.values.empty());
                for (double v : traj.values) {
                    CHECK(v > 0.0);
                    CHECK(v < 50.0);
                }
            }
        }
    }
}

TEST_CASE("subcritical delay decays to equilibrium, supercritical oscillates") {
    // Dirac, D = 0, r = 2: Hopf at tau* = pi/4.
    const ModelParams params(2.0, 5.0, 0.0);
    const double ns = equilibrium(params);
    SimConfig config;
    config.t_end = 120.0;
    config.step = 2e-3;

    const auto stable = simulate_dirac(params, 0.8 * kPi / 4.0, config);
    CHECK(std::abs(stable.values.back() - ns) <= 1e-3 * ns);
    CHECK(tail_amplitude(stable) <= 1e-3 * ns);

    const auto unstable = simulate_dirac(params, 1.2 * kPi / 4.0, config);
    CHECK(tail_amplitude(unstable) > 0.05 * ns);
    // Sustained, not transient: amplitude over the last two quarters agrees.
    const std::size_t n = unstable.values.size();
    Trajectory q3{{}, {unstable.values.begin() + n / 2, unstable.values.begin() + 3 * n / 4}, {}};
    Trajectory q4{{}, {unstable.values.begin() + 3 * n / 4, unstable.values.end()}, {}};
    const double a3 = tail_amplitude(q3, 0.0), a4 = tail_amplitude(q4, 0.0);
    CHECK(std::abs(a3 - a4) <= 0.08 * std::max(a3, a4));
}

TEST_CASE("equilibrium history is a fixed point of the integrator") {
    for (double D : {0.0, 3.0}) {
        const ModelParams params(2.0, 5.0, D);
        const double ns = equilibrium(params);
        SimConfig config;
        config.t_end = 40.0;
        config.step = 5e-3;
        config.history_value = ns;
        for (const Trajectory& traj :
             {simulate_dirac(params, 0.7, config), simulate_uniform(params, 0.7, 1.0, config),
              simulate_gamma_chain(params, 2, 0.7, config)}) {
            for (double v : traj.values) CHECK(std::abs(v - ns) <= 1e-8 * ns);
        }
        // The direct-quadrature variant carries a trapezoid bias in the kernel
        // mass, so it only holds the equilibrium to quadrature accuracy.
        for (double v : simulate_gamma_direct(params, 2, 0.7, config).values)
            CHECK(std::abs(v - ns) <= 1e-4 * ns);
    }
}

TEST_CASE("uniform kernel approaches the Dirac limit as sigma -> 0") {
    const ModelParams params(2.0, 5.0, 3.0);
    SimConfig config;
    config.t_end = 30.0;
    config.step = 2e-3;
    const auto dirac = simulate_dirac(params, 0.6, config);
    const auto narrow = simulate_uniform(params, 0.6, 0.02, config);
    CHECK(sup_diff(dirac, narrow) <= 1e-3);
}

TEST_CASE("gamma chain reduction matches direct quadrature") {
    SimConfig config;
    config.t_end = 30.0;
    config.step = 2e-3;
    struct Case {
        int p;
        double r, D, tau;
    };
    for (const Case& c : {Case{1, 2.0, 0.0, 0.5}, Case{1, 5.0, 3.0, 2.0},
                          Case{2, 2.0, 0.0, 0.5}, Case{2, 2.0, 3.0, 2.0},
                          Case{3, 2.0, 0.0, 0.5}, Case{3, 1.0, 3.0, 2.0}}) {
        const ModelParams params(c.r, 5.0, c.D);
        const auto chain = simulate_gamma_chain(params, c.p, c.tau, config);
        const auto direct = simulate_gamma_direct(params, c.p, c.tau, config);
        CHECK(sup_diff(chain, direct) <= 1e-3);
    }
}

TEST_CASE("step halving shows at least fourth-order convergence on the chain system") {
    // The chain reduction is a smooth ODE, so RK4 should show its full order.
    const ModelParams params(5.0, 5.0, 3.0);
    auto run = [&](double h) {
        SimConfig config;
        config.step = h;
        config.t_end = 20.0;
        return simulate_gamma_chain(params, 2, 2.0, config).values.back();
    };
    const double ref = run(1e-4);
    const double e1 = std::abs(run(8e-3) - ref);
    const double e2 = std::abs(run(4e-3) - ref);
    const double order = std::log2(e1 / e2);
    CHECK(order >= 3.5);
}

TEST_CASE("simulate dispatches on the kernel family") {
    const ModelParams params(2.0, 5.0, 3.0);
    SimConfig config;
    config.t_end = 20.0;
    config.step = 5e-3;
    CHECK(sup_diff(simulate(params, make_dirac(), 0.5, config),
                   simulate_dirac(params, 0.5, config)) == 0.0);
    CHECK(sup_diff(simulate(params, make_gamma(2), 0.5, config),
                   simulate_gamma_chain(params, 2, 0.5, config)) == 0.0);
    CHECK(sup_diff(simulate(params, make_uniform(1.0), 0.5, config),
                   simulate_uniform(params, 0.5, 1.0, config)) == 0.0);
}

TEST_CASE("zero delay reduces to the logistic ODE") {
    const ModelParams params(2.0, 5.0, 3.0);
    const double ns = equilibrium(params);
    SimConfig config;
    config.t_end = 30.0;
    config.step = 1e-3;
    const auto traj = simulate_dirac(params, 0.0, config);
    CHECK(std::abs(traj.values.back() - ns) <= 1e-6 * ns);
}

TEST_CASE("bifurcation sweep locates the Dirac onset near pi/4") {
    const ModelParams params(2.0, 5.0, 0.0);
    SimConfig config;
    config.step = 4e-3;
    config.t_end = 160.0;
    config.amplitude_tol = 2e-3;
    const auto rows = bifurcation_sweep(params, make_dirac(), 0.6, 1.0, 21, config);
    REQUIRE(rows.size() == 21);
    for (const auto& row : rows) CHECK(!row.failed);
    const auto switches = oscillation_switches(rows);
    REQUIRE(!switches.empty());
    CHECK(std::abs(switches.front() - kPi / 4.0) <= 0.05);
    // Amplitude grows with tau_m past onset.
    double prev = -1.0;
    for (const auto& row : rows) {
        if (!row.oscillating) continue;
        const double amp = row.n_max - row.n_min;
        CHECK(amp >= prev - 1e-9);
        prev = amp;
    }
}

TEST_CASE("phase portrait flags a limit cycle only past the Hopf point") {
    const ModelParams params(2.0, 5.0, 0.0);
    SimConfig config;
    config.step = 2e-3;
    config.t_end = 200.0;
    const auto cyc = phase_portrait(simulate_dirac(params, 1.2 * kPi / 4.0, config));
    CHECK(cyc.limit_cycle);
    REQUIRE(!cyc.n.empty());
    REQUIRE(cyc.n.size() == cyc.delayed.size());

    const auto spiral = phase_portrait(simulate_dirac(params, 0.7 * kPi / 4.0, config));
    CHECK(!spiral.limit_cycle);
}

TEST_CASE("sweep records per-row failures without aborting") {
    const ModelParams params(2.0, 5.0, 0.0);
    SimConfig config;
    config.step = 5e-3;
    config.t_end = 40.0;
    // The fixed step violates the step < tau/20 guard for the two smallest
    // delays; those rows are marked failed and the rest still run.
    const auto rows = bifurcation_sweep(params, make_dirac(), 0.05, 0.2, 4, config);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].failed);
    CHECK(rows[1].failed);
    CHECK(!rows[2].failed);
    CHECK(!rows[3].failed);
}

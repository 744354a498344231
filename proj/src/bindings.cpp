#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dlg/cli.hpp"
#include "dlg/simulate.hpp"
#include "dlg/stability.hpp"

namespace py = pybind11;
using namespace dlg;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Delayed logistic model with distributed delay kernels: equilibria, "
              "Hopf bifurcation analysis, and time-domain simulation";

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<double, double, double>(), py::arg("r"), py::arg("K"), py::arg("D") = 0.0)
        .def_readonly("r", &ModelParams::r)
        .def_readonly("K", &ModelParams::K)
        .def_readonly("D", &ModelParams::D)
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(r=" + std::to_string(p.r) + ", K=" + std::to_string(p.K) +
                   ", D=" + std::to_string(p.D) + ")";
        });

    // Kernel itself is a std::variant and crosses the boundary as a Union of
    // these three types (pybind11's variant caster).
    py::class_<UniformKernel>(m, "UniformKernel")
        .def(py::init([](double sigma) { return std::get<UniformKernel>(make_uniform(sigma)); }),
             py::arg("sigma"))
        .def_readonly("sigma", &UniformKernel::sigma)
        .def("name", [](const UniformKernel& k) { return kernel_name(Kernel{k}); })
        .def("__repr__",
             [](const UniformKernel& k) { return "Kernel(" + kernel_name(Kernel{k}) + ")"; });
    py::class_<DiracKernel>(m, "DiracKernel")
        .def(py::init<>())
        .def("name", [](const DiracKernel& k) { return kernel_name(Kernel{k}); })
        .def("__repr__",
             [](const DiracKernel& k) { return "Kernel(" + kernel_name(Kernel{k}) + ")"; });
    py::class_<GammaKernel>(m, "GammaKernel")
        .def(py::init([](int p) { return std::get<GammaKernel>(make_gamma(p)); }), py::arg("p"))
        .def_readonly("p", &GammaKernel::p)
        .def("name", [](const GammaKernel& k) { return kernel_name(Kernel{k}); })
        .def("__repr__",
             [](const GammaKernel& k) { return "Kernel(" + kernel_name(Kernel{k}) + ")"; });

    m.def("uniform_kernel", &make_uniform, py::arg("sigma"));
    m.def("dirac_kernel", &make_dirac);
    m.def("gamma_kernel", &make_gamma, py::arg("p"));
    m.def("kernel", &cli::parse_kernel, py::arg("spec"),
          "Parse 'uniform:sigma=<v>', 'dirac', or 'gamma:p=<n>'");

    m.def("equilibrium", &equilibrium, py::arg("params"));

    py::class_<KernelTransforms>(m, "KernelTransforms")
        .def(py::init<Kernel>(), py::arg("kernel"))
        .def("C", &KernelTransforms::C, py::arg("omega"))
        .def("S", &KernelTransforms::S, py::arg("omega"))
        .def("Cprime", &KernelTransforms::Cprime, py::arg("omega"))
        .def("Sprime", &KernelTransforms::Sprime, py::arg("omega"));

    m.def(
        "characteristic",
        [](const ModelParams& p, const Kernel& k, double tau_m, std::complex<double> lam) {
            return characteristic(p, k, tau_m, lam).delta;
        },
        py::arg("params"), py::arg("kernel"), py::arg("tau_m"), py::arg("lam"),
        "Delta(lambda) of the normalized characteristic equation");

    py::enum_<CrossingDirection>(m, "CrossingDirection")
        .value("LeftToRight", CrossingDirection::LeftToRight)
        .value("RightToLeft", CrossingDirection::RightToLeft);

    py::class_<HopfPoint>(m, "HopfPoint")
        .def_readonly("omega", &HopfPoint::omega)
        .def_readonly("r", &HopfPoint::r)
        .def_readonly("tau_m", &HopfPoint::tau_m)
        .def_readonly("crossing", &HopfPoint::crossing);

    py::class_<HopfCurve>(m, "HopfCurve")
        .def_readonly("points", &HopfCurve::points)
        .def_readonly("K", &HopfCurve::K)
        .def_readonly("D", &HopfCurve::D)
        .def_readonly("asymptote_omega", &HopfCurve::asymptote_omega);

    py::enum_<Stability>(m, "Stability")
        .value("Stable", Stability::Stable)
        .value("Unstable", Stability::Unstable);

    py::class_<StabilityVerdict>(m, "StabilityVerdict")
        .def_readonly("state", &StabilityVerdict::state)
        .def_readonly("margin", &StabilityVerdict::margin)
        .def_readonly("marginal", &StabilityVerdict::marginal);

    py::class_<GammaThresholds>(m, "GammaThresholds")
        .def_readonly("r_star", &GammaThresholds::r_star)
        .def_readonly("r_lower", &GammaThresholds::r_lower)
        .def_readonly("r_upper", &GammaThresholds::r_upper);

    py::class_<CrossingFrequency>(m, "CrossingFrequency")
        .def_readonly("omega", &CrossingFrequency::omega)
        .def_readonly("c_prime", &CrossingFrequency::c_prime);

    m.def("gamma_thresholds", &gamma_thresholds, py::arg("K"), py::arg("D"));
    m.def("crossing_frequencies_d0", &crossing_frequencies_d0, py::arg("kernel"),
          py::arg("omega_max") = kDefaultOmegaMax);
    m.def("hopf_delay_d0", &hopf_delay_d0, py::arg("kernel"), py::arg("r"),
          py::arg("omega_max") = kDefaultOmegaMax);
    m.def("hopf_curve_dpos", &hopf_curve_dpos, py::arg("kernel"), py::arg("K"), py::arg("D"),
          py::arg("omega_max") = kDefaultOmegaMax, py::arg("n_points") = 600);
    m.def("transversality_dpos", &transversality_dpos, py::arg("kernel"), py::arg("K"),
          py::arg("D"), py::arg("point"));
    m.def("hopf_crossings", &hopf_crossings, py::arg("params"), py::arg("kernel"),
          py::arg("omega_max") = kDefaultOmegaMax);
    m.def("classify", &classify, py::arg("params"), py::arg("kernel"), py::arg("tau_m"),
          py::arg("omega_max") = kDefaultOmegaMax);
    m.def("gamma_eigen_oracle", &gamma_eigen_oracle, py::arg("params"), py::arg("p"),
          py::arg("tau_m"));

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init([](double step, double t_end, double transient_frac, double history_value,
                         double amplitude_tol) {
                 return SimConfig{step, t_end, transient_frac, history_value, amplitude_tol};
             }),
             py::arg("step") = 0.0, py::arg("t_end") = 200.0, py::arg("transient_frac") = 0.6,
             py::arg("history_value") = 0.0, py::arg("amplitude_tol") = 1e-4)
        .def_readwrite("step", &SimConfig::step)
        .def_readwrite("t_end", &SimConfig::t_end)
        .def_readwrite("transient_frac", &SimConfig::transient_frac)
        .def_readwrite("history_value", &SimConfig::history_value)
        .def_readwrite("amplitude_tol", &SimConfig::amplitude_tol);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_readonly("values", &Trajectory::values)
        .def_readonly("delayed", &Trajectory::delayed);

    py::class_<BifurcationRow>(m, "BifurcationRow")
        .def_readonly("tau_m", &BifurcationRow::tau_m)
        .def_readonly("n_min", &BifurcationRow::n_min)
        .def_readonly("n_max", &BifurcationRow::n_max)
        .def_readonly("oscillating", &BifurcationRow::oscillating)
        .def_readonly("failed", &BifurcationRow::failed);

    py::class_<PhasePortrait>(m, "PhasePortrait")
        .def_readonly("n", &PhasePortrait::n)
        .def_readonly("delayed", &PhasePortrait::delayed)
        .def_readonly("limit_cycle", &PhasePortrait::limit_cycle);

    m.def("simulate_dirac", &simulate_dirac, py::arg("params"), py::arg("tau"),
          py::arg("config") = SimConfig{});
    m.def("simulate_uniform", &simulate_uniform, py::arg("params"), py::arg("tau"),
          py::arg("sigma"), py::arg("config") = SimConfig{});
    m.def("simulate_gamma_chain", &simulate_gamma_chain, py::arg("params"), py::arg("p"),
          py::arg("tau_m"), py::arg("config") = SimConfig{});
    m.def("simulate_gamma_direct", &simulate_gamma_direct, py::arg("params"), py::arg("p"),
          py::arg("tau_m"), py::arg("config") = SimConfig{});
    m.def("simulate", &simulate, py::arg("params"), py::arg("kernel"), py::arg("tau_m"),
          py::arg("config") = SimConfig{});
    m.def("bifurcation_sweep", &bifurcation_sweep, py::arg("params"), py::arg("kernel"),
          py::arg("tau_lo"), py::arg("tau_hi"), py::arg("n_points"),
          py::arg("config") = SimConfig{});
    m.def("oscillation_switches", &oscillation_switches, py::arg("rows"));
    m.def("phase_portrait", &phase_portrait, py::arg("trajectory"),
          py::arg("transient_frac") = 0.6, py::arg("closure_tol") = 1e-2);
}

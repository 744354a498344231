#include "dlg/model.hpp"

#include <cmath>
#include <sstream>

namespace dlg {

double equilibrium(const ModelParams& params) {
    return 0.5 * params.K * (1.0 + std::sqrt(1.0 + 4.0 * params.D / (params.r * params.K)));
}

Kernel make_uniform(double sigma) {
    Kernel k = UniformKernel{sigma};
    validate(k);
    return k;
}

Kernel make_dirac() { return DiracKernel{}; }

Kernel make_gamma(int p) {
    Kernel k = GammaKernel{p};
    validate(k);
    return k;
}

void validate(const Kernel& kernel) {
    if (const auto* u = std::get_if<UniformKernel>(&kernel)) {
        if (!(u->sigma > 0.0 && u->sigma < 2.0))
            throw std::invalid_argument("uniform kernel: sigma must lie in (0, 2)");
    } else if (const auto* g = std::get_if<GammaKernel>(&kernel)) {
        if (g->p < 1) throw std::invalid_argument("gamma kernel: p must be >= 1");
    }
}

std::string kernel_name(const Kernel& kernel) {
    std::ostringstream out;
    if (const auto* u = std::get_if<UniformKernel>(&kernel)) {
        out << "uniform:sigma=" << u->sigma;
    } else if (std::holds_alternative<DiracKernel>(kernel)) {
        out << "dirac";
    } else {
        out << "gamma:p=" << std::get<GammaKernel>(kernel).p;
    }
    return out.str();
}

namespace {

// sin(x)/x with the removable singularity handled by a Maclaurin series.
double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0;
    }
    return std::sin(x) / x;
}

// d/dx [sin(x)/x] = (x cos x - sin x) / x^2.
double sinc_prime(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return x * (-1.0 / 3.0 + x2 / 30.0 - x2 * x2 / 840.0);
    }
    return (x * std::cos(x) - std::sin(x)) / (x * x);
}

// Integer power by repeated multiplication; exponent >= 0.
std::complex<double> ipow(std::complex<double> z, int n) {
    std::complex<double> acc{1.0, 0.0};
    while (n > 0) {
        if (n & 1) acc *= z;
        z *= z;
        n >>= 1;
    }
    return acc;
}

// G^(iw) for the gamma kernel and its derivative with respect to w:
//   G^(iw)          = (p/(p+iw))^p
//   d/dw G^(iw)     = -i p G^(iw) / (p+iw)
// giving C = Re G^, S = -Im G^, C' = Re dG^/dw, S' = -Im dG^/dw.
std::complex<double> gamma_axis(int p, double omega) {
    const std::complex<double> z{static_cast<double>(p), omega};
    return ipow(static_cast<double>(p) / z, p);
}

}  // namespace

KernelTransforms::KernelTransforms(Kernel kernel) : kernel_(std::move(kernel)) {
    validate(kernel_);
}

double KernelTransforms::C(double omega) const {
    if (omega < 0.0) throw std::invalid_argument("KernelTransforms: omega must be >= 0");
    if (const auto* u = std::get_if<UniformKernel>(&kernel_))
        return std::cos(omega) * sinc(0.5 * u->sigma * omega);
    if (std::holds_alternative<DiracKernel>(kernel_)) return std::cos(omega);
    const int p = std::get<GammaKernel>(kernel_).p;
    switch (p) {
        case 1:
            return 1.0 / (1.0 + omega * omega);
        case 2: {
            const double w2 = omega * omega / 4.0;
            return (1.0 - w2) / ((1.0 + w2) * (1.0 + w2));
        }
        case 3: {
            const double w2 = omega * omega / 9.0;
            const double d = (1.0 + w2) * (1.0 + w2) * (1.0 + w2);
            return (1.0 - omega * omega / 3.0) / d;
        }
        default:
            return gamma_axis(p, omega).real();
    }
}

double KernelTransforms::S(double omega) const {
    if (omega < 0.0) throw std::invalid_argument("KernelTransforms: omega must be >= 0");
    if (const auto* u = std::get_if<UniformKernel>(&kernel_))
        return std::sin(omega) * sinc(0.5 * u->sigma * omega);
    if (std::holds_alternative<DiracKernel>(kernel_)) return std::sin(omega);
    const int p = std::get<GammaKernel>(kernel_).p;
    switch (p) {
        case 1:
            return omega / (1.0 + omega * omega);
        case 2: {
            const double w2 = omega * omega / 4.0;
            return omega / ((1.0 + w2) * (1.0 + w2));
        }
        case 3: {
            const double w2 = omega * omega / 9.0;
            const double d = (1.0 + w2) * (1.0 + w2) * (1.0 + w2);
            return omega * (1.0 - omega * omega / 27.0) / d;
        }
        default:
            return -gamma_axis(p, omega).imag();
    }
}

double KernelTransforms::Cprime(double omega) const {
    if (omega < 0.0) throw std::invalid_argument("KernelTransforms: omega must be >= 0");
    if (const auto* u = std::get_if<UniformKernel>(&kernel_)) {
        const double half = 0.5 * u->sigma;
        return -std::sin(omega) * sinc(half * omega) +
               std::cos(omega) * half * sinc_prime(half * omega);
    }
    if (std::holds_alternative<DiracKernel>(kernel_)) return -std::sin(omega);
    const int p = std::get<GammaKernel>(kernel_).p;
    const std::complex<double> g = gamma_axis(p, omega);
    const std::complex<double> dg =
        std::complex<double>{0.0, -static_cast<double>(p)} * g /
        std::complex<double>{static_cast<double>(p), omega};
    return dg.real();
}

double KernelTransforms::Sprime(double omega) const {
    if (omega < 0.0) throw std::invalid_argument("KernelTransforms: omega must be >= 0");
    if (const auto* u = std::get_if<UniformKernel>(&kernel_)) {
        const double half = 0.5 * u->sigma;
        return std::cos(omega) * sinc(half * omega) +
               std::sin(omega) * half * sinc_prime(half * omega);
    }
    if (std::holds_alternative<DiracKernel>(kernel_)) return std::cos(omega);
    const int p = std::get<GammaKernel>(kernel_).p;
    const std::complex<double> g = gamma_axis(p, omega);
    const std::complex<double> dg =
        std::complex<double>{0.0, -static_cast<double>(p)} * g /
        std::complex<double>{static_cast<double>(p), omega};
    return -dg.imag();
}

std::complex<double> kernel_laplace(const Kernel& kernel, std::complex<double> lambda) {
    if (const auto* u = std::get_if<UniformKernel>(&kernel)) {
        // 2 sinh(sigma lambda/2) e^{-lambda} / (sigma lambda), with
        // sinh(x)/x -> 1 as x -> 0.
        const std::complex<double> x = 0.5 * u->sigma * lambda;
        std::complex<double> sinch;
        if (std::abs(x) < 1e-4) {
            const std::complex<double> x2 = x * x;
            sinch = 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
        } else {
            sinch = std::sinh(x) / x;
        }
        return std::exp(-lambda) * sinch;
    }
    if (std::holds_alternative<DiracKernel>(kernel)) return std::exp(-lambda);
    const int p = std::get<GammaKernel>(kernel).p;
    const std::complex<double> den = lambda + static_cast<double>(p);
    if (std::abs(den) < 1e-12)
        throw std::domain_error("gamma kernel Laplace transform: lambda too close to pole -p");
    return ipow(static_cast<double>(p) / den, p);
}

CharacteristicPoint characteristic(const ModelParams& params, const Kernel& kernel,
                                   double tau_m, std::complex<double> lambda) {
    validate(kernel);
    if (!(tau_m > 0.0)) throw std::invalid_argument("characteristic: tau_m must be > 0");
    const double ns = equilibrium(params);
    const std::complex<double> ghat = kernel_laplace(kernel, lambda);
    const std::complex<double> delta = lambda +
                                       tau_m * params.r * (ns - params.K) / params.K +
                                       tau_m * params.r * ns / params.K * ghat;
    return CharacteristicPoint{lambda, delta};
}

}  // namespace dlg

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <variant>

// Core objects of the delayed logistic model with constant nutrient inflow:
//
//   dn/dt = r n(t) [1 - (1/K) \int_0^inf n(t-s) g(s) ds] + D
//
// together with the three delay kernel families (uniform, Dirac, gamma),
// their normalized cosine/sine transforms, and the characteristic function
// of the linearization about the positive equilibrium.

namespace dlg {

struct ModelParams {
    double r;  // intrinsic growth rate, > 0
    double K;  // carrying capacity, > 0
    double D;  // nutrient inflow rate, >= 0

    ModelParams(double r_, double K_, double D_) : r(r_), K(K_), D(D_) {
        if (!(r > 0.0)) throw std::invalid_argument("ModelParams: r must be > 0");
        if (!(K > 0.0)) throw std::invalid_argument("ModelParams: K must be > 0");
        if (!(D >= 0.0)) throw std::invalid_argument("ModelParams: D must be >= 0");
    }
};

/// Positive equilibrium n* = (1 + sqrt(1 + 4D/(rK))) K / 2.  For D = 0 this
/// reduces to n* = K; in all cases n* >= K.
double equilibrium(const ModelParams& params);

// Delay kernels.  All frequency-domain analysis is done on the normalized
// kernel (mean delay rescaled to 1), so the kernels carry only their shape
// parameters; the mean delay tau_m enters elsewhere.

struct UniformKernel {
    double sigma;  // relative width, in (0, 2)
};

struct DiracKernel {};

struct GammaKernel {
    int p;  // order, >= 1
};

using Kernel = std::variant<UniformKernel, DiracKernel, GammaKernel>;

Kernel make_uniform(double sigma);
Kernel make_dirac();
Kernel make_gamma(int p);

/// Throws std::invalid_argument if the kernel parameters are out of range.
void validate(const Kernel& kernel);

/// Short human-readable tag, e.g. "uniform:sigma=1", "dirac", "gamma:p=2".
std::string kernel_name(const Kernel& kernel);

// Cosine/sine transforms of the normalized kernel g^ (mean delay 1),
//
//   C(w) = \int cos(w s) g^(s) ds,   S(w) = \int sin(w s) g^(s) ds,
//
// with closed-form derivatives.  The Laplace transform on the imaginary
// axis is G^(iw) = C(w) - i S(w).
class KernelTransforms {
public:
    explicit KernelTransforms(Kernel kernel);

    double C(double omega) const;
    double S(double omega) const;
    double Cprime(double omega) const;
    double Sprime(double omega) const;

    const Kernel& kernel() const { return kernel_; }

private:
    Kernel kernel_;
};

struct CharacteristicPoint {
    std::complex<double> lambda;
    std::complex<double> delta;  // Delta(lambda)
};

/// Characteristic function of the linearization in normalized time,
///
///   Delta(lambda) = lambda + tau_m r (n*-K)/K + tau_m (r n*/K) G^(lambda),
///
/// where G^ is the Laplace transform of the normalized kernel.  For the
/// gamma kernel G^(lambda) = (p/(lambda+p))^p; evaluation within 1e-12 of
/// the pole lambda = -p is rejected.
CharacteristicPoint characteristic(const ModelParams& params, const Kernel& kernel,
                                   double tau_m, std::complex<double> lambda);

/// Laplace transform G^(lambda) of the normalized kernel.
std::complex<double> kernel_laplace(const Kernel& kernel, std::complex<double> lambda);

}  // namespace dlg

#pragma once

#include "wavebound/kernels.hpp"
#include "wavebound/types.hpp"

namespace wavebound {

/// Samples zeta = omega + i eta strictly inside the upper half-plane, where
/// the Laplace-Fourier transform of bounded signals converges.
struct ComplexFrequencyGrid {
    std::vector<Complex> zeta;

    static ComplexFrequencyGrid rectangle(double omega_min, double omega_max, int n_omega,
                                          double eta_min, double eta_max, int n_eta);
    void validate() const;  ///< throws SpecError unless every Im zeta > 0
};

/// u_hat(zeta) = integral_0^T u(t) e^{i zeta t} dt with the truncation-tail
/// bound sup|u| e^{-eta T} / eta reported per point.
struct TransformResult {
    std::vector<Complex> value;
    std::vector<double> tail_bound;
};
TransformResult laplace_transform(std::span<const double> u, double dt,
                                  const ComplexFrequencyGrid& grid,
                                  double tail_tolerance = 1e-6);

/// Z(s) = k/s + 2a + s for the unit-mass damped oscillator u'' + 2a u' + k u = g.
Complex impedance_damped_oscillator(double k, double a_damp, Complex s);

/// 2x2 impedance operator of the retarded (spring-coupled) boundary system
/// with unit mass: Z(zeta) = -i [zeta Id - A + i a_hat(zeta)], where
/// A = [[0, i sqrt(k)], [-i sqrt(k), 0]] and a_hat = diag(0, k~/((a k~/T) - i zeta))
/// is the transform of the exponential friction kernel.
Eigen::Matrix2cd impedance_operator_retarded(double k, double k_tilde, double wave_speed,
                                             double tension, Complex zeta);

/// Empirical admittance v_hat / f_hat of the reduced boundary system
/// m u'' + k u + friction = f: applies a one-step rectangular impulse of unit
/// integral, simulates, transforms the velocity response and divides by the
/// pulse's exact transform.
struct AdmittanceMeasurement {
    ComplexFrequencyGrid grid;
    std::vector<Complex> value;
    std::vector<double> err_bound;
};
AdmittanceMeasurement measure_admittance(double m, double k, const MemoryKernel& kernel,
                                         const ComplexFrequencyGrid& grid, double dt,
                                         double t_end, double tail_tolerance = 1e-6);

/// Transform of the friction kernel, a_hat(zeta) = alpha_inf + sum over terms.
Complex kernel_transform(const MemoryKernel& kernel, Complex zeta);

/// Dissipativity check: Re a_hat(zeta) >= 0 over a dense upper-half-plane grid
/// (the Herglotz property Im <v, i a_hat v> >= 0 reduced to scalars) plus the
/// sign of the discrete friction work on random smooth velocity signals.
struct PositivityVerdict {
    bool passed = true;
    Complex worst_zeta;
    double worst_value = 0.0;  ///< most negative Re a_hat sample
    double worst_work = 0.0;   ///< most positive friction work (should be <= 0)
};
PositivityVerdict check_positive_definite_ae(const MemoryKernel& kernel,
                                             unsigned rng_seed = 12345);

}  // namespace wavebound

#pragma once

#include "wavebound/types.hpp"

#include <span>

namespace wavebound {

/// One damped-(co)sinusoid term of a friction memory kernel,
///   c * exp(-lambda*t) * cos(omega*t)   or   c * exp(-lambda*t) * sin(omega*t).
struct KernelTerm {
    enum class Phase { Cos, Sin };
    double c = 0.0;       ///< amplitude (force per unit velocity per unit time)
    double lambda = 0.0;  ///< decay rate, must be > 0
    double omega = 0.0;   ///< oscillation rate
    Phase phase = Phase::Cos;
};

/// Retarded friction kernel kappa(t) = sum of damped (co)sinusoids, plus an
/// optional instantaneous (Dirac) component alpha_inf * delta(t).
struct MemoryKernel {
    std::vector<KernelTerm> terms;
    double alpha_inf = 0.0;

    bool empty() const { return terms.empty() && alpha_inf == 0.0; }

    /// Pointwise value of the continuous part kappa(t), t >= 0.
    double at(double t) const;

    /// Kernel with all amplitudes (and alpha_inf) scaled by s.
    MemoryKernel scaled(double s) const;

    /// Throws SpecError unless every lambda > 0 and alpha_inf >= 0.
    void validate() const;
};

/// Kernel of the string back-reaction on a spring-coupled boundary:
/// kappa(t) = k_tilde * exp(-(a*k_tilde/T) * t). k_tilde = 0 gives the empty
/// kernel (no friction).
MemoryKernel kernel_from_string_coupling(double wave_speed, double k_tilde, double tension);

/// Brute-force friction history
///   F(t_n) = integral_0^{t_n} kappa(t_n - tau) v(tau) dtau + alpha_inf * v(t_n)
/// by composite trapezoid on uniform samples starting at t=0 (system at rest
/// for t <= 0). O(N^2); this is the oracle engine, the auxiliary-state engine
/// below is the production one.
std::vector<double> convolve_direct(const MemoryKernel& kernel,
                                    std::span<const double> velocity, double dt);

/// Auxiliary ODE realization of the convolution: one complex pair
/// (value, phase companion) per term,
///   qc' = -lambda*qc + omega*qs + v,   qs' = -lambda*qs - omega*qc,
/// so that qc = integral e^{-lambda(t-tau)} cos(omega(t-tau)) v dtau and
/// -qs the sin counterpart. aux = 0 is a system at rest for all t <= 0.
struct KernelState {
    Eigen::ArrayXd qc;
    Eigen::ArrayXd qs;
    double last_input = 0.0;

    static KernelState rest(const MemoryKernel& kernel);
};

/// Advances the auxiliary state over one step with the velocity held at its
/// midpoint value (exact exponential propagator, second order overall) and
/// returns the friction force at the end of the step,
///   sum_i c_i * (qc_i or -qs_i) + alpha_inf * velocity.
std::pair<KernelState, double> advance_kernel_state(const KernelState& state,
                                                    const MemoryKernel& kernel,
                                                    double velocity, double dt);

/// Friction force readout for an already-advanced state.
double kernel_force(const KernelState& state, const MemoryKernel& kernel, double velocity);

}  // namespace wavebound

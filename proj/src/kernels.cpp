#include "wavebound/kernels.hpp"

#include <cmath>

namespace wavebound {

double MemoryKernel::at(double t) const {
    double v = 0.0;
    for (const auto& term : terms) {
        const double envelope = term.c * std::exp(-term.lambda * t);
        v += envelope * (term.phase == KernelTerm::Phase::Cos ? std::cos(term.omega * t)
                                                              : std::sin(term.omega * t));
    }
    return v;
}

MemoryKernel MemoryKernel::scaled(double s) const {
    MemoryKernel out = *this;
    for (auto& term : out.terms) term.c *= s;
    out.alpha_inf *= s;
    return out;
}

void MemoryKernel::validate() const {
    std::vector<std::string> bad;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (!(terms[i].lambda > 0.0))
            bad.push_back("kernel term " + std::to_string(i) + " has nonpositive decay rate");
        if (!std::isfinite(terms[i].c) || !std::isfinite(terms[i].omega))
            bad.push_back("kernel term " + std::to_string(i) + " has non-finite coefficients");
    }
    if (!(alpha_inf >= 0.0)) bad.push_back("instantaneous coefficient alpha_inf must be >= 0");
    if (!bad.empty()) throw SpecError(bad);
}

MemoryKernel kernel_from_string_coupling(double wave_speed, double k_tilde, double tension) {
    std::vector<std::string> bad;
    if (!(wave_speed > 0.0)) bad.push_back("wave speed must be > 0");
    if (!(tension > 0.0)) bad.push_back("tension must be > 0");
    if (k_tilde < 0.0) bad.push_back("coupling stiffness must be >= 0");
    if (!bad.empty()) throw SpecError(bad);

    MemoryKernel kernel;
    if (k_tilde > 0.0) {
        kernel.terms.push_back({k_tilde, wave_speed * k_tilde / tension, 0.0,
                                KernelTerm::Phase::Cos});
    }
    return kernel;
}

std::vector<double> convolve_direct(const MemoryKernel& kernel,
                                    std::span<const double> velocity, double dt) {
    if (!(dt > 0.0)) throw SpecError("convolve_direct requires dt > 0");
    kernel.validate();
    const std::size_t n = velocity.size();
    std::vector<double> force(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * dt;
        double acc = 0.0;
        // trapezoid over [0, t]
        for (std::size_t j = 0; j <= i; ++j) {
            const double w = (j == 0 || j == i) ? 0.5 : 1.0;
            acc += w * kernel.at(t - static_cast<double>(j) * dt) * velocity[j];
        }
        force[i] = acc * dt + kernel.alpha_inf * velocity[i];
        if (!std::isfinite(force[i])) throw NumericalBlowup(t, force[i]);
    }
    return force;
}

KernelState KernelState::rest(const MemoryKernel& kernel) {
    KernelState s;
    const auto n = static_cast<Eigen::Index>(kernel.terms.size());
    s.qc = Eigen::ArrayXd::Zero(n);
    s.qs = Eigen::ArrayXd::Zero(n);
    return s;
}

std::pair<KernelState, double> advance_kernel_state(const KernelState& state,
                                                    const MemoryKernel& kernel,
                                                    double velocity, double dt) {
    if (!(dt > 0.0)) throw SpecError("advance_kernel_state requires dt > 0");
    if (state.qc.size() != static_cast<Eigen::Index>(kernel.terms.size()))
        throw SpecError("kernel state dimension does not match kernel term count");

    KernelState next = state;
    next.last_input = velocity;
    for (std::size_t i = 0; i < kernel.terms.size(); ++i) {
        const auto& term = kernel.terms[i];
        const Complex mu(term.lambda, term.omega);
        const Complex q(state.qc[static_cast<Eigen::Index>(i)],
                        state.qs[static_cast<Eigen::Index>(i)]);
        const Complex decay = std::exp(-mu * dt);
        // exact propagator with v held constant over the step:
        // q(t+dt) = e^{-mu dt} q(t) + v (1 - e^{-mu dt})/mu
        const Complex qn = decay * q + velocity * (1.0 - decay) / mu;
        next.qc[static_cast<Eigen::Index>(i)] = qn.real();
        next.qs[static_cast<Eigen::Index>(i)] = qn.imag();
    }
    return {next, kernel_force(next, kernel, velocity)};
}

double kernel_force(const KernelState& state, const MemoryKernel& kernel, double velocity) {
    double f = kernel.alpha_inf * velocity;
    for (std::size_t i = 0; i < kernel.terms.size(); ++i) {
        const auto& term = kernel.terms[i];
        const auto k = static_cast<Eigen::Index>(i);
        f += term.c * (term.phase == KernelTerm::Phase::Cos ? state.qc[k] : -state.qs[k]);
    }
    return f;
}

}  // namespace wavebound

#pragma once

// Test-only oracle: an independent O(N^2) route to the reduced boundary
// trajectory. Trapezoid convolution over the full velocity history inside an
// iterated trapezoid (Picard) step; shares no code with the auxiliary-state
// engine it cross-checks.

#include "wavebound/solver1d.hpp"

#include <cmath>
#include <vector>

namespace wavebound::testing {

inline ReducedTrajectory picard_reference(double m, double k, const MemoryKernel& kernel,
                                          double psi0, double v0, double t_end, double dt) {
    const long steps = std::lround(t_end / dt);
    std::vector<double> kappa(steps + 1);
    for (long j = 0; j <= steps; ++j) kappa[j] = kernel.at(j * dt);

    std::vector<double> psi{psi0}, vel{v0};
    auto friction_at = [&](long n, double v_n) {
        double acc = 0.0;
        for (long j = 0; j < n; ++j) {
            const double w = (j == 0) ? 0.5 : 1.0;
            acc += w * kappa[n - j] * vel[j];
        }
        acc += 0.5 * kappa[0] * v_n;
        return acc * dt + kernel.alpha_inf * v_n;
    };

    ReducedTrajectory out;
    out.t.push_back(0.0);
    out.psi.push_back(psi0);
    out.psi_dot.push_back(v0);
    for (long n = 0; n < steps; ++n) {
        const double f_n = friction_at(n, vel[n]);
        const double a_n = (-k * psi[n] - f_n) / m;
        double v_next = vel[n] + dt * a_n;
        double p_next = psi[n] + dt * vel[n] + 0.5 * dt * dt * a_n;
        for (int it = 0; it < 4; ++it) {
            const double f_next = friction_at(n + 1, v_next);
            const double a_next = (-k * p_next - f_next) / m;
            v_next = vel[n] + 0.5 * dt * (a_n + a_next);
            p_next = psi[n] + 0.5 * dt * (vel[n] + v_next);
        }
        psi.push_back(p_next);
        vel.push_back(v_next);
        out.t.push_back((n + 1) * dt);
        out.psi.push_back(p_next);
        out.psi_dot.push_back(v_next);
    }
    return out;
}

inline double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace wavebound::testing

#include "wavebound/response.hpp"

#include "wavebound/solver1d.hpp"

#include <cmath>
#include <random>

namespace wavebound {

ComplexFrequencyGrid ComplexFrequencyGrid::rectangle(double omega_min, double omega_max,
                                                     int n_omega, double eta_min, double eta_max,
                                                     int n_eta) {
    ComplexFrequencyGrid g;
    for (int ie = 0; ie < n_eta; ++ie) {
        const double eta = (n_eta == 1) ? eta_min
                                        : eta_min + (eta_max - eta_min) * ie / (n_eta - 1);
        for (int io = 0; io < n_omega; ++io) {
            const double omega = (n_omega == 1)
                                     ? omega_min
                                     : omega_min + (omega_max - omega_min) * io / (n_omega - 1);
            g.zeta.emplace_back(omega, eta);
        }
    }
    g.validate();
    return g;
}

void ComplexFrequencyGrid::validate() const {
    for (const auto& z : zeta)
        if (!(z.imag() > 0.0))
            throw SpecError("frequency grid point off the open upper half-plane");
}

TransformResult laplace_transform(std::span<const double> u, double dt,
                                  const ComplexFrequencyGrid& grid, double tail_tolerance) {
    grid.validate();
    if (!(dt > 0.0) || u.size() < 2) throw SpecError("laplace_transform needs dt > 0 and data");
    const std::size_t n = u.size();
    const double t_end = (n - 1) * dt;

    // proxy for sup |u| on the truncated tail: the largest sample of the last tenth
    double tail_sup = 0.0;
    for (std::size_t i = (9 * n) / 10; i < n; ++i) tail_sup = std::max(tail_sup, std::abs(u[i]));

    TransformResult out;
    out.value.reserve(grid.zeta.size());
    out.tail_bound.reserve(grid.zeta.size());
    for (const auto& z : grid.zeta) {
        const double eta = z.imag();
        const double bound = tail_sup * std::exp(-eta * t_end) / eta;
        if (bound > tail_tolerance)
            throw TailNotConverged("truncation tail bound " + std::to_string(bound) +
                                   " exceeds tolerance at eta=" + std::to_string(eta));
        Complex acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
            acc += w * u[i] * std::exp(Complex(0.0, 1.0) * z * (i * dt));
        }
        out.value.push_back(acc * dt);
        out.tail_bound.push_back(bound);
    }
    return out;
}

Complex impedance_damped_oscillator(double k, double a_damp, Complex s) {
    if (s == Complex(0.0, 0.0)) throw SpecError("impedance pole at s = 0");
    return k / s + 2.0 * a_damp + s;
}

Complex kernel_transform(const MemoryKernel& kernel, Complex zeta) {
    Complex a = kernel.alpha_inf;
    for (const auto& term : kernel.terms) {
        const Complex p = Complex(term.lambda, 0.0) - Complex(0.0, 1.0) * zeta;
        const Complex denom = p * p + term.omega * term.omega;
        a += (term.phase == KernelTerm::Phase::Cos) ? term.c * p / denom
                                                    : term.c * term.omega / denom;
    }
    return a;
}

Eigen::Matrix2cd impedance_operator_retarded(double k, double k_tilde, double wave_speed,
                                             double tension, Complex zeta) {
    const Complex i(0.0, 1.0);
    const double sqrt_k = std::sqrt(k);
    Eigen::Matrix2cd A;
    A << 0.0, i * sqrt_k, -i * sqrt_k, 0.0;
    Eigen::Matrix2cd a_hat = Eigen::Matrix2cd::Zero();
    if (k_tilde > 0.0) {
        const MemoryKernel kernel = kernel_from_string_coupling(wave_speed, k_tilde, tension);
        a_hat(1, 1) = kernel_transform(kernel, zeta);
    }
    return -i * (zeta * Eigen::Matrix2cd::Identity() - A + i * a_hat);
}

AdmittanceMeasurement measure_admittance(double m, double k, const MemoryKernel& kernel,
                                         const ComplexFrequencyGrid& grid, double dt,
                                         double t_end, double tail_tolerance) {
    grid.validate();
    // one-step rectangular pulse of unit integral
    auto pulse = [dt](double t) { return (t >= 0.0 && t < dt) ? 1.0 / dt : 0.0; };
    const ReducedTrajectory traj =
        integrate_reduced_forced(m, k, kernel, pulse, 0.0, 0.0, t_end, dt);

    const TransformResult v_hat =
        laplace_transform(traj.psi_dot, dt, grid, tail_tolerance);

    AdmittanceMeasurement out;
    out.grid = grid;
    out.value.reserve(grid.zeta.size());
    out.err_bound = v_hat.tail_bound;
    const Complex i(0.0, 1.0);
    for (std::size_t p = 0; p < grid.zeta.size(); ++p) {
        const Complex z = grid.zeta[p];
        // exact transform of the rectangle, (e^{i z dt} - 1) / (i z dt)
        const Complex f_hat = (std::exp(i * z * dt) - 1.0) / (i * z * dt);
        out.value.push_back(v_hat.value[p] / f_hat);
    }
    return out;
}

PositivityVerdict check_positive_definite_ae(const MemoryKernel& kernel, unsigned rng_seed) {
    kernel.validate();
    PositivityVerdict v;
    v.worst_value = std::numeric_limits<double>::infinity();

    // Herglotz sampling: Re a_hat over a dense upper-half-plane grid
    for (double eta : {0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0}) {
        for (int io = 0; io <= 400; ++io) {
            const double omega = -20.0 + 40.0 * io / 400.0;
            const Complex z(omega, eta);
            const double re = kernel_transform(kernel, z).real();
            if (re < v.worst_value) {
                v.worst_value = re;
                v.worst_zeta = z;
            }
        }
    }
    if (kernel.empty()) v.worst_value = 0.0;
    const double grid_tol = -1e-12;

    // discrete friction work on random smooth velocity signals
    std::mt19937 rng(rng_seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> freq(0.2, 4.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    const double dt = 5e-3;
    const int n = 2000;
    v.worst_work = -std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<double> vel(n);
        const double a1 = amp(rng), a2 = amp(rng), a3 = amp(rng);
        const double w1 = freq(rng), w2 = freq(rng), w3 = freq(rng);
        const double p1 = phase(rng), p2 = phase(rng), p3 = phase(rng);
        for (int i = 0; i < n; ++i) {
            const double t = i * dt;
            vel[i] = a1 * std::sin(w1 * t + p1) + a2 * std::sin(w2 * t + p2) +
                     a3 * std::sin(w3 * t + p3);
        }
        const auto fric = convolve_direct(kernel, vel, dt);
        double work = 0.0;
        for (int i = 0; i < n; ++i) {
            const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
            work += -w * fric[i] * vel[i];
        }
        work *= dt;  // W_fric, must be <= 0 for real dissipation
        v.worst_work = std::max(v.worst_work, work);
    }
    if (kernel.empty()) v.worst_work = 0.0;

    const double work_tol = 1e-9;
    v.passed = v.worst_value >= grid_tol && v.worst_work <= work_tol;
    return v;
}

}  // namespace wavebound

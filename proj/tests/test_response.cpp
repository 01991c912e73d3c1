#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wavebound/response.hpp"
#include "wavebound/solver1d.hpp"

#include <cmath>

using namespace wavebound;

namespace {

/// relative deviation of measured admittance from an analytic impedance
double worst_admittance_error(const AdmittanceMeasurement& measured,
                              const std::function<Complex(Complex)>& impedance) {
    double worst = 0.0;
    for (std::size_t i = 0; i < measured.value.size(); ++i) {
        const Complex zeta = measured.grid.zeta[i];
        const Complex analytic = 1.0 / impedance(zeta);
        worst = std::max(worst, std::abs(measured.value[i] - analytic) / std::abs(analytic));
    }
    return worst;
}

}  // namespace

TEST_CASE("frequency grids must stay in the open upper half-plane") {
    CHECK_THROWS_AS(ComplexFrequencyGrid::rectangle(-1.0, 1.0, 5, 0.0, 1.0, 3), SpecError);
    CHECK_NOTHROW(ComplexFrequencyGrid::rectangle(-1.0, 1.0, 5, 0.1, 1.0, 3));
}

TEST_CASE("laplace transform of e^{-bt} is 1/(b - i zeta)") {
    const double b = 1.0, dt = 1e-3, t_end = 40.0;
    const int n = static_cast<int>(t_end / dt) + 1;
    std::vector<double> u(n);
    for (int i = 0; i < n; ++i) u[i] = std::exp(-b * i * dt);

    ComplexFrequencyGrid grid;
    grid.zeta = {Complex(0.0, 1.0), Complex(2.0, 0.5)};
    const auto result = laplace_transform(u, dt, grid);
    // at zeta = i: 1/(b + 1)
    CHECK(std::abs(result.value[0] - Complex(1.0 / (b + 1.0), 0.0)) < 1e-6);
    const Complex expected = 1.0 / (Complex(b, 0.0) - Complex(0.0, 1.0) * grid.zeta[1]);
    CHECK(std::abs(result.value[1] - expected) < 1e-6);
}

TEST_CASE("laplace transform of zero is zero") {
    std::vector<double> u(1000, 0.0);
    ComplexFrequencyGrid grid;
    grid.zeta = {Complex(1.0, 0.5)};
    const auto result = laplace_transform(u, 0.01, grid);
    CHECK(std::abs(result.value[0]) == 0.0);
}

TEST_CASE("string response function transforms to (s + a k~/T)^-1") {
    const double a = 1.0, kt = 2.0, T = 1.0;
    const MemoryKernel kernel = kernel_from_string_coupling(a, kt, T);
    const double dt = 1e-3, t_end = 30.0;
    const int n = static_cast<int>(t_end / dt) + 1;
    // phi(t) = e^{-(a k~ / T) t} is kappa / k~
    std::vector<double> phi(n);
    for (int i = 0; i < n; ++i) phi[i] = kernel.at(i * dt) / kt;

    ComplexFrequencyGrid grid = ComplexFrequencyGrid::rectangle(-3.0, 3.0, 7, 0.4, 1.0, 2);
    const auto result = laplace_transform(phi, dt, grid);
    for (std::size_t i = 0; i < grid.zeta.size(); ++i) {
        const Complex s = -Complex(0.0, 1.0) * grid.zeta[i];  // s = -i zeta
        const Complex expected = 1.0 / (s + a * kt / T);
        CHECK(std::abs(result.value[i] - expected) < 1e-5);
    }
}

TEST_CASE("tail bound failure raises TailNotConverged") {
    std::vector<double> u(2000);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::cos(0.5 * i * 0.01);  // not decaying
    ComplexFrequencyGrid grid;
    grid.zeta = {Complex(0.0, 0.05)};  // eta T = 1: tail nowhere near converged
    CHECK_THROWS_AS(laplace_transform(u, 0.01, grid), TailNotConverged);
}

TEST_CASE("impedance of the damped oscillator") {
    CHECK(impedance_damped_oscillator(1.0, 0.5, Complex(1.0, 0.0)) == Complex(3.0, 0.0));
    // undamped resonance: i sqrt(k) + k / (i sqrt(k)) = 0
    const Complex s(0.0, 2.0);  // k = 4
    CHECK(std::abs(impedance_damped_oscillator(4.0, 0.0, s)) < 1e-14);
    // mass-dominated asymptote
    const Complex big(1e6, 0.0);
    CHECK(std::abs(impedance_damped_oscillator(1.0, 0.5, big) - big) / std::abs(big) < 1e-5);
    CHECK_THROWS_AS(impedance_damped_oscillator(1.0, 0.5, Complex(0.0, 0.0)), SpecError);
}

TEST_CASE("retarded impedance operator structure") {
    const double k = 4.0;
    const Complex zeta(0.7, 0.3);
    SUBCASE("no coupling: purely conservative") {
        const auto Z = impedance_operator_retarded(k, 0.0, 1.0, 1.0, zeta);
        const Complex i(0.0, 1.0);
        Eigen::Matrix2cd A;
        A << 0.0, i * 2.0, -i * 2.0, 0.0;
        const Eigen::Matrix2cd expected = -i * (zeta * Eigen::Matrix2cd::Identity() - A);
        CHECK((Z - expected).cwiseAbs().maxCoeff() < 1e-14);
    }
    SUBCASE("off-diagonal entries are -/+ sqrt(k), independent of zeta") {
        for (const Complex z : {Complex(0.1, 0.2), Complex(-3.0, 1.0)}) {
            const auto Z = impedance_operator_retarded(k, 2.0, 1.0, 1.0, z);
            CHECK(std::abs(Z(0, 1) - Complex(-2.0, 0.0)) < 1e-14);
            CHECK(std::abs(Z(1, 0) - Complex(2.0, 0.0)) < 1e-14);
        }
    }
    SUBCASE("the (2,2) entry carries the kernel transform with the dissipative sign") {
        const double kt = 2.0;
        const auto Z = impedance_operator_retarded(k, kt, 1.0, 1.0, zeta);
        const Complex s = -Complex(0.0, 1.0) * zeta;
        const Complex expected = s + kt / (s + 2.0);  // -i zeta + k~/((a k~/T) - i zeta)
        CHECK(std::abs(Z(1, 1) - expected) < 1e-12);
    }
}

TEST_CASE("measured admittance of a free mass is the integrator transform") {
    MemoryKernel none;
    const double m = 2.0;
    ComplexFrequencyGrid grid = ComplexFrequencyGrid::rectangle(-2.0, 2.0, 9, 0.3, 0.8, 2);
    const auto measured = measure_admittance(m, 0.0, none, grid, 1e-3, 100.0);
    for (std::size_t i = 0; i < measured.value.size(); ++i) {
        const Complex s = -Complex(0.0, 1.0) * grid.zeta[i];
        const Complex expected = 1.0 / (m * s);  // velocity response of a free mass
        CHECK(std::abs(measured.value[i] - expected) / std::abs(expected) < 0.02);
    }
}

TEST_CASE("Lamb system: measured admittance matches 1/(ms + T/a + k/s) within 2%") {
    MemoryKernel lamb;
    lamb.alpha_inf = 1.0;  // T/a
    const double m = 1.0, k = 1.0;
    ComplexFrequencyGrid grid = ComplexFrequencyGrid::rectangle(-5.0, 5.0, 21, 0.2, 1.0, 3);
    const auto measured = measure_admittance(m, k, lamb, grid, 1e-3, 80.0);
    const double worst = worst_admittance_error(measured, [&](Complex zeta) {
        const Complex s = -Complex(0.0, 1.0) * zeta;
        return m * s + 1.0 + k / s;
    });
    CHECK(worst < 0.02);
}

TEST_CASE("retarded system: measured admittance matches the impedance operator's scalar part") {
    const double m = 1.0, k = 1.0, a = 1.0, kt = 2.0, T = 1.0;
    const MemoryKernel kernel = kernel_from_string_coupling(a, kt, T);
    ComplexFrequencyGrid grid = ComplexFrequencyGrid::rectangle(-5.0, 5.0, 21, 0.2, 1.0, 3);
    const auto measured = measure_admittance(m, k, kernel, grid, 1e-3, 80.0);
    const double worst = worst_admittance_error(measured, [&](Complex zeta) {
        const Complex s = -Complex(0.0, 1.0) * zeta;
        return m * s + k / s + kernel_transform(kernel, zeta);
    });
    CHECK(worst < 0.02);
}

TEST_CASE("linearity: doubling the impulse doubles the response transform") {
    const MemoryKernel kernel = kernel_from_string_coupling(1.0, 2.0, 1.0);
    const double dt = 1e-3, t_end = 60.0;
    auto forced = [&](double height) {
        auto pulse = [=](double t) { return (t >= 0.0 && t < dt) ? height / dt : 0.0; };
        return integrate_reduced_forced(1.0, 1.0, kernel, pulse, 0.0, 0.0, t_end, dt);
    };
    const auto one = forced(1.0);
    const auto two = forced(2.0);
    ComplexFrequencyGrid grid;
    grid.zeta = {Complex(1.0, 0.4), Complex(-2.0, 0.7)};
    const auto u1 = laplace_transform(one.psi_dot, dt, grid);
    const auto u2 = laplace_transform(two.psi_dot, dt, grid);
    for (std::size_t i = 0; i < grid.zeta.size(); ++i)
        CHECK(std::abs(u2.value[i] - 2.0 * u1.value[i]) < 1e-12);
}

TEST_CASE("causality proxy: no response before the force onset") {
    const MemoryKernel kernel = kernel_from_string_coupling(1.0, 2.0, 1.0);
    const double dt = 1e-3, t0 = 2.0;
    auto pulse = [=](double t) { return (t >= t0 && t < t0 + dt) ? 1.0 / dt : 0.0; };
    const auto traj = integrate_reduced_forced(1.0, 1.0, kernel, pulse, 0.0, 0.0, 5.0, dt);
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        if (traj.t[i] < t0 - 1e-12) CHECK(traj.psi[i] == 0.0);
    }
}

TEST_CASE("kernel positivity: paper kernels pass, a flipped amplitude fails with a witness") {
    // string-coupling kernels over a parameter sweep
    for (double kt : {0.5, 2.0, 10.0}) {
        const auto verdict = check_positive_definite_ae(kernel_from_string_coupling(1.0, kt, 1.0));
        CHECK(verdict.passed);
    }
    // instantaneous damping
    MemoryKernel lamb;
    lamb.alpha_inf = 1.0;
    CHECK(check_positive_definite_ae(lamb).passed);
    // empty kernel: zero form passes
    CHECK(check_positive_definite_ae(MemoryKernel{}).passed);

    // flipping the sign makes friction energy-producing
    MemoryKernel flipped = kernel_from_string_coupling(1.0, 2.0, 1.0).scaled(-1.0);
    const auto verdict = check_positive_definite_ae(flipped);
    CHECK_FALSE(verdict.passed);
    CHECK(verdict.worst_value < 0.0);  // witness: most negative Re a_hat sample
    CHECK(verdict.worst_zeta.imag() > 0.0);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wavebound/kernels.hpp"

#include <cmath>
#include <random>

using namespace wavebound;

namespace {

std::vector<double> smooth_random_signal(int n, double dt, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> freq(0.3, 3.0);
    const double a1 = amp(rng), a2 = amp(rng), a3 = amp(rng);
    const double w1 = freq(rng), w2 = freq(rng), w3 = freq(rng);
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
        const double t = i * dt;
        v[i] = a1 * std::sin(w1 * t) + a2 * std::cos(w2 * t) + a3 * std::sin(w3 * t + 0.7);
    }
    return v;
}

}  // namespace

TEST_CASE("kernel_from_string_coupling reads off the convolution constants") {
    const MemoryKernel kernel = kernel_from_string_coupling(1.0, 2.0, 1.0);
    REQUIRE(kernel.terms.size() == 1);
    CHECK(kernel.terms[0].c == doctest::Approx(2.0));
    CHECK(kernel.terms[0].lambda == doctest::Approx(2.0));
    CHECK(kernel.terms[0].omega == 0.0);
    CHECK(kernel.alpha_inf == 0.0);

    // kappa(0) = k_tilde for any admissible inputs
    for (double kt : {0.5, 1.0, 3.7}) {
        const auto k = kernel_from_string_coupling(2.0, kt, 1.5);
        CHECK(k.at(0.0) == doctest::Approx(kt));
    }
}

TEST_CASE("zero coupling produces the empty kernel") {
    const MemoryKernel kernel = kernel_from_string_coupling(1.0, 0.0, 1.0);
    CHECK(kernel.empty());
    CHECK(kernel.at(1.0) == 0.0);
}

TEST_CASE("kernel_from_string_coupling rejects nonpositive speed or tension") {
    CHECK_THROWS_AS(kernel_from_string_coupling(0.0, 1.0, 1.0), SpecError);
    CHECK_THROWS_AS(kernel_from_string_coupling(1.0, 1.0, -1.0), SpecError);
}

TEST_CASE("convolve_direct: zero velocity gives zero friction") {
    MemoryKernel kernel;
    kernel.terms.push_back({1.0, 1.0, 0.0, KernelTerm::Phase::Cos});
    std::vector<double> v(100, 0.0);
    for (double f : convolve_direct(kernel, v, 0.01)) CHECK(f == 0.0);
}

TEST_CASE("convolve_direct: constant velocity against the closed form 1 - e^{-t}") {
    MemoryKernel kernel;
    kernel.terms.push_back({1.0, 1.0, 0.0, KernelTerm::Phase::Cos});
    const double dt = 1e-3;
    const int n = 1001;  // t = 1 at the last sample
    std::vector<double> v(n, 1.0);
    const auto f = convolve_direct(kernel, v, dt);
    CHECK(f[n - 1] == doctest::Approx(0.6321205588285577).epsilon(1e-6));
}

TEST_CASE("convolve_direct: one-sample impulse sifts the kernel shape") {
    MemoryKernel kernel;
    kernel.terms.push_back({1.5, 2.0, 3.0, KernelTerm::Phase::Cos});
    const double dt = 0.01;
    std::vector<double> v(200, 0.0);
    v[0] = 1.0;
    const auto f = convolve_direct(kernel, v, dt);
    // trapezoid weight of the single interior spike: kappa(t) * v0 * dt / 2 at i>0
    for (int i : {10, 50, 150})
        CHECK(f[i] == doctest::Approx(0.5 * dt * kernel.at(i * dt)).epsilon(1e-12));
}

TEST_CASE("advance_kernel_state: rest stays at rest") {
    MemoryKernel kernel;
    kernel.terms.push_back({1.0, 2.0, 1.0, KernelTerm::Phase::Sin});
    KernelState state = KernelState::rest(kernel);
    for (int i = 0; i < 10; ++i) {
        auto [next, force] = advance_kernel_state(state, kernel, 0.0, 0.01);
        CHECK(force == 0.0);
        CHECK(next.qc.abs().maxCoeff() == 0.0);
        state = next;
    }
}

TEST_CASE("advance_kernel_state: constant velocity matches the ODE closed form") {
    // single decay term: aux(t) = (1 - e^{-lambda t}) / lambda, exactly
    const double lambda = 1.7, c = 0.8, dt = 0.05;
    MemoryKernel kernel;
    kernel.terms.push_back({c, lambda, 0.0, KernelTerm::Phase::Cos});
    KernelState state = KernelState::rest(kernel);
    double force = 0.0;
    for (int i = 0; i < 200; ++i)
        std::tie(state, force) = advance_kernel_state(state, kernel, 1.0, dt);
    const double t = 200 * dt;
    const double expected = c * (1.0 - std::exp(-lambda * t)) / lambda;
    CHECK(force == doctest::Approx(expected).epsilon(1e-12));  // exact propagator
}

TEST_CASE("engine equivalence: aux state matches direct quadrature at second order") {
    MemoryKernel kernel;
    kernel.terms.push_back({0.9, 1.2, 0.0, KernelTerm::Phase::Cos});
    kernel.terms.push_back({0.4, 0.8, 2.5, KernelTerm::Phase::Sin});
    kernel.terms.push_back({-0.2, 2.0, 1.3, KernelTerm::Phase::Cos});

    const double t_end = 4.0;
    std::vector<double> errors;
    for (double dt : {4e-3, 2e-3, 1e-3}) {
        const int n = static_cast<int>(std::lround(t_end / dt)) + 1;
        const auto v = smooth_random_signal(n, dt, 99);
        const auto direct = convolve_direct(kernel, v, dt);

        KernelState state = KernelState::rest(kernel);
        double worst = 0.0;
        // aux engine fed with midpoint velocities, force compared at whole steps
        for (int i = 1; i < n; ++i) {
            const double v_mid = 0.5 * (v[i - 1] + v[i]);
            auto [next, f] = advance_kernel_state(state, kernel, v_mid, dt);
            state = next;
            worst = std::max(worst, std::abs(f - direct[i]));
        }
        errors.push_back(worst);
    }
    const double order1 = std::log2(errors[0] / errors[1]);
    const double order2 = std::log2(errors[1] / errors[2]);
    CHECK(order1 > 1.8);
    CHECK(order1 < 2.2);
    CHECK(order2 > 1.8);
    CHECK(order2 < 2.2);
}

TEST_CASE("oscillatory term matches direct quadrature on a random smooth velocity") {
    MemoryKernel kernel;
    kernel.terms.push_back({1.1, 0.9, 3.0, KernelTerm::Phase::Cos});
    const double dt = 1e-3, t_end = 3.0;
    const int n = static_cast<int>(std::lround(t_end / dt)) + 1;
    const auto v = smooth_random_signal(n, dt, 7);
    const auto direct = convolve_direct(kernel, v, dt);
    KernelState state = KernelState::rest(kernel);
    for (int i = 1; i < n; ++i) {
        auto [next, f] = advance_kernel_state(state, kernel, 0.5 * (v[i - 1] + v[i]), dt);
        state = next;
        CHECK(std::abs(f - direct[i]) < 10.0 * dt * dt);
    }
}

TEST_CASE("kernel scaling linearity: doubled amplitudes double the friction exactly") {
    MemoryKernel kernel;
    kernel.terms.push_back({0.7, 1.1, 0.6, KernelTerm::Phase::Cos});
    kernel.terms.push_back({0.3, 0.5, 0.0, KernelTerm::Phase::Cos});
    kernel.alpha_inf = 0.2;
    const MemoryKernel doubled = kernel.scaled(2.0);

    const double dt = 0.01;
    const auto v = smooth_random_signal(300, dt, 3);
    KernelState s1 = KernelState::rest(kernel);
    KernelState s2 = KernelState::rest(doubled);
    for (std::size_t i = 1; i < v.size(); ++i) {
        const double v_mid = 0.5 * (v[i - 1] + v[i]);
        auto [n1, f1] = advance_kernel_state(s1, kernel, v_mid, dt);
        auto [n2, f2] = advance_kernel_state(s2, doubled, v_mid, dt);
        s1 = n1;
        s2 = n2;
        CHECK(f2 == doctest::Approx(2.0 * f1).epsilon(1e-14));
    }
}

TEST_CASE("dissipativity proxy: pure-decay kernels never produce energy") {
    MemoryKernel kernel;
    kernel.terms.push_back({1.3, 0.7, 0.0, KernelTerm::Phase::Cos});
    const double dt = 5e-3;
    for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
        const auto v = smooth_random_signal(1500, dt, seed);
        const auto fric = convolve_direct(kernel, v, dt);
        double work = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double w = (i == 0 || i + 1 == v.size()) ? 0.5 : 1.0;
            work += -w * fric[i] * v[i] * dt;
        }
        CHECK(work <= 1e-10);
    }
}

TEST_CASE("kernel validation rejects nonpositive decay and negative alpha_inf") {
    MemoryKernel bad;
    bad.terms.push_back({1.0, 0.0, 0.0, KernelTerm::Phase::Cos});
    CHECK_THROWS_AS(bad.validate(), SpecError);
    MemoryKernel bad2;
    bad2.alpha_inf = -1.0;
    CHECK_THROWS_AS(bad2.validate(), SpecError);
}

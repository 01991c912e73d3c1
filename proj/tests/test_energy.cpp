#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wavebound/energy.hpp"
#include "wavebound/solver1d.hpp"

#include <cmath>

using namespace wavebound;

namespace {

Scenario closed_string(double length, int n_cells, double dt) {
    Scenario s;
    InteriorSpec1D interior;
    interior.mass = Mat::Identity(1, 1);
    interior.stiffness = Mat::Identity(1, 1);
    interior.b1 = 0.0;
    interior.b2 = length;
    interior.n_cells = n_cells;
    s.interior = interior;
    s.boundaries[0] = BoundaryNodeSpec::point(1.0, 1.0, End::b1);
    s.boundaries[1] = BoundaryNodeSpec::point(1.0, 1.0, End::b2);
    s.interactions = {InteractionSpec::spring(2.0), InteractionSpec::spring(2.0)};
    s.dt = dt;
    s.t_end = 1.0;
    return s;
}

}  // namespace

TEST_CASE("interior energy of the zero state is zero") {
    const Mat psi = Mat::Zero(1, 65);
    const auto e = interior_energy_1d(Mat::Identity(1, 1), Mat::Identity(1, 1), 1.0 / 64, psi, psi);
    CHECK(e.total == 0.0);
}

TEST_CASE("interior energy is a quadratic form: doubling the state quadruples it") {
    const int n = 128;
    Mat psi(1, n + 1), vel(1, n + 1);
    for (int j = 0; j <= n; ++j) {
        const double z = j / static_cast<double>(n);
        psi(0, j) = std::sin(2.0 * M_PI * z) + 0.3 * z;
        vel(0, j) = std::cos(2.0 * M_PI * z);
    }
    const Mat m = Mat::Identity(1, 1), k = Mat::Identity(1, 1);
    const double e1 = interior_energy_1d(m, k, 1.0 / n, psi, vel).total;
    const double e4 = interior_energy_1d(m, k, 1.0 / n, 2.0 * psi, 2.0 * vel).total;
    CHECK(e4 == doctest::Approx(4.0 * e1).epsilon(1e-14));
}

TEST_CASE("standing unit mode carries H_D = pi^2/4, constant over time") {
    // fixed ends via the massless rigid closure with huge hooke
    Scenario s = closed_string(1.0, 512, 0.45 / 512);
    s.boundaries[0] = BoundaryNodeSpec::point(0.0, 1e12, End::b1);
    s.boundaries[1] = BoundaryNodeSpec::point(0.0, 1e12, End::b2);
    s.interactions = {InteractionSpec::rigid(), InteractionSpec::rigid()};
    s.initial.field.kind = InitialField::Kind::SineMode;
    s.initial.field.width = 1.0;
    s.t_end = 1.2;
    System1D sys(s);
    const auto traj = sys.run();
    const double expected = M_PI * M_PI / 4.0;
    for (const auto& sample : traj.samples)
        CHECK(sample.ledger.H_D_total == doctest::Approx(expected).epsilon(2e-4));
}

TEST_CASE("boundary energy includes the interaction spring's stored energy") {
    const Mat zero = Mat::Zero(1, 1);
    const Vec psi_B = Vec::Constant(1, 1.0);
    const Vec at_rest = Vec::Zero(1);
    // psi_B = 1, psi_L = 0, k~ = 2, k = m = 0 -> H_B = 1
    CHECK(boundary_energy(zero, zero, InteractionSpec::spring(2.0), psi_B, at_rest, at_rest) ==
          doctest::Approx(1.0));
    // rest state -> 0
    CHECK(boundary_energy(zero, zero, InteractionSpec::spring(2.0), at_rest, at_rest, at_rest) ==
          0.0);
    // rigid: the interaction term contributes exactly nothing
    CHECK(boundary_energy(zero, Mat::Identity(1, 1), InteractionSpec::rigid(), psi_B, at_rest,
                          psi_B) == doctest::Approx(0.5));
}

TEST_CASE("detailed balance residual: zero state and interaction None vanish") {
    CHECK(detailed_balance_residual(Vec::Zero(1), Vec::Zero(1), Vec::Zero(1)) == 0.0);

    Scenario s = closed_string(1.0, 64, 1e-3);
    s.interactions = {InteractionSpec::none(), InteractionSpec::none()};
    s.initial.field.kind = InitialField::Kind::Gaussian;
    s.initial.field.center = 0.5;
    s.initial.field.width = 0.2;
    s.t_end = 0.3;
    System1D sys(s);
    for (const auto& sample : sys.run().samples) {
        CHECK(sample.ledger.balance_residual[0] == 0.0);
        CHECK(sample.ledger.balance_residual[1] == 0.0);
    }
}

TEST_CASE("detailed balance residual decreases under refinement") {
    // smooth data compatible with the end constraints (flat near both ends)
    auto residual_rms = [](int n_cells) {
        Scenario s = closed_string(1.0, n_cells, 0.5 / n_cells);
        s.initial.field.kind = InitialField::Kind::Gaussian;
        s.initial.field.center = 0.5;
        s.initial.field.width = 0.12;
        s.t_end = 2.0;
        System1D sys(s);
        const auto traj = sys.run();
        const std::vector<EnergyLedger> ledgers = [&] {
            std::vector<EnergyLedger> out;
            for (const auto& sample : traj.samples) out.push_back(sample.ledger);
            return out;
        }();
        const auto report = conservation_report(ledgers, s.dt);
        return std::max(report.residual_rms[0], report.residual_rms[1]);
    };
    const double r1 = residual_rms(64);
    const double r2 = residual_rms(128);
    CHECK(r1 > 0.0);
    CHECK(std::log2(r1 / r2) > 1.0);  // at least first order
}

TEST_CASE("interface power antisymmetry at machine precision") {
    // the power the interior receives through the spring equals minus the
    // power the boundary receives from it, by the shared force expression
    Scenario s = closed_string(1.0, 128, 1e-3);
    s.initial.field.kind = InitialField::Kind::Gaussian;
    s.initial.field.center = 0.3;
    s.initial.field.width = 0.15;
    s.initial.boundary_velocity[0] = Vec::Constant(1, 0.4);
    System1D sys(s);
    for (int i = 0; i < 50; ++i) sys.step();
    const auto st = sys.state();
    const auto f = sys.interface_force(End::b1);
    const double power_to_interior = f.interaction.dot(st.field.psi_dot.col(0));
    const double power_to_boundary = (-f.interaction).dot(st.field.psi_dot.col(0));
    CHECK(power_to_interior + power_to_boundary == 0.0);
}

TEST_CASE("closed conservative system: tiny drift; forced system: defect tracks input power") {
    SUBCASE("closed") {
        Scenario s = closed_string(1.0, 800, 5e-4);
        s.initial.field.kind = InitialField::Kind::Gaussian;
        s.initial.field.center = 0.5;
        s.initial.field.width = 0.12;
        s.t_end = 4.0;
        System1D sys(s);
        const auto traj = sys.run();
        std::vector<EnergyLedger> ledgers;
        for (const auto& sample : traj.samples) ledgers.push_back(sample.ledger);
        const auto report = conservation_report(ledgers, s.dt);
        CHECK(report.max_drift < 2e-4);
    }

    SUBCASE("constant force on a boundary mass") {
        Scenario s = closed_string(1.0, 400, 1e-3);
        s.boundaries[0].external_force = [](double) { return Vec::Constant(1, 0.7); };
        s.t_end = 2.0;
        System1D sys(s);
        const auto traj = sys.run();
        std::vector<EnergyLedger> ledgers;
        for (const auto& sample : traj.samples) ledgers.push_back(sample.ledger);
        const auto report = conservation_report(ledgers, s.dt);
        // dE/dt - F psi_B_dot stays at scheme order even though energy grows
        CHECK(std::abs(ledgers.back().total - ledgers.front().total) > 1e-3);
        CHECK(report.rms_defect < 1e-4);
    }
}

TEST_CASE("outflow end: tracked energy is non-increasing") {
    Scenario s = closed_string(6.0, 600, 0.9 * 0.01);
    auto& interior = std::get<InteriorSpec1D>(s.interior);
    interior.semi_infinite_b2 = true;
    s.interactions[1] = InteractionSpec::none();
    s.initial.field.kind = InitialField::Kind::Gaussian;
    s.initial.field.center = 3.0;
    s.initial.field.width = 0.5;
    s.initial.field.traveling = +1;
    s.t_end = 5.0;
    System1D sys(s);
    const auto traj = sys.run();
    std::vector<EnergyLedger> ledgers;
    for (const auto& sample : traj.samples) ledgers.push_back(sample.ledger);
    const auto report =
        conservation_report(ledgers, s.dt, sys.outflow_ends(), 1e-7 * ledgers.front().total);
    CHECK(report.monotone_nonincreasing);
    CHECK(ledgers.back().total < 1e-4 * ledgers.front().total);  // the pulse left
    // the energy leaving through the far end accounts for dE/dt
    CHECK(report.rms_defect < 2e-3 * ledgers.front().total);
}

#include "wavebound/geometry.hpp"
#include "wavebound/output.hpp"
#include "wavebound/response.hpp"
#include "wavebound/scenario_io.hpp"
#include "wavebound/spectrum.hpp"
#include "wavebound/system.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace wavebound;

namespace {

py::dict trajectory_to_dict(const Trajectory1D& traj, int k) {
    py::dict out;
    const auto n = traj.samples.size();
    Vec t(n);
    Mat psi_b1(k, n), psi_b2(k, n), psi_l1(k, n), psi_l2(k, n);
    Vec h_d(n), h_b(n), res1(n), res2(n), total(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = traj.samples[i];
        t(i) = s.t;
        psi_b1.col(i) = s.psi_B[0].size() == k ? s.psi_B[0] : Vec::Zero(k);
        psi_b2.col(i) = s.psi_B[1].size() == k ? s.psi_B[1] : Vec::Zero(k);
        psi_l1.col(i) = s.psi_L[0];
        psi_l2.col(i) = s.psi_L[1];
        h_d(i) = s.ledger.H_D_total;
        h_b(i) = s.ledger.H_B[0] + s.ledger.H_B[1];
        res1(i) = s.ledger.balance_residual[0];
        res2(i) = s.ledger.balance_residual[1];
        total(i) = s.ledger.total;
    }
    out["t"] = t;
    out["psi_B_b1"] = psi_b1;
    out["psi_B_b2"] = psi_b2;
    out["psi_L_b1"] = psi_l1;
    out["psi_L_b2"] = psi_l2;
    out["H_D"] = h_d;
    out["H_B"] = h_b;
    out["balance_residual_b1"] = res1;
    out["balance_residual_b2"] = res2;
    out["total"] = total;
    return out;
}

py::dict trajectory2d_to_dict(const Trajectory2D& traj) {
    py::dict out;
    const auto n = traj.samples.size();
    const auto nth = traj.samples.empty() ? 0 : traj.samples.front().psi_B.size();
    Vec t(n), probe(n), h_d(n), h_b(n), total(n);
    Mat psi_b(nth, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = traj.samples[i];
        t(i) = s.t;
        probe(i) = s.probe;
        h_d(i) = s.ledger.H_D_total;
        h_b(i) = s.ledger.H_B[0];
        total(i) = s.ledger.total;
        psi_b.col(i) = s.psi_B;
    }
    out["t"] = t;
    out["probe"] = probe;
    out["psi_B"] = psi_b;
    out["H_D"] = h_d;
    out["H_B"] = h_b;
    out["total"] = total;
    py::list snaps;
    for (const auto& [time, field] : traj.snapshots) snaps.append(py::make_tuple(time, field));
    out["snapshots"] = snaps;
    return out;
}

py::dict reduced_to_dict(const ReducedTrajectory& traj) {
    py::dict out;
    const auto n = traj.t.size();
    Vec t(n), psi(n), vel(n);
    for (std::size_t i = 0; i < n; ++i) {
        t(i) = traj.t[i];
        psi(i) = traj.psi[i];
        vel(i) = traj.psi_dot[i];
    }
    out["t"] = t;
    out["psi_B"] = psi;
    out["psi_B_dot"] = vel;
    return out;
}

py::dict run_scenario(const Scenario& scenario) {
    CoupledSystem system = build_system(scenario);
    if (auto* sys = std::get_if<System1D>(&system)) {
        py::dict d = trajectory_to_dict(sys->run(), sys->components());
        d["kind"] = "coupled_1d";
        return d;
    }
    if (auto* disk = std::get_if<DiskSystem>(&system)) {
        py::dict d = trajectory2d_to_dict(disk->run());
        d["kind"] = "disk";
        return d;
    }
    py::dict d = reduced_to_dict(std::get<ReducedBoundaryRun>(system).run());
    d["kind"] = "reduced";
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "coupled interior/boundary wave simulations";

    py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
    py::register_exception<NumericalBlowup>(m, "NumericalBlowup", PyExc_ArithmeticError);
    py::register_exception<TailNotConverged>(m, "TailNotConverged", PyExc_RuntimeError);
    py::register_exception<ConvergenceFailure>(m, "ConvergenceFailure", PyExc_RuntimeError);

    py::class_<KernelTerm> term(m, "KernelTerm");
    py::enum_<KernelTerm::Phase>(term, "Phase")
        .value("Cos", KernelTerm::Phase::Cos)
        .value("Sin", KernelTerm::Phase::Sin);
    term.def(py::init([](double c, double lam, double omega, KernelTerm::Phase phase) {
                 return KernelTerm{c, lam, omega, phase};
             }),
             py::arg("c"), py::arg("lam"), py::arg("omega") = 0.0,
             py::arg("phase") = KernelTerm::Phase::Cos)
        .def_readwrite("c", &KernelTerm::c)
        .def_readwrite("lam", &KernelTerm::lambda)
        .def_readwrite("omega", &KernelTerm::omega)
        .def_readwrite("phase", &KernelTerm::phase);

    py::class_<MemoryKernel>(m, "MemoryKernel")
        .def(py::init<>())
        .def_readwrite("terms", &MemoryKernel::terms)
        .def_readwrite("alpha_inf", &MemoryKernel::alpha_inf)
        .def("at", &MemoryKernel::at)
        .def("scaled", &MemoryKernel::scaled)
        .def("empty", &MemoryKernel::empty)
        .def("validate", &MemoryKernel::validate);

    m.def("kernel_from_string_coupling", &kernel_from_string_coupling, py::arg("wave_speed"),
          py::arg("k_tilde"), py::arg("tension"),
          "kernel of the string back-reaction, k~ exp(-(a k~ / T) t)");
    m.def(
        "convolve_direct",
        [](const MemoryKernel& kernel, const std::vector<double>& v, double dt) {
            return convolve_direct(kernel, v, dt);
        },
        py::arg("kernel"), py::arg("velocity"), py::arg("dt"),
        "O(N^2) trapezoid friction history (oracle engine)");

    m.def(
        "integrate_reduced_boundary",
        [](double mass, double k, const MemoryKernel& kernel, double psi0, double psi_dot0,
           double t_end, double dt) {
            return reduced_to_dict(
                integrate_reduced_boundary(mass, k, kernel, psi0, psi_dot0, t_end, dt));
        },
        py::arg("m"), py::arg("k"), py::arg("kernel"), py::arg("psi0"), py::arg("psi_dot0"),
        py::arg("t_end"), py::arg("dt"));

    m.def("lamb_analytic", &lamb_analytic, py::arg("m"), py::arg("tension"),
          py::arg("wave_speed"), py::arg("k"), py::arg("psi0"), py::arg("psi_dot0"),
          py::arg("t"));
    m.def("lamb_analytic_velocity", &lamb_analytic_velocity, py::arg("m"), py::arg("tension"),
          py::arg("wave_speed"), py::arg("k"), py::arg("psi0"), py::arg("psi_dot0"),
          py::arg("t"));
    m.def("massless_spring_boundary_decay", &massless_spring_boundary_decay,
          py::arg("wave_speed"), py::arg("k"), py::arg("tension"), py::arg("psi0"), py::arg("t"));

    m.def(
        "load_scenario", [](const std::string& path) { return load_scenario(path); },
        py::arg("path"), py::return_value_policy::move);
    m.def(
        "validate_file",
        [](const std::string& path) { return scenario_violations(load_scenario(path)); },
        py::arg("path"), "all invariant violations of a scenario file (empty = valid)");
    m.def(
        "run_file",
        [](const std::string& path, double dt, double t_end) {
            Scenario s = load_scenario(path);
            if (dt > 0.0) s.dt = dt;
            if (t_end > 0.0) s.t_end = t_end;
            return run_scenario(s);
        },
        py::arg("path"), py::arg("dt") = 0.0, py::arg("t_end") = 0.0,
        "load, validate and simulate a scenario file");

    py::class_<Scenario>(m, "Scenario")
        .def_property_readonly("name", [](const Scenario& s) { return s.name; })
        .def_property_readonly("dt", [](const Scenario& s) { return s.dt; })
        .def_property_readonly("t_end", [](const Scenario& s) { return s.t_end; })
        .def("run", [](const Scenario& s) { return run_scenario(s); })
        .def("violations", [](const Scenario& s) { return scenario_violations(s); });

    m.def("robin_eigenvalue_oracle", &robin_eigenvalue_oracle, py::arg("k"), py::arg("tension"),
          py::arg("radius"),
          "smallest positive root of k J0(b R) + T b J0'(b R) = 0 (bisection)");
    m.def("bessel_j0", &bessel_j0);
    m.def("bessel_j1", &bessel_j1);

    m.def(
        "induced_metric",
        [](const Vec& x, const Vec& y) {
            const CurveMetric metric = induced_metric(x, y);
            return py::make_tuple(metric.u, metric.g);
        },
        py::arg("x"), py::arg("y"), "parameter samples and induced metric of a closed curve");
    m.def(
        "covariant_divergence",
        [](const Vec& v, const Vec& x, const Vec& y) {
            return covariant_divergence(v, induced_metric(x, y));
        },
        py::arg("v"), py::arg("x"), py::arg("y"));
    m.def(
        "divergence_theorem_check",
        [](const Vec& v, const Vec& x, const Vec& y) {
            return divergence_theorem_check(v, induced_metric(x, y));
        },
        py::arg("v"), py::arg("x"), py::arg("y"));
    m.def("christoffel", &christoffel, py::arg("g"), py::arg("du"));

    m.def("impedance_damped_oscillator", &impedance_damped_oscillator, py::arg("k"),
          py::arg("a_damp"), py::arg("s"));
    m.def("kernel_transform", &kernel_transform, py::arg("kernel"), py::arg("zeta"));
    m.def(
        "impedance_operator_retarded",
        [](double k, double k_tilde, double a, double tension, Complex zeta) {
            return Eigen::Matrix2cd(impedance_operator_retarded(k, k_tilde, a, tension, zeta));
        },
        py::arg("k"), py::arg("k_tilde"), py::arg("wave_speed"), py::arg("tension"),
        py::arg("zeta"));
    m.def(
        "measure_admittance",
        [](double mass, double k, const MemoryKernel& kernel, double omega_min, double omega_max,
           int n_omega, double eta_min, double eta_max, int n_eta, double dt, double t_end) {
            const auto grid = ComplexFrequencyGrid::rectangle(omega_min, omega_max, n_omega,
                                                              eta_min, eta_max, n_eta);
            const auto result = measure_admittance(mass, k, kernel, grid, dt, t_end);
            py::dict out;
            out["zeta"] = result.grid.zeta;
            out["value"] = result.value;
            out["err_bound"] = result.err_bound;
            return out;
        },
        py::arg("m"), py::arg("k"), py::arg("kernel"), py::arg("omega_min") = -5.0,
        py::arg("omega_max") = 5.0, py::arg("n_omega") = 21, py::arg("eta_min") = 0.2,
        py::arg("eta_max") = 1.0, py::arg("n_eta") = 3, py::arg("dt") = 1e-3,
        py::arg("t_end") = 80.0);
    m.def(
        "check_positive_definite_ae",
        [](const MemoryKernel& kernel, unsigned seed) {
            const auto verdict = check_positive_definite_ae(kernel, seed);
            py::dict out;
            out["passed"] = verdict.passed;
            out["worst_zeta"] = verdict.worst_zeta;
            out["worst_value"] = verdict.worst_value;
            out["worst_work"] = verdict.worst_work;
            return out;
        },
        py::arg("kernel"), py::arg("seed") = 12345u);

    m.def(
        "dominant_frequency",
        [](const std::vector<double>& signal, double dt, double floor) {
            return dominant_frequency(signal, dt, floor);
        },
        py::arg("signal"), py::arg("dt"), py::arg("min_frequency") = 0.0);
}

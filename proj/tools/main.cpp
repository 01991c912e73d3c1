// wavebound command line front end: scenario runs, parameter sweeps,
// refinement ladders, linear-response extraction and energy audits.
// Outputs are data only (CSV/JSON); the column contracts are in README.md.

#include "wavebound/output.hpp"
#include "wavebound/scenario_io.hpp"
#include "wavebound/spectrum.hpp"
#include "wavebound/system.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <future>
#include <iostream>

using namespace wavebound;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitBlowup = 3;
constexpr int kExitConvergence = 4;

struct CommonOptions {
    std::string scenario_path;
    std::string out_dir = "out";
    double dt_override = 0.0;
    double t_end_override = 0.0;
    unsigned seed = 12345;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("scenario", opt.scenario_path, "scenario file")->required();
    cmd->add_option("--out", opt.out_dir, "output directory");
    cmd->add_option("--dt", opt.dt_override, "override the scenario time step");
    cmd->add_option("--t-end", opt.t_end_override, "override the end time");
    cmd->add_option("--seed", opt.seed, "seed for randomized fixtures");
}

Scenario load(const CommonOptions& opt) {
    Scenario s = load_scenario(opt.scenario_path);
    if (opt.dt_override > 0.0) s.dt = opt.dt_override;
    if (opt.t_end_override > 0.0) s.t_end = opt.t_end_override;
    std::filesystem::create_directories(opt.out_dir);
    return s;
}

std::filesystem::path out_path(const CommonOptions& opt, const std::string& name) {
    return std::filesystem::path(opt.out_dir) / name;
}

json run_metadata(const Scenario& s, const CommonOptions& opt) {
    return json{{"scenario", opt.scenario_path},
                {"name", s.name},
                {"dt", s.dt},
                {"t_end", s.t_end},
                {"seed", opt.seed}};
}

std::vector<EnergyLedger> ledgers_of(const Trajectory1D& traj) {
    std::vector<EnergyLedger> out;
    out.reserve(traj.samples.size());
    for (const auto& s : traj.samples) out.push_back(s.ledger);
    return out;
}

std::vector<EnergyLedger> ledgers_of(const Trajectory2D& traj) {
    std::vector<EnergyLedger> out;
    out.reserve(traj.samples.size());
    for (const auto& s : traj.samples) out.push_back(s.ledger);
    return out;
}

int cmd_run(const CommonOptions& opt) {
    Scenario s = load(opt);
    CoupledSystem system = build_system(s);
    json summary = run_metadata(s, opt);

    if (auto* sys = std::get_if<System1D>(&system)) {
        const Trajectory1D traj = sys->run();
        write_trajectory_csv(out_path(opt, "trajectory.csv"), traj, sys->components());
        write_ledger_csv(out_path(opt, "ledger.csv"), ledgers_of(traj));
        for (const auto& [t, field] : traj.snapshots)
            write_snapshot_csv(out_path(opt, "snapshot_t" + format_double(t) + ".csv"), field);
        const auto report =
            conservation_report(ledgers_of(traj), s.dt * s.output.stride, sys->outflow_ends());
        summary["conservation"] = conservation_json(report);
        summary["samples"] = traj.samples.size();
    } else if (auto* disk = std::get_if<DiskSystem>(&system)) {
        const Trajectory2D traj = disk->run();
        write_ring_csv(out_path(opt, "ring.csv"), traj);
        write_probe_csv(out_path(opt, "probe.csv"), traj);
        write_ledger_csv(out_path(opt, "ledger.csv"), ledgers_of(traj));
        for (const auto& [t, field] : traj.snapshots)
            write_snapshot_csv(out_path(opt, "snapshot_t" + format_double(t) + ".csv"), field);
        const auto report = conservation_report(ledgers_of(traj), s.dt * s.output.stride);
        summary["conservation"] = conservation_json(report);
        summary["samples"] = traj.samples.size();
        summary["dominant_probe_frequency"] =
            dominant_frequency(traj.probe_series(), s.dt * s.output.stride, 0.0);
    } else {
        const auto& reduced = std::get<ReducedBoundaryRun>(system);
        const ReducedTrajectory traj = reduced.run();
        write_reduced_csv(out_path(opt, "trajectory.csv"), traj);
        summary["samples"] = traj.t.size();
    }
    write_json(out_path(opt, "summary.json"), summary);
    std::cout << "wrote " << opt.out_dir << "\n";
    return 0;
}

int cmd_sweep(const CommonOptions& opt, const std::vector<double>& k_tilde_values) {
    Scenario s = load(opt);
    // physical constants of the sweep: interior wave speed and tension, the
    // boundary node's mass and hooke constant
    double wave_speed = 1.0, tension = 1.0;
    if (s.is_1d()) {
        const auto& interior = std::get<InteriorSpec1D>(s.interior);
        wave_speed = wave_speeds(interior.mass, interior.stiffness).maxCoeff();
        tension = interior.stiffness(0, 0);
    }
    const double m = s.boundaries[0].mass.size() > 0 ? s.boundaries[0].mass(0, 0) : 1.0;
    const double k = s.boundaries[0].hooke.size() > 0 ? s.boundaries[0].hooke(0, 0) : 1.0;
    const double psi0 = s.initial.boundary_value[0].size() > 0
                            ? s.initial.boundary_value[0](0)
                            : 1.0;
    const double v0 = s.initial.boundary_velocity[0].size() > 0
                          ? s.initial.boundary_velocity[0](0)
                          : 0.0;
    const double dt = std::min(s.dt, 1e-3);

    // per-ktilde deviation of the reduced retarded model from the analytic
    // instantaneous-damping (rigid) limit; members run in a parallel pool
    auto member = [&](double kt) {
        const MemoryKernel kernel = kernel_from_string_coupling(wave_speed, kt, tension);
        const auto traj = integrate_reduced_boundary(m, k, kernel, psi0, v0, s.t_end, dt);
        double worst = 0.0;
        for (std::size_t i = 0; i < traj.t.size(); ++i) {
            const double exact = lamb_analytic(m, tension, wave_speed, k, psi0, v0, traj.t[i]);
            worst = std::max(worst, std::abs(traj.psi[i] - exact));
        }
        return worst;
    };
    std::vector<std::future<double>> jobs;
    jobs.reserve(k_tilde_values.size());
    for (double kt : k_tilde_values)
        jobs.push_back(std::async(std::launch::async, member, kt));

    std::ofstream csv(out_path(opt, "sweep.csv"));
    csv << "k_tilde,sup_deviation\n";
    json table = json::array();
    for (std::size_t i = 0; i < k_tilde_values.size(); ++i) {
        const double err = jobs[i].get();
        csv << format_double(k_tilde_values[i]) << ',' << format_double(err) << '\n';
        table.push_back({{"k_tilde", k_tilde_values[i]}, {"sup_deviation", err}});
    }
    json summary = run_metadata(s, opt);
    summary["sweep"] = table;
    write_json(out_path(opt, "sweep.json"), summary);
    std::cout << "wrote " << opt.out_dir << "\n";
    return 0;
}

/// boundary (1D) or ring-probe (2D) series with its sample spacing
struct SeriesResult {
    std::vector<double> t;
    std::vector<double> value;
};

SeriesResult run_series(const Scenario& s) {
    CoupledSystem system = build_system(s);
    SeriesResult out;
    if (auto* sys = std::get_if<System1D>(&system)) {
        const auto traj = sys->run();
        out.t = traj.times();
        out.value = traj.boundary_series(End::b1);
    } else if (auto* disk = std::get_if<DiskSystem>(&system)) {
        const auto traj = disk->run();
        out.t = traj.times();
        out.value = traj.probe_series();
    } else {
        const auto traj = std::get<ReducedBoundaryRun>(system).run();
        out.t = traj.t;
        out.value = traj.psi;
    }
    return out;
}

Scenario refine(Scenario s, int level) {
    if (level == 0) return s;
    const int factor = 1 << level;
    const double base_limit = cfl_limit(s);
    if (s.is_1d()) {
        std::get<InteriorSpec1D>(s.interior).n_cells *= factor;
    } else if (s.is_2d()) {
        auto& disk = std::get<DiskSpec>(s.interior);
        disk.n_r *= factor;
        disk.n_theta *= factor;
    }
    // keep the CFL fraction fixed under the refined grid
    const double ratio = std::isfinite(base_limit) ? cfl_limit(s) / base_limit
                                                   : 1.0 / factor;
    s.dt *= ratio;
    s.output.stride = std::max(1, static_cast<int>(std::lround(s.output.stride / ratio)));
    return s;
}

double sup_series_difference(const SeriesResult& coarse, const SeriesResult& fine) {
    double worst = 0.0;
    std::size_t cursor = 0;
    for (std::size_t i = 0; i < coarse.t.size(); ++i) {
        while (cursor + 1 < fine.t.size() &&
               std::abs(fine.t[cursor + 1] - coarse.t[i]) <
                   std::abs(fine.t[cursor] - coarse.t[i]))
            ++cursor;
        worst = std::max(worst, std::abs(coarse.value[i] - fine.value[cursor]));
    }
    return worst;
}

int cmd_converge(const CommonOptions& opt, int levels) {
    Scenario base = load(opt);
    if (levels < 2) throw SpecError("converge needs --levels >= 2");

    std::vector<SeriesResult> runs;
    for (int level = 0; level <= levels; ++level) runs.push_back(run_series(refine(base, level)));

    std::ofstream csv(out_path(opt, "convergence.csv"));
    csv << "level,refinement,sup_difference,order\n";
    json table = json::array();
    double prev_diff = 0.0;
    for (int level = 0; level < levels; ++level) {
        const double diff = sup_series_difference(runs[level], runs[level + 1]);
        double order = 0.0;
        if (level > 0 && diff > 0.0) order = std::log2(prev_diff / diff);
        csv << level << ',' << (1 << level) << ',' << format_double(diff) << ','
            << format_double(order) << '\n';
        table.push_back({{"level", level}, {"sup_difference", diff}, {"order", order}});
        prev_diff = diff;
    }
    json summary = run_metadata(base, opt);
    summary["levels"] = table;
    write_json(out_path(opt, "convergence.json"), summary);
    std::cout << "wrote " << opt.out_dir << "\n";
    return 0;
}

int cmd_respond(const CommonOptions& opt) {
    Scenario s = load(opt);
    if (!s.is_reduced())
        throw SpecError("respond expects a reduced (boundary-only) scenario");
    const auto& node = s.boundaries[0];
    const double m = node.mass(0, 0);
    const double k = node.hooke(0, 0);
    const MemoryKernel kernel = node.kernel.value_or(MemoryKernel{});

    // grid chosen so the truncation tail e^{-eta T} stays below 1e-6
    const double eta_min = 0.2;
    const double t_end = std::max(s.t_end, -std::log(1e-7) / eta_min);
    const double dt = std::min(s.dt, 1e-3);
    const ComplexFrequencyGrid grid =
        ComplexFrequencyGrid::rectangle(-5.0, 5.0, 41, eta_min, 1.0, 3);
    const auto measured = measure_admittance(m, k, kernel, grid, dt, t_end);
    write_admittance_csv(out_path(opt, "admittance.csv"), measured);

    // analytic cross-check: Z(s) = m s + k/s + kernel transform
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.zeta.size(); ++i) {
        const Complex lap = -Complex(0.0, 1.0) * grid.zeta[i];
        const Complex analytic = 1.0 / (m * lap + k / lap + kernel_transform(kernel, grid.zeta[i]));
        worst = std::max(worst, std::abs(measured.value[i] - analytic) / std::abs(analytic));
    }
    const auto verdict = check_positive_definite_ae(kernel, opt.seed);

    json summary = run_metadata(s, opt);
    summary["admittance_vs_analytic_worst_rel"] = worst;
    summary["kernel_positive_definite"] = verdict.passed;
    summary["positivity_worst_value"] = verdict.worst_value;
    write_json(out_path(opt, "respond.json"), summary);
    std::cout << "wrote " << opt.out_dir << "\n";
    return 0;
}

int cmd_energy_audit(const CommonOptions& opt) {
    Scenario s = load(opt);
    CoupledSystem system = build_system(s);
    json summary = run_metadata(s, opt);

    auto audit_1d = [&](System1D& sys, const Scenario& sc) {
        const auto traj = sys.run();
        std::ofstream csv(out_path(opt, "balance_residuals.csv"));
        csv << "t,balance_residual_b1,balance_residual_b2,total\n";
        for (const auto& smp : traj.samples)
            csv << format_double(smp.t) << ',' << format_double(smp.ledger.balance_residual[0])
                << ',' << format_double(smp.ledger.balance_residual[1]) << ','
                << format_double(smp.ledger.total) << '\n';
        return conservation_report(ledgers_of(traj), sc.dt * sc.output.stride,
                                   sys.outflow_ends());
    };

    if (std::holds_alternative<System1D>(system)) {
        auto report = audit_1d(std::get<System1D>(system), s);
        summary["conservation"] = conservation_json(report);
        // residual order from a one-level refinement
        Scenario fine = refine(s, 1);
        System1D fine_sys(fine);
        const auto fine_report = audit_1d(fine_sys, fine);
        const double coarse_res = std::max(report.residual_rms[0], report.residual_rms[1]);
        const double fine_res =
            std::max(fine_report.residual_rms[0], fine_report.residual_rms[1]);
        summary["per_end_residual_order"] =
            (coarse_res > 0.0 && fine_res > 0.0) ? std::log2(coarse_res / fine_res) : 0.0;
    } else if (std::holds_alternative<DiskSystem>(system)) {
        const auto traj = std::get<DiskSystem>(system).run();
        summary["conservation"] =
            conservation_json(conservation_report(ledgers_of(traj), s.dt * s.output.stride));
    } else {
        throw SpecError("energy-audit expects a scenario with an interior field");
    }
    write_json(out_path(opt, "energy_audit.json"), summary);
    std::cout << "wrote " << opt.out_dir << "\n";
    return 0;
}

json error_json(const char* kind, const std::exception& e) {
    json j{{"error", kind}, {"detail", e.what()}};
    if (const auto* spec = dynamic_cast<const SpecError*>(&e)) j["violations"] = spec->violations();
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coupled interior/boundary wave simulations"};
    app.require_subcommand(1);

    CommonOptions run_opt, sweep_opt, conv_opt, resp_opt, audit_opt;
    std::string ktilde_list = "1,10,100,1000";
    int levels = 3;

    add_common(app.add_subcommand("run", "simulate a scenario"), run_opt);
    auto* sweep = app.add_subcommand("sweep", "coupling-stiffness ladder against the rigid limit");
    add_common(sweep, sweep_opt);
    sweep->add_option("--ktilde", ktilde_list, "comma separated coupling stiffness values");
    auto* conv = app.add_subcommand("converge", "grid refinement ladder");
    add_common(conv, conv_opt);
    conv->add_option("--levels", levels, "number of refinement levels");
    add_common(app.add_subcommand("respond", "measure the boundary admittance"), resp_opt);
    add_common(app.add_subcommand("energy-audit", "conservation and balance report"), audit_opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("run")) return cmd_run(run_opt);
        if (app.got_subcommand("sweep")) {
            std::vector<double> values;
            std::stringstream ss(ktilde_list);
            std::string item;
            while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
            return cmd_sweep(sweep_opt, values);
        }
        if (app.got_subcommand("converge")) return cmd_converge(conv_opt, levels);
        if (app.got_subcommand("respond")) return cmd_respond(resp_opt);
        if (app.got_subcommand("energy-audit")) return cmd_energy_audit(audit_opt);
    } catch (const SpecError& e) {
        std::cerr << error_json("invalid_spec", e).dump() << "\n";
        return kExitValidation;
    } catch (const NumericalBlowup& e) {
        std::cerr << error_json("numerical_blowup", e).dump() << "\n";
        return kExitBlowup;
    } catch (const TailNotConverged& e) {
        std::cerr << error_json("tail_not_converged", e).dump() << "\n";
        return kExitConvergence;
    } catch (const ConvergenceFailure& e) {
        std::cerr << error_json("convergence_failure", e).dump() << "\n";
        return kExitConvergence;
    } catch (const std::exception& e) {
        std::cerr << error_json("internal_error", e).dump() << "\n";
        return 1;
    }
    return 0;
}

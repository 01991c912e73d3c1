#include "wavebound/output.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>

namespace wavebound {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw SpecError("cannot open output file: " + path.string());
    return out;
}

void write_row(std::ofstream& out, const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out << ',';
        out << format_double(values[i]);
    }
    out << '\n';
}

}  // namespace

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory1D& traj,
                          int components) {
    auto out = open_out(path);
    out << "t";
    for (const char* e : {"b1", "b2"})
        for (int c = 0; c < components; ++c) out << ",psi_B_" << e << "_" << c;
    for (const char* e : {"b1", "b2"})
        for (int c = 0; c < components; ++c) out << ",psi_L_" << e << "_" << c;
    out << ",H_D,H_B,balance_residual_b1,balance_residual_b2\n";
    for (const auto& s : traj.samples) {
        std::vector<double> row;
        row.push_back(s.t);
        for (int e = 0; e < 2; ++e)
            for (int c = 0; c < components; ++c)
                row.push_back(s.psi_B[e].size() > c ? s.psi_B[e](c) : 0.0);
        for (int e = 0; e < 2; ++e)
            for (int c = 0; c < components; ++c)
                row.push_back(s.psi_L[e].size() > c ? s.psi_L[e](c) : 0.0);
        row.push_back(s.ledger.H_D_total);
        row.push_back(s.ledger.H_B[0] + s.ledger.H_B[1]);
        row.push_back(s.ledger.balance_residual[0]);
        row.push_back(s.ledger.balance_residual[1]);
        write_row(out, row);
    }
}

void write_ledger_csv(const std::filesystem::path& path,
                      const std::vector<EnergyLedger>& ledgers) {
    auto out = open_out(path);
    out << "t,H_D_total,H_B_b1,H_B_b2,S_D_b1,S_D_b2,interaction_power_b1,interaction_power_b2,"
           "balance_residual_b1,balance_residual_b2,external_power,total\n";
    for (const auto& l : ledgers)
        write_row(out, {l.time, l.H_D_total, l.H_B[0], l.H_B[1], l.S_D[0], l.S_D[1],
                        l.interaction_power[0], l.interaction_power[1], l.balance_residual[0],
                        l.balance_residual[1], l.external_power, l.total});
}

void write_reduced_csv(const std::filesystem::path& path, const ReducedTrajectory& traj) {
    auto out = open_out(path);
    out << "t,psi_B,psi_B_dot\n";
    for (std::size_t i = 0; i < traj.t.size(); ++i)
        write_row(out, {traj.t[i], traj.psi[i], traj.psi_dot[i]});
}

void write_ring_csv(const std::filesystem::path& path, const Trajectory2D& traj) {
    auto out = open_out(path);
    const auto n_theta = traj.samples.empty() ? 0 : traj.samples.front().psi_B.size();
    out << "t";
    for (Eigen::Index j = 0; j < n_theta; ++j) out << ",psi_B_" << j;
    out << ",H_B\n";
    for (const auto& s : traj.samples) {
        std::vector<double> row;
        row.push_back(s.t);
        for (Eigen::Index j = 0; j < n_theta; ++j) row.push_back(s.psi_B(j));
        row.push_back(s.ledger.H_B[0]);
        write_row(out, row);
    }
}

void write_probe_csv(const std::filesystem::path& path, const Trajectory2D& traj) {
    auto out = open_out(path);
    out << "t,probe,H_D,H_B,total\n";
    for (const auto& s : traj.samples)
        write_row(out, {s.t, s.probe, s.ledger.H_D_total, s.ledger.H_B[0], s.ledger.total});
}

void write_snapshot_csv(const std::filesystem::path& path, const Mat& field) {
    auto out = open_out(path);
    for (Eigen::Index i = 0; i < field.rows(); ++i) {
        for (Eigen::Index j = 0; j < field.cols(); ++j) {
            if (j) out << ',';
            out << format_double(field(i, j));
        }
        out << '\n';
    }
}

void write_admittance_csv(const std::filesystem::path& path, const AdmittanceMeasurement& data) {
    auto out = open_out(path);
    out << "re_zeta,im_zeta,re_val,im_val,err_bound\n";
    for (std::size_t i = 0; i < data.value.size(); ++i)
        write_row(out, {data.grid.zeta[i].real(), data.grid.zeta[i].imag(),
                        data.value[i].real(), data.value[i].imag(), data.err_bound[i]});
}

nlohmann::json conservation_json(const ConservationReport& report) {
    return nlohmann::json{
        {"initial_total", report.initial_total},
        {"final_total", report.final_total},
        {"max_drift", report.max_drift},
        {"rms_defect", report.rms_defect},
        {"max_defect", report.max_defect},
        {"per_end_residual_rms", {report.residual_rms[0], report.residual_rms[1]}},
        {"monotone_nonincreasing", report.monotone_nonincreasing},
    };
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

}  // namespace wavebound

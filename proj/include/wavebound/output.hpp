#pragma once

#include "wavebound/energy.hpp"
#include "wavebound/response.hpp"
#include "wavebound/solver1d.hpp"
#include "wavebound/solver2d.hpp"

#include <nlohmann/json_fwd.hpp>

#include <filesystem>

namespace wavebound {

/// All floating point output is printed with 17 significant digits so values
/// round-trip exactly.
std::string format_double(double v);

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory1D& traj,
                          int components);
void write_ledger_csv(const std::filesystem::path& path,
                      const std::vector<EnergyLedger>& ledgers);
void write_reduced_csv(const std::filesystem::path& path, const ReducedTrajectory& traj);
void write_ring_csv(const std::filesystem::path& path, const Trajectory2D& traj);
void write_probe_csv(const std::filesystem::path& path, const Trajectory2D& traj);
void write_snapshot_csv(const std::filesystem::path& path, const Mat& field);
void write_admittance_csv(const std::filesystem::path& path, const AdmittanceMeasurement& data);

nlohmann::json conservation_json(const ConservationReport& report);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace wavebound

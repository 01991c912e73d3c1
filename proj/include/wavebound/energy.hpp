#pragma once

#include "wavebound/model.hpp"

namespace wavebound {

/// Per-sample energy bookkeeping: interior and boundary energies, interface
/// flux powers, detailed-balance residuals and the external power input.
/// `total` is always H_D_total + sum of H_B.
struct EnergyLedger {
    double time = 0.0;
    double H_D_total = 0.0;
    std::array<double, 2> H_B{0.0, 0.0};
    std::array<double, 2> S_D{0.0, 0.0};  ///< flux power into the interior per end
    std::array<double, 2> interaction_power{0.0, 0.0};
    std::array<double, 2> balance_residual{0.0, 0.0};
    double external_power = 0.0;
    double total = 0.0;
};

/// Interior energy of a 1D state: composite trapezoid of
/// 1/2 psi_t . M psi_t + 1/2 psi_z . K psi_z over the grid.
struct InteriorEnergy {
    double total = 0.0;
    std::vector<double> density;  ///< per node
};
InteriorEnergy interior_energy_1d(const Mat& mass, const Mat& stiffness, double dz,
                                  const Mat& psi, const Mat& psi_dot);

/// Boundary energy of one node including the interaction spring's stored
/// energy: 1/2 v.M_B v + 1/2 psi_B.K_B psi_B + 1/2 (psi_B-psi_L).k~(psi_B-psi_L).
double boundary_energy(const Mat& node_mass, const Mat& node_hooke,
                       const InteractionSpec& interaction, const Vec& psi_B,
                       const Vec& psi_B_dot, const Vec& psi_L);

/// Detailed balance defect at an interface: the interior flux power minus the
/// interaction power, both taken against the trace velocity. Zero for exact
/// solutions of the coupled system.
double detailed_balance_residual(const Vec& flux, const Vec& interaction_force,
                                 const Vec& psi_L_dot);

/// Conservation audit over a uniformly sampled ledger series.
struct ConservationReport {
    double initial_total = 0.0;
    double final_total = 0.0;
    double max_drift = 0.0;   ///< max |E(t)-E(0)| / max(|E(0)|, tiny)
    double rms_defect = 0.0;  ///< RMS of dE/dt - external_power - outflow flux power
    double max_defect = 0.0;
    std::array<double, 2> residual_rms{0.0, 0.0};
    bool monotone_nonincreasing = true;  ///< tracked energy, within tolerance
};

ConservationReport conservation_report(const std::vector<EnergyLedger>& ledgers,
                                       double sample_dt,
                                       std::array<bool, 2> outflow_ends = {false, false},
                                       double monotone_tol = 0.0);

}  // namespace wavebound

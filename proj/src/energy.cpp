#include "wavebound/energy.hpp"

#include <cmath>

namespace wavebound {

InteriorEnergy interior_energy_1d(const Mat& mass, const Mat& stiffness, double dz,
                                  const Mat& psi, const Mat& psi_dot) {
    const auto k = psi.rows();
    const auto n = psi.cols() - 1;
    Mat dpsi(k, n + 1);
    if (n >= 2) {
        dpsi.block(0, 1, k, n - 1) =
            (psi.block(0, 2, k, n - 1) - psi.block(0, 0, k, n - 1)) / (2.0 * dz);
        dpsi.col(0) = (-3.0 * psi.col(0) + 4.0 * psi.col(1) - psi.col(2)) / (2.0 * dz);
        dpsi.col(n) = (3.0 * psi.col(n) - 4.0 * psi.col(n - 1) + psi.col(n - 2)) / (2.0 * dz);
    } else {
        dpsi.setZero();
    }

    InteriorEnergy out;
    out.density.resize(n + 1);
    for (Eigen::Index j = 0; j <= n; ++j) {
        out.density[j] = 0.5 * psi_dot.col(j).dot(mass * psi_dot.col(j)) +
                         0.5 * dpsi.col(j).dot(stiffness * dpsi.col(j));
        const double w = (j == 0 || j == n) ? 0.5 : 1.0;
        out.total += w * out.density[j];
    }
    out.total *= dz;
    return out;
}

double boundary_energy(const Mat& node_mass, const Mat& node_hooke,
                       const InteractionSpec& interaction, const Vec& psi_B,
                       const Vec& psi_B_dot, const Vec& psi_L) {
    double h = 0.5 * psi_B_dot.dot(node_mass * psi_B_dot) + 0.5 * psi_B.dot(node_hooke * psi_B);
    if (interaction.kind == InteractionSpec::Kind::Spring) {
        const Vec gap = psi_B - psi_L;
        h += 0.5 * gap.dot(interaction.stiffness * gap);
    }
    return h;
}

double detailed_balance_residual(const Vec& flux, const Vec& interaction_force,
                                 const Vec& psi_L_dot) {
    return psi_L_dot.dot(flux - interaction_force);
}

ConservationReport conservation_report(const std::vector<EnergyLedger>& ledgers, double sample_dt,
                                       std::array<bool, 2> outflow_ends, double monotone_tol) {
    ConservationReport r;
    if (ledgers.empty()) return r;
    r.initial_total = ledgers.front().total;
    r.final_total = ledgers.back().total;
    const double scale = std::max(std::abs(r.initial_total), 1e-300);

    double peak = 0.0;
    for (const auto& l : ledgers) peak = std::max(peak, std::abs(l.total - r.initial_total));
    r.max_drift = peak / scale;

    double sum_sq = 0.0;
    std::array<double, 2> res_sq{0.0, 0.0};
    std::size_t count = 0;
    for (std::size_t i = 1; i + 1 < ledgers.size(); ++i) {
        const double dEdt = (ledgers[i + 1].total - ledgers[i - 1].total) / (2.0 * sample_dt);
        double defect = dEdt - ledgers[i].external_power;
        for (int e = 0; e < 2; ++e)
            if (outflow_ends[e]) defect -= ledgers[i].S_D[e];
        sum_sq += defect * defect;
        r.max_defect = std::max(r.max_defect, std::abs(defect));
        for (int e = 0; e < 2; ++e) res_sq[e] += ledgers[i].balance_residual[e] *
                                                 ledgers[i].balance_residual[e];
        ++count;
    }
    if (count > 0) {
        r.rms_defect = std::sqrt(sum_sq / count);
        for (int e = 0; e < 2; ++e) r.residual_rms[e] = std::sqrt(res_sq[e] / count);
    }

    const bool has_outflow = outflow_ends[0] || outflow_ends[1];
    if (has_outflow) {
        // default tolerance: the scheme's own bounded O(dt^2) energy wiggle
        const double tol = (monotone_tol > 0.0) ? monotone_tol : 1e-5 * scale;
        for (std::size_t i = 1; i < ledgers.size(); ++i) {
            if (ledgers[i].total > ledgers[i - 1].total + tol) {
                r.monotone_nonincreasing = false;
                break;
            }
        }
    }
    return r;
}

}  // namespace wavebound

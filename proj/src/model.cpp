#include "wavebound/model.hpp"

#include <cmath>
#include <sstream>

namespace wavebound {

namespace {

bool symmetric(const Mat& m, double tol = 1e-12) {
    return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol * (1.0 + m.cwiseAbs().maxCoeff());
}

bool positive_definite(const Mat& m) {
    if (m.size() == 0 || m.rows() != m.cols() || !m.allFinite() || !symmetric(m)) return false;
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    return es.eigenvalues().minCoeff() > 0.0;
}

bool nonnegative_definite(const Mat& m) {
    if (m.size() == 0 || m.rows() != m.cols() || !m.allFinite() || !symmetric(m)) return false;
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    return es.eigenvalues().minCoeff() >= -1e-12 * (1.0 + m.cwiseAbs().maxCoeff());
}

bool diagonal(const Mat& m, double tol = 1e-12) {
    Mat off = m;
    off.diagonal().setZero();
    return off.cwiseAbs().maxCoeff() <= tol * (1.0 + m.cwiseAbs().maxCoeff());
}

void check_boundary_node(const BoundaryNodeSpec& node, int k, const char* where,
                         std::vector<std::string>& out) {
    const std::string at = std::string("boundary ") + where + ": ";
    if (node.mass.rows() != k || node.mass.cols() != k) {
        out.push_back(at + "mass matrix must be " + std::to_string(k) + "x" + std::to_string(k));
        return;
    }
    if (!node.mass.allFinite() || !diagonal(node.mass) || node.mass.diagonal().minCoeff() < 0.0)
        out.push_back(at + "mass must be diagonal with entries >= 0");
    if (node.hooke.rows() != k || node.hooke.cols() != k || !nonnegative_definite(node.hooke))
        out.push_back(at + "hooke matrix must be symmetric nonnegative");
    if (node.kernel) {
        try {
            node.kernel->validate();
        } catch (const SpecError& e) {
            for (const auto& v : e.violations()) out.push_back(at + v);
        }
    }
}

void check_interaction(const InteractionSpec& inter, int k, const char* where,
                       std::vector<std::string>& out) {
    if (inter.kind != InteractionSpec::Kind::Spring) return;
    if (inter.stiffness.rows() != k || inter.stiffness.cols() != k ||
        !positive_definite(inter.stiffness))
        out.push_back(std::string("interaction ") + where +
                      ": spring stiffness must be symmetric positive definite");
}

}  // namespace

BoundaryNodeSpec BoundaryNodeSpec::point(double m, double k, End label) {
    BoundaryNodeSpec node;
    node.mass = Mat::Constant(1, 1, m);
    node.hooke = Mat::Constant(1, 1, k);
    node.label = label;
    return node;
}

InteractionSpec InteractionSpec::spring(double k_tilde) {
    return spring(Mat::Constant(1, 1, k_tilde));
}

double InitialField::value(double z) const {
    const double u = (z - center) / width;
    switch (kind) {
        case Kind::Zero:
            return 0.0;
        case Kind::Gaussian:
            return amplitude * std::exp(-u * u);
        case Kind::SineMode:  // mode over [center, center + width]
            return amplitude * std::sin(static_cast<double>(mode) * M_PI * u);
        case Kind::BesselMode:
        case Kind::Custom:
            return 0.0;  // grid-based profiles are sampled by the solvers directly
    }
    return 0.0;
}

double InitialField::derivative(double z) const {
    const double u = (z - center) / width;
    switch (kind) {
        case Kind::Zero:
            return 0.0;
        case Kind::Gaussian:
            return amplitude * std::exp(-u * u) * (-2.0 * u / width);
        case Kind::SineMode: {
            const double w = static_cast<double>(mode) * M_PI / width;
            return amplitude * w * std::cos(w * (z - center));
        }
        case Kind::BesselMode:
        case Kind::Custom:
            return 0.0;
    }
    return 0.0;
}

Vec wave_speeds(const Mat& mass, const Mat& stiffness) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(stiffness, mass);
    return es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
}

double cfl_limit(const Scenario& s) {
    if (const auto* interior = std::get_if<InteriorSpec1D>(&s.interior)) {
        const double dz = (interior->b2 - interior->b1) / interior->n_cells;
        const double a_max = wave_speeds(interior->mass, interior->stiffness).maxCoeff();
        return dz / a_max;
    }
    if (const auto* disk = std::get_if<DiskSpec>(&s.interior)) {
        const double a = std::sqrt(disk->tension / disk->sigma);
        const double dr = disk->radius / disk->n_r;
        const double dth = 2.0 * M_PI / disk->n_theta;
        const double r0 = 0.5 * dr;  // innermost cell center on the half-offset grid
        return 1.0 / (a * std::sqrt(1.0 / (dr * dr) + 1.0 / (r0 * r0 * dth * dth)));
    }
    return std::numeric_limits<double>::infinity();  // reduced model: no grid bound
}

std::vector<std::string> scenario_violations(const Scenario& s) {
    std::vector<std::string> out;

    if (!(s.dt > 0.0) || !std::isfinite(s.dt)) out.push_back("dt must be positive and finite");
    if (!(s.t_end > 0.0) || !std::isfinite(s.t_end)) out.push_back("t_end must be positive");
    if (!(s.cfl_factor > 0.0) || s.cfl_factor > 0.9)
        out.push_back("CFL factor must lie in (0, 0.9]");
    if (s.output.stride < 1) out.push_back("output stride must be >= 1");

    if (const auto* interior = std::get_if<InteriorSpec1D>(&s.interior)) {
        const int k = interior->components();
        if (!positive_definite(interior->mass))
            out.push_back("interior mass matrix must be symmetric positive definite");
        if (interior->stiffness.rows() != k || interior->stiffness.cols() != k ||
            !positive_definite(interior->stiffness))
            out.push_back("interior stiffness matrix must be symmetric positive definite");
        if (!(interior->b1 < interior->b2)) out.push_back("domain requires b1 < b2");
        if (interior->n_cells < 8) out.push_back("n_cells must be >= 8");

        if (out.empty()) {
            const Vec a = wave_speeds(interior->mass, interior->stiffness);
            if (!a.allFinite() || a.minCoeff() <= 0.0)
                out.push_back("wave speeds must be finite and positive");
            else if (s.dt > s.cfl_factor * cfl_limit(s) * (1.0 + 1e-12))
                out.push_back("CFL violated: dt=" + std::to_string(s.dt) + " exceeds " +
                              std::to_string(s.cfl_factor * cfl_limit(s)));
        }

        for (int e = 0; e < 2; ++e) {
            const bool semi = (e == 0) ? interior->semi_infinite_b1 : interior->semi_infinite_b2;
            const char* name = (e == 0) ? "b1" : "b2";
            if (semi) {
                if (s.interactions[e].kind != InteractionSpec::Kind::None)
                    out.push_back(std::string("semi-infinite end ") + name +
                                  " cannot carry an interaction");
                continue;
            }
            check_boundary_node(s.boundaries[e], interior->components(), name, out);
            check_interaction(s.interactions[e], interior->components(), name, out);
            if (s.boundaries[e].kernel)
                out.push_back(std::string("boundary ") + name +
                              ": memory kernels are only supported on reduced scenarios");
        }

        // rigid ends need compatible initial data: psi_B(0) = psi_L(0)
        for (int e = 0; e < 2; ++e) {
            if (s.interactions[e].kind != InteractionSpec::Kind::Rigid) continue;
            const double z = (e == 0) ? interior->b1 : interior->b2;
            const Vec weights = s.initial.field.component_weights.size() > 0
                                    ? s.initial.field.component_weights
                                    : Vec::Unit(interior->components(), 0);
            double end_value = s.initial.field.value(z);
            if (s.initial.field.kind == InitialField::Kind::Custom) {
                const auto& samples = s.initial.field.custom_psi;
                const std::size_t idx = (e == 0) ? 0 : static_cast<std::size_t>(interior->n_cells);
                end_value = idx < samples.size() ? samples[idx] : 0.0;
            }
            const Vec trace = weights * end_value;
            const Vec& c = s.initial.boundary_value[e];
            if (c.size() > 0 && (c - trace).cwiseAbs().maxCoeff() > 1e-9)
                out.push_back(std::string("rigid interaction at ") + (e == 0 ? "b1" : "b2") +
                              " requires psi_B(0) = psi_L(0)");
        }
    } else if (const auto* disk = std::get_if<DiskSpec>(&s.interior)) {
        if (!(disk->radius > 0.0)) out.push_back("disk radius must be > 0");
        if (!(disk->sigma > 0.0)) out.push_back("surface mass density must be > 0");
        if (!(disk->tension > 0.0)) out.push_back("membrane tension must be > 0");
        if (disk->ring_lambda < 0.0) out.push_back("ring mass density must be >= 0");
        if (disk->ring_k < 0.0) out.push_back("ring support stiffness must be >= 0");
        if (disk->n_theta < 16 || disk->n_theta % 2 != 0)
            out.push_back("n_theta must be even and >= 16");
        if (disk->n_r < 4) out.push_back("n_r must be >= 4");
        if (disk->interaction.kind == InteractionSpec::Kind::Spring &&
            !(disk->interaction.stiffness.size() == 1 && disk->interaction.stiffness(0, 0) > 0.0))
            out.push_back("ring interaction stiffness must be a positive scalar");
        if (out.empty() && s.dt > s.cfl_factor * cfl_limit(s) * (1.0 + 1e-12))
            out.push_back("CFL violated on the polar grid");
        if (disk->interaction.kind == InteractionSpec::Kind::None)
            out.push_back("disk boundary requires a Spring or Rigid interaction");
    } else {
        // reduced boundary-only model
        const auto& node = s.boundaries[0];
        check_boundary_node(node, node.mass.size() > 0 ? static_cast<int>(node.mass.rows()) : 1,
                            "b1", out);
        if (node.mass.size() == 0 || node.mass.diagonal().minCoeff() <= 0.0)
            out.push_back("reduced model requires a strictly positive boundary mass");
    }

    return out;
}

Scenario validate_scenario(Scenario s) {
    auto violations = scenario_violations(s);
    if (!violations.empty()) throw SpecError(std::move(violations));
    return s;
}

}  // namespace wavebound

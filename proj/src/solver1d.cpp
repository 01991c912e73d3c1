#include "wavebound/solver1d.hpp"

#include <cmath>

namespace wavebound {

namespace {

Vec weights_or_unit(const InitialField& f, int k) {
    if (f.component_weights.size() == static_cast<Eigen::Index>(k)) return f.component_weights;
    return Vec::Unit(k, 0);
}

}  // namespace

std::vector<double> Trajectory1D::times() const {
    std::vector<double> t;
    t.reserve(samples.size());
    for (const auto& s : samples) t.push_back(s.t);
    return t;
}

std::vector<double> Trajectory1D::boundary_series(End e, int comp) const {
    std::vector<double> v;
    v.reserve(samples.size());
    for (const auto& s : samples) v.push_back(s.psi_B[static_cast<int>(e)](comp));
    return v;
}

System1D::System1D(const Scenario& scenario) {
    auto violations = scenario_violations(scenario);
    if (!violations.empty()) throw SpecError(std::move(violations));
    const auto& interior = std::get<InteriorSpec1D>(scenario.interior);

    k_ = interior.components();
    n_ = interior.n_cells;
    z0_ = interior.b1;
    dz_ = (interior.b2 - interior.b1) / n_;
    dt_ = scenario.dt;
    t_end_ = scenario.t_end;
    output_ = scenario.output;
    body_force_ = interior.body_force;

    mass_ = interior.mass;
    stiffness_ = interior.stiffness;
    mass_inv_ = mass_.llt().solve(Mat::Identity(k_, k_));

    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(stiffness_, mass_);
    speeds_ = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    char_vectors_ = es.eigenvectors();              // V^T M V = I, V^T K V = diag(a^2)
    char_vectors_inv_ = char_vectors_.transpose() * mass_;

    for (int e = 0; e < 2; ++e) {
        auto& end = ends_[e];
        const bool semi = (e == 0) ? interior.semi_infinite_b1 : interior.semi_infinite_b2;
        if (semi) {
            end.closure = Closure::Outflow;
            interactions_[e] = InteractionSpec::none();
            continue;
        }
        const auto& node = scenario.boundaries[e];
        const auto& inter = scenario.interactions[e];
        interactions_[e] = inter;
        end.node_mass = node.mass;
        end.node_hooke = node.hooke;
        end.force = node.external_force;
        end.node_massless = node.mass.cwiseAbs().maxCoeff() == 0.0;

        Mat lumped = mass_ * (0.5 * dz_);
        switch (inter.kind) {
            case InteractionSpec::Kind::Spring:
                end.closure = Closure::SpringCoupled;
                end.k_tilde = inter.stiffness;
                if (end.node_massless) {
                    Mat relay = end.node_hooke + end.k_tilde;
                    end.relay_solver.compute(relay);
                    if (end.relay_solver.info() != Eigen::Success)
                        throw SpecError("massless spring boundary needs hooke + k_tilde invertible");
                } else {
                    end.node_mass_chol.compute(end.node_mass);
                }
                break;
            case InteractionSpec::Kind::Rigid:
                if (end.node_massless) {
                    end.closure = Closure::RigidMasslessRobin;
                    Mat robin = stiffness_ * (1.5 / dz_) + end.node_hooke;
                    end.robin_solver.compute(robin);
                    if (end.robin_solver.info() != Eigen::Success)
                        throw SpecError("degenerate Robin closure at a massless rigid end");
                } else {
                    end.closure = Closure::RigidMassive;
                    lumped += end.node_mass;
                }
                break;
            case InteractionSpec::Kind::None:
                end.closure = Closure::Free;
                if (end.node_massless) {
                    // a massless, hooke-free, uncoupled node has no equation:
                    // treat it as absent (it keeps its initial value)
                    end.node_inert = end.node_hooke.cwiseAbs().maxCoeff() == 0.0;
                    if (end.node_inert) {
                        if (end.force)
                            throw SpecError(
                                "an external force on a massless hooke-free boundary has no "
                                "equation to act through");
                    } else {
                        end.relay_solver.compute(end.node_hooke);
                        if (end.relay_solver.info() != Eigen::Success)
                            throw SpecError("massless free boundary requires invertible hooke");
                    }
                } else {
                    end.node_mass_chol.compute(end.node_mass);
                }
                break;
        }
        end.lumped_mass.compute(lumped);
    }

    apply_initial_conditions(scenario);
}

Vec System1D::field_force(double t) const {
    if (body_force_) return body_force_(t);
    return Vec::Zero(k_);
}

Vec System1D::boundary_force(End e, double t) const {
    const auto& f = ends_[static_cast<int>(e)].force;
    if (f) return f(t);
    return Vec::Zero(k_);
}

Vec System1D::one_sided_normal_derivative(const Mat& psi, End e) const {
    // inward-ordered triple (end, adjacent, next): same weights at both ends
    const int je = (e == End::b1) ? 0 : n_;
    const int dir = (e == End::b1) ? 1 : -1;
    return (3.0 * psi.col(je) - 4.0 * psi.col(je + dir) + psi.col(je + 2 * dir)) / (2.0 * dz_);
}

void System1D::apply_initial_conditions(const Scenario& scenario) {
    const auto& field = scenario.initial.field;
    const Vec w = weights_or_unit(field, k_);

    psi_ = Mat::Zero(k_, n_ + 1);
    Mat vel = Mat::Zero(k_, n_ + 1);
    Mat slope = Mat::Zero(k_, n_ + 1);
    for (int j = 0; j <= n_; ++j) {
        const double z = node_coord(j);
        if (field.kind == InitialField::Kind::Custom) {
            if (j < static_cast<int>(field.custom_psi.size())) psi_.col(j) = w * field.custom_psi[j];
            if (j < static_cast<int>(field.custom_psi_dot.size()))
                vel.col(j) = w * field.custom_psi_dot[j];
        } else {
            psi_.col(j) = w * field.value(z);
            slope.col(j) = w * field.derivative(z);
        }
    }
    if (field.traveling != 0) {
        // traveling pairing: psi_t = -dir * sqrt(M^-1 K) * psi_z
        const Mat advect =
            char_vectors_ * speeds_.asDiagonal() * char_vectors_inv_ * (-field.traveling);
        vel = advect * slope;
    }

    for (int e = 0; e < 2; ++e) {
        psi_B_[e] = scenario.initial.boundary_value[e].size() == k_
                        ? scenario.initial.boundary_value[e]
                        : Vec::Zero(k_);
        Vec d = scenario.initial.boundary_velocity[e].size() == k_
                    ? scenario.initial.boundary_velocity[e]
                    : Vec::Zero(k_);
        const auto& end = ends_[e];
        const int je = (e == 0) ? 0 : n_;
        if (end.closure == Closure::RigidMassive || end.closure == Closure::RigidMasslessRobin) {
            psi_B_[e] = psi_.col(je);
            vel.col(je) = d;  // the boundary node's velocity drives the shared trace
        }

        // seed psi_B^{-1}
        Vec accel_b = Vec::Zero(k_);
        if (end.closure == Closure::SpringCoupled && !end.node_massless) {
            Vec rhs = -end.node_hooke * psi_B_[e] - end.k_tilde * (psi_B_[e] - psi_.col(je)) +
                      boundary_force(static_cast<End>(e), 0.0);
            accel_b = end.node_mass_chol.solve(rhs);
        } else if (end.closure == Closure::Free && !end.node_massless &&
                   end.node_mass.size() > 0) {
            Vec rhs = -end.node_hooke * psi_B_[e] + boundary_force(static_cast<End>(e), 0.0);
            accel_b = end.node_mass_chol.solve(rhs);
        }
        psi_B_prev_[e] = psi_B_[e] - dt_ * d + 0.5 * dt_ * dt_ * accel_b;
        psi_B_dot0_[e] = d;
    }

    // seed psi^{-1} = psi^0 - dt v^0 + dt^2/2 accel^0
    Mat accel = Mat::Zero(k_, n_ + 1);
    const Vec f0 = field_force(0.0);
    for (int j = 1; j < n_; ++j) {
        accel.col(j) = mass_inv_ * (stiffness_ * (psi_.col(j + 1) - 2.0 * psi_.col(j) +
                                                  psi_.col(j - 1)) /
                                        (dz_ * dz_) +
                                    f0);
    }
    for (int e = 0; e < 2; ++e) {
        const auto& end = ends_[e];
        const int je = (e == 0) ? 0 : n_;
        const int ja = (e == 0) ? 1 : n_ - 1;
        Vec rhs = stiffness_ * (psi_.col(ja) - psi_.col(je)) / dz_ + 0.5 * dz_ * f0;
        switch (end.closure) {
            case Closure::SpringCoupled:
                rhs += end.k_tilde * (psi_B_[e] - psi_.col(je));
                accel.col(je) = end.lumped_mass.solve(rhs);
                break;
            case Closure::Free:
                accel.col(je) = end.lumped_mass.solve(rhs);
                break;
            case Closure::RigidMassive:
                rhs += -end.node_hooke * psi_.col(je) + boundary_force(static_cast<End>(e), 0.0);
                accel.col(je) = end.lumped_mass.solve(rhs);
                break;
            case Closure::RigidMasslessRobin:
            case Closure::Outflow:
                break;  // these closures never read the previous end value
        }
    }
    psi_prev_ = psi_ - dt_ * vel + 0.5 * dt_ * dt_ * accel;
    vel0_ = vel;
}

void System1D::step_field_interior(double t, Mat& psi_new) const {
    const double r = dt_ * dt_ / (dz_ * dz_);
    const Mat lap = psi_.block(0, 0, k_, n_ - 1) - 2.0 * psi_.block(0, 1, k_, n_ - 1) +
                    psi_.block(0, 2, k_, n_ - 1);
    psi_new.block(0, 1, k_, n_ - 1) = 2.0 * psi_.block(0, 1, k_, n_ - 1) -
                                      psi_prev_.block(0, 1, k_, n_ - 1) +
                                      r * (mass_inv_ * stiffness_ * lap);
    if (body_force_) {
        const Vec f = mass_inv_ * field_force(t) * (dt_ * dt_);
        psi_new.block(0, 1, k_, n_ - 1).colwise() += f;
    }
}

void System1D::step_field_end(End e, double t, Mat& psi_new) const {
    const auto& end = ends_[static_cast<int>(e)];
    const int je = (e == End::b1) ? 0 : n_;
    const int ja = (e == End::b1) ? 1 : n_ - 1;

    Vec rhs = stiffness_ * (psi_.col(ja) - psi_.col(je)) / dz_ + 0.5 * dz_ * field_force(t);
    switch (end.closure) {
        case Closure::SpringCoupled:
            rhs += end.k_tilde * (psi_B_[static_cast<int>(e)] - psi_.col(je));
            break;
        case Closure::RigidMassive:
            rhs += -end.node_hooke * psi_.col(je) + boundary_force(e, t);
            break;
        case Closure::Free:
            break;
        default:
            return;
    }
    psi_new.col(je) =
        2.0 * psi_.col(je) - psi_prev_.col(je) + dt_ * dt_ * end.lumped_mass.solve(rhs);
}

Vec System1D::robin_trace(const Mat& psi_new, End e, double t_new) const {
    const auto& end = ends_[static_cast<int>(e)];
    const int je = (e == End::b1) ? 0 : n_;
    const int dir = (e == End::b1) ? 1 : -1;
    // K dpsi/dn + K_B psi_0 = F_B with the 3-point one-sided outward derivative
    Vec rhs = stiffness_ * (4.0 * psi_new.col(je + dir) - psi_new.col(je + 2 * dir)) / (2.0 * dz_) +
              boundary_force(e, t_new);
    return end.robin_solver.solve(rhs);
}

void System1D::step_outflow_end(End e, Mat& psi_new) const {
    const int je = (e == End::b1) ? 0 : n_;
    const int dir = (e == End::b1) ? 1 : -1;
    const Vec we = char_vectors_inv_ * psi_.col(je);
    const Vec wa = char_vectors_inv_ * psi_.col(je + dir);
    const Vec wb = char_vectors_inv_ * psi_.col(je + 2 * dir);
    Vec wn(k_);
    for (int i = 0; i < k_; ++i) {
        const double nu = speeds_(i) * dt_ / dz_;
        // quadratic semi-Lagrangian trace-back along the outgoing characteristic
        wn(i) = we(i) - 0.5 * nu * (3.0 * we(i) - 4.0 * wa(i) + wb(i)) +
                0.5 * nu * nu * (we(i) - 2.0 * wa(i) + wb(i));
    }
    psi_new.col(je) = char_vectors_ * wn;
}

Vec System1D::step_boundary_node(End e, double t, const Vec& psi_L_now) {
    auto& end = ends_[static_cast<int>(e)];
    const int ei = static_cast<int>(e);
    Vec rhs = -end.node_hooke * psi_B_[ei] + boundary_force(e, t);
    if (end.closure == Closure::SpringCoupled)
        rhs += -end.k_tilde * (psi_B_[ei] - psi_L_now);
    return 2.0 * psi_B_[ei] - psi_B_prev_[ei] + dt_ * dt_ * end.node_mass_chol.solve(rhs);
}

void System1D::guard(const Mat& m) const {
    const double peak = m.cwiseAbs().maxCoeff();
    if (!(peak <= kOverflowGuard)) throw NumericalBlowup(time_, peak);
}

Sample1D System1D::step() {
    const double t = time_;
    const double t_new = t + dt_;

    Mat psi_new(k_, n_ + 1);
    step_field_interior(t, psi_new);
    for (int e = 0; e < 2; ++e) {
        const auto c = ends_[e].closure;
        if (c == Closure::Outflow)
            step_outflow_end(static_cast<End>(e), psi_new);
        else if (c != Closure::RigidMasslessRobin)
            step_field_end(static_cast<End>(e), t, psi_new);
    }
    // algebraic closures read the already-updated interior
    for (int e = 0; e < 2; ++e) {
        if (ends_[e].closure == Closure::RigidMasslessRobin) {
            const int je = (e == 0) ? 0 : n_;
            psi_new.col(je) = robin_trace(psi_new, static_cast<End>(e), t_new);
        }
    }

    std::array<Vec, 2> psi_B_new;
    for (int e = 0; e < 2; ++e) {
        const auto& end = ends_[e];
        const int je = (e == 0) ? 0 : n_;
        switch (end.closure) {
            case Closure::SpringCoupled:
                psi_B_new[e] = end.node_massless
                                   ? Vec(end.relay_solver.solve(
                                         end.k_tilde * psi_new.col(je) +
                                         boundary_force(static_cast<End>(e), t_new)))
                                   : step_boundary_node(static_cast<End>(e), t, psi_.col(je));
                break;
            case Closure::Free:
                if (!end.node_massless)
                    psi_B_new[e] = step_boundary_node(static_cast<End>(e), t, psi_.col(je));
                else if (end.node_inert)
                    psi_B_new[e] = psi_B_[e];
                else
                    psi_B_new[e] =
                        end.relay_solver.solve(boundary_force(static_cast<End>(e), t_new));
                break;
            case Closure::RigidMassive:
            case Closure::RigidMasslessRobin:
                psi_B_new[e] = psi_new.col(je);
                break;
            case Closure::Outflow:
                psi_B_new[e] = Vec::Zero(k_);
                break;
        }
    }
    guard(psi_new);

    // sample for time t: centered velocities use the levels n-1 and n+1
    Sample1D s;
    s.t = t;
    s.ledger.time = t;
    const Mat vel = (step_index_ == 0) ? vel0_ : Mat((psi_new - psi_prev_) / (2.0 * dt_));
    for (int e = 0; e < 2; ++e) {
        const int je = (e == 0) ? 0 : n_;
        s.psi_L[e] = psi_.col(je);
        s.psi_L_dot[e] = vel.col(je);
        s.psi_B[e] = psi_B_[e];
        s.psi_B_dot[e] = (step_index_ == 0) ? psi_B_dot0_[e]
                                            : Vec((psi_B_new[e] - psi_B_prev_[e]) / (2.0 * dt_));
    }
    s.ledger.H_D_total = interior_energy_1d(mass_, stiffness_, dz_, psi_, vel).total;
    for (int e = 0; e < 2; ++e) {
        const Vec flux = stiffness_ * one_sided_normal_derivative(psi_, static_cast<End>(e));
        s.ledger.S_D[e] = s.psi_L_dot[e].dot(flux);
        if (ends_[e].closure == Closure::Outflow) continue;
        s.ledger.H_B[e] = boundary_energy(ends_[e].node_mass, ends_[e].node_hooke,
                                          interactions_[e], psi_B_[e], s.psi_B_dot[e],
                                          s.psi_L[e]);
        if (ends_[e].closure == Closure::SpringCoupled) {
            const Vec inter = ends_[e].k_tilde * (psi_B_[e] - s.psi_L[e]);
            s.ledger.interaction_power[e] = s.psi_L_dot[e].dot(inter);
            s.ledger.balance_residual[e] =
                detailed_balance_residual(flux, inter, s.psi_L_dot[e]);
        }
        s.ledger.external_power += boundary_force(static_cast<End>(e), t).dot(s.psi_B_dot[e]);
    }
    if (body_force_) {
        const Vec f = field_force(t);
        double p = 0.0;
        for (int j = 0; j <= n_; ++j) p += ((j == 0 || j == n_) ? 0.5 : 1.0) * f.dot(vel.col(j));
        s.ledger.external_power += p * dz_;
    }
    s.ledger.total = s.ledger.H_D_total + s.ledger.H_B[0] + s.ledger.H_B[1];

    psi_prev_.swap(psi_);
    psi_.swap(psi_new);
    for (int e = 0; e < 2; ++e) {
        psi_B_prev_[e] = std::move(psi_B_[e]);
        psi_B_[e] = std::move(psi_B_new[e]);
    }
    time_ = t_new;
    ++step_index_;
    return s;
}

Trajectory1D System1D::run() {
    Trajectory1D out;
    const long steps = std::lround(t_end_ / dt_);
    auto pending = output_.snapshot_times;
    for (long i = 0; i <= steps; ++i) {
        for (auto it = pending.begin(); it != pending.end();) {
            if (std::abs(*it - time_) <= 0.5 * dt_) {
                out.snapshots.emplace_back(time_, psi_);
                it = pending.erase(it);
            } else {
                ++it;
            }
        }
        Sample1D s = step();
        if (i % output_.stride == 0) out.samples.push_back(std::move(s));
    }
    return out;
}

InterfaceForce System1D::interface_force(End e) const {
    InterfaceForce f;
    f.flux = stiffness_ * one_sided_normal_derivative(psi_, e);
    const auto& end = ends_[static_cast<int>(e)];
    const int je = (e == End::b1) ? 0 : n_;
    f.interaction = (end.closure == Closure::SpringCoupled)
                        ? Vec(end.k_tilde * (psi_B_[static_cast<int>(e)] - psi_.col(je)))
                        : Vec(Vec::Zero(k_));
    f.iel_residual = f.flux - f.interaction;
    return f;
}

std::array<bool, 2> System1D::outflow_ends() const {
    return {ends_[0].closure == Closure::Outflow, ends_[1].closure == Closure::Outflow};
}

CoupledState1D System1D::state() const {
    CoupledState1D st;
    st.time = time_;
    st.field.time = time_;
    st.field.grid = Vec::LinSpaced(n_ + 1, z0_, z0_ + n_ * dz_);
    st.field.psi = psi_;
    st.field.psi_dot = (psi_ - psi_prev_) / dt_;
    st.field.psi_L = {psi_.col(0), psi_.col(n_)};
    for (int e = 0; e < 2; ++e) {
        st.boundaries[e].psi_B = psi_B_[e];
        st.boundaries[e].psi_B_dot = (psi_B_[e] - psi_B_prev_[e]) / dt_;
    }
    return st;
}

ReducedTrajectory integrate_reduced_forced(double m, double k, const MemoryKernel& kernel,
                                           const std::function<double(double)>& force,
                                           double psi0, double psi_dot0, double t_end,
                                           double dt) {
    if (!(m > 0.0)) throw SpecError("reduced boundary model requires m > 0");
    if (!(dt > 0.0) || !(t_end > 0.0)) throw SpecError("reduced model requires dt, t_end > 0");
    kernel.validate();

    const long steps = std::lround(t_end / dt);
    ReducedTrajectory out;
    out.t.reserve(steps + 1);
    out.psi.reserve(steps + 1);
    out.psi_dot.reserve(steps + 1);

    KernelState state = KernelState::rest(kernel);
    const double alpha = kernel.alpha_inf;
    // Stoermer update, instantaneous friction handled implicitly in the
    // centered velocity: (m/dt^2 + alpha/2dt) psi^{n+1} = ...
    const double c_plus = m / (dt * dt) + 0.5 * alpha / dt;
    const double c_minus = m / (dt * dt) - 0.5 * alpha / dt;

    // the seed extrapolates the pre-onset trajectory: forces are causal
    // (zero for t < 0, the system was at rest or free before the start)
    const double accel0 = (-k * psi0 - alpha * psi_dot0) / m;
    double psi_prev = psi0 - dt * psi_dot0 + 0.5 * dt * dt * accel0;
    double psi = psi0;

    for (long n = 0; n <= steps; ++n) {
        // advance aux state to time t_n with the midpoint velocity of [n-1, n]
        if (n > 0) {
            const double v_mid = (psi - psi_prev) / dt;
            state = advance_kernel_state(state, kernel, v_mid, dt).first;
        }
        const double retarded = kernel_force(state, kernel, 0.0);  // aux part only
        const double t = n * dt;
        const double f = force ? force(t) : 0.0;
        const double psi_next =
            (2.0 * m / (dt * dt) * psi - c_minus * psi_prev - k * psi - retarded + f) / c_plus;

        const double vel = (n == 0) ? psi_dot0 : (psi_next - psi_prev) / (2.0 * dt);
        out.t.push_back(t);
        out.psi.push_back(psi);
        out.psi_dot.push_back(vel);
        if (!(std::abs(psi_next) <= kOverflowGuard)) throw NumericalBlowup(t, psi_next);

        psi_prev = psi;
        psi = psi_next;
    }
    return out;
}

ReducedTrajectory integrate_reduced_boundary(double m, double k, const MemoryKernel& kernel,
                                             double psi0, double psi_dot0, double t_end,
                                             double dt) {
    return integrate_reduced_forced(m, k, kernel, nullptr, psi0, psi_dot0, t_end, dt);
}

double lamb_analytic(double m, double tension, double wave_speed, double k, double psi0,
                     double psi_dot0, double t) {
    if (!(m > 0.0) || !(k > 0.0)) throw SpecError("lamb_analytic requires m > 0 and k > 0");
    if (!(wave_speed > 0.0)) throw SpecError("lamb_analytic requires a > 0");
    const double c = tension / wave_speed;  // instantaneous damping coefficient
    const double disc = c * c - 4.0 * m * k;
    const double alpha = 0.5 * c / m;
    const double tol = 1e-12 * (c * c + 4.0 * m * k);

    if (std::abs(disc) <= tol) {  // critical damping: (c0 + (d0 + alpha c0) t) e^{-alpha t}
        return (psi0 + (psi_dot0 + alpha * psi0) * t) * std::exp(-alpha * t);
    }
    if (disc < 0.0) {  // underdamped
        const double wd = std::sqrt(-disc) / (2.0 * m);
        return std::exp(-alpha * t) *
               (psi0 * std::cos(wd * t) + (psi_dot0 + alpha * psi0) / wd * std::sin(wd * t));
    }
    // overdamped
    const double root = std::sqrt(disc);
    const double r1 = (-c + root) / (2.0 * m);
    const double r2 = (-c - root) / (2.0 * m);
    const double b = (psi_dot0 - r1 * psi0) / (r2 - r1);
    const double a = psi0 - b;
    return a * std::exp(r1 * t) + b * std::exp(r2 * t);
}

double lamb_analytic_velocity(double m, double tension, double wave_speed, double k, double psi0,
                              double psi_dot0, double t) {
    if (!(m > 0.0) || !(k > 0.0)) throw SpecError("lamb_analytic requires m > 0 and k > 0");
    if (!(wave_speed > 0.0)) throw SpecError("lamb_analytic requires a > 0");
    const double c = tension / wave_speed;
    const double disc = c * c - 4.0 * m * k;
    const double alpha = 0.5 * c / m;
    const double tol = 1e-12 * (c * c + 4.0 * m * k);

    if (std::abs(disc) <= tol) {
        const double b = psi_dot0 + alpha * psi0;
        return std::exp(-alpha * t) * (b - alpha * (psi0 + b * t));
    }
    if (disc < 0.0) {
        const double wd = std::sqrt(-disc) / (2.0 * m);
        const double b = (psi_dot0 + alpha * psi0) / wd;
        return std::exp(-alpha * t) * ((-alpha * psi0 + b * wd) * std::cos(wd * t) +
                                       (-alpha * b - psi0 * wd) * std::sin(wd * t));
    }
    const double root = std::sqrt(disc);
    const double r1 = (-c + root) / (2.0 * m);
    const double r2 = (-c - root) / (2.0 * m);
    const double b = (psi_dot0 - r1 * psi0) / (r2 - r1);
    const double a = psi0 - b;
    return a * r1 * std::exp(r1 * t) + b * r2 * std::exp(r2 * t);
}

double massless_spring_boundary_decay(double wave_speed, double k, double tension, double psi0,
                                      double t) {
    if (!(tension > 0.0)) throw SpecError("massless boundary decay requires T > 0");
    return psi0 * std::exp(-wave_speed * k / tension * t);
}

double massless_spring_boundary_forced(double wave_speed, double k, double tension, double psi0,
                                       const std::function<double(double)>& g_prime,
                                       const std::function<double(double)>& h, double t,
                                       int quad_points) {
    const double lambda = wave_speed * k / tension;
    auto source = [&](double tau) {
        return wave_speed * g_prime(wave_speed * tau) + h(wave_speed * tau);
    };
    // Duhamel integral by composite trapezoid
    const int n = std::max(2, quad_points);
    const double dtau = t / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double tau = i * dtau;
        const double w = (i == 0 || i == n) ? 0.5 : 1.0;
        acc += w * std::exp(-lambda * (t - tau)) * source(tau);
    }
    return psi0 * std::exp(-lambda * t) + acc * dtau;
}

Scenario build_mtl(const Mat& inductance, const Mat& capacitance, const Mat& load_inductance,
                   const Mat& load_capacitance, const std::optional<Mat>& coupling, double t_end,
                   double dt, double length) {
    const int k = static_cast<int>(inductance.rows());
    Scenario s;
    s.name = "mtl";
    InteriorSpec1D interior;
    interior.mass = inductance;
    interior.stiffness = capacitance.llt().solve(Mat::Identity(k, k));
    const double a_max = wave_speeds(interior.mass, interior.stiffness).maxCoeff();
    if (length <= 0.0) length = 10.0 * a_max * t_end;
    interior.b1 = 0.0;
    interior.b2 = length;
    interior.semi_infinite_b2 = true;
    // resolve the grid from dt so the CFL factor lands at 0.81
    const double dz = a_max * dt / 0.81;
    interior.n_cells = std::max(8, static_cast<int>(std::ceil(length / dz)));
    s.interior = interior;

    BoundaryNodeSpec load;
    load.mass = load_inductance;
    load.hooke = load_capacitance.llt().solve(Mat::Identity(k, k));
    load.label = End::b1;
    s.boundaries[0] = load;
    s.interactions[0] =
        coupling ? InteractionSpec::spring(*coupling) : InteractionSpec::rigid();
    s.t_end = t_end;
    s.dt = dt;
    s.initial.boundary_value = {Vec::Zero(k), Vec::Zero(k)};
    s.initial.boundary_velocity = {Vec::Unit(k, 0), Vec::Zero(k)};
    return s;
}

}  // namespace wavebound

#include "wavebound/solver2d.hpp"

#include <cmath>

namespace wavebound {

std::vector<double> Trajectory2D::probe_series() const {
    std::vector<double> v;
    v.reserve(samples.size());
    for (const auto& s : samples) v.push_back(s.probe);
    return v;
}

std::vector<double> Trajectory2D::times() const {
    std::vector<double> v;
    v.reserve(samples.size());
    for (const auto& s : samples) v.push_back(s.t);
    return v;
}

DiskSystem::DiskSystem(const Scenario& scenario) {
    auto violations = scenario_violations(scenario);
    if (!violations.empty()) throw SpecError(std::move(violations));
    const auto& disk = std::get<DiskSpec>(scenario.interior);

    nr_ = disk.n_r;
    nth_ = disk.n_theta;
    radius_ = disk.radius;
    dr_ = radius_ / nr_;
    dth_ = 2.0 * M_PI / nth_;
    dt_ = scenario.dt;
    t_end_ = scenario.t_end;
    output_ = scenario.output;
    sigma_ = disk.sigma;
    tension_ = disk.tension;
    a2_ = tension_ / sigma_;
    ring_lambda_ = disk.ring_lambda;
    ring_k_ = disk.ring_k;

    const bool massless = ring_lambda_ == 0.0;
    if (disk.interaction.kind == InteractionSpec::Kind::Rigid) {
        closure_ = massless ? RingClosure::Robin : RingClosure::HeavyRigid;
    } else {
        k_tilde_ = disk.interaction.stiffness(0, 0);
        closure_ = massless ? RingClosure::SpringMassless : RingClosure::SpringHeavy;
    }

    // 3-point one-sided d/dr at r=R through offsets (0, -dr/2, -3dr/2)
    c0_ = 8.0 / (3.0 * dr_);
    c1_ = -3.0 / dr_;
    c2_ = 1.0 / (3.0 * dr_);

    probe_cell_ = std::clamp(
        static_cast<int>(std::floor(output_.probe_radius / dr_ - 0.5 + 0.5)), 0, nr_ - 1);

    // initial field
    const auto& field = scenario.initial.field;
    psi_ = Mat::Zero(nr_, nth_);
    for (int i = 0; i < nr_; ++i) {
        const double r = (i + 0.5) * dr_;
        double v = 0.0;
        switch (field.kind) {
            case InitialField::Kind::Gaussian:
                v = field.amplitude * std::exp(-(r / field.width) * (r / field.width));
                break;
            case InitialField::Kind::BesselMode:
                v = field.amplitude * bessel_j0(field.bessel_beta * r);
                break;
            default:
                v = 0.0;
        }
        psi_.row(i).setConstant(v);
    }
    vel0_ = Mat::Zero(nr_, nth_);

    // ring initial data
    const Vec& c = scenario.initial.boundary_value[0];
    const Vec& d = scenario.initial.boundary_velocity[0];
    psi_B_ = Vec::Constant(nth_, c.size() > 0 ? c(0) : 0.0);
    psi_B_dot0_ = Vec::Constant(nth_, d.size() > 0 ? d(0) : 0.0);
    seed_levels();
}

void DiskSystem::seed_levels() {
    if (closure_ == RingClosure::Robin || closure_ == RingClosure::HeavyRigid) {
        // rigid ring: trace and ring coincide; take the membrane's edge value
        Vec extrap(nth_);
        for (int j = 0; j < nth_; ++j)
            extrap(j) = 1.875 * psi_(nr_ - 1, j) - 1.25 * psi_(nr_ - 2, j) +
                        0.375 * psi_(nr_ - 3, j);
        psi_B_ = extrap;
    }
    psi_L_ = trace_now();
    psi_L_prev_ = psi_L_;

    // seed previous levels with a half Taylor step
    const Vec flux0 = rim_face_flux(psi_L_);
    const Mat accel = a2_ * laplacian(psi_, flux0);
    psi_prev_ = psi_ - dt_ * vel0_ + 0.5 * dt_ * dt_ * accel;

    Vec accel_B = Vec::Zero(nth_);
    if (closure_ == RingClosure::HeavyRigid) {
        const Vec dn = one_sided_rim_derivative(psi_, psi_B_);
        accel_B = (-ring_k_ * psi_B_ - tension_ * dn) / ring_lambda_;
    } else if (closure_ == RingClosure::SpringHeavy) {
        accel_B = (-ring_k_ * psi_B_ - k_tilde_ * (psi_B_ - psi_L_)) / ring_lambda_;
    }
    psi_B_prev_ = psi_B_ - dt_ * psi_B_dot0_ + 0.5 * dt_ * dt_ * accel_B;
}

void DiskSystem::reset_field(const Mat& psi0, const Mat& vel0) {
    if (step_index_ != 0) throw SpecError("reset_field is only valid before stepping");
    if (psi0.rows() != nr_ || psi0.cols() != nth_)
        throw SpecError("reset_field: field shape mismatch");
    psi_ = psi0;
    vel0_ = vel0.size() == 0 ? Mat::Zero(nr_, nth_) : Mat(vel0);
    seed_levels();
}

Vec DiskSystem::one_sided_rim_derivative(const Mat& psi, const Vec& psi_L) const {
    Vec d(nth_);
    for (int j = 0; j < nth_; ++j)
        d(j) = c0_ * psi_L(j) + c1_ * psi(nr_ - 1, j) + c2_ * psi(nr_ - 2, j);
    return d;
}

Vec DiskSystem::trace_now() const {
    Vec trace(nth_);
    switch (closure_) {
        case RingClosure::Robin: {
            // (k + T c0) psi_L = -T (c1 psi_1 + c2 psi_2)
            const double denom = ring_k_ + tension_ * c0_;
            for (int j = 0; j < nth_; ++j)
                trace(j) =
                    -tension_ * (c1_ * psi_(nr_ - 1, j) + c2_ * psi_(nr_ - 2, j)) / denom;
            break;
        }
        case RingClosure::HeavyRigid:
            trace = psi_B_;
            break;
        case RingClosure::SpringHeavy: {
            // IEL: T(c0 psi_L + c1 psi_1 + c2 psi_2) = k~ (psi_B - psi_L)
            const double denom = tension_ * c0_ + k_tilde_;
            for (int j = 0; j < nth_; ++j)
                trace(j) = (k_tilde_ * psi_B_(j) -
                            tension_ * (c1_ * psi_(nr_ - 1, j) + c2_ * psi_(nr_ - 2, j))) /
                           denom;
            break;
        }
        case RingClosure::SpringMassless: {
            // eliminate psi_B = k~ psi_L / (k + k~) inside the IEL
            const double relay = k_tilde_ * k_tilde_ / (ring_k_ + k_tilde_);
            const double denom = tension_ * c0_ + k_tilde_ - relay;
            for (int j = 0; j < nth_; ++j)
                trace(j) =
                    -tension_ * (c1_ * psi_(nr_ - 1, j) + c2_ * psi_(nr_ - 2, j)) / denom;
            break;
        }
    }
    return trace;
}

Vec DiskSystem::rim_face_flux(const Vec& psi_L) const {
    if (closure_ == RingClosure::SpringHeavy || closure_ == RingClosure::SpringMassless) {
        Vec psi_B = psi_B_;
        if (closure_ == RingClosure::SpringMassless)
            psi_B = k_tilde_ / (ring_k_ + k_tilde_) * psi_L;
        return k_tilde_ / tension_ * (psi_B - psi_L);
    }
    return one_sided_rim_derivative(psi_, psi_L);
}

Mat DiskSystem::laplacian(const Mat& psi, const Vec& rim_flux) const {
    Mat lap(nr_, nth_);
    for (int i = 0; i < nr_; ++i) {
        const double r = (i + 0.5) * dr_;
        const double rm = i * dr_;        // inner face radius (0 at i=0)
        const double rp = (i + 1) * dr_;  // outer face radius
        const double inv_r_dr2 = 1.0 / (r * dr_ * dr_);
        const double inv_r2_dth2 = 1.0 / (r * r * dth_ * dth_);
        for (int j = 0; j < nth_; ++j) {
            const int jm = (j + nth_ - 1) % nth_;
            const int jp = (j + 1) % nth_;
            double radial;
            if (i == 0) {
                radial = rp * (psi(1, j) - psi(0, j)) * inv_r_dr2;
            } else if (i == nr_ - 1) {
                radial = (rp * rim_flux(j) * dr_ - rm * (psi(i, j) - psi(i - 1, j))) * inv_r_dr2;
            } else {
                radial = (rp * (psi(i + 1, j) - psi(i, j)) - rm * (psi(i, j) - psi(i - 1, j))) *
                         inv_r_dr2;
            }
            lap(i, j) = radial + (psi(i, jp) - 2.0 * psi(i, j) + psi(i, jm)) * inv_r2_dth2;
        }
    }
    return lap;
}

void DiskSystem::guard(const Mat& m) const {
    const double peak = m.cwiseAbs().maxCoeff();
    if (!(peak <= kOverflowGuard)) throw NumericalBlowup(time_, peak);
}

double DiskSystem::probe_value(const Mat& psi) const { return psi.row(probe_cell_).mean(); }

Sample2D DiskSystem::step() {
    const double t = time_;
    psi_L_ = trace_now();
    const Vec flux = rim_face_flux(psi_L_);

    Mat psi_new = 2.0 * psi_ - psi_prev_ + (dt_ * dt_ * a2_) * laplacian(psi_, flux);

    Vec psi_B_new(nth_);
    switch (closure_) {
        case RingClosure::Robin: {
            const double denom = ring_k_ + tension_ * c0_;
            for (int j = 0; j < nth_; ++j)
                psi_B_new(j) =
                    -tension_ * (c1_ * psi_new(nr_ - 1, j) + c2_ * psi_new(nr_ - 2, j)) / denom;
            break;
        }
        case RingClosure::SpringMassless: {
            const double relay = k_tilde_ * k_tilde_ / (ring_k_ + k_tilde_);
            const double denom = tension_ * c0_ + k_tilde_ - relay;
            for (int j = 0; j < nth_; ++j) {
                const double trace =
                    -tension_ * (c1_ * psi_new(nr_ - 1, j) + c2_ * psi_new(nr_ - 2, j)) / denom;
                psi_B_new(j) = k_tilde_ / (ring_k_ + k_tilde_) * trace;
            }
            break;
        }
        case RingClosure::HeavyRigid: {
            const Vec dn = one_sided_rim_derivative(psi_, psi_B_);
            psi_B_new = 2.0 * psi_B_ - psi_B_prev_ +
                        dt_ * dt_ / ring_lambda_ * (-ring_k_ * psi_B_ - tension_ * dn);
            break;
        }
        case RingClosure::SpringHeavy: {
            psi_B_new = 2.0 * psi_B_ - psi_B_prev_ +
                        dt_ * dt_ / ring_lambda_ *
                            (-ring_k_ * psi_B_ - k_tilde_ * (psi_B_ - psi_L_));
            break;
        }
    }
    guard(psi_new);

    Sample2D s;
    s.t = t;
    s.ledger.time = t;
    s.psi_B = psi_B_;
    s.psi_L = psi_L_;
    s.probe = probe_value(psi_);

    const Mat vel = (step_index_ == 0) ? vel0_ : Mat((psi_new - psi_prev_) / (2.0 * dt_));
    const Vec vel_B = (step_index_ == 0) ? psi_B_dot0_
                                         : Vec((psi_B_new - psi_B_prev_) / (2.0 * dt_));

    // membrane energy on cell centers
    double h_d = 0.0;
    for (int i = 0; i < nr_; ++i) {
        const double r = (i + 0.5) * dr_;
        for (int j = 0; j < nth_; ++j) {
            const int jm = (j + nth_ - 1) % nth_;
            const int jp = (j + 1) % nth_;
            double dpsi_r;
            if (i == 0)
                dpsi_r = (psi_(1, j) - psi_(0, j)) / dr_;
            else if (i == nr_ - 1)
                dpsi_r = (psi_(i, j) - psi_(i - 1, j)) / dr_;
            else
                dpsi_r = (psi_(i + 1, j) - psi_(i - 1, j)) / (2.0 * dr_);
            const double dpsi_th = (psi_(i, jp) - psi_(i, jm)) / (2.0 * dth_);
            const double grad2 = dpsi_r * dpsi_r + dpsi_th * dpsi_th / (r * r);
            h_d += r * (0.5 * sigma_ * vel(i, j) * vel(i, j) + 0.5 * tension_ * grad2);
        }
    }
    s.ledger.H_D_total = h_d * dr_ * dth_;

    // trace at the new level, for the centered trace velocity
    Vec psi_L_next(nth_);
    switch (closure_) {
        case RingClosure::Robin:
            psi_L_next = psi_B_new;
            break;
        case RingClosure::HeavyRigid:
            psi_L_next = psi_B_new;
            break;
        case RingClosure::SpringMassless:
            psi_L_next = (ring_k_ + k_tilde_) / k_tilde_ * psi_B_new;
            break;
        case RingClosure::SpringHeavy: {
            const double denom = tension_ * c0_ + k_tilde_;
            for (int j = 0; j < nth_; ++j)
                psi_L_next(j) = (k_tilde_ * psi_B_new(j) -
                                 tension_ * (c1_ * psi_new(nr_ - 1, j) +
                                             c2_ * psi_new(nr_ - 2, j))) /
                                denom;
            break;
        }
    }
    const Vec vel_L = (step_index_ == 0) ? Vec(((psi_L_next - psi_L_) / dt_).eval())
                                         : Vec((psi_L_next - psi_L_prev_) / (2.0 * dt_));

    double h_b = 0.0, s_d = 0.0, inter_p = 0.0, resid = 0.0;
    const Vec dn = one_sided_rim_derivative(psi_, psi_L_);
    for (int j = 0; j < nth_; ++j) {
        double gap2 = 0.0;
        if (closure_ == RingClosure::SpringHeavy || closure_ == RingClosure::SpringMassless) {
            const double gap = psi_B_(j) - psi_L_(j);
            gap2 = k_tilde_ * gap * gap;
        }
        h_b += 0.5 * ring_lambda_ * vel_B(j) * vel_B(j) + 0.5 * ring_k_ * psi_B_(j) * psi_B_(j) +
               0.5 * gap2;
        s_d += tension_ * dn(j) * vel_L(j);
        if (closure_ == RingClosure::SpringHeavy || closure_ == RingClosure::SpringMassless) {
            const double inter = k_tilde_ * (psi_B_(j) - psi_L_(j));
            inter_p += inter * vel_L(j);
            resid += (tension_ * dn(j) - inter) * vel_L(j);
        }
    }
    const double ring_measure = radius_ * dth_;
    s.ledger.H_B[0] = h_b * ring_measure;
    s.ledger.S_D[0] = s_d * ring_measure;
    s.ledger.interaction_power[0] = inter_p * ring_measure;
    s.ledger.balance_residual[0] = resid * ring_measure;
    s.ledger.total = s.ledger.H_D_total + s.ledger.H_B[0];

    psi_prev_.swap(psi_);
    psi_.swap(psi_new);
    psi_B_prev_.swap(psi_B_);
    psi_B_.swap(psi_B_new);
    psi_L_prev_ = psi_L_;
    time_ = t + dt_;
    ++step_index_;
    return s;
}

Trajectory2D DiskSystem::run() {
    Trajectory2D out;
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
        Sample2D s = step();
        if (i % output_.stride == 0) out.samples.push_back(std::move(s));
    }
    return out;
}

FieldState2D DiskSystem::field_state() const {
    FieldState2D f;
    f.time = time_;
    f.r = Vec::LinSpaced(nr_, 0.5 * dr_, (nr_ - 0.5) * dr_);
    f.theta = Vec::LinSpaced(nth_, 0.0, dth_ * (nth_ - 1));
    f.psi = psi_;
    f.psi_dot = (psi_ - psi_prev_) / dt_;
    f.psi_L = trace_now();  // trace of the current level, not the last stepped one
    return f;
}

RingState DiskSystem::ring_state() const {
    RingState r;
    r.psi_B = psi_B_;
    r.psi_B_dot = (psi_B_ - psi_B_prev_) / dt_;
    return r;
}

std::pair<Vec, Vec> DiskSystem::ring_interface_forces() const {
    const Vec psi_L = trace_now();
    const Vec flux = tension_ * one_sided_rim_derivative(psi_, psi_L);
    Vec inter = Vec::Zero(nth_);
    if (closure_ == RingClosure::SpringHeavy || closure_ == RingClosure::SpringMassless) {
        Vec psi_B = psi_B_;
        if (closure_ == RingClosure::SpringMassless)
            psi_B = k_tilde_ / (ring_k_ + k_tilde_) * psi_L;
        inter = k_tilde_ * (psi_B - psi_L);
    }
    return {flux, inter};
}

double bessel_j0(double x) {
    const long double q = static_cast<long double>(x) * x / 4.0L;
    long double term = 1.0L, sum = 1.0L;
    for (int m = 1; m < 200; ++m) {
        term *= -q / (static_cast<long double>(m) * m);
        sum += term;
        if (std::abs(static_cast<double>(term)) < 1e-18 * std::abs(static_cast<double>(sum)))
            break;
    }
    return static_cast<double>(sum);
}

double bessel_j1(double x) {
    const long double q = static_cast<long double>(x) * x / 4.0L;
    long double term = 1.0L, sum = 1.0L;
    for (int m = 1; m < 200; ++m) {
        term *= -q / (static_cast<long double>(m) * (m + 1));
        sum += term;
        if (std::abs(static_cast<double>(term)) < 1e-18 * std::abs(static_cast<double>(sum)))
            break;
    }
    return static_cast<double>(0.5L * x * sum);
}

double robin_eigenvalue_oracle(double k, double tension, double radius) {
    if (k < 0.0 || !(tension > 0.0) || !(radius > 0.0))
        throw SpecError("robin_eigenvalue_oracle requires k >= 0, T > 0, R > 0");
    // J0' = -J1, so the condition k J0(bR) + T b J0'(bR) = 0 reads
    // h(b) = k J0(bR) - T b J1(bR) = 0. For k = 0 the first positive root of
    // J1(bR) (= -J0'(bR)) is reported; b = 0 (uniform drift) always solves it.
    auto h = [&](double b) { return k * bessel_j0(b * radius) - tension * b * bessel_j1(b * radius); };

    const double db = 0.02 / radius;
    double lo = 1e-9 / radius;
    double f_lo = h(lo);
    double hi = lo;
    bool bracketed = false;
    for (int i = 1; i <= 2000; ++i) {
        hi = lo + db;
        const double f_hi = h(hi);
        if (f_lo == 0.0 || f_lo * f_hi < 0.0) {
            bracketed = true;
            break;
        }
        lo = hi;
        f_lo = f_hi;
    }
    if (!bracketed) throw ConvergenceFailure("no sign change found for the Robin root");

    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = h(mid);
        if (f_lo * f_mid <= 0.0)
            hi = mid;
        else {
            lo = mid;
            f_lo = f_mid;
        }
        if (hi - lo < 1e-15 * hi) break;
    }
    const double beta = 0.5 * (lo + hi);
    if (std::abs(h(beta)) > 1e-10 * (1.0 + k + tension * beta))
        throw ConvergenceFailure("Robin root residual above tolerance");
    return beta;
}

}  // namespace wavebound

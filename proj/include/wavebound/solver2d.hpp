#pragma once

#include "wavebound/energy.hpp"
#include "wavebound/model.hpp"

namespace wavebound {

/// Field on the polar half-offset grid r_i = (i + 1/2) dr (no node at the
/// origin), theta_j = j * dtheta periodic; plus the ring trace at r = R.
struct FieldState2D {
    Vec r;        ///< cell-center radii
    Vec theta;
    Mat psi;      ///< n_r x n_theta
    Mat psi_dot;
    Vec psi_L;    ///< trace at r = R per theta
    double time = 0.0;
};

struct RingState {
    Vec psi_B;
    Vec psi_B_dot;
};

struct Sample2D {
    double t = 0.0;
    Vec psi_B;
    Vec psi_L;
    double probe = 0.0;  ///< ring-averaged interior probe
    EnergyLedger ledger; ///< end index 0 carries the ring quantities
};

struct Trajectory2D {
    std::vector<Sample2D> samples;
    std::vector<std::pair<double, Mat>> snapshots;
    std::vector<double> probe_series() const;
    std::vector<double> times() const;
};

/// Leapfrog stepper for the disk membrane with a structured ring boundary:
/// Robin (massless ring), heavy frame, and spring-coupled frame.
class DiskSystem {
public:
    explicit DiskSystem(const Scenario& scenario);

    double dt() const { return dt_; }
    double time() const { return time_; }
    int n_r() const { return nr_; }
    int n_theta() const { return nth_; }

    Sample2D step();
    Trajectory2D run();

    /// Replaces the initial field (and velocity) and re-seeds the integrator;
    /// rigid ring values are re-extrapolated from the new field. Only valid
    /// before the first step.
    void reset_field(const Mat& psi0, const Mat& vel0);

    FieldState2D field_state() const;
    RingState ring_state() const;

    /// Per-theta interior flux T d(psi)/dn at the rim and the interaction
    /// force k~(psi_B - psi_L); the discrete IEL ties them together.
    std::pair<Vec, Vec> ring_interface_forces() const;

private:
    enum class RingClosure { Robin, HeavyRigid, SpringMassless, SpringHeavy };

    void seed_levels();
    Vec trace_now() const;           // psi_L at the current level
    Vec rim_face_flux(const Vec& psi_L) const;  // d(psi)/dr at r=R per theta
    Vec one_sided_rim_derivative(const Mat& psi, const Vec& psi_L) const;
    Mat laplacian(const Mat& psi, const Vec& rim_flux) const;
    void guard(const Mat& m) const;
    double probe_value(const Mat& psi) const;

    int nr_ = 0, nth_ = 0;
    double radius_ = 1.0, dr_ = 0.0, dth_ = 0.0, dt_ = 0.0, time_ = 0.0;
    double a2_ = 1.0;  // T / sigma
    double sigma_ = 1.0, tension_ = 1.0, ring_lambda_ = 0.0, ring_k_ = 0.0, k_tilde_ = 0.0;
    RingClosure closure_ = RingClosure::Robin;
    long step_index_ = 0;
    int probe_cell_ = 0;

    // one-sided derivative weights at the rim: d/dr at R from (psi_L, c_{nr-1}, c_{nr-2})
    double c0_ = 0.0, c1_ = 0.0, c2_ = 0.0;

    Mat psi_prev_, psi_;
    Mat vel0_;
    Vec psi_B_prev_, psi_B_, psi_B_dot0_;
    Vec psi_L_;       // trace at the current level
    Vec psi_L_prev_;

    double t_end_ = 0.0;
    OutputPlan output_;
};

/// Bessel J0 / J1 by power series (in-repo oracle routines).
double bessel_j0(double x);
double bessel_j1(double x);

/// Smallest positive root beta of k J0(beta R) + T beta J0'(beta R) = 0 by
/// scan + bisection (|residual| < 1e-10). For k = 0 the uniform drift beta = 0
/// solves the condition trivially; the first positive root of J0'(beta R) = 0
/// is returned instead.
double robin_eigenvalue_oracle(double k, double tension, double radius);

}  // namespace wavebound

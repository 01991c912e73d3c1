#pragma once

#include "wavebound/energy.hpp"
#include "wavebound/model.hpp"

namespace wavebound {

/// Pair of interior and boundary states of a coupled 1D run.
struct CoupledState1D {
    FieldState1D field;
    std::array<BoundaryState, 2> boundaries;
    double time = 0.0;
};

/// Generalized flux and interaction force at one end, with the discrete IEL
/// residual (their signed combination). Flux uses the 3-point second-order
/// one-sided stencil; the normal direction points out of the domain.
struct InterfaceForce {
    Vec flux;          ///< K * d(psi_D)/dn, outward
    Vec interaction;   ///< k_tilde * (psi_B - psi_L)
    Vec iel_residual;  ///< flux - interaction (zero for exact solutions)
};

/// One recorded sample of a 1D trajectory.
struct Sample1D {
    double t = 0.0;
    std::array<Vec, 2> psi_B;
    std::array<Vec, 2> psi_B_dot;
    std::array<Vec, 2> psi_L;
    std::array<Vec, 2> psi_L_dot;
    EnergyLedger ledger;
};

struct Trajectory1D {
    std::vector<Sample1D> samples;
    std::vector<std::pair<double, Mat>> snapshots;

    std::vector<double> times() const;
    /// psi_B component `comp` at end `e`, one value per sample.
    std::vector<double> boundary_series(End e, int comp = 0) const;
};

/// Assembled leapfrog stepper for the coupled DEL/IEL/BEL system on an
/// interval: interior wave update, implicit interface closures per end,
/// boundary node dynamics, characteristic outflow on truncated ends.
class System1D {
public:
    explicit System1D(const Scenario& scenario);

    int components() const { return k_; }
    double dz() const { return dz_; }
    double dt() const { return dt_; }
    double time() const { return time_; }

    /// Advances the full coupled system by one dt and records the sample for
    /// the step's starting time (velocities are whole-step reconstructions,
    /// so the sample for t_n is finalized while computing psi^{n+1}).
    Sample1D step();

    /// Runs to t_end recording every stride-th sample and the requested
    /// field snapshots.
    Trajectory1D run();

    /// Flux / interaction force / IEL residual at an end for the current state.
    InterfaceForce interface_force(End e) const;

    CoupledState1D state() const;

    /// Which ends are truncated semi-infinite (outflow) ends.
    std::array<bool, 2> outflow_ends() const;
    const Mat& mass_matrix() const { return mass_; }
    const Mat& stiffness_matrix() const { return stiffness_; }
    const InteractionSpec& interaction(End e) const {
        return interactions_[static_cast<int>(e)];
    }

private:
    enum class Closure { SpringCoupled, RigidMassive, RigidMasslessRobin, Free, Outflow };

    struct EndSetup {
        Closure closure = Closure::Free;
        Mat k_tilde;          // Spring only
        Mat node_mass;        // M_B
        Mat node_hooke;       // K_B
        ForceFn force;
        bool node_massless = false;
        Eigen::LLT<Mat> robin_solver;     // (3K/(2dz) + K_B) for massless rigid ends
        Eigen::LLT<Mat> relay_solver;     // (K_B + k_tilde) for massless spring nodes
        Eigen::LLT<Mat> lumped_mass;      // (M dz/2 [+ M_B]) for field end node updates
        Eigen::LLT<Mat> node_mass_chol;   // M_B for massive node updates
    };

    void seed_previous_levels();
    void apply_initial_conditions(const Scenario& scenario);
    Vec end_column(const Mat& m, End e) const { return m.col(e == End::b1 ? 0 : n_); }
    double node_coord(int j) const { return z0_ + dz_ * j; }
    Vec field_force(double t) const;  // uniform F_D(t) or zero
    Vec boundary_force(End e, double t) const;

    // one-sided 3-point outward normal derivative of psi at an end
    Vec one_sided_normal_derivative(const Mat& psi, End e) const;

    // new end-node value for the algebraic massless-rigid (Robin) closure
    Vec robin_trace(const Mat& psi_new, End e, double t_new) const;

    void step_field_interior(double t, Mat& psi_new) const;
    void step_field_end(End e, double t, Mat& psi_new) const;
    void step_outflow_end(End e, Mat& psi_new) const;
    Vec step_boundary_node(End e, double t, const Vec& psi_L_now);
    void guard(const Mat& m) const;

    int k_ = 1;
    int n_ = 0;  // cells; nodes 0..n_
    double z0_ = 0.0, dz_ = 0.0, dt_ = 0.0, time_ = 0.0;
    long step_index_ = 0;
    Mat mass_, stiffness_, mass_inv_;
    Mat char_vectors_, char_vectors_inv_;  // V, V^-1 with V^T M V = I
    Vec speeds_;
    std::array<EndSetup, 2> ends_;
    std::array<InteractionSpec, 2> interactions_;

    Mat psi_prev_, psi_;  // psi^{n-1}, psi^n
    Mat vel0_;            // exact initial velocities (first sample)
    std::array<Vec, 2> psi_B_prev_, psi_B_;
    std::array<Vec, 2> psi_B_dot0_;

    OutputPlan output_;
    double t_end_ = 0.0;
    ForceFn body_force_;
};

/// Integrates the reduced boundary model
///   m psi'' + k psi + integral_0^t kappa(t-tau) psi'(tau) dtau = 0
/// with the auxiliary-variable kernel engine (exact exponential propagator,
/// second order). Instantaneous kernel parts are handled implicitly in the
/// velocity, keeping the update time-symmetric.
struct ReducedTrajectory {
    std::vector<double> t;
    std::vector<double> psi;
    std::vector<double> psi_dot;
};
ReducedTrajectory integrate_reduced_boundary(double m, double k, const MemoryKernel& kernel,
                                             double psi0, double psi_dot0, double t_end,
                                             double dt);

/// Forced variant, m psi'' + k psi + friction = f(t).
ReducedTrajectory integrate_reduced_forced(double m, double k, const MemoryKernel& kernel,
                                           const std::function<double(double)>& force,
                                           double psi0, double psi_dot0, double t_end,
                                           double dt);

/// Closed-form solution of m psi'' + (T/a) psi' + k psi = 0 (under-, critically
/// and over-damped branches).
double lamb_analytic(double m, double tension, double wave_speed, double k, double psi0,
                     double psi_dot0, double t);

/// Time derivative of lamb_analytic.
double lamb_analytic_velocity(double m, double tension, double wave_speed, double k, double psi0,
                              double psi_dot0, double t);

/// Trace decay of a massless spring boundary on a semi-infinite string,
/// psi_B(t) = psi_B(0) e^{-(a k / T) t}.
double massless_spring_boundary_decay(double wave_speed, double k, double tension, double psi0,
                                      double t);

/// Forced variant: initial string data (g, h) enter as the source
/// a g'(a t) + h(a t); evaluated by quadrature of the Duhamel integral.
double massless_spring_boundary_forced(double wave_speed, double k, double tension, double psi0,
                                       const std::function<double(double)>& g_prime,
                                       const std::function<double(double)>& h, double t,
                                       int quad_points = 2000);

/// Multi-transmission-line scenario: mass = inductance L, stiffness = C^-1,
/// LC load at b1 (mass = L_load, hooke = C_load^-1), coupling capacitor of
/// capacity 1/A (Spring(A)) or the rigid limit when A is absent. The far end
/// is truncated with the outflow closure at `length` (default: 10 transit
/// lengths of the observation window).
Scenario build_mtl(const Mat& inductance, const Mat& capacitance, const Mat& load_inductance,
                   const Mat& load_capacitance, const std::optional<Mat>& coupling,
                   double t_end, double dt, double length = 0.0);

}  // namespace wavebound

#pragma once

#include "wavebound/kernels.hpp"
#include "wavebound/types.hpp"

#include <array>
#include <optional>
#include <variant>

namespace wavebound {

/// Which physical end of a 1D interval.
enum class End { b1 = 0, b2 = 1 };

inline const char* end_name(End e) { return e == End::b1 ? "b1" : "b2"; }

/// Interior of a 1D system: k coupled scalar fields on [b1, b2] governed by
///   mass * psi_tt = stiffness * psi_zz + F_D.
/// For strings mass is the linear density rho and stiffness the tension T;
/// for multi-transmission lines mass is the inductance matrix L and
/// stiffness the inverse capacitance C^-1.
struct InteriorSpec1D {
    Mat mass;       ///< k x k symmetric positive definite
    Mat stiffness;  ///< k x k symmetric positive definite
    double b1 = 0.0;
    double b2 = 1.0;
    bool semi_infinite_b1 = false;  ///< truncated end with characteristic outflow
    bool semi_infinite_b2 = false;
    int n_cells = 64;
    ForceFn body_force;  ///< optional distributed force F_D(t) (uniform in z)

    int components() const { return static_cast<int>(mass.rows()); }
};

/// A point boundary system at one end: mass * psi_B_tt + hooke * psi_B = forces.
struct BoundaryNodeSpec {
    Mat mass;   ///< k x k diagonal, entries >= 0 (massless boundary permitted)
    Mat hooke;  ///< k x k symmetric, nonnegative
    ForceFn external_force;                ///< optional F_B(t)
    End label = End::b1;
    std::optional<MemoryKernel> kernel;    ///< retarded friction; reduced scenarios only

    static BoundaryNodeSpec point(double m, double k, End label = End::b1);
};

/// How the boundary field couples to the interior trace.
struct InteractionSpec {
    enum class Kind { None, Spring, Rigid };
    Kind kind = Kind::None;
    Mat stiffness;  ///< k x k SPD coupling matrix for Spring

    static InteractionSpec none() { return {Kind::None, {}}; }
    static InteractionSpec spring(Mat k_tilde) { return {Kind::Spring, std::move(k_tilde)}; }
    static InteractionSpec spring(double k_tilde);
    static InteractionSpec rigid() { return {Kind::Rigid, {}}; }
};

/// Circular membrane with a structured ring boundary.
struct DiskSpec {
    double radius = 1.0;       ///< R > 0
    double sigma = 1.0;        ///< surface mass density > 0
    double tension = 1.0;      ///< T > 0 (force per unit length)
    double ring_lambda = 0.0;  ///< ring linear mass density >= 0
    double ring_k = 0.0;       ///< distributed support stiffness per unit length >= 0
    InteractionSpec interaction;  ///< scalar k_tilde per unit length, or Rigid
    int n_r = 32;
    int n_theta = 64;
};

/// Named initial-data catalog. Scenario files pick one of these instead of
/// arbitrary code so CLI runs stay reproducible.
struct InitialField {
    enum class Kind { Zero, Gaussian, SineMode, BesselMode, Custom };
    Kind kind = Kind::Zero;
    double amplitude = 1.0;
    double center = 0.0;  ///< pulse center (1D z, 2D radius of bump center = 0)
    double width = 1.0;
    int mode = 1;              ///< sine mode index
    double bessel_beta = 0.0;  ///< radial wavenumber for BesselMode (2D)
    /// 0: zero initial velocity; +1/-1: right/left traveling pairing
    /// (velocity = -direction * a * d/dz of the displacement).
    int traveling = 0;
    std::vector<double> custom_psi;      ///< Custom: displacement samples on the grid
    std::vector<double> custom_psi_dot;  ///< Custom: velocity samples on the grid
    Vec component_weights;  ///< per-field weights, defaults to e_1

    double value(double z) const;       ///< scalar profile
    double derivative(double z) const;  ///< d/dz of the profile
};

struct InitialData {
    InitialField field;
    std::array<Vec, 2> boundary_value;     ///< c_i per end
    std::array<Vec, 2> boundary_velocity;  ///< d_i per end
};

struct OutputPlan {
    int stride = 1;  ///< record every stride-th step
    std::vector<double> snapshot_times;
    double probe_radius = 0.5;  ///< 2D: radius of the ring-averaged probe
};

/// Boundary-only scenarios (no interior field): the node at b1 evolves under
/// its own mass/hooke plus an optional memory kernel; used for the reduced
/// integro-differential model.
struct ReducedInterior {};

/// Complete declarative description of one coupled run.
struct Scenario {
    std::variant<InteriorSpec1D, DiskSpec, ReducedInterior> interior;
    std::array<BoundaryNodeSpec, 2> boundaries;
    std::array<InteractionSpec, 2> interactions;
    double t_end = 1.0;
    double dt = 1e-3;
    double cfl_factor = 0.9;
    InitialData initial;
    OutputPlan output;
    std::string name = "scenario";

    bool is_1d() const { return std::holds_alternative<InteriorSpec1D>(interior); }
    bool is_2d() const { return std::holds_alternative<DiskSpec>(interior); }
    bool is_reduced() const { return std::holds_alternative<ReducedInterior>(interior); }
};

/// Checks every type invariant and returns the full list of violations
/// (empty means the scenario is well posed). Never throws on degenerate
/// numeric input.
std::vector<std::string> scenario_violations(const Scenario& s);

/// Returns the scenario iff every invariant holds; otherwise throws SpecError
/// carrying all violations.
Scenario validate_scenario(Scenario s);

/// Wave speeds a_i = sqrt(eig(stiffness, mass)) of a 1D interior.
Vec wave_speeds(const Mat& mass, const Mat& stiffness);

/// Largest stable dt for the given scenario under the leapfrog schemes
/// (before the cfl_factor safety margin is applied).
double cfl_limit(const Scenario& s);

/// Interior field on a 1D grid plus the boundary traces.
struct FieldState1D {
    Vec grid;                    ///< monotone node coordinates, size N+1
    Mat psi;                     ///< k x (N+1)
    Mat psi_dot;                 ///< k x (N+1), whole-step reconstructed
    std::array<Vec, 2> psi_L;    ///< trace per end (equals the end columns in 1D)
    double time = 0.0;
};

/// One boundary node's dynamic state.
struct BoundaryState {
    Vec psi_B;
    Vec psi_B_dot;
    std::optional<KernelState> kernel_state;
};

}  // namespace wavebound

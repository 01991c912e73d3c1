#pragma once

#include "wavebound/solver1d.hpp"
#include "wavebound/solver2d.hpp"

namespace wavebound {

/// Boundary-only run of the reduced integro-differential model.
struct ReducedBoundaryRun {
    double m = 1.0;
    double k = 0.0;
    MemoryKernel kernel;
    double psi0 = 0.0;
    double psi_dot0 = 0.0;
    double t_end = 1.0;
    double dt = 1e-3;
    int stride = 1;

    ReducedTrajectory run() const {
        ReducedTrajectory full =
            integrate_reduced_boundary(m, k, kernel, psi0, psi_dot0, t_end, dt);
        if (stride <= 1) return full;
        ReducedTrajectory out;
        for (std::size_t i = 0; i < full.t.size(); i += stride) {
            out.t.push_back(full.t[i]);
            out.psi.push_back(full.psi[i]);
            out.psi_dot.push_back(full.psi_dot[i]);
        }
        return out;
    }
};

/// Assembled stepper inputs for one scenario; the alternative carried matches
/// the scenario's interior kind.
using CoupledSystem = std::variant<System1D, DiskSystem, ReducedBoundaryRun>;

/// Validates and assembles. Rigid interactions are eliminated inside the
/// steppers (shared end unknowns), Spring interactions couple through the
/// interface force, None leaves the boundary free.
inline CoupledSystem build_system(const Scenario& scenario) {
    Scenario s = validate_scenario(scenario);
    if (s.is_1d()) return System1D(s);
    if (s.is_2d()) return DiskSystem(s);
    ReducedBoundaryRun r;
    const auto& node = s.boundaries[0];
    r.m = node.mass(0, 0);
    r.k = node.hooke(0, 0);
    if (node.kernel) r.kernel = *node.kernel;
    if (s.initial.boundary_value[0].size() > 0) r.psi0 = s.initial.boundary_value[0](0);
    if (s.initial.boundary_velocity[0].size() > 0)
        r.psi_dot0 = s.initial.boundary_velocity[0](0);
    r.t_end = s.t_end;
    r.dt = s.dt;
    r.stride = s.output.stride;
    return r;
}

}  // namespace wavebound

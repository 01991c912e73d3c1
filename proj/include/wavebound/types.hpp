#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wavebound {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Complex = std::complex<double>;

/// Time-dependent generalized force with k components.
using ForceFn = std::function<Vec(double)>;

/// Any state entry beyond this magnitude aborts the run (CFL misuse fails fast).
inline constexpr double kOverflowGuard = 1e12;

/// A scenario violated one or more type invariants. Carries every violation
/// found, not just the first.
class SpecError : public std::runtime_error {
public:
    explicit SpecError(std::vector<std::string> violations)
        : std::runtime_error(join(violations)), violations_(std::move(violations)) {}
    explicit SpecError(const std::string& one) : SpecError(std::vector<std::string>{one}) {}

    const std::vector<std::string>& violations() const { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "invalid scenario:";
        for (const auto& s : v) {
            out += "\n  - " + s;
        }
        return out;
    }
    std::vector<std::string> violations_;
};

class NumericalBlowup : public std::runtime_error {
public:
    NumericalBlowup(double t, double value)
        : std::runtime_error("state exceeded overflow guard at t=" + std::to_string(t) +
                             " (|value|=" + std::to_string(value) + ")") {}
};

class ConvergenceFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TailNotConverged : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void check_finite(const Eigen::Ref<const Mat>& m, const char* what) {
    if (!m.allFinite()) throw SpecError(std::string(what) + " contains NaN or Inf");
}

}  // namespace wavebound

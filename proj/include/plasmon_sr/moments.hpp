// Closed second-order moment system for two emitters after the SPP has been
// eliminated adiabatically. Handles unequal couplings gamma1 != gamma2.

#pragma once

#include <Eigen/Dense>

#include <vector>

#include "plasmon_sr/model.hpp"
#include "plasmon_sr/ode.hpp"

namespace plasmon_sr {

struct MomentState {
    double sigma = 0.0;           // <s1+ s2> + <s2+ s1>
    double inversion_corr = 0.0;  // <Delta1 Delta2>
    double inversion1 = 0.0;      // <Delta1>
    double inversion2 = 0.0;      // <Delta2>

    Eigen::Vector4d to_vector() const { return {sigma, inversion_corr, inversion1, inversion2}; }
    static MomentState from_vector(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }

    /// True when all components lie in the region reachable by a density
    /// matrix: |Delta_i| <= 1, |<Delta1 Delta2>| <= 1, |Sigma| <= 2.
    bool physical(double slack = 1e-9) const;
};

/// The moment equations as an affine system d/dt s = A s + c.
struct MomentSystem {
    Eigen::Matrix4d matrix;
    Eigen::Vector4d offset;
};

MomentSystem moment_system(const EmitterParams& p, double gamma1, double gamma2);

/// Time derivative of the four moments. Requires zero detuning.
MomentState moment_rhs(const MomentState& s, const EmitterParams& p, double gamma1, double gamma2);

struct MomentTrajectory {
    std::vector<double> times;
    std::vector<MomentState> states;
    bool left_physical_region = false;
    IntegrationStats stats;

    const MomentState& terminal() const { return states.back(); }
};

/// Integrates the moment equations over [0, horizon]. With samples > 0 the
/// trajectory is recorded on a uniform grid of samples + 1 points, otherwise
/// at every accepted step. Throws IntegrationError on step-size underflow.
MomentTrajectory integrate_moments(const MomentState& initial, const EmitterParams& p,
                                   double gamma1, double gamma2, double horizon,
                                   double tol = 1e-9, int samples = 0);

class SingularSystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact stationary moments from a dense 4x4 solve.
MomentState steady_state_linear(const EmitterParams& p, double gamma1, double gamma2);

/// Mean plasmon number n = (1/kappa)[g1 n1a + g2 n2a + sqrt(g1 g2) Sigma],
/// with the upper populations slaved to the inversions.
double plasmon_number_from_moments(const MomentState& s, const EmitterParams& p,
                                   double gamma1, double gamma2, double kappa);

}  // namespace plasmon_sr

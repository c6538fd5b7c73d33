// Closed-form stationary state of two identical emitters sharing one lossy
// SPP mode, and the relative quantum efficiency (RQE) built from it.
//
// Everything here assumes zero detuning and equal couplings gamma1 = gamma2.
// Asymmetric couplings are handled numerically in moments.hpp.

#pragma once

#include <optional>

#include "plasmon_sr/model.hpp"

namespace plasmon_sr {

struct TwoEmitterSteady {
    double inversion = 0.0;       // Delta^(2), per emitter
    double superradiance = 0.0;   // Sr, collective term in the denominator
};

/// Stationary per-emitter inversion of the coupled pair. Requires zero detuning.
TwoEmitterSteady stationary_two_emitters(const EmitterParams& p, double gamma);

/// Stationary inversion of a single emitter at the same coupling.
double stationary_single_emitter(const EmitterParams& p, double gamma);

/// Plasmons generated per emitter, n^(N) = (Delta_0 - Delta_N) / (4 kappa tau').
/// Throws std::domain_error if Delta_N exceeds Delta_0.
double plasmon_number(const EmitterParams& p, double kappa, double inversion_n);

/// kappa-free figure normalization 4 kappa tau_a n^(N) = (tau_a/tau')(Delta_0 - Delta_N).
double plasmon_number_normalized(const EmitterParams& p, double inversion_n);

/// R = (Delta_0 - Delta^(2)) / (Delta_0 - Delta^(1)). Undefined (throws
/// std::domain_error) at gamma <= 0 and when the pump is off.
double rqe(const EmitterParams& p, double gamma);

/// High-pump limit R(x) = (b + 2x) / (b + x + x^2), x = 2 gamma tau_b.
double rqe_high_pump(double x, double b);

/// Maximizer of rqe_high_pump over x: (b/2)(sqrt(1 + 2/b) - 1).
double optimal_coupling(double b);

/// Everything the sweeps report for one symmetric parameter point.
struct SteadyReport {
    double inversion_two = 0.0;     // Delta^(2)
    double inversion_single = 0.0;  // Delta^(1)
    double superradiance = 0.0;     // Sr
    double plasmons_norm_two = 0.0;     // 4 kappa tau_a n^(2)
    double plasmons_norm_single = 0.0;  // 4 kappa tau_a n^(1)
    std::optional<double> plasmons_two;     // n^(2), when kappa is known
    std::optional<double> plasmons_single;  // n^(1)
    std::optional<double> rqe;              // empty at gamma = 0 or zero pump
    double sigma = 0.0;        // stationary <s1+ s2> + <s2+ s1>
    double inversion_corr = 0.0;  // stationary <Delta1 Delta2>
};

SteadyReport steady_report(const EmitterParams& p, double gamma,
                           std::optional<double> kappa = std::nullopt);

}  // namespace plasmon_sr

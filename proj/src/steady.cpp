#include "plasmon_sr/steady.hpp"

#include <cmath>
#include <stdexcept>

namespace plasmon_sr {

namespace {

void require_zero_detuning(const EmitterParams& p) {
    if (p.detuning != 0.0) {
        throw std::invalid_argument("closed-form steady state requires zero detuning");
    }
}

double coupled_inversion(const EmitterParams& p, double gamma, double sr) {
    const double ta = p.tau_a();
    const double tb = p.tau_b();
    const double pump_ta = p.pump_rate * ta;
    return pump_ta * (1.0 - 2.0 * gamma * tb) / (1.0 + pump_ta + 2.0 * gamma * ta * (1.0 + sr));
}

}  // namespace

TwoEmitterSteady stationary_two_emitters(const EmitterParams& p, double gamma) {
    require_zero_detuning(p);
    const auto s = derive_scalars(p, gamma);
    const double ta = p.tau_a();
    const double tb = p.tau_b();
    const double pump = p.pump_rate;

    TwoEmitterSteady out;
    out.superradiance = gamma / (s.polarization_decay + gamma) *
                        (pump * ta + pump * tb * (1.0 + pump * ta)) /
                        (1.0 + ta * (pump + 2.0 * gamma));
    out.inversion = coupled_inversion(p, gamma, out.superradiance);
    return out;
}

double stationary_single_emitter(const EmitterParams& p, double gamma) {
    require_zero_detuning(p);
    derive_scalars(p, gamma);  // validates
    return coupled_inversion(p, gamma, 0.0);
}

double plasmon_number_normalized(const EmitterParams& p, double inversion_n) {
    const auto s = derive_scalars(p, 0.0);
    double excess = s.inversion0 - inversion_n;
    // Round-off around Delta_N == Delta_0 (zero pump, zero coupling).
    constexpr double kSlack = 1e-12;
    if (excess < -kSlack) {
        throw std::domain_error("inversion exceeds pump-only value Delta_0; inputs are inconsistent");
    }
    if (excess < 0.0) excess = 0.0;
    return p.tau_a() / s.tau_prime * excess;
}

double plasmon_number(const EmitterParams& p, double kappa, double inversion_n) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw std::invalid_argument("kappa must be positive");
    }
    return plasmon_number_normalized(p, inversion_n) / (4.0 * kappa * p.tau_a());
}

double rqe(const EmitterParams& p, double gamma) {
    if (!(gamma > 0.0)) {
        throw std::domain_error("RQE is only defined for gamma > 0");
    }
    const auto s = derive_scalars(p, gamma);
    const double two = stationary_two_emitters(p, gamma).inversion;
    const double one = stationary_single_emitter(p, gamma);
    const double denom = s.inversion0 - one;
    if (denom == 0.0) {
        throw std::domain_error("no emission: single-emitter plasmon number is zero");
    }
    return (s.inversion0 - two) / denom;
}

double rqe_high_pump(double x, double b) {
    if (!(x >= 0.0) || !(b >= 1.0)) {
        throw std::invalid_argument("rqe_high_pump requires x >= 0 and b >= 1");
    }
    return (b + 2.0 * x) / (b + x + x * x);
}

double optimal_coupling(double b) {
    if (!(b >= 1.0) || !std::isfinite(b)) {
        throw std::invalid_argument("optimal_coupling requires b >= 1");
    }
    return 0.5 * b * (std::sqrt(1.0 + 2.0 / b) - 1.0);
}

SteadyReport steady_report(const EmitterParams& p, double gamma, std::optional<double> kappa) {
    const auto s = derive_scalars(p, gamma);
    const auto two = stationary_two_emitters(p, gamma);

    SteadyReport r;
    r.inversion_two = two.inversion;
    r.superradiance = two.superradiance;
    r.inversion_single = stationary_single_emitter(p, gamma);
    r.plasmons_norm_two = plasmon_number_normalized(p, r.inversion_two);
    r.plasmons_norm_single = plasmon_number_normalized(p, r.inversion_single);
    if (kappa) {
        r.plasmons_two = plasmon_number(p, *kappa, r.inversion_two);
        r.plasmons_single = plasmon_number(p, *kappa, r.inversion_single);
    }
    if (gamma > 0.0 && s.inversion0 - r.inversion_single != 0.0) {
        r.rqe = (s.inversion0 - r.inversion_two) / (s.inversion0 - r.inversion_single);
    }

    // Remaining stationary moments of the symmetric system, solved in the
    // order D12 -> Sigma so that gamma = 0 stays regular.
    const double pump_tb = p.pump_rate * p.tau_b();
    const double inv_tp = 1.0 / s.tau_prime;
    const double d = r.inversion_two;
    r.inversion_corr = (-(8.0 * gamma / s.theta) * pump_tb * d + 2.0 * s.inversion0 * inv_tp * d) /
                       (4.0 * (2.0 * gamma / s.theta + 0.5 * inv_tp));
    r.sigma = (4.0 * gamma / s.theta) * (r.inversion_corr + pump_tb * d) /
              (2.0 * (s.polarization_decay + gamma));
    return r;
}

}  // namespace plasmon_sr

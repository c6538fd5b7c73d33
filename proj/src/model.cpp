#include "plasmon_sr/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace plasmon_sr {

namespace {

void require_rate(double value, const char* name, bool strictly_positive) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument(std::string(name) + " must be finite");
    }
    if (strictly_positive ? !(value > 0.0) : value < 0.0) {
        throw std::invalid_argument(std::string(name) +
                                    (strictly_positive ? " must be positive" : " must be non-negative"));
    }
}

std::string fmt_num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

EmitterParams EmitterParams::normalized(double pump_tau_a, double tau_b_over_tau_a,
                                        double dephasing_tau_a, double detuning_tau_a) {
    EmitterParams p;
    p.upper_decay = 1.0;
    p.lower_decay = 1.0 / tau_b_over_tau_a;
    p.pump_rate = pump_tau_a;
    p.dephasing = dephasing_tau_a;
    p.detuning = detuning_tau_a;
    p.validate();
    return p;
}

void EmitterParams::validate() const {
    require_rate(pump_rate, "pump_rate", false);
    require_rate(upper_decay, "upper_decay", true);
    require_rate(lower_decay, "lower_decay", true);
    require_rate(dephasing, "dephasing", false);
    if (!std::isfinite(detuning)) throw std::invalid_argument("detuning must be finite");
    if (!std::isfinite(transition_dipole)) throw std::invalid_argument("transition_dipole must be finite");
}

CouplingSpec CouplingSpec::from_rabi(double rabi1, double rabi2, double kappa) {
    require_rate(kappa, "kappa", true);
    require_rate(rabi1, "rabi1", false);
    require_rate(rabi2, "rabi2", false);
    return {rabi1 * rabi1 / kappa, rabi2 * rabi2 / kappa, rabi1, rabi2, kappa};
}

void CouplingSpec::validate() const {
    require_rate(gamma1, "gamma1", false);
    require_rate(gamma2, "gamma2", false);
    if (rabi1) require_rate(*rabi1, "rabi1", false);
    if (rabi2) require_rate(*rabi2, "rabi2", false);
    if (kappa) require_rate(*kappa, "kappa", true);
}

DerivedScalars derive_scalars(const EmitterParams& p, double gamma) {
    p.validate();
    require_rate(gamma, "gamma", false);
    const double ta = p.tau_a();
    const double tb = p.tau_b();
    const double pump_ta = p.pump_rate * ta;
    const double pump_tb = p.pump_rate * tb;

    DerivedScalars d;
    d.polarization_decay = 0.5 / ta + 0.5 / tb + p.dephasing;
    d.inversion0 = pump_ta / (pump_ta + 1.0);
    d.theta = 1.0 + tb / ta + pump_tb;
    d.tau_prime = 1.0 / ((2.0 / ta) * (1.0 + pump_ta) / d.theta);
    d.b = 1.0 + 2.0 * p.dephasing * tb + tb / ta;
    d.x = 2.0 * gamma * tb;
    return d;
}

Populations populations_from_inversion(const EmitterParams& p, double inversion) {
    const double ta = p.tau_a();
    const double tb = p.tau_b();
    const double pump_tb = p.pump_rate * tb;
    const double theta = 1.0 + tb / ta + pump_tb;
    Populations n;
    n.upper = (pump_tb + inversion) / theta;
    n.lower = pump_tb - (tb / ta + pump_tb) * n.upper;
    return n;
}

std::string diagnostic_tag(DiagnosticCode code) {
    switch (code) {
        case DiagnosticCode::InversionBound: return "inversion_bound";
        case DiagnosticCode::SlowPlasmonVsGamma: return "kappa_vs_gamma";
        case DiagnosticCode::SlowPlasmonVsTau: return "kappa_vs_tau_prime";
        case DiagnosticCode::StrongCoupling: return "strong_coupling";
        case DiagnosticCode::NonzeroDetuning: return "nonzero_detuning";
    }
    return "unknown";
}

std::string join_tags(const std::vector<Diagnostic>& diagnostics) {
    std::string out;
    for (const auto& d : diagnostics) {
        if (!out.empty()) out += ';';
        out += diagnostic_tag(d.code);
    }
    return out;
}

std::vector<Diagnostic> validate_regime(const EmitterParams& p, const CouplingSpec& c,
                                        std::optional<double> kappa, double threshold) {
    p.validate();
    c.validate();
    if (!kappa) kappa = c.kappa;
    if (kappa) require_rate(*kappa, "kappa", true);
    require_rate(threshold, "threshold", true);

    std::vector<Diagnostic> out;
    const double tb = p.tau_b();
    const double worst_gamma_tb = std::max(c.gamma1, c.gamma2) * tb;
    if (worst_gamma_tb >= 1.0) {
        out.push_back({DiagnosticCode::InversionBound,
                       "inversion bound violated: gamma*tau_b = " + fmt_num(worst_gamma_tb) +
                           " >= 1, results are outside model validity"});
    }
    if (kappa) {
        const auto s = derive_scalars(p, 0.0);
        const double k_over_gamma = *kappa / s.polarization_decay;
        if (k_over_gamma < threshold) {
            out.push_back({DiagnosticCode::SlowPlasmonVsGamma,
                           "adiabatic elimination questionable: kappa/Gamma = " + fmt_num(k_over_gamma)});
        }
        const double k_tau = *kappa * s.tau_prime;
        if (k_tau < threshold) {
            out.push_back({DiagnosticCode::SlowPlasmonVsTau,
                           "adiabatic elimination questionable: kappa*tau' = " + fmt_num(k_tau)});
        }
        for (const auto& rabi : {c.rabi1, c.rabi2}) {
            if (rabi && *rabi > 0.0 && *kappa / *rabi < threshold) {
                out.push_back({DiagnosticCode::StrongCoupling,
                               "weak-coupling assumption violated: kappa/Omega = " + fmt_num(*kappa / *rabi)});
                break;
            }
        }
    }
    if (p.detuning != 0.0) {
        out.push_back({DiagnosticCode::NonzeroDetuning,
                       "analytic path assumes zero detuning, got delta = " + fmt_num(p.detuning)});
    }
    return out;
}

}  // namespace plasmon_sr

// Emitter parameters, the single-emitter pump/decay scheme and the derived
// scalars shared by the analytic, moment and oracle solvers.
//
// All rates are dimensionless, measured in units of the upper-level decay
// rate 1/tau_a unless a caller deliberately chooses another time unit. The
// formulas only depend on ratios, so any consistent unit works.

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace plasmon_sr {

/// Pump, decay and dephasing rates of one incoherently pumped emitter.
struct EmitterParams {
    double pump_rate = 0.0;        // Gamma_p
    double upper_decay = 1.0;      // 1/tau_a
    double lower_decay = 10.0;     // 1/tau_b
    double dephasing = 0.0;        // Gamma_deph
    double detuning = 0.0;         // delta
    double transition_dipole = 1.0;  // d_e, only used by the near-field model

    /// Builds parameters in units of 1/tau_a from the dimensionless groups
    /// used on figure axes.
    static EmitterParams normalized(double pump_tau_a, double tau_b_over_tau_a,
                                    double dephasing_tau_a = 0.0,
                                    double detuning_tau_a = 0.0);

    double tau_a() const { return 1.0 / upper_decay; }
    double tau_b() const { return 1.0 / lower_decay; }

    /// Throws std::invalid_argument on negative or non-finite rates.
    void validate() const;
};

/// Enhanced spontaneous emission rates of the two emitters into the SPP,
/// optionally backed by the Rabi couplings and SPP decay they came from.
struct CouplingSpec {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    std::optional<double> rabi1;
    std::optional<double> rabi2;
    std::optional<double> kappa;

    static CouplingSpec symmetric(double gamma) { return {gamma, gamma, {}, {}, {}}; }
    /// gamma_i = rabi_i^2 / kappa.
    static CouplingSpec from_rabi(double rabi1, double rabi2, double kappa);

    void validate() const;
};

struct DerivedScalars {
    double polarization_decay = 0.0;  // Gamma
    double inversion0 = 0.0;          // Delta_0, inversion without coupling
    double tau_prime = 0.0;           // effective inversion relaxation time
    double theta = 0.0;               // 1 + tau_b/tau_a + Gamma_p tau_b
    double b = 0.0;                   // 1 + 2 Gamma_deph tau_b + tau_b/tau_a
    double x = 0.0;                   // 2 gamma tau_b
};

DerivedScalars derive_scalars(const EmitterParams& p, double gamma);

struct Populations {
    double upper = 0.0;  // n_a
    double lower = 0.0;  // n_b
    double sum() const { return upper + lower; }
    double inversion() const { return upper - lower; }
};

/// Stationary occupations consistent with a given inversion, obtained by
/// slaving n_a + n_b to the pump/decay balance.
Populations populations_from_inversion(const EmitterParams& p, double inversion);

enum class DiagnosticCode {
    InversionBound,      // gamma tau_b >= 1
    SlowPlasmonVsGamma,  // kappa / Gamma below threshold
    SlowPlasmonVsTau,    // kappa tau' below threshold
    StrongCoupling,      // kappa / Omega below threshold
    NonzeroDetuning,
};

struct Diagnostic {
    DiagnosticCode code;
    std::string message;
};

/// Short machine-readable tag for a diagnostic ("inversion_bound", ...).
std::string diagnostic_tag(DiagnosticCode code);

/// Joins the tags of a diagnostics list with ';'.
std::string join_tags(const std::vector<Diagnostic>& diagnostics);

/// Checks the restriction gamma tau_b < 1 and the adiabatic-elimination
/// ratios. Returns warnings; throws only on non-finite or negative inputs.
std::vector<Diagnostic> validate_regime(const EmitterParams& p, const CouplingSpec& c,
                                        std::optional<double> kappa = std::nullopt,
                                        double threshold = 10.0);

}  // namespace plasmon_sr

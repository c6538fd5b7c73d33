// Brute-force master-equation model of two pumped emitters and one lossy SPP
// mode, used to check the adiabatic-elimination results without approximation.
//
// Each emitter has three levels {g, b, a}: g is the empty reservoir state,
// a -> b is the optical transition coupled to the SPP. Jump processes:
//   g -> a   pump, rate Gamma_p
//   a -> g   decay, rate 1/tau_a
//   b -> g   decay, rate 1/tau_b
//   |a><a|   pure dephasing, rate 2 Gamma_deph (a-b coherence decays at Gamma_deph)
//   b -> a   pump, rate Gamma_p            (PumpModel::FromGroundAndLower only)
// The SPP decays with amplitude rate kappa (jump sqrt(2 kappa) a).
//
// States are vectorized column-major: vec(A rho B) = (B^T kron A) vec(rho).

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

#include "plasmon_sr/model.hpp"
#include "plasmon_sr/moments.hpp"
#include "plasmon_sr/ode.hpp"

namespace plasmon_sr {

enum class PumpModel {
    FromGround,          // dn_a/dt has Gamma_p (1 - n_a - n_b)
    FromGroundAndLower,  // dn_a/dt has Gamma_p (1 - n_a); costs -Gamma_p n_b in dn_b/dt
};

const char* pump_model_name(PumpModel m);

inline constexpr int kEmitterLevels = 3;
inline constexpr int kMaxFockCutoff = 6;

struct SystemSpec {
    std::array<EmitterParams, 2> emitters;
    std::array<double, 2> rabi{0.0, 0.0};
    double kappa = 1.0;
    int fock_cutoff = 4;
    PumpModel pump_model = PumpModel::FromGround;

    static SystemSpec symmetric(const EmitterParams& p, double rabi, double kappa, int fock_cutoff = 4,
                                PumpModel model = PumpModel::FromGround);

    int fock_dim() const { return fock_cutoff + 1; }
    int dimension() const { return kEmitterLevels * kEmitterLevels * fock_dim(); }

    /// Throws std::invalid_argument for bad rates and std::length_error when
    /// the cutoff exceeds kMaxFockCutoff.
    void validate() const;
};

class Liouvillian {
public:
    Liouvillian(Eigen::MatrixXcd superoperator, int hilbert_dim);

    const Eigen::MatrixXcd& matrix() const { return super_; }
    int hilbert_dim() const { return dim_; }
    Eigen::VectorXcd apply(const Eigen::VectorXcd& vec_rho) const { return super_ * vec_rho; }

private:
    Eigen::MatrixXcd super_;
    int dim_;
};

class DensityState {
public:
    explicit DensityState(Eigen::MatrixXcd rho);

    static DensityState from_vector(const Eigen::VectorXcd& v, int dim);
    Eigen::VectorXcd to_vector() const;

    const Eigen::MatrixXcd& matrix() const { return rho_; }
    int dim() const { return static_cast<int>(rho_.rows()); }

    std::complex<double> trace() const { return rho_.trace(); }
    double hermiticity_error() const;  // max |rho - rho^dagger|
    double min_eigenvalue() const;
    double max_eigenvalue() const;
    std::complex<double> expectation(const Eigen::MatrixXcd& op) const;

private:
    Eigen::MatrixXcd rho_;
};

Liouvillian build_generator(const SystemSpec& spec);

class DegenerateKernelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SteadyStateResult {
    DensityState state;
    double residual = 0.0;  // ||L rho|| / (||L|| ||rho||), Frobenius norms
};

/// Trace-one kernel element of the generator. Throws DegenerateKernelError
/// when the kernel is not one-dimensional.
SteadyStateResult steady_state(const Liouvillian& generator);

struct DensityTrajectory {
    std::vector<double> times;
    std::vector<DensityState> states;
    IntegrationStats stats;
};

/// Time evolution of rho0 under the generator, sampled on samples + 1
/// uniform points over [0, horizon].
DensityTrajectory evolve(const DensityState& initial, const Liouvillian& generator, double horizon,
                         double tol = 1e-9, int samples = 10);

/// All emitters in g, SPP in vacuum.
DensityState vacuum_state(const SystemSpec& spec);

/// Operators on the full product space for a given spec.
struct OperatorSet {
    Eigen::MatrixXcd a;                        // SPP annihilation
    std::array<Eigen::MatrixXcd, 2> sigma;     // |b><a| of emitter i
    std::array<Eigen::MatrixXcd, 2> upper;     // |a><a|
    std::array<Eigen::MatrixXcd, 2> lower;     // |b><b|
    std::array<Eigen::MatrixXcd, 2> ground;    // |g><g|
    Eigen::MatrixXcd top_fock;                 // projector on the highest Fock level
};

OperatorSet make_operators(const SystemSpec& spec);

struct OracleMoments {
    double inversion1 = 0.0;
    double inversion2 = 0.0;
    double inversion_corr = 0.0;  // <Delta1 Delta2>
    double sigma = 0.0;           // 2 Re <s1+ s2>
    double plasmons = 0.0;        // <a+ a>
    double upper1 = 0.0, upper2 = 0.0;
    double lower1 = 0.0, lower2 = 0.0;
    std::complex<double> coherence12;  // <s1+ s2>
    double top_fock_population = 0.0;

    MomentState as_moment_state() const { return {sigma, inversion_corr, inversion1, inversion2}; }
};

OracleMoments extract_moments(const DensityState& rho, const SystemSpec& spec);

struct AdiabaticComparison {
    OracleMoments oracle;
    MomentState adiabatic;
    double adiabatic_plasmons = 0.0;
    double gamma1 = 0.0, gamma2 = 0.0;

    // Relative differences |oracle - adiabatic| / |adiabatic|
    double rel_inversion1 = 0.0;
    double rel_inversion2 = 0.0;
    double rel_mean_inversion = 0.0;
    double rel_inversion_corr = 0.0;
    double rel_sigma = 0.0;
    double rel_plasmons = 0.0;

    double steady_residual = 0.0;
    std::vector<Diagnostic> diagnostics;
    bool regime_violation = false;

    /// max(rel_mean_inversion, rel_sigma, rel_plasmons)
    double discrepancy() const;
};

/// Solves the oracle and the adiabatic moment model at gamma_i = Omega_i^2/kappa
/// and reports how far apart they are. Needs identical emitters and zero detuning.
AdiabaticComparison compare_with_adiabatic(const SystemSpec& spec, double regime_threshold = 10.0);

}  // namespace plasmon_sr

#include "plasmon_sr/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace plasmon_sr {

namespace {

using Mat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

constexpr int kGround = 0;
constexpr int kLower = 1;
constexpr int kUpper = 2;

Mat level_op(int to, int from) {
    Mat m = Mat::Zero(kEmitterLevels, kEmitterLevels);
    m(to, from) = 1.0;
    return m;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// target += scale * (a kron b), skipping structural zeros of a.
void add_kron(Mat& target, const Mat& a, const Mat& b, cplx scale) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0)) continue;
            target.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) += (scale * aij) * b;
        }
    }
}

void add_dissipator(Mat& super, const Mat& jump, const Mat& identity) {
    const Mat jdj = jump.adjoint() * jump;
    add_kron(super, jump.conjugate(), jump, 1.0);
    add_kron(super, identity, jdj, -0.5);
    add_kron(super, jdj.transpose(), identity, -0.5);
}

double rel_diff(double value, double reference) {
    const double diff = std::abs(value - reference);
    const double scale = std::abs(reference);
    return scale < 1e-14 ? diff : diff / scale;
}

}  // namespace

const char* pump_model_name(PumpModel m) {
    switch (m) {
        case PumpModel::FromGround: return "ground";
        case PumpModel::FromGroundAndLower: return "ground_and_lower";
    }
    return "unknown";
}

SystemSpec SystemSpec::symmetric(const EmitterParams& p, double rabi, double kappa, int fock_cutoff,
                                 PumpModel model) {
    SystemSpec s;
    s.emitters = {p, p};
    s.rabi = {rabi, rabi};
    s.kappa = kappa;
    s.fock_cutoff = fock_cutoff;
    s.pump_model = model;
    return s;
}

void SystemSpec::validate() const {
    for (const auto& e : emitters) e.validate();
    for (double r : rabi) {
        if (!std::isfinite(r)) throw std::invalid_argument("rabi coupling must be finite");
    }
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("kappa must be positive");
    if (fock_cutoff < 1) throw std::invalid_argument("fock_cutoff must be >= 1");
    if (fock_cutoff > kMaxFockCutoff) {
        throw std::length_error("fock_cutoff " + std::to_string(fock_cutoff) + " exceeds the maximum of " +
                                std::to_string(kMaxFockCutoff));
    }
}

Liouvillian::Liouvillian(Eigen::MatrixXcd superoperator, int hilbert_dim)
    : super_(std::move(superoperator)), dim_(hilbert_dim) {
    if (super_.rows() != static_cast<Eigen::Index>(dim_) * dim_ || super_.cols() != super_.rows()) {
        throw std::invalid_argument("superoperator shape does not match the Hilbert dimension");
    }
}

DensityState::DensityState(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols()) throw std::invalid_argument("density matrix must be square");
}

DensityState DensityState::from_vector(const Eigen::VectorXcd& v, int dim) {
    if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
        throw std::invalid_argument("vector length does not match dimension");
    }
    return DensityState(Eigen::Map<const Mat>(v.data(), dim, dim));
}

Eigen::VectorXcd DensityState::to_vector() const {
    return Eigen::Map<const Eigen::VectorXcd>(rho_.data(), rho_.size());
}

double DensityState::hermiticity_error() const {
    return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityState::min_eigenvalue() const {
    const Mat h = 0.5 * (rho_ + rho_.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double DensityState::max_eigenvalue() const {
    const Mat h = 0.5 * (rho_ + rho_.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

cplx DensityState::expectation(const Eigen::MatrixXcd& op) const {
    // Tr(rho op) without forming the product
    return (rho_.transpose().cwiseProduct(op)).sum();
}

OperatorSet make_operators(const SystemSpec& spec) {
    const int nf = spec.fock_dim();
    const Mat id_e = Mat::Identity(kEmitterLevels, kEmitterLevels);
    const Mat id_f = Mat::Identity(nf, nf);

    Mat a_f = Mat::Zero(nf, nf);
    for (int k = 1; k < nf; ++k) a_f(k - 1, k) = std::sqrt(static_cast<double>(k));
    Mat top = Mat::Zero(nf, nf);
    top(nf - 1, nf - 1) = 1.0;

    auto on_first = [&](const Mat& op) { return kron(kron(op, id_e), id_f); };
    auto on_second = [&](const Mat& op) { return kron(kron(id_e, op), id_f); };

    OperatorSet ops;
    ops.a = kron(kron(id_e, id_e), a_f);
    ops.top_fock = kron(kron(id_e, id_e), top);
    const Mat sig = level_op(kLower, kUpper);
    ops.sigma = {on_first(sig), on_second(sig)};
    ops.upper = {on_first(level_op(kUpper, kUpper)), on_second(level_op(kUpper, kUpper))};
    ops.lower = {on_first(level_op(kLower, kLower)), on_second(level_op(kLower, kLower))};
    ops.ground = {on_first(level_op(kGround, kGround)), on_second(level_op(kGround, kGround))};
    return ops;
}

Liouvillian build_generator(const SystemSpec& spec) {
    spec.validate();
    const int nf = spec.fock_dim();
    const int dim = spec.dimension();
    const Mat id = Mat::Identity(dim, dim);
    const Mat id_e = Mat::Identity(kEmitterLevels, kEmitterLevels);
    const Mat id_f = Mat::Identity(nf, nf);
    const auto ops = make_operators(spec);

    auto embed = [&](int which, const Mat& op) {
        return which == 0 ? kron(kron(op, id_e), id_f) : kron(kron(id_e, op), id_f);
    };

    Mat h = Mat::Zero(dim, dim);
    for (int i = 0; i < 2; ++i) {
        const auto& sig = ops.sigma[i];
        h -= spec.emitters[i].detuning * ops.upper[i];
        h -= spec.rabi[i] * (sig.adjoint() * ops.a + ops.a.adjoint() * sig);
    }

    Mat super = Mat::Zero(static_cast<Eigen::Index>(dim) * dim, static_cast<Eigen::Index>(dim) * dim);
    const cplx i1(0.0, 1.0);
    add_kron(super, id, h, -i1);
    add_kron(super, h.transpose(), id, i1);

    add_dissipator(super, std::sqrt(2.0 * spec.kappa) * ops.a, id);
    for (int i = 0; i < 2; ++i) {
        const auto& e = spec.emitters[i];
        if (e.pump_rate > 0.0) {
            add_dissipator(super, std::sqrt(e.pump_rate) * embed(i, level_op(kUpper, kGround)), id);
            if (spec.pump_model == PumpModel::FromGroundAndLower) {
                add_dissipator(super, std::sqrt(e.pump_rate) * embed(i, level_op(kUpper, kLower)), id);
            }
        }
        add_dissipator(super, std::sqrt(e.upper_decay) * embed(i, level_op(kGround, kUpper)), id);
        add_dissipator(super, std::sqrt(e.lower_decay) * embed(i, level_op(kGround, kLower)), id);
        if (e.dephasing > 0.0) {
            add_dissipator(super, std::sqrt(2.0 * e.dephasing) * embed(i, level_op(kUpper, kUpper)), id);
        }
    }
    return Liouvillian(std::move(super), dim);
}

SteadyStateResult steady_state(const Liouvillian& generator) {
    const int dim = generator.hilbert_dim();
    const Eigen::Index n = static_cast<Eigen::Index>(dim) * dim;

    // Replace the rho_00 equation (redundant by trace preservation) with Tr rho = 1.
    Mat augmented = generator.matrix();
    augmented.row(0).setZero();
    for (int k = 0; k < dim; ++k) augmented(0, static_cast<Eigen::Index>(k) * dim + k) = 1.0;
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
    rhs(0) = 1.0;

    Eigen::PartialPivLU<Mat> lu(augmented);
    // rcond() alone misses exact zero pivots, so look at the pivots directly too
    const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
    const double pivot_ratio = pivots.minCoeff() / pivots.maxCoeff();
    const double rcond = std::min(lu.rcond(), pivot_ratio);
    if (!(rcond > 1e-13)) {
        throw DegenerateKernelError("generator kernel is not one-dimensional (rcond = " + std::to_string(rcond) +
                                    "); the model has decoupled sectors");
    }
    const Eigen::VectorXcd x = lu.solve(rhs);
    if (!x.allFinite()) throw DegenerateKernelError("steady-state solve produced non-finite entries");

    Mat rho = Eigen::Map<const Mat>(x.data(), dim, dim);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace();

    DensityState state(std::move(rho));
    const Eigen::VectorXcd v = state.to_vector();
    const double residual = (generator.matrix() * v).norm() / (generator.matrix().norm() * v.norm());
    return {std::move(state), residual};
}

DensityTrajectory evolve(const DensityState& initial, const Liouvillian& generator, double horizon, double tol,
                         int samples) {
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    const int dim = generator.hilbert_dim();
    if (initial.dim() != dim) throw std::invalid_argument("state dimension does not match generator");

    StepControl control;
    control.rtol = tol;
    control.atol = tol * 1e-3;
    auto rhs = [&](double, const Eigen::VectorXcd& y) -> Eigen::VectorXcd { return generator.apply(y); };

    DensityTrajectory traj;
    Eigen::VectorXcd y = initial.to_vector();
    traj.times.push_back(0.0);
    traj.states.push_back(initial);
    for (int i = 1; i <= samples; ++i) {
        const double t0 = horizon * (i - 1) / samples;
        const double t1 = horizon * i / samples;
        const auto st = integrate_dopri5(rhs, y, t0, t1, control);
        traj.stats.accepted += st.accepted;
        traj.stats.rejected += st.rejected;
        traj.stats.rhs_evals += st.rhs_evals;
        traj.times.push_back(t1);
        traj.states.push_back(DensityState::from_vector(y, dim));
    }
    return traj;
}

DensityState vacuum_state(const SystemSpec& spec) {
    spec.validate();
    Mat rho = Mat::Zero(spec.dimension(), spec.dimension());
    rho(0, 0) = 1.0;  // |g, g, 0>
    return DensityState(std::move(rho));
}

OracleMoments extract_moments(const DensityState& rho, const SystemSpec& spec) {
    if (rho.dim() != spec.dimension()) throw std::invalid_argument("state dimension does not match spec");
    const auto ops = make_operators(spec);
    const Mat inv1 = ops.upper[0] - ops.lower[0];
    const Mat inv2 = ops.upper[1] - ops.lower[1];

    OracleMoments m;
    m.upper1 = rho.expectation(ops.upper[0]).real();
    m.upper2 = rho.expectation(ops.upper[1]).real();
    m.lower1 = rho.expectation(ops.lower[0]).real();
    m.lower2 = rho.expectation(ops.lower[1]).real();
    m.inversion1 = m.upper1 - m.lower1;
    m.inversion2 = m.upper2 - m.lower2;
    m.inversion_corr = rho.expectation(inv1 * inv2).real();
    m.coherence12 = rho.expectation(ops.sigma[0].adjoint() * ops.sigma[1]);
    m.sigma = 2.0 * m.coherence12.real();
    m.plasmons = rho.expectation(ops.a.adjoint() * ops.a).real();
    m.top_fock_population = rho.expectation(ops.top_fock).real();
    return m;
}

double AdiabaticComparison::discrepancy() const {
    return std::max({rel_mean_inversion, rel_sigma, rel_plasmons});
}

AdiabaticComparison compare_with_adiabatic(const SystemSpec& spec, double regime_threshold) {
    spec.validate();
    const auto& p = spec.emitters[0];
    const auto& q = spec.emitters[1];
    if (p.pump_rate != q.pump_rate || p.upper_decay != q.upper_decay || p.lower_decay != q.lower_decay ||
        p.dephasing != q.dephasing) {
        throw std::invalid_argument("adiabatic comparison needs identical emitter parameters");
    }
    if (p.detuning != 0.0 || q.detuning != 0.0) {
        throw std::invalid_argument("adiabatic comparison needs zero detuning");
    }

    AdiabaticComparison r;
    const auto coupling = CouplingSpec::from_rabi(std::abs(spec.rabi[0]), std::abs(spec.rabi[1]), spec.kappa);
    r.gamma1 = coupling.gamma1;
    r.gamma2 = coupling.gamma2;
    r.diagnostics = validate_regime(p, coupling, spec.kappa, regime_threshold);
    for (const auto& d : r.diagnostics) {
        if (d.code == DiagnosticCode::SlowPlasmonVsGamma || d.code == DiagnosticCode::SlowPlasmonVsTau ||
            d.code == DiagnosticCode::StrongCoupling) {
            r.regime_violation = true;
        }
    }

    const auto steady = steady_state(build_generator(spec));
    r.steady_residual = steady.residual;
    r.oracle = extract_moments(steady.state, spec);
    r.adiabatic = steady_state_linear(p, r.gamma1, r.gamma2);
    r.adiabatic_plasmons = plasmon_number_from_moments(r.adiabatic, p, r.gamma1, r.gamma2, spec.kappa);

    r.rel_inversion1 = rel_diff(r.oracle.inversion1, r.adiabatic.inversion1);
    r.rel_inversion2 = rel_diff(r.oracle.inversion2, r.adiabatic.inversion2);
    r.rel_mean_inversion = rel_diff(0.5 * (r.oracle.inversion1 + r.oracle.inversion2),
                                    0.5 * (r.adiabatic.inversion1 + r.adiabatic.inversion2));
    r.rel_inversion_corr = rel_diff(r.oracle.inversion_corr, r.adiabatic.inversion_corr);
    r.rel_sigma = rel_diff(r.oracle.sigma, r.adiabatic.sigma);
    r.rel_plasmons = rel_diff(r.oracle.plasmons, r.adiabatic_plasmons);
    return r;
}

}  // namespace plasmon_sr

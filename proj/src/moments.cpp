#include "plasmon_sr/moments.hpp"

#include <cmath>
#include <stdexcept>

namespace plasmon_sr {

namespace {

struct Coefficients {
    double gamma_pol;
    double inversion0;
    double inv_tau_prime;
    double theta;
    double pump_tb;
    double g12;  // sqrt(gamma1 gamma2)
};

Coefficients coefficients(const EmitterParams& p, double gamma1, double gamma2) {
    if (p.detuning != 0.0) {
        throw std::invalid_argument("moment equations assume zero detuning");
    }
    if (!(gamma1 >= 0.0) || !(gamma2 >= 0.0) || !std::isfinite(gamma1) || !std::isfinite(gamma2)) {
        throw std::invalid_argument("couplings must be finite and non-negative");
    }
    const auto s = derive_scalars(p, 0.0);
    return {s.polarization_decay, s.inversion0, 1.0 / s.tau_prime, s.theta,
            p.pump_rate * p.tau_b(), std::sqrt(gamma1 * gamma2)};
}

}  // namespace

bool MomentState::physical(double slack) const {
    return std::abs(inversion1) <= 1.0 + slack && std::abs(inversion2) <= 1.0 + slack &&
           std::abs(inversion_corr) <= 1.0 + slack && std::abs(sigma) <= 2.0 + slack;
}

MomentState moment_rhs(const MomentState& s, const EmitterParams& p, double gamma1, double gamma2) {
    const auto c = coefficients(p, gamma1, gamma2);
    MomentState d;
    d.sigma = -(2.0 * c.gamma_pol + gamma1 + gamma2) * s.sigma +
              4.0 * c.g12 / c.theta *
                  (s.inversion_corr + c.pump_tb * 0.5 * (s.inversion1 + s.inversion2));
    d.inversion_corr = -4.0 * ((gamma1 + gamma2) / c.theta + 0.5 * c.inv_tau_prime) * s.inversion_corr -
                       4.0 * c.pump_tb / c.theta * (gamma1 * s.inversion2 + gamma2 * s.inversion1) +
                       c.inversion0 * c.inv_tau_prime * (s.inversion1 + s.inversion2);
    d.inversion1 = -4.0 * gamma1 / c.theta * (s.inversion1 + c.pump_tb) - 2.0 * c.g12 * s.sigma -
                   c.inv_tau_prime * (s.inversion1 - c.inversion0);
    d.inversion2 = -4.0 * gamma2 / c.theta * (s.inversion2 + c.pump_tb) - 2.0 * c.g12 * s.sigma -
                   c.inv_tau_prime * (s.inversion2 - c.inversion0);
    return d;
}

MomentSystem moment_system(const EmitterParams& p, double gamma1, double gamma2) {
    const auto c = coefficients(p, gamma1, gamma2);
    const double th = c.theta;
    const double itp = c.inv_tau_prime;
    MomentSystem sys;
    // Row order: sigma, <D1 D2>, <D1>, <D2>
    sys.matrix << -(2.0 * c.gamma_pol + gamma1 + gamma2), 4.0 * c.g12 / th, 2.0 * c.g12 / th * c.pump_tb,
        2.0 * c.g12 / th * c.pump_tb,
        //
        0.0, -4.0 * ((gamma1 + gamma2) / th + 0.5 * itp), -4.0 * c.pump_tb / th * gamma2 + c.inversion0 * itp,
        -4.0 * c.pump_tb / th * gamma1 + c.inversion0 * itp,
        //
        -2.0 * c.g12, 0.0, -4.0 * gamma1 / th - itp, 0.0,
        //
        -2.0 * c.g12, 0.0, 0.0, -4.0 * gamma2 / th - itp;
    sys.offset << 0.0, 0.0, -4.0 * gamma1 / th * c.pump_tb + itp * c.inversion0,
        -4.0 * gamma2 / th * c.pump_tb + itp * c.inversion0;
    return sys;
}

MomentState steady_state_linear(const EmitterParams& p, double gamma1, double gamma2) {
    const auto sys = moment_system(p, gamma1, gamma2);
    Eigen::FullPivLU<Eigen::Matrix4d> lu(sys.matrix);
    lu.setThreshold(1e-13);
    if (!lu.isInvertible()) {
        throw SingularSystemError("moment system is singular; parameters are degenerate");
    }
    const Eigen::Vector4d x = lu.solve(-sys.offset);
    return MomentState::from_vector(x);
}

MomentTrajectory integrate_moments(const MomentState& initial, const EmitterParams& p, double gamma1,
                                   double gamma2, double horizon, double tol, int samples) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("horizon must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    coefficients(p, gamma1, gamma2);  // validates once up front

    auto rhs = [&](double, const Eigen::Vector4d& y) -> Eigen::Vector4d {
        return moment_rhs(MomentState::from_vector(y), p, gamma1, gamma2).to_vector();
    };

    StepControl control;
    control.rtol = tol;
    control.atol = tol * 1e-3;

    MomentTrajectory traj;
    Eigen::Vector4d y = initial.to_vector();
    auto record = [&](double t, const Eigen::Vector4d& v) {
        const auto s = MomentState::from_vector(v);
        if (!s.physical()) traj.left_physical_region = true;
        traj.times.push_back(t);
        traj.states.push_back(s);
    };
    record(0.0, y);

    if (samples > 0) {
        for (int i = 1; i <= samples; ++i) {
            const double t0 = horizon * (i - 1) / samples;
            const double t1 = horizon * i / samples;
            const auto st = integrate_dopri5(rhs, y, t0, t1, control);
            traj.stats.accepted += st.accepted;
            traj.stats.rejected += st.rejected;
            traj.stats.rhs_evals += st.rhs_evals;
            record(t1, y);
        }
    } else {
        traj.stats = integrate_dopri5(rhs, y, 0.0, horizon, control, record);
    }
    return traj;
}

double plasmon_number_from_moments(const MomentState& s, const EmitterParams& p, double gamma1,
                                   double gamma2, double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    const double n1 = populations_from_inversion(p, s.inversion1).upper;
    const double n2 = populations_from_inversion(p, s.inversion2).upper;
    return (gamma1 * n1 + gamma2 * n2 + std::sqrt(gamma1 * gamma2) * s.sigma) / kappa;
}

}  // namespace plasmon_sr

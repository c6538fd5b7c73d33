// Adaptive Dormand-Prince 5(4) integrator for small dense systems.
//
// State is any Eigen column vector (real or complex). The error norm is the
// usual RMS of err_i / (atol + rtol * max(|y_i|, |y_new_i|)).

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace plasmon_sr {

class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct StepControl {
    double rtol = 1e-9;
    double atol = 1e-12;
    double initial_step = 0.0;  // 0 picks a step from the RHS scale
    double min_step = 1e-14;    // relative to the interval length
    long max_steps = 10'000'000;
};

struct IntegrationStats {
    long accepted = 0;
    long rejected = 0;
    long rhs_evals = 0;
};

namespace detail {

template <class Vec>
double scaled_rms(const Vec& err, const Vec& y0, const Vec& y1, const StepControl& c) {
    const Eigen::Index n = err.size();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double scale = c.atol + c.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double e = std::abs(err[i]) / scale;
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(std::max<Eigen::Index>(n, 1)));
}

}  // namespace detail

/// Integrates dy/dt = rhs(t, y) from t0 to t1 in place. The observer is called
/// as observer(t, y) after every accepted step, including the final one.
template <class Vec, class Rhs, class Observer>
IntegrationStats integrate_dopri5(Rhs&& rhs, Vec& y, double t0, double t1,
                                  const StepControl& control, Observer&& observer) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b - b_hat, the embedded 4th-order error weights
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    IntegrationStats stats;
    if (!(t1 > t0)) {
        observer(t0, y);
        return stats;
    }
    const double span = t1 - t0;

    Vec k1 = rhs(t0, y);
    ++stats.rhs_evals;

    double h = control.initial_step;
    if (h <= 0.0) {
        const double d0 = detail::scaled_rms(y, y, y, control);
        const double d1 = detail::scaled_rms(k1, y, y, control);
        h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1;
        h = std::min(h, span);
    }

    double t = t0;
    Vec ytmp, k2, k3, k4, k5, k6, k7, ynew, err;
    while (t < t1) {
        if (stats.accepted + stats.rejected >= control.max_steps) {
            throw IntegrationError("integration exceeded max_steps at t = " + std::to_string(t));
        }
        if (h < control.min_step * span) {
            throw IntegrationError("step size underflow at t = " + std::to_string(t));
        }
        bool last = false;
        if (t + h >= t1) {
            h = t1 - t;
            last = true;
        }

        ytmp = y + h * (a21 * k1);
        k2 = rhs(t + c2 * h, ytmp);
        ytmp = y + h * (a31 * k1 + a32 * k2);
        k3 = rhs(t + c3 * h, ytmp);
        ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        k4 = rhs(t + c4 * h, ytmp);
        ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        k5 = rhs(t + c5 * h, ytmp);
        ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        k6 = rhs(t + h, ytmp);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        k7 = rhs(t + h, ynew);
        stats.rhs_evals += 6;

        err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double en = detail::scaled_rms(err, y, ynew, control);
        if (!std::isfinite(en)) {
            throw IntegrationError("non-finite error estimate at t = " + std::to_string(t));
        }

        if (en <= 1.0) {
            t = last ? t1 : t + h;
            y = ynew;
            k1 = k7;  // first-same-as-last
            ++stats.accepted;
            observer(t, y);
            const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
            h *= fac;
        } else {
            ++stats.rejected;
            h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
        }
    }
    return stats;
}

template <class Vec, class Rhs>
IntegrationStats integrate_dopri5(Rhs&& rhs, Vec& y, double t0, double t1, const StepControl& control) {
    return integrate_dopri5(std::forward<Rhs>(rhs), y, t0, t1, control, [](double, const Vec&) {});
}

}  // namespace plasmon_sr

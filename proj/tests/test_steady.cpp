#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "plasmon_sr/moments.hpp"
#include "plasmon_sr/steady.hpp"

using namespace plasmon_sr;

TEST_CASE("decoupled limit") {
    const auto p = EmitterParams::normalized(5.0, 0.1, 2.0);
    const double d0 = derive_scalars(p, 0.0).inversion0;
    const auto two = stationary_two_emitters(p, 0.0);
    CHECK(two.superradiance == 0.0);
    CHECK(two.inversion == doctest::Approx(d0).epsilon(1e-15));
    CHECK(stationary_single_emitter(p, 0.0) == doctest::Approx(d0).epsilon(1e-15));

    const auto r = steady_report(p, 0.0, 100.0);
    CHECK_FALSE(r.rqe.has_value());
    CHECK(r.plasmons_norm_two == 0.0);
    CHECK(*r.plasmons_two == 0.0);
    CHECK(r.sigma == 0.0);
    CHECK(r.inversion_corr == doctest::Approx(d0 * d0).epsilon(1e-14));
}

TEST_CASE("half-way coupling kills the pair inversion at any pump") {
    for (double pump : {0.01, 1.0, 100.0, 1e4}) {
        const auto p = EmitterParams::normalized(pump, 0.1);
        CHECK(std::abs(stationary_two_emitters(p, 0.5 / p.tau_b()).inversion) < 1e-15);
    }
}

TEST_CASE("closed form agrees with the 4x4 linear solve") {
    const auto p = EmitterParams::normalized(100.0, 0.1);
    const double gamma = 0.1865 / p.tau_b();
    const auto closed = stationary_two_emitters(p, gamma);
    const auto lin = steady_state_linear(p, gamma, gamma);
    CHECK(closed.inversion == doctest::Approx(lin.inversion1).epsilon(1e-10));
    CHECK(closed.inversion == doctest::Approx(lin.inversion2).epsilon(1e-10));

    const auto r = steady_report(p, gamma);
    CHECK(r.sigma == doctest::Approx(lin.sigma).epsilon(1e-10));
    CHECK(r.inversion_corr == doctest::Approx(lin.inversion_corr).epsilon(1e-10));
}

TEST_CASE("single emitter loses inversion for 1/2 < gamma tau_b < 1") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> pump(-1.0, 4.0), x(0.501, 0.999);
    for (int i = 0; i < 200; ++i) {
        const auto p = EmitterParams::normalized(std::pow(10.0, pump(rng)), 0.1);
        CHECK(stationary_single_emitter(p, x(rng) / p.tau_b()) < 0.0);
    }
}

TEST_CASE("plasmon number: zero pump and the positivity guard") {
    const auto p = EmitterParams::normalized(0.0, 0.1);
    CHECK(plasmon_number(p, 50.0, 0.0) == 0.0);
    const auto q = EmitterParams::normalized(2.0, 0.1);
    const double d0 = derive_scalars(q, 0.0).inversion0;
    CHECK_THROWS_AS(plasmon_number(q, 50.0, d0 + 1e-6), std::domain_error);
    CHECK_THROWS_AS(plasmon_number(q, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("plasmon number is small when kappa tau' is large") {
    const auto p = EmitterParams::normalized(10.0, 0.1);
    const double gamma = 0.18 / p.tau_b();
    const double tp = derive_scalars(p, gamma).tau_prime;
    const double kappa = 1e3 / tp;
    const double n2 = plasmon_number(p, kappa, stationary_two_emitters(p, gamma).inversion);
    CHECK(n2 > 0.0);
    CHECK(n2 < 1e-3);
}

TEST_CASE("normalized and absolute plasmon numbers differ by 4 kappa tau_a") {
    const auto p = EmitterParams::normalized(3.0, 0.2, 1.0);
    const double d = stationary_two_emitters(p, 0.5).inversion;
    CHECK(plasmon_number(p, 40.0, d) * 4.0 * 40.0 == doctest::Approx(plasmon_number_normalized(p, d)));
}

TEST_CASE("rqe domain") {
    const auto p = EmitterParams::normalized(1.0, 0.1);
    CHECK_THROWS_AS(rqe(p, 0.0), std::domain_error);
    CHECK_THROWS_AS(rqe(p, -1.0), std::domain_error);
    CHECK_THROWS_WITH_AS(rqe(EmitterParams::normalized(0.0, 0.1), 1.0), doctest::Contains("no emission"),
                         std::domain_error);
}

TEST_CASE("rqe below one when a single emitter cannot invert") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> pump(-2.0, 4.0), x(0.501, 0.999), ratio(-2.0, 0.0), deph(0.0, 20.0);
    for (int i = 0; i < 300; ++i) {
        const auto p = EmitterParams::normalized(std::pow(10.0, pump(rng)), std::pow(10.0, ratio(rng)), deph(rng));
        CHECK(rqe(p, x(rng) / p.tau_b()) < 1.0);
    }
}

TEST_CASE("rqe at high pump approaches the asymptotic curve") {
    const auto p = EmitterParams::normalized(1e4, 0.1);
    const double x = 0.3733;
    const double r = rqe(p, x / (2.0 * p.tau_b()));
    CHECK(r == doctest::Approx(1.145).epsilon(0.01 / 1.145));
    CHECK(r == doctest::Approx(rqe_high_pump(x, 1.1)).epsilon(1e-3));
}

TEST_CASE("rqe absolute maximum needs tau_b -> 0 and a pump that still saturates the lower level") {
    // tau_b / tau_a = 1e-3 needs Gamma_p tau_b >> 1, hence the very large pump
    const auto p = EmitterParams::normalized(1e8, 1e-3);
    const double b = derive_scalars(p, 0.0).b;
    const double x = optimal_coupling(b);
    CHECK(rqe(p, x / (2.0 * p.tau_b())) == doctest::Approx(1.155).epsilon(0.001 / 1.155));
}

TEST_CASE("high-pump rqe values") {
    CHECK(rqe_high_pump(0.0, 1.0) == 1.0);
    CHECK(rqe_high_pump(0.0, 2.7) == 1.0);
    CHECK(rqe_high_pump(0.36603, 1.0) == doctest::Approx(1.1547).epsilon(1e-4));
    CHECK(rqe_high_pump(0.438, 3.1) == doctest::Approx(1.07).epsilon(0.01));
    CHECK_THROWS_AS(rqe_high_pump(-0.1, 1.0), std::invalid_argument);
}

TEST_CASE("optimal coupling") {
    CHECK(optimal_coupling(1.0) == doctest::Approx((std::sqrt(3.0) - 1.0) / 2.0).epsilon(1e-14));
    CHECK(optimal_coupling(1.1) == doctest::Approx(0.373).epsilon(0.005 / 0.373));
    CHECK(optimal_coupling(3.1) == doctest::Approx(0.438).epsilon(0.005 / 0.438));
    CHECK_THROWS_AS(optimal_coupling(0.5), std::invalid_argument);
}

TEST_CASE("optimal coupling is a maximum") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> bd(1.0, 50.0);
    for (int i = 0; i < 500; ++i) {
        const double b = bd(rng);
        const double x = optimal_coupling(b);
        const double top = rqe_high_pump(x, b);
        CHECK(rqe_high_pump(x + 1e-4, b) <= top);
        CHECK(rqe_high_pump(x - 1e-4, b) <= top);
    }
}

TEST_CASE("superradiance grows with pump") {
    for (double x : {0.05, 0.2, 0.37, 0.8}) {
        for (double deph : {0.0, 10.0}) {
            double prev = -1.0;
            for (int k = 0; k <= 60; ++k) {
                const auto p = EmitterParams::normalized(std::pow(10.0, -2.0 + 0.1 * k), 0.1, deph);
                const double sr = stationary_two_emitters(p, x / (2.0 * p.tau_b())).superradiance;
                CHECK(sr > prev);
                prev = sr;
            }
        }
    }
}

TEST_CASE("detuning is rejected by the closed form") {
    const auto p = EmitterParams::normalized(1.0, 0.1, 0.0, 0.3);
    CHECK_THROWS_AS(stationary_two_emitters(p, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(stationary_single_emitter(p, 0.5), std::invalid_argument);
}

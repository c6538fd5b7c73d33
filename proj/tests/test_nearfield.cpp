#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <random>

#include "plasmon_sr/nearfield.hpp"

using namespace plasmon_sr;

namespace {

// Textbook oscillating point dipole p along z, Gaussian units, in a medium
// of permittivity n^2:
//   E = [k^2 (u x p) x u / r + (3u(u.p) - p)(1/r^3 - ik/r^2)] e^{ikr} / n^2
FieldVector reference_dipole(const NanorodSpec& spec, const EmitterSite& site, double z_dipole) {
    const Eigen::Vector3d r_vec(site.rho, 0.0, site.z - z_dipole);
    const double r = r_vec.norm();
    const Eigen::Vector3d u = r_vec / r;
    const double k = spec.index * (spec.omega + spec.split);
    const Eigen::Vector3d p(0.0, 0.0, spec.dipole);
    const cplx ik(0.0, k);
    const Eigen::Vector3d far = u.cross(p).cross(u);
    const Eigen::Vector3d near = 3.0 * u * u.dot(p) - p;
    const cplx phase = std::exp(ik * r);
    Eigen::Vector3cd e = (k * k / r) * far.cast<cplx>() + (1.0 / (r * r * r) - ik / (r * r)) * near.cast<cplx>();
    e *= phase / (spec.index * spec.index);
    return {e.z(), e.x()};
}

double rel(const FieldVector& a, const FieldVector& b) { return (a - b).norm() / b.norm(); }

}  // namespace

TEST_CASE("mode frequencies") {
    NanorodSpec s;
    s.omega = 2.0;
    s.split = 0.5;
    const auto f = mode_frequencies(s);
    CHECK(f.bright == 1.5);
    CHECK(f.dark == 2.5);
    s.split = 0.0;
    CHECK(mode_frequencies(s).bright == mode_frequencies(s).dark);
    s.split = 0.37;
    CHECK(mode_frequencies(s).dark - mode_frequencies(s).bright == doctest::Approx(0.74));
}

TEST_CASE("radial profiles at x = 1") {
    const auto f = radial_profiles(1.0);
    CHECK(f.fz == cplx(0.0, 1.0));
    CHECK(f.fr == cplx(2.0, -3.0));
    CHECK_THROWS_AS(radial_profiles(0.0), std::domain_error);
    CHECK_THROWS_AS(radial_profiles(-1.0), std::domain_error);
}

TEST_CASE("radial profile limits") {
    const auto far = radial_profiles(1e4);
    CHECK(std::abs(far.fz * 1e4 - 1.0) < 2e-4);
    CHECK(std::abs(far.fr * 1e4 + 1.0) < 4e-4);
    const auto near = radial_profiles(1e-4);
    CHECK(std::abs(near.fz * -1e-12 - 1.0) < 2e-4);
    CHECK(std::abs(near.fr * 1e-12 / 3.0 - 1.0) < 2e-4);
}

TEST_CASE("single part matches the textbook dipole field") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> z(-3.0, 3.0), rho(0.05, 3.0), n(1.0, 2.5), w(0.3, 4.0);
    for (int i = 0; i < 200; ++i) {
        NanorodSpec s;
        s.index = n(rng);
        s.omega = w(rng);
        s.split = 0.1 * s.omega;
        s.dipole = 1.7;
        const EmitterSite site{z(rng), rho(rng)};
        CHECK(rel(dipole_field(s, site, 1), reference_dipole(s, site, s.z1)) < 1e-12);
        CHECK(rel(dipole_field(s, site, 2), reference_dipole(s, site, s.z2)) < 1e-12);
    }
}

TEST_CASE("on the rod axis the field is longitudinal") {
    const NanorodSpec s;
    const EmitterSite site{2.0, 0.0};
    const auto e = dipole_field(s, site, 2);
    CHECK(std::abs(e.rho) == 0.0);
    const double x = s.wavenumber() * (2.0 - s.z2);
    const auto f = radial_profiles(x);
    const double wd = mode_frequencies(s).dark;
    const cplx expected = s.index * s.dipole * wd * wd * wd * (f.fz + f.fr) * std::polar(1.0, x);
    CHECK(std::abs(e.z - expected) < 1e-12 * std::abs(expected));
}

TEST_CASE("beside a part only the f_z term survives") {
    const NanorodSpec s;
    const EmitterSite site{s.z1, 0.8};
    const auto e = dipole_field(s, site, 1);
    CHECK(std::abs(e.rho) == 0.0);
    const double x = s.wavenumber() * 0.8;
    const double wd = mode_frequencies(s).dark;
    const cplx expected = s.index * s.dipole * wd * wd * wd * radial_profiles(x).fz * std::polar(1.0, x);
    CHECK(std::abs(e.z - expected) < 1e-12 * std::abs(expected));
}

TEST_CASE("bisector plane cancels the longitudinal field") {
    const NanorodSpec s;
    const double mid = 0.5 * (s.z1 + s.z2);
    for (double rho : {0.01, 0.3, 1.0, 5.0, 40.0}) {
        const EmitterSite site{mid, rho};
        const auto e1 = dipole_field(s, site, 1);
        const auto dark = dark_mode_field(s, site);
        CHECK(std::abs(dark.field.z) <= 1e-12 * std::abs(e1.z));
        CHECK(dark.magnitude > 0.0);
    }
    // between the parts on the axis the two contributions are identical
    const auto centre = dark_mode_field(s, {mid, 0.0});
    CHECK(centre.magnitude == 0.0);
    const auto c = coupling_from_position(s, {mid, 0.0}, 2.0);
    CHECK(c.rabi == 0.0);
    CHECK(c.gamma == 0.0);
}

TEST_CASE("far along the bisector the dark mode decays faster than a dipole") {
    const NanorodSpec s;
    const double mid = 0.5 * (s.z1 + s.z2);
    const double r1 = 1e3, r2 = 1e4;
    const double dark_slope = std::log(dark_mode_field(s, {mid, r2}).magnitude / dark_mode_field(s, {mid, r1}).magnitude) /
                              std::log(r2 / r1);
    const double single_slope =
        std::log(dipole_field(s, {mid, r2}, 1).norm() / dipole_field(s, {mid, r1}, 1).norm()) / std::log(r2 / r1);
    CHECK(single_slope == doctest::Approx(-1.0).epsilon(0.01));
    CHECK(dark_slope == doctest::Approx(-2.0).epsilon(0.01));
}

TEST_CASE("mirror sites see the same field strength") {
    const NanorodSpec s;
    const double mid = 0.5 * (s.z1 + s.z2);
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> dz(0.05, 2.0), rho(0.05, 2.0);
    for (int i = 0; i < 100; ++i) {
        const double h = dz(rng), r = rho(rng);
        const auto a = coupling_from_position(s, {mid + h, r}, 1.0);
        const auto b = coupling_from_position(s, {mid - h, r}, 1.0);
        CHECK(a.gamma == doctest::Approx(b.gamma).epsilon(1e-12));
    }
}

TEST_CASE("coupling scales with the emitter dipole") {
    const NanorodSpec s;
    const EmitterSite site{0.9, 0.4};
    const auto one = coupling_from_position(s, site, 1.0);
    const auto two = coupling_from_position(s, site, 2.0);
    CHECK(two.rabi == doctest::Approx(2.0 * one.rabi));
    CHECK(two.gamma == doctest::Approx(4.0 * one.gamma));
    const double mag = dark_mode_field(s, site).magnitude;
    CHECK(one.rabi == doctest::Approx(mag / (2.0 * std::sqrt(2.0))));
    CHECK(one.gamma == doctest::Approx(one.rabi * one.rabi / s.kappa));
}

TEST_CASE("polarization angle") {
    const NanorodSpec s;
    const auto d = dark_mode_field(s, {0.0, 0.7});
    CHECK(d.cos_theta == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(d.theta == doctest::Approx(M_PI / 2));
    const auto g = dark_mode_field(s, {0.8, 0.3});
    CHECK(g.cos_theta * g.cos_theta + g.sin_theta * g.sin_theta == doctest::Approx(1.0));
}

TEST_CASE("singular and invalid geometry") {
    NanorodSpec s;
    CHECK_THROWS_AS(dipole_field(s, {s.z1, 0.0}, 1), std::domain_error);
    CHECK_THROWS_AS(dark_mode_field(s, {s.z2, 0.0}), std::domain_error);
    CHECK_THROWS_AS(dipole_field(s, {0.0, 1.0}, 3), std::invalid_argument);
    CHECK_THROWS_AS(dipole_field(s, {0.0, -1.0}, 1), std::invalid_argument);
    s.z2 = s.z1;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("mode overlap warning") {
    NanorodSpec s;
    s.split = 0.05;
    s.kappa = 0.01;
    CHECK(s.modes_overlap());
    s.split = 0.5;
    CHECK_FALSE(s.modes_overlap());
}

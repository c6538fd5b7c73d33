#include "plasmon_sr/nearfield.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace plasmon_sr {

void NanorodSpec::validate() const {
    if (!std::isfinite(z1) || !std::isfinite(z2)) throw std::invalid_argument("dipole positions must be finite");
    if (z1 == z2) throw std::invalid_argument("z1 and z2 must differ");
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
    if (!(split >= 0.0)) throw std::invalid_argument("split must be non-negative");
    if (!(index > 0.0)) throw std::invalid_argument("refractive index must be positive");
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    if (!(exclusion_kr > 0.0)) throw std::invalid_argument("exclusion_kr must be positive");
    if (!std::isfinite(dipole)) throw std::invalid_argument("dipole must be finite");
}

bool NanorodSpec::modes_overlap(double threshold) const { return split < threshold * kappa; }

double NanorodSpec::wavenumber() const { return index * (omega + split); }

ModeFrequencies mode_frequencies(const NanorodSpec& spec) {
    return {spec.omega - spec.split, spec.omega + spec.split};
}

RadialProfiles radial_profiles(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::domain_error("radial profiles are singular at x <= 0");
    }
    const double x1 = 1.0 / x;
    const double x2 = x1 * x1;
    const double x3 = x2 * x1;
    return {cplx(x1 - x3, x2), cplx(-x1 + 3.0 * x3, -3.0 * x2)};
}

FieldVector dipole_field(const NanorodSpec& spec, const EmitterSite& site, int part) {
    spec.validate();
    if (part != 1 && part != 2) throw std::invalid_argument("part must be 1 or 2");
    if (site.rho < 0.0) throw std::invalid_argument("rho must be non-negative");

    const double dz = site.z - (part == 1 ? spec.z1 : spec.z2);
    const double dr = site.rho;
    const double r = std::hypot(dz, dr);
    const double k = spec.wavenumber();
    const double x = k * r;
    if (!(x >= spec.exclusion_kr)) {
        throw std::domain_error("site lies within the exclusion radius of dipole " + std::to_string(part));
    }
    const double ez = dz / r;  // e_ji . e_z
    const double erho = dr / r;

    const double wd = mode_frequencies(spec).dark;
    const double prefactor = spec.index * spec.dipole * wd * wd * wd;
    const auto f = radial_profiles(x);
    const cplx phase = std::polar(1.0, x);
    return {prefactor * (f.fz + ez * ez * f.fr) * phase, prefactor * (erho * ez * f.fr) * phase};
}

DarkModeField dark_mode_field(const NanorodSpec& spec, const EmitterSite& site) {
    DarkModeField out;
    out.field = dipole_field(spec, site, 1) - dipole_field(spec, site, 2);
    out.magnitude = out.field.norm();
    if (out.magnitude > 0.0) {
        out.cos_theta = std::abs(out.field.z) / out.magnitude;
        out.sin_theta = std::abs(out.field.rho) / out.magnitude;
    } else {
        out.cos_theta = 1.0;
    }
    out.theta = std::atan2(out.sin_theta, out.cos_theta);
    out.phase_z = std::arg(out.field.z);
    out.phase_rho = std::arg(out.field.rho);
    return out;
}

SiteCoupling coupling_from_position(const NanorodSpec& spec, const EmitterSite& site, double emitter_dipole) {
    const double magnitude = dark_mode_field(spec, site).magnitude;
    SiteCoupling c;
    c.rabi = std::abs(emitter_dipole) * magnitude / (2.0 * std::sqrt(2.0));
    c.gamma = c.rabi * c.rabi / spec.kappa;
    return c;
}

}  // namespace plasmon_sr

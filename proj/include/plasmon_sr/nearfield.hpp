// Near field of the dark (quadrupole) nanorod mode and the emitter coupling
// it produces.
//
// The rod is modelled as two point dipoles on the z axis at z1 and z2,
// oscillating out of phase. Fields are evaluated in the (z, rho) half-plane
// containing the emitter. Units: hbar = c = 1.

#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

namespace plasmon_sr {

using cplx = std::complex<double>;

struct NanorodSpec {
    double z1 = -0.5;
    double z2 = 0.5;
    double omega = 1.0;        // frequency of one half-rod alone
    double split = 0.1;        // inter-part coupling Omega
    double dipole = 1.0;       // half-rod dipole matrix element d
    double index = 1.0;        // refractive index of the environment
    double kappa = 0.01;       // SPP amplitude decay rate
    double exclusion_kr = 1e-3;

    /// Throws std::invalid_argument on inconsistent geometry or rates.
    void validate() const;
    /// True when the split is not well above the linewidth (split < threshold * kappa).
    bool modes_overlap(double threshold = 10.0) const;
    double wavenumber() const;  // k = n omega_d
};

struct ModeFrequencies {
    double bright = 0.0;  // omega - split
    double dark = 0.0;    // omega + split
};

ModeFrequencies mode_frequencies(const NanorodSpec& spec);

struct RadialProfiles {
    cplx fz;
    cplx fr;
};

/// f_z = 1/x + i/x^2 - 1/x^3,  f_r = -1/x - 3i/x^2 + 3/x^3.
RadialProfiles radial_profiles(double x);

struct EmitterSite {
    double z = 0.0;
    double rho = 0.0;  // distance from the rod axis, >= 0
};

/// Complex field vector in the (e_z, e_rho) basis.
struct FieldVector {
    cplx z;
    cplx rho;

    FieldVector operator-(const FieldVector& o) const { return {z - o.z, rho - o.rho}; }
    double norm() const { return std::sqrt(std::norm(z) + std::norm(rho)); }
};

/// Field at the site radiated by half-rod part (1 or 2) at the dark-mode frequency.
FieldVector dipole_field(const NanorodSpec& spec, const EmitterSite& site, int part);

struct DarkModeField {
    FieldVector field;   // E_1 - E_2
    double magnitude = 0.0;
    double cos_theta = 0.0;  // |E_z| / |E|
    double sin_theta = 0.0;  // |E_rho| / |E|
    double theta = 0.0;
    double phase_z = 0.0;
    double phase_rho = 0.0;
};

DarkModeField dark_mode_field(const NanorodSpec& spec, const EmitterSite& site);

struct SiteCoupling {
    double rabi = 0.0;   // d_e |E| / (2 sqrt 2)
    double gamma = 0.0;  // rabi^2 / kappa
};

SiteCoupling coupling_from_position(const NanorodSpec& spec, const EmitterSite& site, double emitter_dipole);

}  // namespace plasmon_sr

#pragma once

#include <cmath>
#include <stdexcept>

// SI bookkeeping.  The physics code works in the scaled quantities
// E d^2/(hbar c L_z) (wedge), E d/(hbar c) (cone) and F d^2/(hbar c)
// (needle force); these helpers restore SI units and convert temperatures
// to the single dimensionless knob t = d/lambda_T.

namespace casimir::units {

inline constexpr double hbar_c_eV_nm = 197.3269804;   // eV nm
inline constexpr double hbar_c_J_m = 3.16152677e-26;  // J m
inline constexpr double k_B_eV_per_K = 8.617333262e-5;
inline constexpr double euler_gamma = 0.577215664901532861;
inline constexpr double glaisher_A = 1.282427129100622637;

// parallel-plate perfect-conductor energy density prefactor: E/A = -pi^2 hbar c/(720 d^3)
inline constexpr double plate_energy_coeff = M_PI * M_PI / 720.0;

inline double thermal_wavelength_m(double T_kelvin) {
    if (!(T_kelvin > 0.0)) throw std::domain_error("thermal_wavelength: T must be positive");
    const double hbar_c_eV_m = hbar_c_eV_nm * 1e-9;
    return hbar_c_eV_m / (2.0 * M_PI * k_B_eV_per_K * T_kelvin);
}

// t = d / lambda_T; zero temperature maps to t = 0
inline double temperature_ratio(double d_meters, double T_kelvin) {
    if (!(d_meters > 0.0)) throw std::domain_error("temperature_ratio: d must be positive");
    if (T_kelvin == 0.0) return 0.0;
    return d_meters / thermal_wavelength_m(T_kelvin);
}

struct SIContext {
    double d_meters = 0.0;
    double T_kelvin = 0.0;
    double L_meters = 0.0; // optional; required for per-length quantities
};

enum class QuantityKind { WedgeEnergy, ConeEnergy, Force, Torque };

// Restore SI units for a scaled output:
//   WedgeEnergy: E = scaled * hbar c L / d^2      [J]
//   ConeEnergy:  E = scaled * hbar c / d          [J]
//   Force:       F = scaled * hbar c / d^2        [N]
//   Torque:      tau = scaled * hbar c L / d^2    [J/rad]
inline double convert_units(const SIContext& ctx, double scaled_value, QuantityKind kind) {
    if (!(ctx.d_meters > 0.0)) throw std::invalid_argument("convert_units: d_meters missing");
    const double d = ctx.d_meters;
    switch (kind) {
    case QuantityKind::WedgeEnergy:
        if (!(ctx.L_meters > 0.0)) throw std::invalid_argument("convert_units: L_meters missing");
        return scaled_value * hbar_c_J_m * ctx.L_meters / (d * d);
    case QuantityKind::ConeEnergy:
        return scaled_value * hbar_c_J_m / d;
    case QuantityKind::Force:
        return scaled_value * hbar_c_J_m / (d * d);
    case QuantityKind::Torque:
        if (!(ctx.L_meters > 0.0)) throw std::invalid_argument("convert_units: L_meters missing");
        return scaled_value * hbar_c_J_m * ctx.L_meters / (d * d);
    }
    throw std::invalid_argument("convert_units: bad kind");
}

} // namespace casimir::units

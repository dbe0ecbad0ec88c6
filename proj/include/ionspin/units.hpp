#pragma once

#include <numbers>

// Internal units: time in ms, angular frequency in rad/ms, lengths of the
// crystal in the scale l = (e^2 / 4 pi eps0 M wz^2)^(1/3).
namespace ionspin::units {

inline constexpr double pi = std::numbers::pi;
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double amu = 1.66053906660e-27;      // kg
inline constexpr double e_charge = 1.602176634e-19;   // C
inline constexpr double eps0 = 8.8541878128e-12;      // F/m
inline constexpr double yb171_mass = 170.936323 * amu;

// kHz -> rad/ms
constexpr double khz(double f) { return 2.0 * pi * f; }
constexpr double to_khz(double w) { return w / (2.0 * pi); }
// MHz -> rad/ms
constexpr double mhz(double f) { return 2.0 * pi * 1e3 * f; }
// rad/ms <-> rad/s
constexpr double per_second(double w) { return w * 1e3; }
constexpr double per_ms(double w_si) { return w_si * 1e-3; }

}  // namespace ionspin::units

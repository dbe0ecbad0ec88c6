#pragma once

#include <string>
#include <vector>

#include "ionspin/evolution.hpp"
#include "ionspin/interp.hpp"
#include "ionspin/measurement.hpp"
#include "ionspin/spectrum.hpp"

namespace ionspin {

// sum_{i<j} J_ij s^c_i s^c_j + b sum_i s^f_i
HamiltonianSpec transverse_ising(const CouplingMatrix& j, double b, Axis coupling_axis = Axis::x,
                                 Axis field_axis = Axis::y, Schedule field_schedule = Schedule::constant());

enum class RampKind { linear, exponential, local_adiabatic };
RampKind parse_ramp_kind(const std::string& s);
const char* ramp_kind_name(RampKind k);

// First coupled gap Delta(B) sampled on a uniform grid over [0, B0].
struct GapTable {
  std::vector<double> b, gap;
  MonotoneCubic interp;

  double operator()(double field) const { return interp(field); }
  double b0() const { return b.back(); }
};

GapTable gap_table(const CouplingMatrix& j, double b0, int points = 400, Axis coupling_axis = Axis::x,
                   Axis field_axis = Axis::y);
GapTable gap_table(std::vector<double> b, std::vector<double> gap);

struct RampProfile {
  RampKind kind = RampKind::linear;
  double b0 = 0.0;
  double t_f = 0.0;
  double tau = 0.0;    // exponential only
  double gamma = 0.0;  // local adiabatic only
  std::vector<double> t, b;  // tabulated samples, t ascending
  MonotoneCubic curve;       // local adiabatic only

  double operator()(double time) const;
  // Field schedule in units of b0 (multiply a unit field by b0).
  Schedule unit_schedule() const;
};

RampProfile linear_ramp(double b0, double t_f);
// B0 exp(-t/tau) with t_f = 6 tau.
RampProfile exponential_ramp(double b0, double t_f);
// dB/dt = -Delta^2/gamma, gamma chosen so the ramp lasts t_f.
RampProfile local_adiabatic_ramp(const GapTable& gaps, double t_f);
RampProfile local_adiabatic_ramp_gamma(const GapTable& gaps, double gamma);
RampProfile build_ramp(RampKind kind, double b0, double t_f, const GapTable* gaps = nullptr);

// gamma * int_0^B0 dB / Delta^2
double local_adiabatic_time(const GapTable& gaps, double gamma);
// Total time of each ramp family when its minimum adiabaticity Delta^2/|dB/dt| equals gamma.
double ramp_time_at_adiabaticity(RampKind kind, const GapTable& gaps, double gamma);

// Basis states (along the coupling axis) minimizing the classical Ising energy.
std::vector<std::uint64_t> ising_ground_manifold(const CouplingMatrix& j, double rel_tol = 1e-9);

struct AdiabaticOptions {
  Axis coupling_axis = Axis::x;
  Axis field_axis = Axis::y;
  double decoherence_time = 0.0;  // ms; > 0 multiplies probabilities by exp(-t/t_d)
  EvolveOptions evolve{1e-9, 40, 1e-13};
};

struct AdiabaticSample {
  double t = 0.0;
  double field = 0.0;
  double p_ground = 0.0;
  double mx_scaled = 0.0;
  double binder_scaled = 0.0;
};

struct AdiabaticResult {
  std::vector<AdiabaticSample> samples;
  SpinState final_state;
  std::vector<std::uint64_t> target;
};

// Starts in the ground state of the field term at B0 and records the
// probability of the classical Ising ground manifold.
AdiabaticResult run_adiabatic(const CouplingMatrix& j, const RampProfile& ramp, const std::vector<double>& record,
                              const AdiabaticOptions& opt = {});

struct Prevalence {
  std::uint64_t state = 0;
  double p_top = 0.0;
  double margin = 0.0;          // P_g - P_e
  double required_shots = 0.0;  // (P_g^2 + P_e^2) / (P_g - P_e)^2
  bool tie = false;
};
Prevalence most_prevalent(const Distribution& d);
Prevalence most_prevalent(const ShotTable& t);

struct SpectroscopyOptions {
  double probe_time = 0.0;  // 0 selects 3 / Bp
  Axis coupling_axis = Axis::x;
  Axis field_axis = Axis::y;
  EvolveOptions evolve{1e-9, 40, 1e-13};
};

// 1 - P(ground of H(B0)) after modulating B(t) = B0 + Bp sin(w t).
std::vector<double> spectroscopy_scan(const CouplingMatrix& j, double b0, double bp, const std::vector<double>& omegas,
                                      const SpectroscopyOptions& opt = {});

}  // namespace ionspin

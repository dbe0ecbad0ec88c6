#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ionspin/crystal.hpp"

namespace ionspin {

struct BeamSpec {
  Eigen::VectorXd rabi;  // rad/ms per ion
  double mu = 0.0;       // rad/ms
  double delta_k = 0.0;  // rad/m
};

// Symmetric, zero diagonal, rad/ms.
using CouplingMatrix = Eigen::MatrixXd;

struct Tone {
  double mu = 0.0;
  Eigen::VectorXd rabi;
};

struct MultiToneSpec {
  std::vector<Tone> tones;
  double delta_k = 0.0;
};

// omega_rec = hbar dk^2 / 2M, returned in rad/ms.
double recoil_frequency(double delta_k, double mass);

CouplingMatrix ising_couplings(const IonCrystal& crystal, const BeamSpec& beam, double mass);
CouplingMatrix multi_tone_couplings(const IonCrystal& crystal, const MultiToneSpec& spec, double mass);

// J_ij = j0 / |i-j|^alpha.
CouplingMatrix power_law_couplings(int n, double j0, double alpha);

struct PowerLawFit {
  double j0 = 0.0;
  double alpha = 0.0;
  double rms_residual = 0.0;  // in natural-log space
  int excluded = 0;           // zero pairs left out of the fit
};

// Regression of log mean|J| over equal distances against log distance.
PowerLawFit fit_power_law(const CouplingMatrix& j);

struct DesignBounds {
  double rabi_max = 0.0;
  // One open interval per tone; empty selects the default windows
  // (above the COM mode, then the gaps between adjacent modes).
  std::vector<std::pair<double, double>> mu_windows;
  int restarts = 8;
  int max_evals = 20000;
  std::uint64_t seed = 1;
};

struct DesignResult {
  MultiToneSpec spec;
  double residual = 0.0;  // Frobenius norm, rad/ms
  bool converged = false;
  int evaluations = 0;
};

// Windows actually used for n_tones, after the guard band is applied.
std::vector<std::pair<double, double>> design_windows(const IonCrystal& crystal, int n_tones,
                                                      const DesignBounds& bounds);

DesignResult design_couplings(const CouplingMatrix& target, const IonCrystal& crystal, int n_tones,
                              const DesignBounds& bounds, double delta_k, double mass);

// Sum over ions and modes of the residual spin-motion displacement |alpha_im(tau)|^2.
double spin_motion_error(const IonCrystal& crystal, const BeamSpec& beam, double tau, double mass);

// Gamma = gamma * Omega / (4 Delta).
double spontaneous_emission_rate(double gamma, double omega_rabi, double delta);

}  // namespace ionspin

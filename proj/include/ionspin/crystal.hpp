#pragma once

#include <Eigen/Dense>

#include "ionspin/units.hpp"

namespace ionspin {

struct TrapSpec {
  int n_ions = 1;
  double omega_z = 0.0;        // axial COM, rad/ms
  double omega_x = 0.0;        // transverse COM, rad/ms
  double quartic_coeff = 0.0;  // V = 1/2 M wz^2 (X^2 + q X^4 / l^2)
  double ion_mass = units::yb171_mass;
  double charge = units::e_charge;

  void validate() const;
};

struct IonCrystal {
  Eigen::VectorXd positions;   // units of length_scale()
  Eigen::VectorXd mode_freqs;  // rad/ms, descending
  Eigen::MatrixXd mode_matrix; // b(i, m): ion i, mode m

  int size() const { return static_cast<int>(positions.size()); }
  double bandwidth() const { return mode_freqs.maxCoeff() - mode_freqs.minCoeff(); }
};

// Length scale in meters.
double length_scale(const TrapSpec& trap);

// Gradient of the scaled axial potential, exposed for checks.
Eigen::VectorXd potential_gradient(const TrapSpec& trap, const Eigen::VectorXd& x);

struct SolverOptions {
  int max_iter = 200;
  double tol = 1e-12;
};

Eigen::VectorXd equilibrium_positions(const TrapSpec& trap, const SolverOptions& opt = {});

struct Modes {
  Eigen::VectorXd freqs;
  Eigen::MatrixXd vectors;
};

Modes transverse_modes(const TrapSpec& trap, const Eigen::VectorXd& positions);

IonCrystal build_crystal(const TrapSpec& trap);

// eta(i, m) = b_im dk sqrt(hbar / 2 M w_m); delta_k in rad/m.
Eigen::MatrixXd lamb_dicke_matrix(const IonCrystal& crystal, double delta_k, double mass);

}  // namespace ionspin

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ionspin/hamiltonian.hpp"

namespace ionspin {

struct QaoaParams {
  int p = 1;
  std::vector<double> gammas, betas;  // radians

  void validate() const;
};

enum class QaoaOptimizer { grid, gradient_descent };
QaoaOptimizer parse_qaoa_optimizer(const std::string& s);
const char* qaoa_optimizer_name(QaoaOptimizer o);

struct QaoaOptions {
  int p = 1;
  QaoaOptimizer optimizer = QaoaOptimizer::gradient_descent;
  double field = 1.0;        // H = H_A + field * H_B
  double gamma_max = 0.7853981633974483;  // grid and start: gamma in [0, gamma_max]
  double beta_max = 1.5707963267948966;   // beta in [0, beta_max]
  int grid_points = 41;      // per angle
  double fd_delta = 0.05;    // finite-difference offset, radians
  double step = 0.2;         // initial normalized step, radians
  double min_step = 1e-4;    // stop once the step has been halved below this
  int max_iterations = 50;
  std::uint64_t shots = 0;   // 0: exact expectation values
  std::uint64_t seed = 1;
};

struct QaoaIterate {
  int iteration = 0;
  QaoaParams params;
  double eta = 0.0;
};

struct QaoaResult {
  QaoaParams params;
  double eta = 0.0;
  double energy = 0.0;
  double e_ground = 0.0;
  double e_max = 0.0;
  std::vector<QaoaIterate> trajectory;
  int iterations = 0;
  std::uint64_t evaluations = 0;
  bool converged = false;
  bool diverged = false;  // iteration budget exhausted; best iterate returned
};

// H_A = sum_{i<j} J_ij s^x_i s^x_j / J0 with J0 = max |J_ij|, H_B = sum_i s^y_i.
// The state prod_k exp(-i beta_k H_B) exp(-i gamma_k H_A) |psi_0>, |psi_0> the ground state of H_B,
// is scored by eta = (E - E_max) / (E_gs - E_max) on H = H_A + field H_B.
class QaoaProblem {
 public:
  QaoaProblem(const CouplingMatrix& j, double field = 1.0);

  int n_sites() const { return n_; }
  double e_ground() const { return e_gs_; }
  double e_max() const { return e_max_; }
  SpinState state(const QaoaParams& p) const;  // in the lab frame
  double energy(const QaoaParams& p) const;
  // Energy estimated from `shots` x-basis and `shots` y-basis measurements.
  double sampled_energy(const QaoaParams& p, std::uint64_t shots, std::uint64_t seed) const;
  double eta(double e) const { return (e - e_max_) / (e_gs_ - e_max_); }
  HamiltonianSpec hamiltonian() const;

 private:
  // Works in the Hadamard frame where H_A is diagonal and H_B -> -sum s^y.
  Eigen::VectorXcd frame_state(const QaoaParams& p) const;

  int n_;
  double field_;
  CouplingMatrix j_;
  Eigen::VectorXd diag_;  // H_A in the Hadamard frame
  double e_gs_ = 0.0, e_max_ = 0.0;
};

QaoaResult qaoa_run(const CouplingMatrix& j, const QaoaOptions& opt);

}  // namespace ionspin

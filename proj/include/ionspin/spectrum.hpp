#pragma once

#include "ionspin/hamiltonian.hpp"

namespace ionspin {

struct EigenOptions {
  // Dense diagonalization up to this dimension, Lanczos with locking above.
  std::uint64_t dense_limit = 256;
  double residual_tol = 1e-9;
  int max_restarts = 200;
  int lanczos_dim = 80;
};

struct Eigenpairs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors; // columns
};

Eigenpairs eigenpairs(const HamiltonianOperator& op, double t, int k, const EigenOptions& opt = {});
Eigenpairs eigenpairs(const HamiltonianSpec& spec, double t, int k, const EigenOptions& opt = {});

struct CoupledGap {
  double gap = 0.0;
  int index = 0;                   // position of the coupled state in the ascending spectrum
  bool degenerate_ground = false;  // ground manifold was degenerate; symmetric sector used
  double ground_energy = 0.0;
};

// Lowest state e with |<e| sum_i s^axis_i |g>| > 1e-8. k = 0 picks N+2.
CoupledGap first_coupled_gap(const HamiltonianSpec& spec, double t, Axis axis, int k = 0,
                             const EigenOptions& opt = {});

}  // namespace ionspin

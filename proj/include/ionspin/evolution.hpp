#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "ionspin/hamiltonian.hpp"

namespace ionspin {

struct EvolveOptions {
  double tol = 1e-10;      // local error per substep
  int krylov_dim = 40;     // maximum Lanczos vectors per substep
  double min_step = 1e-13; // ms; below this the integrator gives up
};

// exp(-i H(t_frozen) dt) psi with adaptive Krylov substeps.
void expm_apply(const HamiltonianOperator& op, double t_frozen, Eigen::VectorXcd& psi, double dt,
                const EvolveOptions& opt = {});

SpinState evolve(const SpinState& state, const HamiltonianSpec& spec, double t0, double t1,
                 const EvolveOptions& opt = {});
SpinState evolve(const SpinState& state, const HamiltonianOperator& op, double t0, double t1,
                 const EvolveOptions& opt = {});

// Calls observer(t, state) at t0 and at every entry of times (ascending, >= t0).
void evolve_observed(const SpinState& state, const HamiltonianOperator& op, double t0,
                     const std::vector<double>& times, const std::function<void(double, const SpinState&)>& observer,
                     const EvolveOptions& opt = {});

// (prod_k exp(-i H_k t/n))^n, H_1 applied first within each step.
SpinState trotter_evolve(const SpinState& state, const std::vector<HamiltonianSpec>& specs, double t, int n_steps,
                         const EvolveOptions& opt = {});

struct FloquetSequence {
  std::vector<std::pair<HamiltonianSpec, double>> steps;  // applied in order
  int n_periods = 1;

  double period() const;
};

// States after each full period (n_periods entries).
std::vector<SpinState> floquet_run(const SpinState& state, const FloquetSequence& seq,
                                   const EvolveOptions& opt = {});
// Same, handing each period's state to a callback instead of storing it.
void floquet_run(const SpinState& state, const FloquetSequence& seq,
                 const std::function<void(int, const SpinState&)>& observer, const EvolveOptions& opt = {});

}  // namespace ionspin

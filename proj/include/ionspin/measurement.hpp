#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "ionspin/hamiltonian.hpp"

namespace ionspin {

struct ShotTable {
  Axis basis = Axis::z;
  int n_sites = 0;
  std::uint64_t shots = 0;
  std::map<std::uint64_t, std::uint64_t> counts;  // basis index -> count
};

// Probability of each outcome when every spin is measured along axis.
// Outcome bit 1 means the +1 eigenvalue of sigma_axis.
Eigen::VectorXd basis_probabilities(const SpinState& s, Axis basis);

ShotTable measure(const SpinState& s, Axis basis, std::uint64_t shots, std::uint64_t seed);

// Outcome distribution over 2^N states, from exact amplitudes or from shots.
struct Distribution {
  Axis basis = Axis::z;
  int n_sites = 0;
  Eigen::VectorXd prob;
  std::uint64_t shots = 0;  // 0 for exact distributions

  static Distribution exact(const SpinState& s, Axis basis);
  static Distribution from_shots(const ShotTable& t);
};

// Site 1 first; '1' is the +1 eigenvalue.
std::string bitstring(std::uint64_t index, int n_sites);

}  // namespace ionspin

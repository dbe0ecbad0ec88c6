#include "ionspin/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "ionspin/errors.hpp"

namespace ionspin {

using cd = std::complex<double>;

Eigen::VectorXd basis_probabilities(const SpinState& s, Axis basis) {
  Eigen::VectorXcd a = s.amp;
  if (basis != Axis::z) {
    // Replace each site's (down, up) components by overlaps with the
    // (-, +) eigenvectors of sigma_basis.
    const double r = 1.0 / std::sqrt(2.0);
    const auto dim = a.size();
    for (int i = 0; i < s.n_sites; ++i) {
      const Eigen::Index m = Eigen::Index{1} << i;
      for (Eigen::Index b = 0; b < dim; ++b) {
        if (b & m) continue;
        const cd d = a[b], u = a[b | m];
        if (basis == Axis::x) {
          a[b] = r * (-d + u);
          a[b | m] = r * (d + u);
        } else {
          const cd I{0.0, 1.0};
          // <-_y| = (<up| + i <down|)/sqrt2, <+_y| = (<up| - i <down|)/sqrt2
          a[b] = r * (u + I * d);
          a[b | m] = r * (u - I * d);
        }
      }
    }
  }
  return a.cwiseAbs2();
}

ShotTable measure(const SpinState& s, Axis basis, std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw validation_error("shots must be >= 1");
  const Eigen::VectorXd p = basis_probabilities(s, basis);
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (Eigen::Index k = 0; k < p.size(); ++k) cdf[k] = (acc += p[k]);
  ShotTable t{basis, s.n_sites, shots, {}};
  std::mt19937_64 rng(seed);
  for (std::uint64_t n = 0; n < shots; ++n) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    ++t.counts[static_cast<std::uint64_t>(it - cdf.begin())];
  }
  return t;
}

Distribution Distribution::exact(const SpinState& s, Axis basis) {
  return {basis, s.n_sites, basis_probabilities(s, basis), 0};
}

Distribution Distribution::from_shots(const ShotTable& t) {
  Distribution d{t.basis, t.n_sites, Eigen::VectorXd::Zero(Eigen::Index{1} << t.n_sites), t.shots};
  std::uint64_t total = 0;
  for (const auto& [k, c] : t.counts) total += c;
  if (total != t.shots) throw validation_error("shot table counts do not sum to shots");
  for (const auto& [k, c] : t.counts) d.prob[static_cast<Eigen::Index>(k)] = static_cast<double>(c) / total;
  return d;
}

std::string bitstring(std::uint64_t index, int n_sites) {
  std::string s(n_sites, '0');
  for (int i = 0; i < n_sites; ++i)
    if ((index >> i) & 1U) s[i] = '1';
  return s;
}

}  // namespace ionspin

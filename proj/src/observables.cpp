#include "ionspin/observables.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>

#include "ionspin/errors.hpp"
#include "ionspin/evolution.hpp"

namespace ionspin {

using cd = std::complex<double>;

namespace {

inline double spin(std::uint64_t b, int i) { return ((b >> i) & 1U) ? 1.0 : -1.0; }

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

Eigen::VectorXd spin_count_distribution(const Distribution& d) {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(d.n_sites + 1);
  for (Eigen::Index b = 0; b < d.prob.size(); ++b)
    p[d.n_sites - std::popcount(static_cast<std::uint64_t>(b))] += d.prob[b];
  return p;
}

double paramagnet_magnetization(int n) {
  double m = 0.0;
  for (int s = 0; s <= n; ++s) m += binomial(n, s) * std::abs(n - 2 * s);
  return m / (n * std::ldexp(1.0, n));
}

Magnetization magnetization_mx(const Distribution& d) {
  const int n = d.n_sites;
  if (n < 2) throw validation_error("magnetization scaling needs N >= 2");
  const Eigen::VectorXd p = spin_count_distribution(d);
  Magnetization out;
  for (int s = 0; s <= n; ++s) out.m += std::abs(n - 2 * s) * p[s];
  out.m /= n;
  const double m0 = paramagnet_magnetization(n);
  out.scaled = (m0 - out.m) / (m0 - 1.0);
  return out;
}

Binder binder_cumulant(const Distribution& d) {
  const int n = d.n_sites;
  if (n < 2) throw validation_error("Binder cumulant scaling needs N >= 2");
  const Eigen::VectorXd p = spin_count_distribution(d);
  double m2 = 0.0, m4 = 0.0;
  for (int s = 0; s <= n; ++s) {
    const double m = n - 2 * s;
    m2 += m * m * p[s];
    m4 += m * m * m * m * p[s];
  }
  if (m2 == 0.0) throw numerical_error("Binder cumulant undefined: zero second moment");
  Binder out;
  out.g = m4 / (m2 * m2);
  const double g0 = 3.0 - 2.0 / n;
  out.scaled = (g0 - out.g) / (g0 - 1.0);
  return out;
}

Structure correlations_and_structure(const Distribution& d) {
  const int n = d.n_sites;
  if (n < 2) throw validation_error("correlations need N >= 2");
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd pair = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index b = 0; b < d.prob.size(); ++b) {
    const double p = d.prob[b];
    if (p == 0.0) continue;
    const auto ub = static_cast<std::uint64_t>(b);
    for (int i = 0; i < n; ++i) {
      mean[i] += p * spin(ub, i);
      for (int j = i + 1; j < n; ++j) pair(i, j) += p * spin(ub, i) * spin(ub, j);
    }
  }
  Structure out;
  out.c = Eigen::VectorXd::Zero(n - 1);
  for (int r = 1; r < n; ++r) {
    double acc = 0.0;
    for (int m = 0; m + r < n; ++m) acc += pair(m, m + r) - mean[m] * mean[m + r];
    out.c[r - 1] = acc / (n - r);
  }
  out.k.resize(n);
  out.s.resize(n);
  for (int j = 0; j < n; ++j) {
    const double k = std::numbers::pi * j / (n - 1);
    cd acc = 0.0;
    for (int r = 1; r < n; ++r) acc += out.c[r - 1] * std::exp(cd{0.0, k * r});
    out.k[j] = k;
    out.s[j] = std::abs(acc) / (n - 1);
  }
  return out;
}

Eigen::MatrixXd connected_correlation(const SpinState& s, Axis axis) {
  const int n = s.n_sites;
  const Eigen::VectorXd e = site_expectations(s, axis);
  Eigen::MatrixXd c(n, n);
  for (int i = 0; i < n; ++i) {
    c(i, i) = 1.0 - e[i] * e[i];
    for (int j = i + 1; j < n; ++j) {
      const double v = expect_pauli(s, {{axis, i}, {axis, j}}).real() - e[i] * e[j];
      c(i, j) = c(j, i) = v;
    }
  }
  return c;
}

double hamming_distance(const Eigen::VectorXd& sz, const std::vector<int>& initial_signs) {
  const auto n = sz.size();
  if (static_cast<Eigen::Index>(initial_signs.size()) != n) throw validation_error("reference length differs");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) acc += initial_signs[i] * sz[i];
  return 0.5 - acc / (2.0 * n);
}

double hamming_distance(const Eigen::VectorXd& sz) {
  std::vector<int> s(sz.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = (i % 2 == 0) ? -1 : 1;  // (-1)^i, i = 1..N
  return hamming_distance(sz, s);
}

double center_of_excitation(const Eigen::VectorXd& sz) {
  const auto n = sz.size();
  if (n < 2) throw validation_error("center of excitation needs N >= 2");
  double c = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double i = static_cast<double>(k + 1);
    c += (2.0 * i - n - 1.0) / (n - 1.0) * 0.5 * (sz[k] + 1.0);
  }
  return c;
}

double rate_function(const SpinState& s, const std::vector<SpinState>& refs) {
  double p = 0.0;
  for (const auto& r : refs) p += std::norm(r.amp.dot(s.amp));
  return -std::log(p) / s.n_sites;
}

std::vector<int> detect_kinks(const std::vector<double>& series, double factor) {
  std::vector<int> out;
  const int n = static_cast<int>(series.size());
  if (n < 5) return out;
  std::vector<double> d2(n, 0.0), mags;
  for (int k = 1; k + 1 < n; ++k) {
    d2[k] = series[k + 1] - 2.0 * series[k] + series[k - 1];
    mags.push_back(std::abs(d2[k]));
  }
  std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
  const double med = mags[mags.size() / 2];
  for (int k = 1; k + 1 < n; ++k) {
    const double a = std::abs(d2[k]);
    if (a <= factor * med) continue;
    const double left = k > 1 ? std::abs(d2[k - 1]) : 0.0;
    const double right = k + 2 < n ? std::abs(d2[k + 1]) : 0.0;
    if (a >= left && a > right) out.push_back(k);
  }
  return out;
}

double two_body_c2(const SpinState& s) { return two_body_c2(Distribution::exact(s, Axis::x)); }

double two_body_c2(const Distribution& d) {
  if (d.basis != Axis::x) throw validation_error("C2 needs x-basis data");
  const int n = d.n_sites;
  double acc = 0.0;
  for (Eigen::Index b = 0; b < d.prob.size(); ++b) {
    const double m = n - 2.0 * (n - std::popcount(static_cast<std::uint64_t>(b)));
    acc += d.prob[b] * m * m;
  }
  return acc / (static_cast<double>(n) * n);
}

DomainStats domain_statistics(const Distribution& d) {
  const int n = d.n_sites;
  DomainStats out;
  out.size_histogram = Eigen::VectorXd::Zero(n);
  for (Eigen::Index b = 0; b < d.prob.size(); ++b) {
    const double p = d.prob[b];
    if (p == 0.0) continue;
    const auto ub = static_cast<std::uint64_t>(b);
    int run = 1, largest = 1;
    for (int i = 1; i <= n; ++i) {
      if (i < n && ((ub >> i) & 1U) == ((ub >> (i - 1)) & 1U)) {
        ++run;
        continue;
      }
      out.size_histogram[run - 1] += p;
      largest = std::max(largest, run);
      run = 1;
    }
    out.mean_largest += p * largest;
  }
  return out;
}

cd otoc(const SpinState& s, const std::vector<PauliFactor>& w, const std::vector<PauliFactor>& v,
        const HamiltonianOperator& op, double tau) {
  if (!op.time_independent()) throw validation_error("OTOC needs a time-independent Hamiltonian");
  EvolveOptions opt;
  opt.tol = 1e-12;
  Eigen::VectorXcd a = s.amp;
  auto forward = [&](Eigen::VectorXcd& x, double dt) { expm_apply(op, 0.0, x, dt, opt); };
  auto pauli = [&](Eigen::VectorXcd& x, const std::vector<PauliFactor>& f) {
    SpinState t{s.n_sites, std::move(x)};
    apply_pauli(t, f);
    x = std::move(t.amp);
  };
  // Pauli strings are Hermitian, so W^dag = W and V^dag = V.
  pauli(a, v);
  forward(a, tau);
  pauli(a, w);
  forward(a, -tau);
  pauli(a, v);
  forward(a, tau);
  pauli(a, w);
  forward(a, -tau);
  return s.amp.dot(a);
}

Spectrum fourier_spectrum(const std::vector<double>& series, double dt, Window window, int pad, bool remove_mean) {
  const int n = static_cast<int>(series.size());
  if (n < 2) throw validation_error("Fourier spectrum needs >= 2 samples");
  if (pad < 1) throw validation_error("zero-padding factor must be >= 1");
  double mean = 0.0;
  if (remove_mean) {
    for (double x : series) mean += x;
    mean /= n;
  }
  std::vector<double> w(n, 1.0);
  if (window == Window::hann)
    for (int k = 0; k < n; ++k) w[k] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * k / (n - 1)));
  double wsum = 0.0;
  for (double x : w) wsum += x;
  const int total = pad * n;
  const int nf = total / 2 + 1;
  Spectrum out{Eigen::VectorXd(nf), Eigen::VectorXd(nf)};
  for (int f = 0; f < nf; ++f) {
    cd acc = 0.0;
    const double ang = -2.0 * std::numbers::pi * f / total;
    for (int k = 0; k < n; ++k) acc += w[k] * (series[k] - mean) * std::exp(cd{0.0, ang * k});
    out.freq[f] = f / (total * dt);
    out.amp[f] = std::abs(acc) / wsum;
  }
  return out;
}

}  // namespace ionspin

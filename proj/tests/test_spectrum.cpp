#include <doctest.h>

#include <cmath>
#include <random>

#include "ionspin/errors.hpp"
#include "ionspin/spectrum.hpp"
#include "oracle.hpp"

using namespace ionspin;

namespace {

CouplingMatrix random_couplings(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CouplingMatrix j = CouplingMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) j(a, b) = j(b, a) = g(rng);
  return j;
}

double residual(const HamiltonianSpec& h, const Eigenpairs& ep, int k) {
  HamiltonianOperator op(h);
  Eigen::VectorXcd hv;
  op.apply(0.0, ep.vectors.col(k), hv);
  return (hv - ep.values[k] * ep.vectors.col(k)).norm();
}

}  // namespace

TEST_CASE("z field ground energy") {
  HamiltonianSpec h(7);
  h.add_uniform_field(Axis::z, 0.4);
  const auto ep = eigenpairs(h, 0.0, 3);
  CHECK(ep.values[0] == doctest::Approx(-7 * 0.4));
  EigenOptions lz;
  lz.dense_limit = 0;
  const auto el = eigenpairs(h, 0.0, 3, lz);
  CHECK(el.values[0] == doctest::Approx(-7 * 0.4));
  CHECK(el.values[1] == doctest::Approx(-7 * 0.4 + 0.8));
  CHECK(el.values[2] == doctest::Approx(-7 * 0.4 + 0.8));
}

TEST_CASE("Lanczos with locking agrees with dense diagonalization") {
  std::mt19937_64 rng(17);
  EigenOptions lz;
  lz.dense_limit = 0;
  for (int n : {4, 6, 8}) {
    HamiltonianSpec h(n);
    h.add_coupling(Axis::x, random_couplings(n, rng));
    h.add_coupling(Axis::y, random_couplings(n, rng));
    h.add_uniform_field(Axis::z, 0.5);
    h.add_uniform_field(Axis::y, 0.3);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(oracle::dense(h, 0.0));
    const int k = n <= 6 ? (1 << n) : 16;
    const auto ep = eigenpairs(h, 0.0, k, lz);
    for (int i = 0; i < k; ++i) {
      CHECK(ep.values[i] == doctest::Approx(es.eigenvalues()[i]).epsilon(1e-9));
      CHECK(residual(h, ep, i) < 1e-8);
    }
  }
}

TEST_CASE("degenerate levels are all found") {
  HamiltonianSpec h(6);
  h.add_coupling(Axis::x, power_law_couplings(6, 1.0, 0.0));
  EigenOptions lz;
  lz.dense_limit = 0;
  const auto ep = eigenpairs(h, 0.0, 8, lz);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(oracle::dense(h, 0.0));
  for (int i = 0; i < 8; ++i) CHECK(ep.values[i] == doctest::Approx(es.eigenvalues()[i]).epsilon(1e-9));
}

TEST_CASE("nearest-neighbour axial-field staircase has crossings at Bx/J = 1 and 2") {
  const int n = 6;
  CouplingMatrix j = CouplingMatrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) j(i, i + 1) = j(i + 1, i) = 1.0;
  auto ground_mag = [&](double bx) {
    HamiltonianSpec h(n);
    h.add_coupling(Axis::x, j);
    h.add_uniform_field(Axis::x, bx);
    const auto ep = eigenpairs(h, 0.0, 1);
    SpinState g{n, ep.vectors.col(0)};
    return site_expectations(g, Axis::x).sum();
  };
  CHECK(ground_mag(0.5) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(ground_mag(1.5) == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(ground_mag(2.5) == doctest::Approx(-6.0).epsilon(1e-9));
}

TEST_CASE("first coupled gap") {
  const int n = 4;
  HamiltonianSpec h(n);
  h.add_coupling(Axis::x, power_law_couplings(n, 0.05, 1.0));
  h.add_uniform_field(Axis::y, 3.0);
  // Sum of s_x flips one spin: a reflection-even single-flip state at about 2B.
  const auto gx = first_coupled_gap(h, 0.0, Axis::x);
  CHECK(gx.index >= 1);
  CHECK(gx.index <= n);
  CHECK(gx.gap == doctest::Approx(6.0).epsilon(0.02));
  // Sum of s_y preserves the y-flip parity, so the first coupled state is a
  // two-flip state: the (N+1)th excited state at about 4B.
  const auto gy = first_coupled_gap(h, 0.0, Axis::y);
  CHECK(gy.index == n + 1);
  CHECK(gy.gap == doctest::Approx(12.0).epsilon(0.02));
  CHECK_FALSE(gy.degenerate_ground);

  HamiltonianSpec z(n);
  z.add_coupling(Axis::x, power_law_couplings(n, 1.0, 1.0));
  z.add_uniform_field(Axis::y, 0.0);
  const auto g0 = first_coupled_gap(z, 0.0, Axis::y);
  CHECK(g0.degenerate_ground);
  CHECK(g0.gap > 0.0);
}

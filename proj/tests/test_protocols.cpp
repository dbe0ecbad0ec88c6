#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ionspin/errors.hpp"
#include "ionspin/protocols.hpp"
#include "ionspin/qaoa.hpp"
#include "ionspin/ramp.hpp"
#include "oracle.hpp"

using namespace ionspin;

namespace {

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int k = 0; k < n; ++k) v[k] = lo + (hi - lo) * k / (n - 1);
  return v;
}

Distribution from_probs(int n, const std::vector<std::pair<std::uint64_t, double>>& entries) {
  Distribution d;
  d.basis = Axis::x;
  d.n_sites = n;
  d.prob = Eigen::VectorXd::Zero(Eigen::Index{1} << n);
  for (auto [b, p] : entries) d.prob[static_cast<Eigen::Index>(b)] = p;
  return d;
}

}  // namespace

// ---- ramps ------------------------------------------------------------------

TEST_CASE("ramp profiles") {
  const auto lin = linear_ramp(1.0, 1.0);
  CHECK(lin(0.5) == doctest::Approx(0.5));
  CHECK(lin(0.0) == doctest::Approx(1.0));
  CHECK(lin(1.0) == 0.0);
  const auto ex = exponential_ramp(2.0, 6.0);
  CHECK(ex.tau == doctest::Approx(1.0));
  CHECK(ex(1.0) == doctest::Approx(2.0 * std::exp(-1.0)));
  CHECK(ex.unit_schedule()(1.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(parse_ramp_kind("local_adiabatic") == RampKind::local_adiabatic);
  CHECK_THROWS_AS(parse_ramp_kind("cubic"), validation_error);
}

TEST_CASE("constant gap: locally adiabatic ramp is linear") {
  const double b0 = 3.0, gap = 1.5, gamma = 2.0;
  const auto g = gap_table(grid(0.0, b0, 50), std::vector<double>(50, gap));
  const auto r = local_adiabatic_ramp_gamma(g, gamma);
  const double t_f = gamma * b0 / (gap * gap);
  CHECK(r.t_f == doctest::Approx(t_f).epsilon(1e-6));
  CHECK(local_adiabatic_time(g, gamma) == doctest::Approx(t_f).epsilon(1e-9));
  for (double x : {0.1, 0.37, 0.8}) CHECK(r(x * t_f) == doctest::Approx(b0 * (1.0 - x)).epsilon(1e-6));
  CHECK(r(0.0) == doctest::Approx(b0));
  CHECK(std::abs(r(t_f)) <= 1e-6 * b0);
}

TEST_CASE("locally adiabatic ramp holds its adiabaticity along the path") {
  const int n = 6;
  const auto j = power_law_couplings(n, units::khz(0.77), 1.0);
  const double b0 = 5.0 * j.cwiseAbs().maxCoeff();
  const auto gaps = gap_table(j, b0, 400);
  const auto r = local_adiabatic_ramp(gaps, 2.4);
  CHECK(r.t_f == doctest::Approx(2.4));
  CHECK(r(0.0) == doctest::Approx(b0));
  CHECK(std::abs(r(r.t_f)) <= 1e-6 * b0);
  double prev = r(0.0);
  for (int k = 1; k <= 200; ++k) {
    const double t = r.t_f * k / 200.0;
    const double b = r(t);
    CHECK(b <= prev + 1e-12);
    prev = b;
  }
  // Delta^2 / |dB/dt| = gamma, away from the endpoints where the table is clamped.
  for (int k = 1; k < 40; ++k) {
    const double t = r.t_f * k / 40.0, h = 1e-5 * r.t_f;
    const double rate = std::abs(r(t + h) - r(t - h)) / (2.0 * h);
    const double d = gaps(r(t));
    CHECK(d * d / rate == doctest::Approx(r.gamma).epsilon(0.02));
  }
}

TEST_CASE("equal adiabaticity orders the ramp durations") {
  const int n = 6;
  const auto j = power_law_couplings(n, units::khz(0.77), 1.0);
  const auto gaps = gap_table(j, 5.0 * j.cwiseAbs().maxCoeff(), 200);
  const double loc = ramp_time_at_adiabaticity(RampKind::local_adiabatic, gaps, 1.0);
  const double ex = ramp_time_at_adiabaticity(RampKind::exponential, gaps, 1.0);
  const double lin = ramp_time_at_adiabaticity(RampKind::linear, gaps, 1.0);
  CHECK(loc < ex);
  CHECK(ex < lin);
}

TEST_CASE("vanishing gap is reported") {
  CHECK_THROWS_AS(gap_table({0.0, 1.0, 2.0}, {0.0, 1.0, 1.0}), numerical_error);
}

TEST_CASE("Ising ground manifold") {
  const auto afm = ising_ground_manifold(power_law_couplings(4, 1.0, 1.0));
  REQUIRE(afm.size() == 2);
  CHECK(afm[0] == 0b0101);
  CHECK(afm[1] == 0b1010);
  const auto fm = ising_ground_manifold(power_law_couplings(4, -1.0, 1.0));
  REQUIRE(fm.size() == 2);
  CHECK(fm[0] == 0);
  CHECK(fm[1] == 0b1111);
}

TEST_CASE("adiabatic limits") {
  const int n = 4;
  const auto j = power_law_couplings(n, 1.0, 1.0);
  SUBCASE("slow ramp reaches the ground manifold") {
    // B0 >> J so the field-term ground state is close to the true ground state.
    const auto r = local_adiabatic_ramp(gap_table(j, 50.0, 400), 100.0);
    const auto res = run_adiabatic(j, r, {100.0});
    CHECK(res.samples.back().p_ground >= 1.0 - 1e-3);
  }
  SUBCASE("instantaneous ramp leaves a uniform x distribution") {
    const auto r = linear_ramp(5.0, 1e-7);
    const auto res = run_adiabatic(j, r, {1e-7});
    const auto d = Distribution::exact(res.final_state, Axis::x);
    CHECK((d.prob.array() - 1.0 / 16).abs().maxCoeff() < 1e-6);
  }
  SUBCASE("slower linear ramps prepare the ground state better") {
    double prev = 0.0;
    for (double t_f : {0.5, 2.0, 8.0, 32.0}) {
      const double p = run_adiabatic(j, linear_ramp(5.0, t_f), {t_f}).samples.back().p_ground;
      CHECK(p >= prev - 1e-9);
      prev = p;
    }
  }
  SUBCASE("decoherence factor") {
    AdiabaticOptions o;
    const auto a = run_adiabatic(j, linear_ramp(5.0, 2.0), {1.0, 2.0});
    o.decoherence_time = 3.0;
    const auto b = run_adiabatic(j, linear_ramp(5.0, 2.0), {1.0, 2.0}, o);
    for (std::size_t k = 0; k < 2; ++k)
      CHECK(b.samples[k].p_ground == doctest::Approx(a.samples[k].p_ground * std::exp(-a.samples[k].t / 3.0)));
  }
}

TEST_CASE("most prevalent state") {
  SUBCASE("two close outcomes") {
    const auto p = most_prevalent(from_probs(3, {{5, 0.03}, {2, 0.02}, {0, 0.01}}));
    CHECK(p.state == 5);
    CHECK(p.margin == doctest::Approx(0.01));
    CHECK(p.required_shots == doctest::Approx(13.0));
    CHECK_FALSE(p.tie);
  }
  SUBCASE("single outcome") {
    ShotTable t;
    t.basis = Axis::x;
    t.n_sites = 3;
    t.shots = 50;
    t.counts[6] = 50;
    const auto p = most_prevalent(t);
    CHECK(p.state == 6);
    CHECK(p.margin == doctest::Approx(1.0));
    CHECK(p.required_shots == doctest::Approx(1.0));
  }
  SUBCASE("uniform histogram is a tie") {
    Distribution d = from_probs(3, {});
    d.prob.setConstant(1.0 / 8);
    const auto p = most_prevalent(d);
    CHECK(p.tie);
    CHECK(p.state == 0);
    CHECK(std::isinf(p.required_shots));
  }
}

TEST_CASE("spectroscopy") {
  CouplingMatrix j = CouplingMatrix::Zero(2, 2);
  j(0, 1) = j(1, 0) = 1.0;
  const double b0 = 0.8;
  const double gap = first_coupled_gap(transverse_ising(j, b0), 0.0, Axis::y).gap;
  SUBCASE("two spins respond at the coupled splitting") {
    const auto w = grid(0.5 * gap, 1.5 * gap, 41);
    SpectroscopyOptions o;
    o.probe_time = 60.0;
    const auto resp = spectroscopy_scan(j, b0, 0.05, w, o);
    const auto k = std::max_element(resp.begin(), resp.end()) - resp.begin();
    CHECK(std::abs(w[k] - gap) <= w[1] - w[0]);
    CHECK(resp[k] > 0.1);
  }
  SUBCASE("no modulation, no response") {
    SpectroscopyOptions o;
    o.probe_time = 10.0;
    for (double r : spectroscopy_scan(j, b0, 0.0, grid(0.5, 4.0, 8), o)) CHECK(std::abs(r) < 1e-8);
    CHECK_THROWS_AS(spectroscopy_scan(j, b0, 0.0, {1.0}), validation_error);
  }
}

// ---- quenches ---------------------------------------------------------------

TEST_CASE("quench without couplings does nothing") {
  const int n = 5;
  HamiltonianSpec h = xy_hopping(CouplingMatrix::Zero(n, n));
  std::vector<bool> up(n, false);
  up[2] = true;
  const auto res = quench_run(QuenchKind::local, h, SpinState::product(Axis::z, up), grid(0.0, 3.0, 11));
  CHECK(res.signal.cwiseAbs().maxCoeff() < 1e-12);
  for (std::size_t r = 1; r < res.arrival.size(); ++r) CHECK(std::isnan(res.arrival[r]));
}

TEST_CASE("two-spin flip-flop oscillates at 2J") {
  const double jj = 0.7;
  CouplingMatrix j = CouplingMatrix::Zero(2, 2);
  j(0, 1) = j(1, 0) = jj;
  QuenchOptions o;
  o.center = 0;
  const auto times = grid(0.0, 6.0, 61);
  const auto res = quench_run(QuenchKind::local, xy_hopping(j), SpinState::product(Axis::z, {true, false}), times, o);
  for (std::size_t k = 0; k < times.size(); ++k) {
    CHECK(res.sz(k, 0) == doctest::Approx(std::cos(2.0 * jj * times[k])).epsilon(1e-7));
    CHECK(res.sz(k, 1) == doctest::Approx(-std::cos(2.0 * jj * times[k])).epsilon(1e-7));
  }
}

TEST_CASE("global quench correlations match the dense oracle") {
  const int n = 6;
  const auto h = xy_hopping(power_law_couplings(n, 1.0, 1.0));
  const auto s0 = SpinState::product(Axis::z, {false, true, false, true, false, true});
  QuenchOptions o;
  o.center = 0;
  const auto times = grid(0.0, 2.0, 5);
  const auto res = quench_run(QuenchKind::global, h, s0, times, o);
  const oracle::Mat hd = oracle::dense(h, 0.0);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const SpinState s{n, oracle::propagate(hd, s0.amp, times[k])};
    const auto c = connected_correlation(s, Axis::z);
    for (int r = 1; r < n; ++r) CHECK(res.signal(k, r) == doctest::Approx(std::abs(c(0, r))).epsilon(1e-6));
  }
}

TEST_CASE("log-log slope") {
  std::vector<double> x{1, 2, 3, 4}, y;
  for (double v : x) y.push_back(0.3 * std::pow(v, 1.7));
  CHECK(loglog_slope(x, y) == doctest::Approx(1.7));
}

// ---- disorder, Floquet, DQPT ------------------------------------------------

TEST_CASE("MBL runs are reproducible per seed") {
  MblOptions o;
  o.n_sites = 6;
  o.seeds = 3;
  o.w = 4.0;
  const auto times = grid(0.0, 3.0, 7);
  const auto a = mbl_run(times, o), b = mbl_run(times, o);
  CHECK(a.d_mean == b.d_mean);
  CHECK(a.realization_seeds == b.realization_seeds);
  CHECK(std::abs(a.d_mean[0]) < 1e-12);
  o.seed = 2;
  const auto c = mbl_run(times, o);
  CHECK(c.d_mean != a.d_mean);
  for (double d : a.d_mean) {
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
  }
}

TEST_CASE("window average") {
  CHECK(window_average({0, 1, 2, 3, 4}, {5, 1, 2, 3, 9}, 1.0, 3.0) == doctest::Approx(2.0));
}

TEST_CASE("time crystal") {
  DtcOptions o;
  o.n_sites = 6;
  o.n_periods = 40;
  SUBCASE("perfect pulses without interactions double the period") {
    o.j0 = 0.0;
    const auto r = dtc_run(o);
    for (std::size_t k = 0; k < r.magnetization.size(); ++k)
      CHECK(r.magnetization[k] == doctest::Approx(k % 2 == 0 ? 1.0 : -1.0).epsilon(1e-8));
    CHECK(r.peak_freq == doctest::Approx(0.5));
    CHECK(r.peak_height == doctest::Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("seed is irrelevant without disorder") {
    o.epsilon = 0.05;
    const auto a = dtc_run(o);
    o.seed = 77;
    const auto b = dtc_run(o);
    CHECK(a.magnetization == b.magnetization);
  }
}

TEST_CASE("DQPT at zero field is stationary") {
  DqptOptions o;
  o.n_sites = 6;
  o.b = 0.0;
  const auto r = dqpt_run(grid(0.0, 2.0, 11), o);
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    CHECK(std::abs(r.rate[k]) < 1e-10);
    CHECK(r.c2[k] == doctest::Approx(1.0));
  }
  CHECK(r.kink_times.empty());
}

TEST_CASE("DQPT kinks follow magnetization zeros") {
  DqptOptions o;
  o.n_sites = 8;
  o.alpha = 3.0;
  o.b = 2.0;
  const auto times = grid(0.0, 2.0, 41);
  const auto r = dqpt_run(times, o);
  REQUIRE(!r.kink_times.empty());
  REQUIRE(r.kink_times.size() == r.mx_zero_times.size());
  for (std::size_t k = 0; k < r.kink_times.size(); ++k)
    CHECK(std::abs(r.kink_times[k] - r.mx_zero_times[k]) <= times[1] - times[0]);
}

// ---- QAOA -------------------------------------------------------------------

TEST_CASE("QAOA on two spins") {
  CouplingMatrix j = CouplingMatrix::Zero(2, 2);
  j(0, 1) = j(1, 0) = 1.0;
  QaoaOptions o;
  o.optimizer = QaoaOptimizer::grid;
  const auto g = qaoa_run(j, o);
  o.optimizer = QaoaOptimizer::gradient_descent;
  const auto d = qaoa_run(j, o);
  CHECK(std::abs(d.eta - g.eta) <= 0.01);
  CHECK(d.eta <= 1.0 + 1e-9);
  CHECK(g.eta <= 1.0 + 1e-9);
  CHECK(g.eta >= 0.0);
}

TEST_CASE("QAOA grid result is the grid maximum") {
  const auto j = power_law_couplings(4, 1.0, 1.0);
  QaoaOptions o;
  o.optimizer = QaoaOptimizer::grid;
  o.grid_points = 11;
  const auto g = qaoa_run(j, o);
  QaoaProblem prob(j, o.field);
  double best = -1.0;
  for (double gm : grid(0.0, o.gamma_max, 11))
    for (double bt : grid(0.0, o.beta_max, 11)) best = std::max(best, prob.eta(prob.energy({1, {gm}, {bt}})));
  CHECK(g.eta == best);
}

TEST_CASE("QAOA with zero angles scores the initial state") {
  const auto j = power_law_couplings(4, 1.0, 1.0);
  QaoaProblem prob(j, 1.0);
  const auto init = SpinState::polarized(4, Axis::y, false);
  const double e = energy(HamiltonianOperator(prob.hamiltonian()), 0.0, init);
  CHECK(prob.energy({1, {0.0}, {0.0}}) == doctest::Approx(e).epsilon(1e-12));
  CHECK(std::abs(fidelity(prob.state({1, {0.0}, {0.0}}), init) - 1.0) < 1e-12);
}

TEST_CASE("QAOA state energy agrees with the lab-frame Hamiltonian") {
  const auto j = power_law_couplings(5, 1.0, 0.7);
  QaoaProblem prob(j, 1.0);
  const QaoaParams p{2, {0.3, 0.5}, {0.9, 0.2}};
  const double e = energy(HamiltonianOperator(prob.hamiltonian()), 0.0, prob.state(p));
  CHECK(prob.energy(p) == doctest::Approx(e).epsilon(1e-10));
  const auto ev = eigenpairs(prob.hamiltonian(), 0.0, 1);
  CHECK(prob.e_ground() == doctest::Approx(ev.values[0]).epsilon(1e-10));
  CHECK(std::abs(prob.sampled_energy(p, 200000, 3) - e) < 0.05);
  CHECK_THROWS_AS((QaoaParams{2, {0.1}, {0.1, 0.2}}.validate()), validation_error);
}

// ---- coupling benchmarks ----------------------------------------------------

TEST_CASE("pair benchmark recovers the coupling") {
  const auto j = power_law_couplings(4, 1.3, 1.0);
  const auto est = benchmark_pairs(j, {{0, 1}, {0, 3}}, grid(0.0, 20.0, 401));
  for (const auto& e : est) CHECK(e.j_fit == doctest::Approx(std::abs(e.j_true)).epsilon(1e-6));
}

TEST_CASE("three-ion spectrum gives both couplings") {
  const double j1 = 1.0, j2 = 0.35;
  CouplingMatrix j = CouplingMatrix::Zero(3, 3);
  j(0, 1) = j(1, 0) = j(1, 2) = j(2, 1) = j1;
  j(0, 2) = j(2, 0) = j2;
  const auto cs = benchmark_chain(j, grid(0.0, 60.0, 1201));
  REQUIRE(cs.peaks.size() >= 2);
  const double hi = std::max(cs.peaks[0], cs.peaks[1]), lo = std::min(cs.peaks[0], cs.peaks[1]);
  const auto [a, b] = three_ion_couplings(hi, lo);
  CHECK(a == doctest::Approx(j1).epsilon(0.01));
  CHECK(b == doctest::Approx(j2).epsilon(0.01));
}

TEST_CASE("chain spectrum peaks sit at eigen-gaps") {
  const int n = 4;
  const auto j = power_law_couplings(n, 1.0, 1.2);
  const auto cs = benchmark_chain(j, grid(0.0, 80.0, 1601));
  HamiltonianSpec h(n);
  h.add_coupling(Axis::x, j);
  Eigen::SelfAdjointEigenSolver<oracle::Mat> es(oracle::dense(h, 0.0));
  const auto& e = es.eigenvalues();
  REQUIRE(!cs.peaks.empty());
  for (double w : cs.peaks) {
    double best = 1e9;
    for (Eigen::Index a = 0; a < e.size(); ++a)
      for (Eigen::Index b = 0; b < a; ++b) best = std::min(best, std::abs(std::abs(e[a] - e[b]) - w));
    CHECK(best < 0.01);
  }
}

#include "ionspin/protocols.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_min.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "ionspin/couplings.hpp"
#include "ionspin/errors.hpp"
#include "ionspin/seeds.hpp"

namespace ionspin {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Calls f(k, state) for every entry of times, starting from `initial` at t = 0.
void sample_at(const SpinState& initial, const HamiltonianOperator& op, const std::vector<double>& times,
               const EvolveOptions& opt, const std::function<void(std::size_t, const SpinState&)>& f) {
  if (times.empty()) return;
  if (times.front() < 0.0) throw validation_error("sample times must be >= 0");
  bool first = true;
  std::size_t k = 0;
  evolve_observed(
      initial, op, 0.0, times,
      [&](double, const SpinState& s) {
        if (first) {
          first = false;
          return;
        }
        f(k++, s);
      },
      opt);
}

// Linear interpolation of the first upward crossing of level, searching samples [0, k_end].
double first_crossing(const std::vector<double>& t, const Eigen::VectorXd& y, double level, std::size_t k_end) {
  for (std::size_t k = 0; k <= k_end && k < t.size(); ++k) {
    if (y[static_cast<Eigen::Index>(k)] >= level) {
      if (k == 0) return t[0];
      const double y0 = y[static_cast<Eigen::Index>(k - 1)], y1 = y[static_cast<Eigen::Index>(k)];
      return t[k - 1] + (level - y0) / (y1 - y0) * (t[k] - t[k - 1]);
    }
  }
  return kNaN;
}

double uniform_step(const std::vector<double>& times) {
  if (times.size() < 4) throw validation_error("need at least 4 uniformly spaced times");
  const double dt = times[1] - times[0];
  if (!(dt > 0.0)) throw validation_error("times must be strictly ascending");
  for (std::size_t k = 2; k < times.size(); ++k)
    if (std::abs(times[k] - times[k - 1] - dt) > 1e-9 * std::max(1.0, std::abs(times[k])))
      throw validation_error("times must be uniformly spaced");
  return dt;
}

// Brent minimization of f on [lo, hi] after a coarse scan picks the bracket.
double minimize_1d(const std::function<double(double)>& f, double lo, double hi) {
  constexpr int scan = 41;
  std::vector<double> x(scan), y(scan);
  int best = 0;
  for (int k = 0; k < scan; ++k) {
    x[k] = lo + (hi - lo) * k / (scan - 1);
    y[k] = f(x[k]);
    if (y[k] < y[best]) best = k;
  }
  if (best == 0 || best == scan - 1) return x[best];
  gsl_function gf;
  gf.function = [](double v, void* p) { return (*static_cast<const std::function<double(double)>*>(p))(v); };
  gf.params = const_cast<std::function<double(double)>*>(&f);
  gsl_set_error_handler_off();
  gsl_min_fminimizer* m = gsl_min_fminimizer_alloc(gsl_min_fminimizer_brent);
  double a = x[best - 1], b = x[best + 1], c = x[best];
  if (gsl_min_fminimizer_set_with_values(m, &gf, c, y[best], a, y[best - 1], b, y[best + 1]) != GSL_SUCCESS) {
    gsl_min_fminimizer_free(m);
    return c;
  }
  for (int it = 0; it < 200; ++it) {
    gsl_min_fminimizer_iterate(m);
    a = gsl_min_fminimizer_x_lower(m);
    b = gsl_min_fminimizer_x_upper(m);
    if (gsl_min_test_interval(a, b, 1e-14, 1e-13) == GSL_SUCCESS) break;
  }
  c = gsl_min_fminimizer_x_minimum(m);
  gsl_min_fminimizer_free(m);
  return c;
}

// |sum_k w_k (x_k - mean) e^{-2 pi i f k dt}| / sum w, Hann window.
double hann_amplitude(const std::vector<double>& x, double dt, double f) {
  const int n = static_cast<int>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  std::complex<double> acc = 0.0;
  double wsum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * k / (n - 1)));
    wsum += w;
    acc += w * (x[k] - mean) * std::polar(1.0, -2.0 * std::numbers::pi * f * k * dt);
  }
  return std::abs(acc) / wsum;
}

}  // namespace

HamiltonianSpec xy_hopping(const CouplingMatrix& j) {
  HamiltonianSpec h(static_cast<int>(j.rows()));
  h.add_coupling(Axis::x, 0.5 * j);
  h.add_coupling(Axis::y, 0.5 * j);
  return h;
}

// ---- quenches -------------------------------------------------------------------

QuenchKind parse_quench_kind(const std::string& s) {
  if (s == "global") return QuenchKind::global;
  if (s == "local") return QuenchKind::local;
  throw validation_error("unknown quench kind '" + s + "'");
}

const char* quench_kind_name(QuenchKind k) { return k == QuenchKind::global ? "global" : "local"; }

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t k = 0; k < x.size() && k < y.size(); ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0) || !std::isfinite(y[k])) continue;
    const double lx = std::log(x[k]), ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) return kNaN;
  const double den = m * sxx - sx * sx;
  return den == 0.0 ? kNaN : (m * sxy - sx * sy) / den;
}

QuenchResult quench_run(QuenchKind kind, const HamiltonianSpec& spec, const SpinState& initial,
                        const std::vector<double>& times, const QuenchOptions& opt) {
  const int n = spec.n_sites;
  if (initial.n_sites != n) throw validation_error("initial state size differs from the Hamiltonian");
  const int c = opt.center < 0 ? (n - 1) / 2 : opt.center;
  if (c >= n) throw validation_error("quench center outside the chain");
  const int nr = n - c;
  QuenchResult out;
  out.times = times;
  out.sz.resize(static_cast<Eigen::Index>(times.size()), n);
  out.signal.resize(static_cast<Eigen::Index>(times.size()), nr);
  const Eigen::VectorXd sz0 = site_expectations(initial, Axis::z);
  HamiltonianOperator op(spec);
  sample_at(initial, op, times, opt.evolve, [&](std::size_t k, const SpinState& s) {
    const auto row = static_cast<Eigen::Index>(k);
    const Eigen::VectorXd sz = site_expectations(s, Axis::z);
    out.sz.row(row) = sz.transpose();
    if (kind == QuenchKind::local) {
      for (int r = 0; r < nr; ++r) out.signal(row, r) = 0.5 * std::abs(sz[c + r] - sz0[c + r]);
    } else {
      const Eigen::MatrixXd cc = connected_correlation(s, Axis::z);
      for (int r = 0; r < nr; ++r) out.signal(row, r) = std::abs(cc(c, c + r));
    }
  });
  std::vector<double> rs;
  for (int r = 1; r < nr; ++r) {
    const Eigen::VectorXd y = out.signal.col(r);
    double a = kNaN;
    if (opt.rule == ArrivalRule::threshold) {
      a = first_crossing(times, y, opt.threshold, times.size() - 1);
    } else {
      const double floor = 1e-3 * y.maxCoeff();
      for (Eigen::Index k = 1; k + 1 < y.size(); ++k) {
        if (y[k] > floor && y[k] >= y[k - 1] && y[k] > y[k + 1]) {
          a = first_crossing(times, y, 0.5 * y[k], static_cast<std::size_t>(k));
          break;
        }
      }
    }
    out.arrival.push_back(a);
    rs.push_back(r);
  }
  out.cone_exponent = loglog_slope(rs, out.arrival);
  return out;
}

// ---- many-body localization ---------------------------------------------------

double window_average(const std::vector<double>& times, const std::vector<double>& series, double t_lo, double t_hi) {
  double acc = 0.0;
  int m = 0;
  for (std::size_t k = 0; k < times.size() && k < series.size(); ++k)
    if (times[k] >= t_lo && times[k] <= t_hi) {
      acc += series[k];
      ++m;
    }
  if (m == 0) throw validation_error("no samples inside the averaging window");
  return acc / m;
}

MblResult mbl_run(const std::vector<double>& times, const MblOptions& opt) {
  const int n = opt.n_sites;
  if (n < 2) throw validation_error("MBL run needs N >= 2");
  if (opt.seeds < 1) throw validation_error("MBL run needs at least one disorder seed");
  if (opt.w < 0.0) throw validation_error("disorder width must be >= 0");
  const CouplingMatrix j = power_law_couplings(n, opt.j0, opt.alpha);
  std::vector<bool> up(n);
  for (int i = 0; i < n; ++i) up[i] = (i % 2 == 1);
  const SpinState neel = SpinState::product(Axis::z, up);
  const std::size_t nt = times.size();

  MblResult out;
  out.times = times;
  for (int s = 0; s < opt.seeds; ++s) out.realization_seeds.push_back(derive_seed(opt.seed, static_cast<std::uint64_t>(s)));
  std::vector<std::vector<double>> d(opt.seeds);
  std::vector<Eigen::MatrixXd> sz(opt.seeds);

#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < opt.seeds; ++s) {
    std::mt19937_64 rng(out.realization_seeds[s]);
    Eigen::VectorXd dis(n);
    for (int i = 0; i < n; ++i) dis[i] = opt.w * (unit_double(rng()) - 0.5);
    HamiltonianSpec h(n);
    h.add_coupling(Axis::x, j);
    if (opt.disorder_axis == Axis::z) {
      h.add_field(Axis::z, Eigen::VectorXd::Constant(n, 0.5 * opt.b) + dis);
    } else {
      h.add_uniform_field(Axis::z, 0.5 * opt.b);
      h.add_field(opt.disorder_axis, dis);
    }
    HamiltonianOperator op(h);
    d[s].resize(nt);
    sz[s].resize(static_cast<Eigen::Index>(nt), n);
    sample_at(neel, op, times, opt.evolve, [&](std::size_t k, const SpinState& st) {
      const Eigen::VectorXd z = site_expectations(st, Axis::z);
      sz[s].row(static_cast<Eigen::Index>(k)) = z.transpose();
      d[s][k] = hamming_distance(z);
    });
  }

  out.d_mean.assign(nt, 0.0);
  out.d_stderr.assign(nt, 0.0);
  out.sz_mean = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nt), n);
  for (int s = 0; s < opt.seeds; ++s) {
    out.sz_mean += sz[s];
    for (std::size_t k = 0; k < nt; ++k) out.d_mean[k] += d[s][k];
  }
  out.sz_mean /= opt.seeds;
  for (auto& v : out.d_mean) v /= opt.seeds;
  if (opt.seeds > 1) {
    for (std::size_t k = 0; k < nt; ++k) {
      double var = 0.0;
      for (int s = 0; s < opt.seeds; ++s) var += (d[s][k] - out.d_mean[k]) * (d[s][k] - out.d_mean[k]);
      out.d_stderr[k] = std::sqrt(var / (opt.seeds - 1) / opt.seeds);
    }
  }
  return out;
}

// ---- discrete time crystal ----------------------------------------------------

void dtc_analyse(DtcResult& r) {
  const int n = static_cast<int>(r.magnetization.size());
  r.spectrum = fourier_spectrum(r.magnetization, 1.0, Window::hann, 4, true);
  const auto& f = r.spectrum.freq;
  const auto& a = r.spectrum.amp;
  Eigen::Index best = 0;
  a.maxCoeff(&best);
  r.peak_freq = f[best];
  r.peak_height = a[best];
  Eigen::Index half = 0;
  (f.array() - 0.5).abs().minCoeff(&half);
  r.subharmonic_height = a[half];
  const double bin = 1.0 / n;
  double total = 0.0, near = 0.0;
  for (Eigen::Index k = 0; k < f.size(); ++k) {
    const double p = a[k] * a[k];
    total += p;
    if (std::abs(f[k] - 0.5) <= bin + 1e-12) near += p;
  }
  r.subharmonic_weight = total > 0.0 ? near / total : 0.0;
}

DtcResult dtc_run(const DtcOptions& opt) {
  const int n = opt.n_sites;
  if (n < 1) throw validation_error("DTC run needs N >= 1");
  if (!(opt.g > 0.0)) throw validation_error("pulse Rabi rate must be > 0");
  if (opt.n_periods < 4) throw validation_error("DTC run needs at least 4 periods");
  if (opt.t_ising < 0.0 || opt.w < 0.0) throw validation_error("Ising time and disorder width must be >= 0");

  DtcResult out;
  std::mt19937_64 rng(derive_seed(opt.seed, 0));
  out.disorder.resize(n);
  for (int i = 0; i < n; ++i) out.disorder[i] = opt.w * (unit_double(rng()) - 0.5);

  FloquetSequence seq;
  seq.n_periods = opt.n_periods;
  HamiltonianSpec pulse(n);
  pulse.add_uniform_field(Axis::y, opt.g);
  seq.steps.emplace_back(pulse, std::numbers::pi * (1.0 - opt.epsilon) / (2.0 * opt.g));
  if (opt.t_ising > 0.0 && (opt.j0 != 0.0 || opt.w != 0.0)) {
    HamiltonianSpec ising(n);
    if (opt.j0 != 0.0 && n > 1) ising.add_coupling(Axis::x, power_law_couplings(n, opt.j0, opt.alpha));
    if (opt.w != 0.0) ising.add_field(opt.disorder_axis, Eigen::Map<const Eigen::VectorXd>(out.disorder.data(), n));
    seq.steps.emplace_back(ising, opt.t_ising);
  }
  floquet_run(
      SpinState::polarized(n, Axis::x, false), seq,
      [&](int, const SpinState& s) { out.magnetization.push_back(site_expectations(s, Axis::x).mean()); },
      opt.evolve);
  dtc_analyse(out);
  return out;
}

// ---- dynamical phase transitions ----------------------------------------------

DqptInitial parse_dqpt_initial(const std::string& s) {
  if (s == "x_ordered") return DqptInitial::x_ordered;
  if (s == "z_polarized") return DqptInitial::z_polarized;
  throw validation_error("unknown DQPT initial state '" + s + "'");
}

const char* dqpt_initial_name(DqptInitial k) { return k == DqptInitial::x_ordered ? "x_ordered" : "z_polarized"; }

namespace {

HamiltonianSpec dqpt_hamiltonian(const DqptOptions& opt) {
  HamiltonianSpec h(opt.n_sites);
  h.add_coupling(Axis::x, power_law_couplings(opt.n_sites, -opt.j0, opt.alpha));
  h.add_uniform_field(Axis::z, opt.b);
  return h;
}

}  // namespace

DqptResult dqpt_run(const std::vector<double>& times, const DqptOptions& opt) {
  const int n = opt.n_sites;
  if (n < 2) throw validation_error("DQPT run needs N >= 2");
  std::vector<SpinState> refs;
  if (opt.initial == DqptInitial::x_ordered) {
    refs.push_back(SpinState::polarized(n, Axis::x, false));
    refs.push_back(SpinState::polarized(n, Axis::x, true));
  } else {
    refs.push_back(SpinState::polarized(n, Axis::z, false));
  }
  HamiltonianOperator op(dqpt_hamiltonian(opt));
  DqptResult out;
  out.times = times;
  out.rate.resize(times.size());
  out.c2.resize(times.size());
  out.mx.resize(times.size());
  std::vector<double> branch(times.size(), 0.0);  // log P_down - log P_up
  sample_at(refs.front(), op, times, opt.evolve, [&](std::size_t k, const SpinState& s) {
    out.rate[k] = rate_function(s, refs);
    out.c2[k] = two_body_c2(s);
    out.mx[k] = site_expectations(s, Axis::x).mean();
    if (refs.size() == 2)
      branch[k] = std::log(std::norm(refs[0].amp.dot(s.amp))) - std::log(std::norm(refs[1].amp.dot(s.amp)));
  });
  if (refs.size() == 2) {
    for (std::size_t k = 1; k < times.size(); ++k) {
      const double a = branch[k - 1], b = branch[k];
      if (std::isfinite(a) && std::isfinite(b) && (a > 0.0) != (b > 0.0)) {
        out.kinks.push_back(static_cast<int>(k));
        out.kink_times.push_back(times[k - 1] + a / (a - b) * (times[k] - times[k - 1]));
      }
    }
  } else {
    out.kinks = detect_kinks(out.rate);
    for (int k : out.kinks) out.kink_times.push_back(times[static_cast<std::size_t>(k)]);
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double a = out.mx[k - 1], b = out.mx[k];
    if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0))
      out.mx_zero_times.push_back(times[k - 1] + a / (a - b) * (times[k] - times[k - 1]));
  }
  return out;
}

std::vector<C2SweepPoint> c2_sweep(const std::vector<double>& fields, double t_lo, double t_hi, int samples,
                                   const DqptOptions& base) {
  if (samples < 1 || !(t_hi >= t_lo) || t_lo < 0.0) throw validation_error("invalid C2 averaging window");
  std::vector<double> times(samples);
  for (int k = 0; k < samples; ++k) times[k] = samples == 1 ? t_lo : t_lo + (t_hi - t_lo) * k / (samples - 1);
  std::vector<C2SweepPoint> out(fields.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t f = 0; f < fields.size(); ++f) {
    DqptOptions o = base;
    o.b = fields[f];
    o.initial = DqptInitial::x_ordered;
    HamiltonianOperator op(dqpt_hamiltonian(o));
    double acc = 0.0;
    sample_at(SpinState::polarized(o.n_sites, Axis::x, false), op, times, o.evolve,
              [&](std::size_t, const SpinState& s) { acc += two_body_c2(s); });
    out[f] = {fields[f], acc / samples};
  }
  return out;
}

// ---- OTOC -----------------------------------------------------------------------

OtocResult otoc_run(const HamiltonianSpec& spec, const SpinState& initial, const std::vector<PauliFactor>& w,
                    const std::vector<PauliFactor>& v, const std::vector<double>& taus) {
  HamiltonianOperator op(spec);
  OtocResult out;
  out.taus = taus;
  for (double tau : taus) {
    const auto f = otoc(initial, w, v, op, tau);
    out.re.push_back(f.real());
    out.im.push_back(f.imag());
  }
  return out;
}

// ---- coupling benchmarks ------------------------------------------------------

std::vector<PairEstimate> benchmark_pairs(const CouplingMatrix& j, const std::vector<std::pair<int, int>>& pairs,
                                          const std::vector<double>& times) {
  const double dt = uniform_step(times);
  const int n = static_cast<int>(j.rows());
  std::vector<PairEstimate> out;
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw validation_error("invalid ion pair");
    PairEstimate e;
    e.i = std::min(a, b);
    e.j = std::max(a, b);
    e.j_true = j(a, b);
    CouplingMatrix jj = CouplingMatrix::Zero(2, 2);
    jj(0, 1) = jj(1, 0) = e.j_true;
    HamiltonianSpec h(2);
    h.add_coupling(Axis::x, jj);
    HamiltonianOperator op(h);
    std::vector<double> p(times.size());
    sample_at(SpinState::basis(2, 0), op, times, {1e-12, 20, 1e-13},
              [&](std::size_t k, const SpinState& s) { p[k] = std::norm(s.amp[0]); });
    // P = (1 + cos 2Jt) / 2 oscillates at f = |J| / pi cycles per ms.
    const Spectrum sp = fourier_spectrum(p, dt, Window::hann, 8, true);
    Eigen::Index k = 0;
    sp.amp.maxCoeff(&k);
    const double df = sp.freq.size() > 1 ? sp.freq[1] : 1.0;
    const double guess = std::numbers::pi * sp.freq[k];
    const auto cost = [&](double jt) {
      double acc = 0.0;
      for (std::size_t q = 0; q < times.size(); ++q) {
        const double c = std::cos(jt * times[q]);
        acc += (p[q] - c * c) * (p[q] - c * c);
      }
      return acc;
    };
    e.j_fit = e.j_true == 0.0 ? 0.0 : minimize_1d(cost, std::max(0.0, guess - 2 * std::numbers::pi * df),
                                                  guess + 2 * std::numbers::pi * df);
    e.error = std::abs(e.j_fit - std::abs(e.j_true));
    out.push_back(e);
  }
  return out;
}

ChainSpectrum benchmark_chain(const CouplingMatrix& j, const std::vector<double>& times) {
  const double dt = uniform_step(times);
  const int n = static_cast<int>(j.rows());
  HamiltonianSpec h(n);
  h.add_coupling(Axis::x, j);
  HamiltonianOperator op(h);
  ChainSpectrum out;
  out.times = times;
  out.signal.resize(times.size());
  sample_at(SpinState::polarized(n, Axis::z, false), op, times, {1e-12, 40, 1e-13},
            [&](std::size_t k, const SpinState& s) { out.signal[k] = site_expectations(s, Axis::z)[0]; });
  out.spectrum = fourier_spectrum(out.signal, dt, Window::hann, 8, true);
  const auto& a = out.spectrum.amp;
  const auto& f = out.spectrum.freq;
  const double top = a.maxCoeff();
  const double df = f.size() > 1 ? f[1] : 1.0;
  std::vector<std::pair<double, double>> found;  // (amplitude, angular frequency)
  for (Eigen::Index k = 1; k + 1 < a.size(); ++k) {
    if (a[k] < 0.1 * top || a[k] < a[k - 1] || a[k] <= a[k + 1]) continue;
    const double fk = minimize_1d([&](double x) { return -hann_amplitude(out.signal, dt, x); }, f[k] - df, f[k] + df);
    found.emplace_back(a[k], 2.0 * std::numbers::pi * fk);
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  for (const auto& [amp, w] : found) out.peaks.push_back(w);
  return out;
}

std::pair<double, double> three_ion_couplings(double omega_hi, double omega_lo) {
  return {0.25 * (omega_hi + omega_lo), 0.25 * (omega_hi - omega_lo)};
}

}  // namespace ionspin

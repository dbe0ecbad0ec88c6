#include "ionspin/couplings.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <string>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "ionspin/errors.hpp"
#include "ionspin/seeds.hpp"
#include "ionspin/units.hpp"

namespace ionspin {

double recoil_frequency(double delta_k, double mass) {
  return units::per_ms(units::hbar * delta_k * delta_k / (2.0 * mass));
}

namespace {

void check_resonance(const IonCrystal& crystal, double mu) {
  for (int m = 0; m < crystal.size(); ++m) {
    const double w = crystal.mode_freqs[m];
    if (std::abs(mu - w) <= 1e-9 * w)
      throw resonance_error("beatnote detuning is resonant with mode " + std::to_string(m + 1), m + 1);
  }
}

// K_ij = sum_m b_im b_jm / (2 w_m (mu - w_m))
Eigen::MatrixXd mode_kernel(const IonCrystal& crystal, double mu) {
  check_resonance(crystal, mu);
  const Eigen::MatrixXd& b = crystal.mode_matrix;
  Eigen::VectorXd w(crystal.size());
  for (int m = 0; m < crystal.size(); ++m)
    w[m] = 1.0 / (2.0 * crystal.mode_freqs[m] * (mu - crystal.mode_freqs[m]));
  return b * w.asDiagonal() * b.transpose();
}

void add_tone(Eigen::MatrixXd& j, const IonCrystal& crystal, double mu, const Eigen::VectorXd& rabi,
              double wrec) {
  if (rabi.size() != crystal.size()) throw validation_error("Rabi vector length differs from ion count");
  if ((rabi.array() < 0.0).any()) throw validation_error("Rabi frequencies must be >= 0");
  const Eigen::MatrixXd k = mode_kernel(crystal, mu);
  j += wrec * rabi.asDiagonal() * k * rabi.asDiagonal();
}

}  // namespace

CouplingMatrix ising_couplings(const IonCrystal& crystal, const BeamSpec& beam, double mass) {
  CouplingMatrix j = CouplingMatrix::Zero(crystal.size(), crystal.size());
  add_tone(j, crystal, beam.mu, beam.rabi, recoil_frequency(beam.delta_k, mass));
  j = 0.5 * (j + j.transpose()).eval();
  j.diagonal().setZero();
  return j;
}

CouplingMatrix multi_tone_couplings(const IonCrystal& crystal, const MultiToneSpec& spec, double mass) {
  CouplingMatrix j = CouplingMatrix::Zero(crystal.size(), crystal.size());
  const double wrec = recoil_frequency(spec.delta_k, mass);
  for (const auto& t : spec.tones) add_tone(j, crystal, t.mu, t.rabi, wrec);
  j = 0.5 * (j + j.transpose()).eval();
  j.diagonal().setZero();
  return j;
}

CouplingMatrix power_law_couplings(int n, double j0, double alpha) {
  CouplingMatrix j = CouplingMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) j(a, b) = j0 / std::pow(std::abs(a - b), alpha);
  return j;
}

PowerLawFit fit_power_law(const CouplingMatrix& j) {
  const auto n = j.rows();
  if (n < 3) throw validation_error("power-law fit needs at least 3 ions");
  PowerLawFit fit;
  std::vector<double> lx, ly;
  for (Eigen::Index d = 1; d < n; ++d) {
    double sum = 0.0;
    int count = 0;
    for (Eigen::Index i = 0; i + d < n; ++i) {
      const double v = std::abs(j(i, i + d));
      if (v == 0.0) {
        ++fit.excluded;
        continue;
      }
      sum += v;
      ++count;
    }
    if (count == 0) continue;
    lx.push_back(std::log(static_cast<double>(d)));
    ly.push_back(std::log(sum / count));
  }
  const auto m = static_cast<Eigen::Index>(lx.size());
  if (m < 2) throw numerical_error("power-law fit needs at least two nonzero distances");
  Eigen::MatrixXd a(m, 2);
  Eigen::VectorXd y(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    a(k, 0) = 1.0;
    a(k, 1) = lx[k];
    y[k] = ly[k];
  }
  const Eigen::Vector2d c = a.colPivHouseholderQr().solve(y);
  fit.j0 = std::exp(c[0]);
  fit.alpha = -c[1];
  fit.rms_residual = std::sqrt((a * c - y).squaredNorm() / m);
  return fit;
}

std::vector<std::pair<double, double>> design_windows(const IonCrystal& crystal, int n_tones,
                                                      const DesignBounds& bounds) {
  const int n = crystal.size();
  const double bw = n > 1 ? crystal.bandwidth() : 1e-3 * crystal.mode_freqs[0];
  const double guard = 1e-3 * bw;
  std::vector<std::pair<double, double>> w;
  if (!bounds.mu_windows.empty()) {
    if (static_cast<int>(bounds.mu_windows.size()) != n_tones)
      throw validation_error("design needs one detuning window per tone");
    w = bounds.mu_windows;
  } else {
    if (n_tones > n) throw validation_error("n_tones must not exceed the ion count");
    w.emplace_back(crystal.mode_freqs[0], crystal.mode_freqs[0] + std::max(bw, guard * 1e3));
    for (int k = 1; k < n_tones; ++k) w.emplace_back(crystal.mode_freqs[k], crystal.mode_freqs[k - 1]);
  }
  for (auto& [lo, hi] : w) {
    lo += guard;
    hi -= guard;
    if (!(hi > lo)) throw validation_error("detuning window is empty after the guard band");
    for (int m = 0; m < n; ++m) {
      const double f = crystal.mode_freqs[m];
      if (f > lo && f < hi) throw validation_error("detuning window contains a mode frequency");
    }
  }
  return w;
}

namespace {

struct DesignProblem {
  const CouplingMatrix* target;
  const IonCrystal* crystal;
  std::vector<std::pair<double, double>> windows;
  double rabi_max;
  double delta_k;
  double mass;
  double scale;  // 1 / ||target||^2, or 1
  int evaluations = 0;

  int n() const { return crystal->size(); }
  int tones() const { return static_cast<int>(windows.size()); }
  int dim() const { return tones() * (n() + 1); }

  MultiToneSpec decode(const double* p) const {
    MultiToneSpec s;
    s.delta_k = delta_k;
    for (int t = 0; t < tones(); ++t) {
      const double* q = p + t * (n() + 1);
      Tone tone;
      const auto [lo, hi] = windows[t];
      tone.mu = lo + (hi - lo) / (1.0 + std::exp(-q[0]));
      tone.rabi.resize(n());
      for (int i = 0; i < n(); ++i) tone.rabi[i] = std::min(q[1 + i] * q[1 + i], rabi_max);
      s.tones.push_back(std::move(tone));
    }
    return s;
  }

  double objective(const double* p) {
    ++evaluations;
    const CouplingMatrix j = multi_tone_couplings(*crystal, decode(p), mass);
    return (j - *target).squaredNorm() * scale;
  }
};

double gsl_objective(const gsl_vector* v, void* params) {
  auto* prob = static_cast<DesignProblem*>(params);
  return prob->objective(v->data);
}

// One simplex descent from x (overwritten with the best point). Returns the
// final objective and whether the simplex collapsed.
std::pair<double, bool> simplex(DesignProblem& prob, std::vector<double>& x, const std::vector<double>& step,
                                int max_iter) {
  const int d = prob.dim();
  gsl_multimin_function f{&gsl_objective, static_cast<size_t>(d), &prob};
  gsl_vector* gx = gsl_vector_alloc(d);
  gsl_vector* gs = gsl_vector_alloc(d);
  for (int k = 0; k < d; ++k) {
    gsl_vector_set(gx, k, x[k]);
    gsl_vector_set(gs, k, step[k]);
  }
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, d);
  gsl_multimin_fminimizer_set(s, &f, gx, gs);
  bool collapsed = false;
  for (int it = 0; it < max_iter; ++it) {
    if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-13) == GSL_SUCCESS) {
      collapsed = true;
      break;
    }
    if (s->fval < 1e-26) {
      collapsed = true;
      break;
    }
  }
  for (int k = 0; k < d; ++k) x[k] = gsl_vector_get(s->x, k);
  const double fv = s->fval;
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(gx);
  gsl_vector_free(gs);
  return {fv, collapsed};
}

}  // namespace

DesignResult design_couplings(const CouplingMatrix& target, const IonCrystal& crystal, int n_tones,
                              const DesignBounds& bounds, double delta_k, double mass) {
  const int n = crystal.size();
  if (target.rows() != n || target.cols() != n) throw validation_error("target size differs from ion count");
  if (n_tones < 1) throw validation_error("n_tones must be >= 1");
  if (!(bounds.rabi_max > 0.0)) throw validation_error("rabi_max must be > 0");
  if (bounds.restarts < 1) throw validation_error("restarts must be >= 1");

  gsl_set_error_handler_off();
  DesignProblem prob{&target, &crystal, design_windows(crystal, n_tones, bounds), bounds.rabi_max, delta_k, mass,
                     1.0};
  const double tnorm2 = target.squaredNorm();
  if (tnorm2 > 0.0) prob.scale = 1.0 / tnorm2;

  // The all-dark spec is always available and has residual ||target||.
  DesignResult best;
  {
    std::vector<double> zero(prob.dim(), 0.0);
    best.spec = prob.decode(zero.data());
    best.residual = std::sqrt(tnorm2);
    best.converged = tnorm2 == 0.0;
  }
  if (tnorm2 == 0.0) return best;

  const int d = prob.dim();
  const double smax = std::sqrt(bounds.rabi_max);
  for (int r = 0; r < bounds.restarts; ++r) {
    std::mt19937_64 rng(derive_seed(bounds.seed, static_cast<std::uint64_t>(r)));
    std::normal_distribution<double> nd(0.0, 1.0);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    std::vector<double> x(d), step(d);
    for (int t = 0; t < n_tones; ++t) {
      x[t * (n + 1)] = nd(rng);
      step[t * (n + 1)] = 1.0;
      for (int i = 0; i < n; ++i) {
        x[t * (n + 1) + 1 + i] = smax * std::sqrt(ud(rng));
        step[t * (n + 1) + 1 + i] = 0.3 * smax;
      }
    }
    double fv = std::numeric_limits<double>::infinity();
    bool collapsed = false;
    const int budget = bounds.max_evals;
    const int start = prob.evaluations;
    // Re-seeding the simplex around the incumbent escapes premature collapse.
    for (int round = 0; round < 40 && prob.evaluations - start < budget; ++round) {
      const double prev = fv;
      auto [f, c] = simplex(prob, x, step, budget);
      fv = f;
      collapsed = c;
      if (fv < 1e-24) break;
      if (round > 0 && prev - fv <= 1e-3 * prev) break;
      for (auto& s : step) s *= 0.5;
    }
    const double res = std::sqrt(fv * tnorm2);
    if (res < best.residual) {
      best.spec = prob.decode(x.data());
      best.residual = res;
      best.converged = collapsed || fv < 1e-24;
    }
  }
  best.evaluations = prob.evaluations;
  return best;
}

double spin_motion_error(const IonCrystal& crystal, const BeamSpec& beam, double tau, double mass) {
  check_resonance(crystal, beam.mu);
  const Eigen::MatrixXd eta = lamb_dicke_matrix(crystal, beam.delta_k, mass);
  double eps = 0.0;
  for (int m = 0; m < crystal.size(); ++m) {
    const double delta = beam.mu - crystal.mode_freqs[m];
    const double loop = 2.0 * (1.0 - std::cos(delta * tau));  // |1 - e^{-i delta tau}|^2
    for (int i = 0; i < crystal.size(); ++i) {
      const double a = eta(i, m) * beam.rabi[i] / (2.0 * delta);
      eps += a * a * loop;
    }
  }
  return eps;
}

double spontaneous_emission_rate(double gamma, double omega_rabi, double delta) {
  if (delta == 0.0) throw numerical_error("spontaneous emission rate: zero detuning");
  return gamma * omega_rabi / (4.0 * delta);
}

}  // namespace ionspin

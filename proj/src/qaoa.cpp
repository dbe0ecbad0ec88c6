#include "ionspin/qaoa.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "ionspin/errors.hpp"
#include "ionspin/measurement.hpp"
#include "ionspin/seeds.hpp"
#include "ionspin/spectrum.hpp"

namespace ionspin {

namespace {

using cd = std::complex<double>;

// Same 2x2 real rotation on every site: (d, u) -> (c00 d + c01 u, c10 d + c11 u).
void rotate_all(Eigen::VectorXcd& v, int n, double c00, double c01, double c10, double c11) {
  const auto dim = v.size();
  for (int i = 0; i < n; ++i) {
    const Eigen::Index m = Eigen::Index{1} << i;
    for (Eigen::Index b = 0; b < dim; ++b) {
      if (b & m) continue;
      const cd d = v[b], u = v[b | m];
      v[b] = c00 * d + c01 * u;
      v[b | m] = c10 * d + c11 * u;
    }
  }
}

}  // namespace

void QaoaParams::validate() const {
  if (p < 1) throw validation_error("QAOA needs p >= 1");
  if (static_cast<int>(gammas.size()) != p || static_cast<int>(betas.size()) != p)
    throw validation_error("QAOA angle vectors must have length p");
  for (int k = 0; k < p; ++k)
    if (!std::isfinite(gammas[k]) || !std::isfinite(betas[k])) throw validation_error("QAOA angles must be finite");
}

QaoaOptimizer parse_qaoa_optimizer(const std::string& s) {
  if (s == "grid") return QaoaOptimizer::grid;
  if (s == "gradient_descent") return QaoaOptimizer::gradient_descent;
  throw validation_error("unknown QAOA optimizer '" + s + "'");
}

const char* qaoa_optimizer_name(QaoaOptimizer o) { return o == QaoaOptimizer::grid ? "grid" : "gradient_descent"; }

QaoaProblem::QaoaProblem(const CouplingMatrix& j, double field) : n_(static_cast<int>(j.rows())), field_(field) {
  if (n_ < 2 || j.cols() != n_) throw validation_error("QAOA needs a square coupling matrix with N >= 2");
  if (n_ > 24) throw validation_error("QAOA state vector limited to N <= 24");
  const double j0 = j.cwiseAbs().maxCoeff();
  if (!(j0 > 0.0)) throw validation_error("QAOA needs a nonzero coupling matrix");
  j_ = j / j0;
  const auto dim = Eigen::Index{1} << n_;
  diag_.resize(dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    double e = 0.0;
    for (int a = 0; a < n_; ++a)
      for (int c = a + 1; c < n_; ++c) e += j_(a, c) * ((((b >> a) ^ (b >> c)) & 1) ? -1.0 : 1.0);
    diag_[b] = e;
  }
  const HamiltonianSpec h = hamiltonian();
  HamiltonianSpec neg(n_);
  for (const auto& c : h.couplings) neg.add_coupling(c.axis, -c.j);
  for (const auto& f : h.fields) neg.add_field(f.axis, -f.h);
  e_gs_ = eigenpairs(h, 0.0, 1).values[0];
  e_max_ = -eigenpairs(neg, 0.0, 1).values[0];
  if (!(e_max_ - e_gs_ > 1e-12)) throw validation_error("QAOA Hamiltonian has a flat spectrum");
}

HamiltonianSpec QaoaProblem::hamiltonian() const {
  HamiltonianSpec h(n_);
  h.add_coupling(Axis::x, j_);
  if (field_ != 0.0) h.add_uniform_field(Axis::y, field_);
  return h;
}

Eigen::VectorXcd QaoaProblem::frame_state(const QaoaParams& p) const {
  p.validate();
  Eigen::VectorXcd v = SpinState::polarized(n_, Axis::y, true).amp;
  for (int k = 0; k < p.p; ++k) {
    for (Eigen::Index b = 0; b < v.size(); ++b) v[b] *= std::polar(1.0, -p.gammas[k] * diag_[b]);
    // exp(-i beta (-sum s^y)) = prod exp(+i beta s^y)
    const double c = std::cos(p.betas[k]), s = std::sin(p.betas[k]);
    rotate_all(v, n_, c, -s, s, c);
  }
  return v;
}

SpinState QaoaProblem::state(const QaoaParams& p) const {
  SpinState s{n_, frame_state(p)};
  const double r = std::sqrt(0.5);
  rotate_all(s.amp, n_, -r, r, r, r);
  return s;
}

double QaoaProblem::energy(const QaoaParams& p) const {
  const SpinState s{n_, frame_state(p)};
  const double ea = (s.amp.cwiseAbs2().array() * diag_.array()).sum();
  return ea - field_ * site_expectations(s, Axis::y).sum();
}

double QaoaProblem::sampled_energy(const QaoaParams& p, std::uint64_t shots, std::uint64_t seed) const {
  if (shots == 0) throw validation_error("shots must be > 0");
  const SpinState s = state(p);
  // The x-basis outcome index uses the same bit convention as the Hadamard-frame diagonal.
  const ShotTable tx = measure(s, Axis::x, shots, derive_seed(seed, 0));
  const ShotTable ty = measure(s, Axis::y, shots, derive_seed(seed, 1));
  double ea = 0.0, eb = 0.0;
  for (const auto& [b, c] : tx.counts) ea += static_cast<double>(c) * diag_[static_cast<Eigen::Index>(b)];
  for (const auto& [b, c] : ty.counts) eb += static_cast<double>(c) * (2.0 * std::popcount(b) - n_);
  return ea / static_cast<double>(shots) + field_ * eb / static_cast<double>(shots);
}

QaoaResult qaoa_run(const CouplingMatrix& j, const QaoaOptions& opt) {
  if (opt.p < 1) throw validation_error("QAOA needs p >= 1");
  if (!(opt.gamma_max > 0.0) || !(opt.beta_max > 0.0)) throw validation_error("QAOA angle ranges must be > 0");
  const QaoaProblem prob(j, opt.field);
  QaoaResult out;
  out.e_ground = prob.e_ground();
  out.e_max = prob.e_max();
  const auto evaluate = [&](const QaoaParams& q) {
    const std::uint64_t k = out.evaluations++;
    return opt.shots == 0 ? prob.energy(q) : prob.sampled_energy(q, opt.shots, derive_seed(opt.seed, k));
  };

  if (opt.optimizer == QaoaOptimizer::grid) {
    if (opt.grid_points < 2) throw validation_error("QAOA grid needs >= 2 points per angle");
    const int dims = 2 * opt.p;
    const double total = std::pow(static_cast<double>(opt.grid_points), dims);
    if (total > 4e6) throw validation_error("QAOA grid too large; reduce p or grid_points");
    QaoaParams q{opt.p, std::vector<double>(opt.p), std::vector<double>(opt.p)};
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> idx(dims, 0);
    for (long long it = 0; it < static_cast<long long>(total); ++it) {
      for (int d = 0; d < dims; ++d) {
        const double a = (d < opt.p ? opt.gamma_max : opt.beta_max) * idx[d] / (opt.grid_points - 1);
        (d < opt.p ? q.gammas[d] : q.betas[d - opt.p]) = a;
      }
      const double e = evaluate(q);
      if (e < best) {
        best = e;
        out.params = q;
      }
      for (int d = 0; d < dims && ++idx[d] == opt.grid_points; ++d) idx[d] = 0;
    }
    out.energy = best;
    out.eta = prob.eta(best);
    out.converged = true;
    out.trajectory.push_back({0, out.params, out.eta});
    return out;
  }

  QaoaParams x{opt.p, std::vector<double>(opt.p, 0.5 * opt.gamma_max), std::vector<double>(opt.p, 0.5 * opt.beta_max)};
  double e = evaluate(x);
  double step = opt.step;
  out.trajectory.push_back({0, x, prob.eta(e)});
  const auto coord = [&](QaoaParams& q, int d) -> double& { return d < opt.p ? q.gammas[d] : q.betas[d - opt.p]; };
  int it = 0;
  while (it < opt.max_iterations) {
    std::vector<double> g(2 * opt.p);
    double gn = 0.0;
    for (int d = 0; d < 2 * opt.p; ++d) {
      QaoaParams a = x, b = x;
      coord(a, d) += opt.fd_delta;
      coord(b, d) -= opt.fd_delta;
      g[d] = (evaluate(a) - evaluate(b)) / (2.0 * opt.fd_delta);
      gn += g[d] * g[d];
    }
    gn = std::sqrt(gn);
    ++it;
    if (!(gn > 0.0)) {
      out.converged = true;
      break;
    }
    bool moved = false;
    while (step >= opt.min_step) {
      QaoaParams y = x;
      for (int d = 0; d < 2 * opt.p; ++d) coord(y, d) -= step * g[d] / gn;
      const double ey = evaluate(y);
      if (ey < e) {
        x = y;
        e = ey;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    out.trajectory.push_back({it, x, prob.eta(e)});
    if (!moved) {
      out.converged = true;
      break;
    }
  }
  out.iterations = it;
  out.diverged = !out.converged;
  out.params = x;
  out.energy = e;
  out.eta = prob.eta(e);
  return out;
}

}  // namespace ionspin

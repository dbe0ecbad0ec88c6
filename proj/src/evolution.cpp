#include "ionspin/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "ionspin/errors.hpp"

namespace ionspin {

using cd = std::complex<double>;

namespace {

// y = exp(-i h T) e1 for the symmetric tridiagonal T(alpha, beta) of size k.
Eigen::VectorXcd tridiag_expm_e1(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta, int k, double h) {
  if (k == 1) {
    Eigen::VectorXcd y(1);
    y[0] = std::exp(cd{0.0, -h * alpha[0]});
    return y;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(alpha.head(k), beta.head(k - 1), Eigen::ComputeEigenvectors);
  const Eigen::MatrixXd& q = es.eigenvectors();
  Eigen::VectorXcd c(k);
  for (int i = 0; i < k; ++i) c[i] = std::exp(cd{0.0, -h * es.eigenvalues()[i]}) * q(0, i);
  return q.cast<cd>() * c;
}

// beta_k * int_0^h |e_k^T exp(-i s T) e1| ds, the residual bound of the Krylov
// projection, with the integral bounded by h times the largest of 8 samples.
// Sampling the whole interval guards against the last component vanishing at
// the endpoint only.
double krylov_error(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta, int k, double h) {
  const double bk = beta[k - 1];
  if (k == 1) return bk * std::abs(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(alpha.head(k), beta.head(k - 1), Eigen::ComputeEigenvectors);
  const Eigen::MatrixXd& q = es.eigenvectors();
  double worst = 0.0;
  for (int m = 1; m <= 8; ++m) {
    const double s = h * m / 8.0;
    cd acc = 0.0;
    for (int i = 0; i < k; ++i) acc += q(k - 1, i) * std::exp(cd{0.0, -s * es.eigenvalues()[i]}) * q(0, i);
    worst = std::max(worst, std::abs(acc));
  }
  return bk * std::abs(h) * worst;
}

}  // namespace

void expm_apply(const HamiltonianOperator& op, double t_frozen, Eigen::VectorXcd& psi, double dt,
                const EvolveOptions& opt) {
  if (dt == 0.0) return;
  if (op.diagonal()) {
    const Eigen::VectorXd d = op.diagonal_at(t_frozen);
    for (Eigen::Index b = 0; b < psi.size(); ++b) psi[b] *= std::exp(cd{0.0, -dt * d[b]});
    return;
  }
  const auto dim = psi.size();
  const int mmax = static_cast<int>(std::min<Eigen::Index>(opt.krylov_dim, dim));
  const double dir = dt > 0 ? 1.0 : -1.0;
  double remaining = std::abs(dt);
  double h = remaining;
  const double scale = std::max(1.0, op.norm_bound(t_frozen));

  Eigen::MatrixXcd v(dim, mmax + 1);
  Eigen::VectorXd alpha(mmax), beta(mmax);
  Eigen::VectorXcd w;

  while (remaining > 0.0) {
    h = std::min(h, remaining);
    const double nrm = psi.norm();
    if (nrm == 0.0) return;
    v.col(0) = psi / nrm;
    int k = 0;
    bool ok = false;
    bool exact = false;
    for (int j = 0; j < mmax; ++j) {
      op.apply(t_frozen, v.col(j), w);
      alpha[j] = v.col(j).dot(w).real();
      // Full reorthogonalization, applied twice.
      for (int pass = 0; pass < 2; ++pass) w -= v.leftCols(j + 1) * (v.leftCols(j + 1).adjoint() * w);
      beta[j] = w.norm();
      k = j + 1;
      if (beta[j] <= 1e-13 * scale) {
        exact = true;
        ok = true;
        break;
      }
      v.col(j + 1) = w / beta[j];
      if (j >= 2 || j == mmax - 1) {
        if (krylov_error(alpha, beta, k, h) * nrm <= opt.tol) {
          ok = true;
          break;
        }
      }
    }
    while (!ok) {
      h *= 0.5;
      if (h < opt.min_step)
        throw integration_error("Krylov step size underflow at h=" + std::to_string(h), t_frozen, h);
      ok = krylov_error(alpha, beta, k, h) * nrm <= opt.tol;
    }
    // An invariant subspace makes the projection exact for any step.
    if (exact) h = remaining;
    const Eigen::VectorXcd y = tridiag_expm_e1(alpha, beta, k, dir * h);
    psi = nrm * (v.leftCols(k) * y);
    remaining = h >= remaining ? 0.0 : remaining - h;
  }
}

SpinState evolve(const SpinState& state, const HamiltonianOperator& op, double t0, double t1,
                 const EvolveOptions& opt) {
  if (!(opt.tol > 0.0)) throw validation_error("evolve tolerance must be > 0");
  if (state.n_sites != op.n_sites()) throw validation_error("state size differs from Hamiltonian size");
  SpinState out = state;
  if (t1 == t0) return out;
  if (op.time_independent()) {
    expm_apply(op, t0, out.amp, t1 - t0, opt);
    return out;
  }

  // Midpoint-frozen substeps; one step of h is compared with two steps of h/2.
  EvolveOptions inner = opt;
  inner.tol = std::max(1e-15, 1e-2 * opt.tol);
  const double dir = t1 > t0 ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);
  double done = 0.0;
  double h = std::min(span, 1.0 / std::max(1.0, op.norm_bound(t0)));
  Eigen::VectorXcd a, b;
  while (done < span) {
    h = std::min(h, span - done);
    const double t = t0 + dir * done;
    a = out.amp;
    expm_apply(op, t + dir * 0.5 * h, a, dir * h, inner);
    b = out.amp;
    expm_apply(op, t + dir * 0.25 * h, b, dir * 0.5 * h, inner);
    expm_apply(op, t + dir * 0.75 * h, b, dir * 0.5 * h, inner);
    const double err = (a - b).norm();
    const double fac = err > 0.0 ? 0.9 * std::cbrt(opt.tol / err) : 2.0;
    if (err <= opt.tol) {
      out.amp = b;
      done = (span - done <= h) ? span : done + h;
      h *= std::clamp(fac, 0.5, 2.0);
    } else {
      h *= std::clamp(fac, 0.2, 0.9);
      if (h < opt.min_step)
        throw integration_error("time-dependent step size underflow at t=" + std::to_string(t) +
                                    ", error estimate " + std::to_string(err),
                                t, h);
    }
  }
  return out;
}

SpinState evolve(const SpinState& state, const HamiltonianSpec& spec, double t0, double t1,
                 const EvolveOptions& opt) {
  HamiltonianOperator op(spec);
  return evolve(state, op, t0, t1, opt);
}

void evolve_observed(const SpinState& state, const HamiltonianOperator& op, double t0,
                     const std::vector<double>& times, const std::function<void(double, const SpinState&)>& observer,
                     const EvolveOptions& opt) {
  SpinState s = state;
  double t = t0;
  observer(t0, s);
  for (double tn : times) {
    if (tn < t) throw validation_error("observation times must be ascending and >= t0");
    if (tn > t) s = evolve(s, op, t, tn, opt);
    t = tn;
    observer(t, s);
  }
}

SpinState trotter_evolve(const SpinState& state, const std::vector<HamiltonianSpec>& specs, double t, int n_steps,
                         const EvolveOptions& opt) {
  if (n_steps < 1) throw validation_error("n_steps must be >= 1");
  std::vector<HamiltonianOperator> ops;
  for (const auto& s : specs) {
    if (!s.time_independent()) throw validation_error("Trotter factors must be time independent");
    ops.emplace_back(s);
  }
  SpinState out = state;
  const double dt = t / n_steps;
  for (int n = 0; n < n_steps; ++n)
    for (const auto& op : ops) expm_apply(op, 0.0, out.amp, dt, opt);
  return out;
}

double FloquetSequence::period() const {
  double t = 0.0;
  for (const auto& s : steps) t += s.second;
  return t;
}

void floquet_run(const SpinState& state, const FloquetSequence& seq,
                 const std::function<void(int, const SpinState&)>& observer, const EvolveOptions& opt) {
  if (seq.n_periods < 0) throw validation_error("n_periods must be >= 0");
  std::vector<HamiltonianOperator> ops;
  for (const auto& [spec, d] : seq.steps) {
    if (!(d > 0.0)) throw validation_error("Floquet step durations must be > 0");
    ops.emplace_back(spec);
  }
  SpinState s = state;
  for (int p = 0; p < seq.n_periods; ++p) {
    double t = p * seq.period();
    for (std::size_t k = 0; k < ops.size(); ++k) {
      const double d = seq.steps[k].second;
      s = evolve(s, ops[k], t, t + d, opt);
      t += d;
    }
    observer(p + 1, s);
  }
}

std::vector<SpinState> floquet_run(const SpinState& state, const FloquetSequence& seq, const EvolveOptions& opt) {
  std::vector<SpinState> out;
  out.reserve(seq.n_periods);
  floquet_run(state, seq, [&](int, const SpinState& s) { out.push_back(s); }, opt);
  return out;
}

}  // namespace ionspin

#include "ionspin/crystal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "ionspin/errors.hpp"

namespace ionspin {

void TrapSpec::validate() const {
  if (n_ions < 1) throw validation_error("trap.n_ions must be >= 1");
  if (!(omega_z > 0.0)) throw validation_error("trap.omega_z must be > 0");
  if (!(omega_x > omega_z)) throw validation_error("trap.omega_x must exceed trap.omega_z");
  if (!(quartic_coeff >= 0.0)) throw validation_error("trap.quartic_coeff must be >= 0");
  if (!(ion_mass > 0.0)) throw validation_error("trap.ion_mass must be > 0");
  if (!(charge > 0.0)) throw validation_error("trap.charge must be > 0");
}

double length_scale(const TrapSpec& trap) {
  const double wz = units::per_second(trap.omega_z);
  const double k = trap.charge * trap.charge / (4.0 * units::pi * units::eps0);
  return std::cbrt(k / (trap.ion_mass * wz * wz));
}

namespace {

double potential(double q, const Eigen::VectorXd& x) {
  const auto n = x.size();
  double v = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x2 = x[i] * x[i];
    v += 0.5 * (x2 + q * x2 * x2);
    for (Eigen::Index j = i + 1; j < n; ++j) v += 1.0 / std::abs(x[i] - x[j]);
  }
  return v;
}

Eigen::MatrixXd axial_hessian(double q, const Eigen::VectorXd& x) {
  const auto n = x.size();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    h(i, i) = 1.0 + 6.0 * q * x[i] * x[i];
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = std::abs(x[i] - x[j]);
      const double c = 2.0 / (d * d * d);
      h(i, i) += c;
      h(i, j) = -c;
    }
  }
  return h;
}

bool ordered(const Eigen::VectorXd& x) {
  for (Eigen::Index i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) return false;
  return true;
}

}  // namespace

Eigen::VectorXd potential_gradient(const TrapSpec& trap, const Eigen::VectorXd& x) {
  const auto n = x.size();
  const double q = trap.quartic_coeff;
  Eigen::VectorXd g(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    g[i] = x[i] + 2.0 * q * x[i] * x[i] * x[i];
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = x[i] - x[j];
      g[i] -= (d > 0 ? 1.0 : -1.0) / (d * d);
    }
  }
  return g;
}

Eigen::VectorXd equilibrium_positions(const TrapSpec& trap, const SolverOptions& opt) {
  trap.validate();
  const int n = trap.n_ions;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  if (n == 1) return x;

  // Rough half-length of a harmonic chain; the Newton iteration does the rest.
  const double half = 0.63 * std::pow(static_cast<double>(n), 0.6) * (n == 2 ? 1.0 : 1.2);
  for (int i = 0; i < n; ++i) x[i] = -half + 2.0 * half * i / (n - 1);

  const double q = trap.quartic_coeff;
  double v = potential(q, x);
  double res = potential_gradient(trap, x).cwiseAbs().maxCoeff();
  for (int it = 0; it < opt.max_iter; ++it) {
    if (res < opt.tol) break;
    const Eigen::VectorXd g = potential_gradient(trap, x);
    const Eigen::VectorXd step = axial_hessian(q, x).ldlt().solve(-g);
    double s = 1.0;
    bool accepted = false;
    for (int k = 0; k < 60; ++k, s *= 0.5) {
      const Eigen::VectorXd trial = x + s * step;
      if (!ordered(trial)) continue;
      const double vt = potential(q, trial);
      // Near the minimum the energy change drops below round-off; accept on
      // a gradient decrease instead.
      const double rt = potential_gradient(trap, trial).cwiseAbs().maxCoeff();
      if (vt < v || rt < res) {
        x = trial;
        v = vt;
        res = rt;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (!(res < 1e-10))
    throw solver_error("equilibrium solver did not converge, residual " + std::to_string(res), res);
  // Symmetrize round-off for symmetric potentials.
  Eigen::VectorXd sym = 0.5 * (x - x.reverse());
  if (potential_gradient(trap, sym).cwiseAbs().maxCoeff() <= res) x = sym;
  return x;
}

Modes transverse_modes(const TrapSpec& trap, const Eigen::VectorXd& positions) {
  const auto n = positions.size();
  const double ratio2 = (trap.omega_x / trap.omega_z) * (trap.omega_x / trap.omega_z);
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i, i) = ratio2;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = std::abs(positions[i] - positions[j]);
      const double c = 1.0 / (d * d * d);
      k(i, i) -= c;
      k(i, j) = c;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
  if (es.info() != Eigen::Success) throw spectral_error("transverse Hessian diagonalization failed");
  const Eigen::VectorXd ev = es.eigenvalues();
  if (ev.minCoeff() <= 0.0)
    throw instability_error("transverse mode unstable, Hessian eigenvalue " + std::to_string(ev.minCoeff()),
                            ev.minCoeff());

  Modes out;
  out.freqs.resize(n);
  out.vectors.resize(n, n);
  // Eigen returns ascending order; we want descending.
  for (Eigen::Index m = 0; m < n; ++m) {
    out.freqs[m] = trap.omega_z * std::sqrt(ev[n - 1 - m]);
    out.vectors.col(m) = es.eigenvectors().col(n - 1 - m);
  }

  // Degenerate clusters: replace the solver's arbitrary basis by projections
  // of the standard basis vectors, orthogonalized in order.
  Eigen::Index m = 0;
  while (m < n) {
    Eigen::Index e = m + 1;
    while (e < n && std::abs(out.freqs[e] - out.freqs[m]) <= 1e-10 * out.freqs[m]) ++e;
    const Eigen::Index size = e - m;
    if (size > 1) {
      const Eigen::MatrixXd q = out.vectors.middleCols(m, size);
      std::vector<Eigen::VectorXd> picked;
      for (Eigen::Index c = 0; c < n && static_cast<Eigen::Index>(picked.size()) < size; ++c) {
        Eigen::VectorXd v = q * q.row(c).transpose();
        for (const auto& p : picked) v -= p.dot(v) * p;
        const double nv = v.norm();
        if (nv > 1e-8) picked.push_back(v / nv);
      }
      for (Eigen::Index c = 0; c < size; ++c) out.vectors.col(m + c) = picked[c];
    }
    m = e;
  }

  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(out.vectors(i, c)) > 1e-8) {
        if (out.vectors(i, c) < 0) out.vectors.col(c) *= -1.0;
        break;
      }
    }
  }
  return out;
}

IonCrystal build_crystal(const TrapSpec& trap) {
  IonCrystal c;
  c.positions = equilibrium_positions(trap);
  Modes m = transverse_modes(trap, c.positions);
  c.mode_freqs = std::move(m.freqs);
  c.mode_matrix = std::move(m.vectors);
  return c;
}

Eigen::MatrixXd lamb_dicke_matrix(const IonCrystal& crystal, double delta_k, double mass) {
  if (!(delta_k > 0.0)) throw validation_error("delta_k must be > 0");
  const auto n = crystal.size();
  Eigen::MatrixXd eta(n, n);
  for (Eigen::Index m = 0; m < n; ++m) {
    const double w = units::per_second(crystal.mode_freqs[m]);
    if (!(w > 0.0)) throw numerical_error("zero mode frequency in Lamb-Dicke matrix");
    const double xi = std::sqrt(units::hbar / (2.0 * mass * w));
    eta.col(m) = crystal.mode_matrix.col(m) * (delta_k * xi);
  }
  return eta;
}

}  // namespace ionspin

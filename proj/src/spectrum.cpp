#include "ionspin/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>

#include "ionspin/errors.hpp"
#include "ionspin/seeds.hpp"

namespace ionspin {

using cd = std::complex<double>;

namespace {

Eigenpairs dense_lowest(const HamiltonianOperator& op, double t, int k) {
  const Eigen::MatrixXcd h = dense_matrix(op, t);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw spectral_error("dense diagonalization failed");
  return {es.eigenvalues().head(k), es.eigenvectors().leftCols(k)};
}

Eigenpairs lanczos_lowest(const HamiltonianOperator& op, double t, int k, const EigenOptions& opt) {
  const auto dim = static_cast<Eigen::Index>(op.dim());
  const double scale = std::max(1.0, op.norm_bound(t));
  Eigen::MatrixXcd q(dim, 0);
  std::vector<double> vals;
  Eigen::VectorXcd w, hx;

  for (int target = 0; target < k; ++target) {
    Eigen::VectorXcd x(dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
      const auto u = static_cast<std::uint64_t>(b) + 0x10000ULL * static_cast<std::uint64_t>(target + 1);
      x[b] = cd{unit_double(mix64(u)) - 0.5, unit_double(mix64(~u)) - 0.5};
    }
    bool converged = false;
    double last_res = 0.0;
    for (int restart = 0; restart < opt.max_restarts && !converged; ++restart) {
      for (int pass = 0; pass < 2; ++pass) x -= q * (q.adjoint() * x);
      x.normalize();
      const int m = static_cast<int>(std::min<Eigen::Index>(opt.lanczos_dim, dim - q.cols()));
      Eigen::MatrixXcd v(dim, m + 1);
      Eigen::VectorXd alpha(m), beta(m);
      v.col(0) = x;
      int kk = 0;
      for (int j = 0; j < m; ++j) {
        op.apply(t, v.col(j), w);
        alpha[j] = v.col(j).dot(w).real();
        for (int pass = 0; pass < 2; ++pass) {
          w -= q * (q.adjoint() * w);
          w -= v.leftCols(j + 1) * (v.leftCols(j + 1).adjoint() * w);
        }
        beta[j] = w.norm();
        kk = j + 1;
        if (beta[j] <= 1e-12 * scale) break;
        v.col(j + 1) = w / beta[j];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
      if (kk == 1) {
        x = v.col(0);
      } else {
        es.computeFromTridiagonal(alpha.head(kk), beta.head(kk - 1), Eigen::ComputeEigenvectors);
        x = v.leftCols(kk) * es.eigenvectors().col(0).cast<cd>();
      }
      for (int pass = 0; pass < 2; ++pass) x -= q * (q.adjoint() * x);
      x.normalize();
      op.apply(t, x, hx);
      const double theta = x.dot(hx).real();
      last_res = (hx - theta * x).norm();
      if (last_res < opt.residual_tol) {
        converged = true;
        q.conservativeResize(Eigen::NoChange, q.cols() + 1);
        q.col(q.cols() - 1) = x;
        vals.push_back(theta);
      }
    }
    if (!converged)
      throw spectral_error("Lanczos did not converge for eigenpair " + std::to_string(target) + ", residual " +
                           std::to_string(last_res));
  }

  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
  Eigenpairs out{Eigen::VectorXd(k), Eigen::MatrixXcd(dim, k)};
  for (int i = 0; i < k; ++i) {
    out.values[i] = vals[order[i]];
    out.vectors.col(i) = q.col(order[i]);
  }
  return out;
}

}  // namespace

Eigenpairs eigenpairs(const HamiltonianOperator& op, double t, int k, const EigenOptions& opt) {
  if (k < 1 || static_cast<std::uint64_t>(k) > op.dim()) throw validation_error("eigenpairs: k out of range");
  if (op.dim() <= opt.dense_limit) return dense_lowest(op, t, k);
  return lanczos_lowest(op, t, k, opt);
}

Eigenpairs eigenpairs(const HamiltonianSpec& spec, double t, int k, const EigenOptions& opt) {
  return eigenpairs(HamiltonianOperator(spec), t, k, opt);
}

CoupledGap first_coupled_gap(const HamiltonianSpec& spec, double t, Axis axis, int k, const EigenOptions& opt) {
  HamiltonianOperator op(spec);
  const int n = spec.n_sites;
  const auto dim = op.dim();
  int kk = k > 0 ? k : n + 2;
  kk = static_cast<int>(std::min<std::uint64_t>(kk, dim));

  while (true) {
    const Eigenpairs ep = eigenpairs(op, t, kk, opt);
    const double tol = 1e-9 * std::max(1.0, std::abs(ep.values[0]));
    auto cluster_end = [&](int start) {
      int e = start + 1;
      while (e < kk && ep.values[e] - ep.values[start] <= tol) ++e;
      return e;
    };

    const int g_end = cluster_end(0);
    if (g_end == kk && static_cast<std::uint64_t>(kk) < dim) {
      kk = static_cast<int>(std::min<std::uint64_t>(2 * kk, dim));
      continue;
    }
    CoupledGap out;
    out.ground_energy = ep.values[0];
    Eigen::VectorXcd g = ep.vectors.col(0);
    if (g_end > 1) {
      // Pick the even member of the ground manifold under prod_i s^axis_i.
      out.degenerate_ground = true;
      std::vector<PauliFactor> parity;
      for (int i = 0; i < n; ++i) parity.push_back({axis, i});
      const Eigen::MatrixXcd gm = ep.vectors.leftCols(g_end);
      Eigen::MatrixXcd pg(gm.rows(), g_end);
      for (int c = 0; c < g_end; ++c) {
        SpinState s{n, gm.col(c)};
        apply_pauli(s, parity);
        pg.col(c) = s.amp;
      }
      const Eigen::MatrixXcd pm = gm.adjoint() * pg;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (pm + pm.adjoint()));
      g = gm * es.eigenvectors().col(g_end - 1);  // largest parity eigenvalue
      g.normalize();
    }
    Eigen::VectorXcd og = Eigen::VectorXcd::Zero(g.size());
    for (int i = 0; i < n; ++i) {
      SpinState s{n, g};
      apply_pauli(s, {{axis, i}});
      og += s.amp;
    }
    for (int start = g_end; start < kk;) {
      const int e = cluster_end(start);
      const double overlap = (ep.vectors.middleCols(start, e - start).adjoint() * og).norm();
      if (overlap > 1e-8) {
        out.gap = ep.values[start] - ep.values[0];
        out.index = start;
        return out;
      }
      start = e;
    }
    if (static_cast<std::uint64_t>(kk) >= dim) throw spectral_error("no excited state couples to the ground state");
    kk = static_cast<int>(std::min<std::uint64_t>(2 * kk, dim));
  }
}

}  // namespace ionspin

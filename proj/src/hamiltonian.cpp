#include "ionspin/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>

#include "ionspin/errors.hpp"

namespace ionspin {

using cd = std::complex<double>;

namespace {

constexpr cd I{0.0, 1.0};
const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

inline bool bit(std::uint64_t b, int i) { return (b >> i) & 1U; }

// Components (down, up) of the +/- eigenvector of sigma_axis.
std::pair<cd, cd> site_vector(Axis axis, bool up) {
  switch (axis) {
    case Axis::z: return up ? std::pair<cd, cd>{0.0, 1.0} : std::pair<cd, cd>{1.0, 0.0};
    case Axis::x: return up ? std::pair<cd, cd>{inv_sqrt2, inv_sqrt2} : std::pair<cd, cd>{-inv_sqrt2, inv_sqrt2};
    case Axis::y: return up ? std::pair<cd, cd>{I * inv_sqrt2, inv_sqrt2} : std::pair<cd, cd>{-I * inv_sqrt2, inv_sqrt2};
  }
  return {};
}

}  // namespace

Axis parse_axis(const std::string& s) {
  if (s == "x") return Axis::x;
  if (s == "y") return Axis::y;
  if (s == "z") return Axis::z;
  throw validation_error("unknown axis '" + s + "'");
}

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::x: return "x";
    case Axis::y: return "y";
    case Axis::z: return "z";
  }
  return "?";
}

SpinState SpinState::basis(int n, std::uint64_t index) {
  SpinState s;
  s.n_sites = n;
  s.amp = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(s.dim()));
  if (index >= s.dim()) throw validation_error("basis index out of range");
  s.amp[static_cast<Eigen::Index>(index)] = 1.0;
  return s;
}

SpinState SpinState::polarized(int n, Axis axis, bool up) { return product(axis, std::vector<bool>(n, up)); }

SpinState SpinState::product(Axis axis, const std::vector<bool>& up) {
  SpinState s;
  s.n_sites = static_cast<int>(up.size());
  const auto dim = static_cast<Eigen::Index>(s.dim());
  s.amp.resize(dim);
  std::vector<std::pair<cd, cd>> v;
  for (bool u : up) v.push_back(site_vector(axis, u));
  for (Eigen::Index b = 0; b < dim; ++b) {
    cd a = 1.0;
    for (int i = 0; i < s.n_sites; ++i) a *= bit(b, i) ? v[i].second : v[i].first;
    s.amp[b] = a;
  }
  return s;
}

double fidelity(const SpinState& a, const SpinState& b) { return std::norm(a.amp.dot(b.amp)); }

Schedule Schedule::constant(double c) {
  Schedule s;
  s.kind_ = Kind::constant;
  s.a_ = c;
  return s;
}

Schedule Schedule::piecewise_linear(std::vector<double> t, std::vector<double> v) {
  if (t.size() != v.size() || t.empty()) throw validation_error("piecewise-linear schedule needs matching samples");
  for (std::size_t k = 1; k < t.size(); ++k)
    if (!(t[k] > t[k - 1])) throw validation_error("schedule times must be strictly increasing");
  Schedule s;
  s.kind_ = Kind::piecewise_linear;
  s.t_ = std::move(t);
  s.v_ = std::move(v);
  return s;
}

Schedule Schedule::exponential(double a, double tau, double offset) {
  if (!(tau > 0.0)) throw validation_error("exponential schedule needs tau > 0");
  Schedule s;
  s.kind_ = Kind::exponential;
  s.a_ = a;
  s.b_ = tau;
  s.c_ = offset;
  return s;
}

Schedule Schedule::sinusoidal(double offset, double amplitude, double omega, double phase) {
  Schedule s;
  s.kind_ = Kind::sinusoidal;
  s.a_ = offset;
  s.b_ = amplitude;
  s.c_ = omega;
  s.d_ = phase;
  return s;
}

Schedule Schedule::tabulated(std::vector<double> t, std::vector<double> v) {
  Schedule s;
  s.kind_ = Kind::tabulated;
  s.table_ = MonotoneCubic(std::move(t), std::move(v));
  return s;
}

double Schedule::operator()(double t) const {
  switch (kind_) {
    case Kind::constant: return a_;
    case Kind::exponential: return a_ * std::exp(-t / b_) + c_;
    case Kind::sinusoidal: return a_ + b_ * std::sin(c_ * t + d_);
    case Kind::tabulated: return table_(t);
    case Kind::piecewise_linear: {
      if (t <= t_.front()) return v_.front();
      if (t >= t_.back()) return v_.back();
      const auto it = std::upper_bound(t_.begin(), t_.end(), t);
      const auto k = static_cast<std::size_t>(it - t_.begin());
      const double f = (t - t_[k - 1]) / (t_[k] - t_[k - 1]);
      return v_[k - 1] + f * (v_[k] - v_[k - 1]);
    }
  }
  return 0.0;
}

HamiltonianSpec& HamiltonianSpec::add_coupling(Axis a, CouplingMatrix j, Schedule s) {
  couplings.push_back({a, std::move(j), std::move(s)});
  return *this;
}

HamiltonianSpec& HamiltonianSpec::add_field(Axis a, Eigen::VectorXd h, Schedule s) {
  fields.push_back({a, std::move(h), std::move(s)});
  return *this;
}

HamiltonianSpec& HamiltonianSpec::add_uniform_field(Axis a, double b, Schedule s) {
  return add_field(a, Eigen::VectorXd::Constant(n_sites, b), std::move(s));
}

bool HamiltonianSpec::time_independent() const {
  for (const auto& c : couplings)
    if (!c.schedule.is_constant()) return false;
  for (const auto& f : fields)
    if (!f.schedule.is_constant()) return false;
  return true;
}

void HamiltonianSpec::validate() const {
  if (n_sites < 1 || n_sites > 30) throw validation_error("n_sites must be in [1, 30]");
  for (const auto& c : couplings) {
    if (c.j.rows() != n_sites || c.j.cols() != n_sites)
      throw validation_error("coupling matrix size differs from n_sites");
    const double scale = std::max(1.0, c.j.cwiseAbs().maxCoeff());
    if ((c.j - c.j.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw validation_error("coupling matrix is not symmetric");
    if (c.j.diagonal().cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw validation_error("coupling matrix has a nonzero diagonal");
  }
  for (const auto& f : fields)
    if (f.h.size() != n_sites) throw validation_error("field vector length differs from n_sites");
}

double HamiltonianSpec::norm_bound(double t) const {
  double s = 0.0;
  for (const auto& c : couplings) s += 0.5 * c.j.cwiseAbs().sum() * std::abs(c.schedule(t));
  for (const auto& f : fields) s += f.h.cwiseAbs().sum() * std::abs(f.schedule(t));
  return s;
}

HamiltonianOperator::HamiltonianOperator(const HamiltonianSpec& spec)
    : spec_(spec), n_(spec.n_sites), static_ok_(spec.time_independent()) {
  spec_.validate();
  const auto dim = static_cast<Eigen::Index>(this->dim());
  int term = 0;
  for (const auto& c : spec_.couplings) {
    schedules_.push_back(c.schedule);
    if (c.axis == Axis::z) {
      Eigen::VectorXd d = Eigen::VectorXd::Zero(dim);
      for (Eigen::Index b = 0; b < dim; ++b) {
        double v = 0.0;
        for (int i = 0; i < n_; ++i)
          for (int j = i + 1; j < n_; ++j)
            if (c.j(i, j) != 0.0) v += c.j(i, j) * ((bit(b, i) == bit(b, j)) ? 1.0 : -1.0);
        d[b] = v;
      }
      diags_.push_back({std::move(d), term});
    } else {
      for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) {
          if (c.j(i, j) == 0.0) continue;
          if (c.axis == Axis::x)
            pairs_.push_back({i, j, c.j(i, j), 0.0, term, -1});
          else
            pairs_.push_back({i, j, 0.0, c.j(i, j), -1, term});
        }
    }
    ++term;
  }
  for (const auto& f : spec_.fields) {
    schedules_.push_back(f.schedule);
    if (f.axis == Axis::z) {
      Eigen::VectorXd d = Eigen::VectorXd::Zero(dim);
      for (Eigen::Index b = 0; b < dim; ++b) {
        double v = 0.0;
        for (int i = 0; i < n_; ++i) v += f.h[i] * (bit(b, i) ? 1.0 : -1.0);
        d[b] = v;
      }
      diags_.push_back({std::move(d), term});
    } else {
      for (int i = 0; i < n_; ++i) {
        if (f.h[i] == 0.0) continue;
        if (f.axis == Axis::x)
          singles_.push_back({i, f.h[i], 0.0, term, -1});
        else
          singles_.push_back({i, 0.0, f.h[i], -1, term});
      }
    }
    ++term;
  }
}

Eigen::VectorXd HamiltonianOperator::diagonal_at(double t) const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim()));
  for (const auto& dg : diags_) d += schedules_[dg.term](t) * dg.d;
  return d;
}

void HamiltonianOperator::apply(double t, const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
  const auto dim = static_cast<Eigen::Index>(this->dim());
  if (in.size() != dim) throw validation_error("state dimension differs from Hamiltonian dimension");
  out.resize(dim);
  std::vector<double> w(schedules_.size());
  for (std::size_t k = 0; k < schedules_.size(); ++k) w[k] = schedules_[k](t);

  struct P {
    std::uint64_t mask;
    int i, j;
    double cx, cy;
  };
  struct S {
    std::uint64_t mask;
    int i;
    double cx, cy;
  };
  std::vector<P> pairs;
  pairs.reserve(pairs_.size());
  for (const auto& p : pairs_) {
    const double cx = p.term_x >= 0 ? p.jxx * w[p.term_x] : 0.0;
    const double cy = p.term_y >= 0 ? p.jyy * w[p.term_y] : 0.0;
    pairs.push_back({(std::uint64_t{1} << p.i) | (std::uint64_t{1} << p.j), p.i, p.j, cx, cy});
  }
  std::vector<S> singles;
  singles.reserve(singles_.size());
  for (const auto& s : singles_) {
    const double cx = s.term_x >= 0 ? s.hx * w[s.term_x] : 0.0;
    const double cy = s.term_y >= 0 ? s.hy * w[s.term_y] : 0.0;
    singles.push_back({std::uint64_t{1} << s.i, s.i, cx, cy});
  }
  const Eigen::VectorXd diag = diagonal_at(t);
  const bool has_diag = !diags_.empty();

#pragma omp parallel for schedule(static) if (dim > 4096)
  for (Eigen::Index b = 0; b < dim; ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    cd acc = has_diag ? diag[b] * in[b] : cd{0.0};
    for (const auto& p : pairs) {
      const double c = p.cx + ((bit(ub, p.i) == bit(ub, p.j)) ? -p.cy : p.cy);
      acc += c * in[static_cast<Eigen::Index>(ub ^ p.mask)];
    }
    for (const auto& s : singles) {
      const cd c{s.cx, bit(ub, s.i) ? -s.cy : s.cy};
      acc += c * in[static_cast<Eigen::Index>(ub ^ s.mask)];
    }
    out[b] = acc;
  }
}

SpinState apply_hamiltonian(const HamiltonianSpec& spec, double t, const SpinState& state) {
  if (state.n_sites != spec.n_sites) throw validation_error("state size differs from Hamiltonian size");
  HamiltonianOperator op(spec);
  SpinState out{state.n_sites, {}};
  op.apply(t, state.amp, out.amp);
  return out;
}

double energy(const HamiltonianOperator& op, double t, const SpinState& state) {
  Eigen::VectorXcd h;
  op.apply(t, state.amp, h);
  return state.amp.dot(h).real();
}

Eigen::MatrixXcd dense_matrix(const HamiltonianOperator& op, double t) {
  const auto dim = static_cast<Eigen::Index>(op.dim());
  Eigen::MatrixXcd m(dim, dim);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim), col;
  for (Eigen::Index k = 0; k < dim; ++k) {
    e[k] = 1.0;
    op.apply(t, e, col);
    m.col(k) = col;
    e[k] = 0.0;
  }
  return m;
}

void apply_pauli(SpinState& s, const std::vector<PauliFactor>& ops) {
  const auto dim = static_cast<Eigen::Index>(s.dim());
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    if (it->site < 0 || it->site >= s.n_sites) throw validation_error("Pauli site out of range");
    const std::uint64_t m = std::uint64_t{1} << it->site;
    if (it->axis == Axis::z) {
      for (Eigen::Index b = 0; b < dim; ++b)
        if (!bit(b, it->site)) s.amp[b] = -s.amp[b];
      continue;
    }
    for (Eigen::Index b = 0; b < dim; ++b) {
      if (bit(b, it->site)) continue;
      const auto b1 = static_cast<Eigen::Index>(static_cast<std::uint64_t>(b) | m);
      const cd lo = s.amp[b], hi = s.amp[b1];
      if (it->axis == Axis::x) {
        s.amp[b] = hi;
        s.amp[b1] = lo;
      } else {
        // sigma_y |up> = i |down>, sigma_y |down> = -i |up>
        s.amp[b] = I * hi;
        s.amp[b1] = -I * lo;
      }
    }
  }
}

cd expect_pauli(const SpinState& s, const std::vector<PauliFactor>& ops) {
  SpinState t = s;
  apply_pauli(t, ops);
  return s.amp.dot(t.amp);
}

Eigen::VectorXd site_expectations(const SpinState& s, Axis axis) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(s.n_sites);
  const auto dim = static_cast<Eigen::Index>(s.dim());
  for (int i = 0; i < s.n_sites; ++i) {
    const std::uint64_t m = std::uint64_t{1} << i;
    double acc = 0.0;
    for (Eigen::Index b = 0; b < dim; ++b) {
      if (axis == Axis::z) {
        acc += std::norm(s.amp[b]) * (bit(b, i) ? 1.0 : -1.0);
      } else if (!bit(b, i)) {
        const auto b1 = static_cast<Eigen::Index>(static_cast<std::uint64_t>(b) | m);
        const cd z = std::conj(s.amp[b]) * s.amp[b1];
        // z = conj(a_down) a_up; <s_x> = 2 Re z, <s_y> = -2 Im z
        acc += axis == Axis::x ? 2.0 * z.real() : -2.0 * z.imag();
      }
    }
    e[i] = acc;
  }
  return e;
}

void write_state(const std::string& path, const SpinState& s) {
  static_assert(std::endian::native == std::endian::little, "state dump assumes a little-endian host");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw error("cannot open " + path);
  const std::uint64_t n = static_cast<std::uint64_t>(s.n_sites);
  f.write(reinterpret_cast<const char*>(&n), 8);
  for (Eigen::Index k = 0; k < s.amp.size(); ++k) {
    const double re = s.amp[k].real(), im = s.amp[k].imag();
    f.write(reinterpret_cast<const char*>(&re), 8);
    f.write(reinterpret_cast<const char*>(&im), 8);
  }
  if (!f) throw error("write failed: " + path);
}

SpinState read_state(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw error("cannot open " + path);
  std::uint64_t n = 0;
  f.read(reinterpret_cast<char*>(&n), 8);
  if (!f || n > 30) throw validation_error("bad state header in " + path);
  SpinState s;
  s.n_sites = static_cast<int>(n);
  s.amp.resize(static_cast<Eigen::Index>(s.dim()));
  for (Eigen::Index k = 0; k < s.amp.size(); ++k) {
    double re = 0.0, im = 0.0;
    f.read(reinterpret_cast<char*>(&re), 8);
    f.read(reinterpret_cast<char*>(&im), 8);
    s.amp[k] = {re, im};
  }
  if (!f) throw validation_error("truncated state file " + path);
  return s;
}

}  // namespace ionspin

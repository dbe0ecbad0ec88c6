#include "ionspin/ramp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ionspin/errors.hpp"
#include "ionspin/observables.hpp"

namespace ionspin {

HamiltonianSpec transverse_ising(const CouplingMatrix& j, double b, Axis coupling_axis, Axis field_axis,
                                 Schedule field_schedule) {
  HamiltonianSpec h(static_cast<int>(j.rows()));
  h.add_coupling(coupling_axis, j);
  h.add_uniform_field(field_axis, b, std::move(field_schedule));
  return h;
}

RampKind parse_ramp_kind(const std::string& s) {
  if (s == "linear") return RampKind::linear;
  if (s == "exponential") return RampKind::exponential;
  if (s == "local_adiabatic") return RampKind::local_adiabatic;
  throw validation_error("unknown ramp kind '" + s + "'");
}

const char* ramp_kind_name(RampKind k) {
  switch (k) {
    case RampKind::linear: return "linear";
    case RampKind::exponential: return "exponential";
    case RampKind::local_adiabatic: return "local_adiabatic";
  }
  return "?";
}

GapTable gap_table(std::vector<double> b, std::vector<double> gap) {
  for (double g : gap)
    if (!(g > 1e-9)) throw numerical_error("gap vanishes on the ramp path; the adiabatic time diverges");
  GapTable t;
  t.interp = MonotoneCubic(b, gap);
  t.b = std::move(b);
  t.gap = std::move(gap);
  return t;
}

GapTable gap_table(const CouplingMatrix& j, double b0, int points, Axis coupling_axis, Axis field_axis) {
  if (!(b0 > 0.0)) throw validation_error("B0 must be > 0");
  if (points < 3) throw validation_error("gap table needs >= 3 points");
  std::vector<double> b(points), gap(points);
  for (int k = 0; k < points; ++k) {
    b[k] = b0 * k / (points - 1);
    gap[k] = first_coupled_gap(transverse_ising(j, b[k], coupling_axis, field_axis), 0.0, field_axis).gap;
  }
  return gap_table(std::move(b), std::move(gap));
}

double RampProfile::operator()(double time) const {
  switch (kind) {
    case RampKind::linear: return time >= t_f ? 0.0 : b0 * (1.0 - std::max(0.0, time) / t_f);
    case RampKind::exponential: return b0 * std::exp(-std::max(0.0, time) / tau);
    case RampKind::local_adiabatic: return curve(time);
  }
  return 0.0;
}

Schedule RampProfile::unit_schedule() const {
  switch (kind) {
    case RampKind::linear: return Schedule::piecewise_linear({0.0, t_f}, {1.0, 0.0});
    case RampKind::exponential: return Schedule::exponential(1.0, tau);
    case RampKind::local_adiabatic: {
      std::vector<double> u(b.size());
      for (std::size_t k = 0; k < b.size(); ++k) u[k] = b[k] / b0;
      return Schedule::tabulated(t, u);
    }
  }
  return Schedule::constant();
}

RampProfile linear_ramp(double b0, double t_f) {
  if (!(b0 > 0.0) || !(t_f > 0.0)) throw validation_error("ramp needs B0 > 0 and t_f > 0");
  RampProfile r;
  r.kind = RampKind::linear;
  r.b0 = b0;
  r.t_f = t_f;
  r.t = {0.0, t_f};
  r.b = {b0, 0.0};
  return r;
}

RampProfile exponential_ramp(double b0, double t_f) {
  if (!(b0 > 0.0) || !(t_f > 0.0)) throw validation_error("ramp needs B0 > 0 and t_f > 0");
  RampProfile r;
  r.kind = RampKind::exponential;
  r.b0 = b0;
  r.t_f = t_f;
  r.tau = t_f / 6.0;
  for (int k = 0; k <= 400; ++k) {
    const double t = t_f * k / 400.0;
    r.t.push_back(t);
    r.b.push_back(b0 * std::exp(-t / r.tau));
  }
  return r;
}

namespace {

double inv_gap2(const GapTable& g, double b) {
  const double d = g(b);
  return 1.0 / (d * d);
}

constexpr int kSubdivisions = 20;

}  // namespace

double local_adiabatic_time(const GapTable& gaps, double gamma) {
  // Composite Simpson on the interpolant.
  const int n = 2 * kSubdivisions * static_cast<int>(gaps.b.size());
  const double h = gaps.b0() / n;
  double s = inv_gap2(gaps, 0.0) + inv_gap2(gaps, gaps.b0());
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * inv_gap2(gaps, k * h);
  return gamma * s * h / 3.0;
}

RampProfile local_adiabatic_ramp_gamma(const GapTable& gaps, double gamma) {
  if (!(gamma > 0.0)) throw validation_error("adiabaticity parameter must be > 0");
  RampProfile r;
  r.kind = RampKind::local_adiabatic;
  r.b0 = gaps.b0();
  r.gamma = gamma;
  // Classical RK4 on dt/dB = gamma / Delta(B)^2 from B0 down to 0.
  const int steps = kSubdivisions * static_cast<int>(gaps.b.size());
  const double h = r.b0 / steps;
  double t = 0.0;
  r.t.push_back(0.0);
  r.b.push_back(r.b0);
  for (int k = 0; k < steps; ++k) {
    const double b = r.b0 - k * h;
    const double k1 = gamma * inv_gap2(gaps, b);
    const double k2 = gamma * inv_gap2(gaps, b - 0.5 * h);
    const double k4 = gamma * inv_gap2(gaps, b - h);
    t += h * (k1 + 4.0 * k2 + k4) / 6.0;  // k3 == k2 for an autonomous right-hand side
    r.t.push_back(t);
    r.b.push_back(k + 1 == steps ? 0.0 : b - h);
  }
  r.t_f = t;
  r.curve = MonotoneCubic(r.t, r.b);
  return r;
}

RampProfile local_adiabatic_ramp(const GapTable& gaps, double t_f) {
  if (!(t_f > 0.0)) throw validation_error("ramp needs t_f > 0");
  const double gamma = t_f / local_adiabatic_time(gaps, 1.0);
  RampProfile r = local_adiabatic_ramp_gamma(gaps, gamma);
  // Remove the residual quadrature mismatch so the ramp ends exactly at t_f.
  const double s = t_f / r.t_f;
  for (double& x : r.t) x *= s;
  r.t_f = t_f;
  r.curve = MonotoneCubic(r.t, r.b);
  return r;
}

RampProfile build_ramp(RampKind kind, double b0, double t_f, const GapTable* gaps) {
  switch (kind) {
    case RampKind::linear: return linear_ramp(b0, t_f);
    case RampKind::exponential: return exponential_ramp(b0, t_f);
    case RampKind::local_adiabatic:
      if (gaps == nullptr) throw validation_error("local adiabatic ramp needs a gap table");
      if (std::abs(gaps->b0() - b0) > 1e-12 * b0) throw validation_error("gap table does not end at B0");
      return local_adiabatic_ramp(*gaps, t_f);
  }
  throw validation_error("unknown ramp kind");
}

double ramp_time_at_adiabaticity(RampKind kind, const GapTable& gaps, double gamma) {
  const int n = kSubdivisions * static_cast<int>(gaps.b.size());
  double worst = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double b = gaps.b0() * k / n;
    const double v = kind == RampKind::exponential ? b * inv_gap2(gaps, b) : inv_gap2(gaps, b);
    worst = std::max(worst, v);
  }
  switch (kind) {
    case RampKind::linear: return gamma * gaps.b0() * worst;
    case RampKind::exponential: return 6.0 * gamma * worst;
    case RampKind::local_adiabatic: return local_adiabatic_time(gaps, gamma);
  }
  return 0.0;
}

std::vector<std::uint64_t> ising_ground_manifold(const CouplingMatrix& j, double rel_tol) {
  const int n = static_cast<int>(j.rows());
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<double> e(dim);
  double lo = std::numeric_limits<double>::infinity();
  for (std::uint64_t b = 0; b < dim; ++b) {
    double v = 0.0;
    for (int a = 0; a < n; ++a)
      for (int c = a + 1; c < n; ++c)
        v += j(a, c) * ((((b >> a) ^ (b >> c)) & 1U) ? -1.0 : 1.0);
    e[b] = v;
    lo = std::min(lo, v);
  }
  const double tol = rel_tol * std::max(1.0, j.cwiseAbs().maxCoeff());
  std::vector<std::uint64_t> out;
  for (std::uint64_t b = 0; b < dim; ++b)
    if (e[b] <= lo + tol) out.push_back(b);
  return out;
}

AdiabaticResult run_adiabatic(const CouplingMatrix& j, const RampProfile& ramp, const std::vector<double>& record,
                              const AdiabaticOptions& opt) {
  const int n = static_cast<int>(j.rows());
  const HamiltonianSpec spec = transverse_ising(j, ramp.b0, opt.coupling_axis, opt.field_axis, ramp.unit_schedule());
  HamiltonianOperator op(spec);
  AdiabaticResult out;
  out.target = ising_ground_manifold(j);
  std::vector<double> times = record;
  std::sort(times.begin(), times.end());
  times.erase(std::remove(times.begin(), times.end(), 0.0), times.end());
  evolve_observed(
      SpinState::polarized(n, opt.field_axis, false), op, 0.0, times,
      [&](double t, const SpinState& s) {
        const Distribution d = Distribution::exact(s, opt.coupling_axis);
        AdiabaticSample a;
        a.t = t;
        a.field = ramp(t);
        for (auto b : out.target) a.p_ground += d.prob[static_cast<Eigen::Index>(b)];
        if (opt.decoherence_time > 0.0) a.p_ground *= std::exp(-t / opt.decoherence_time);
        if (n >= 2) {
          a.mx_scaled = magnetization_mx(d).scaled;
          a.binder_scaled = binder_cumulant(d).scaled;
        }
        out.samples.push_back(a);
        out.final_state = s;
      },
      opt.evolve);
  return out;
}

Prevalence most_prevalent(const Distribution& d) {
  Prevalence p;
  double second = -1.0;
  p.p_top = -1.0;
  for (Eigen::Index b = 0; b < d.prob.size(); ++b) {
    const double v = d.prob[b];
    if (v > p.p_top) {
      second = p.p_top;
      p.p_top = v;
      p.state = static_cast<std::uint64_t>(b);
    } else if (v > second) {
      second = v;
    }
  }
  second = std::max(second, 0.0);
  p.margin = p.p_top - second;
  p.tie = p.margin <= 1e-12;
  p.required_shots = p.tie ? std::numeric_limits<double>::infinity()
                           : (p.p_top * p.p_top + second * second) / (p.margin * p.margin);
  return p;
}

Prevalence most_prevalent(const ShotTable& t) { return most_prevalent(Distribution::from_shots(t)); }

std::vector<double> spectroscopy_scan(const CouplingMatrix& j, double b0, double bp, const std::vector<double>& omegas,
                                      const SpectroscopyOptions& opt) {
  double probe = opt.probe_time;
  if (probe <= 0.0) {
    if (!(bp > 0.0)) throw validation_error("spectroscopy needs Bp > 0 or an explicit probe time");
    probe = 3.0 / bp;
  }
  const HamiltonianSpec h0 = transverse_ising(j, b0, opt.coupling_axis, opt.field_axis);
  const Eigenpairs g = eigenpairs(h0, 0.0, 1);
  const SpinState ground{static_cast<int>(j.rows()), g.vectors.col(0)};
  std::vector<double> out;
  for (double w : omegas) {
    const HamiltonianSpec h =
        transverse_ising(j, 1.0, opt.coupling_axis, opt.field_axis, Schedule::sinusoidal(b0, bp, w));
    const SpinState s = evolve(ground, h, 0.0, probe, opt.evolve);
    out.push_back(1.0 - fidelity(ground, s));
  }
  return out;
}

}  // namespace ionspin

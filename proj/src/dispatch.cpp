#include "ionspin/dispatch.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "ionspin/crystal.hpp"
#include "ionspin/errors.hpp"
#include "ionspin/protocols.hpp"
#include "ionspin/qaoa.hpp"
#include "ionspin/ramp.hpp"
#include "ionspin/seeds.hpp"

namespace ionspin {

namespace {

using json = nlohmann::json;
using units::khz;
using units::to_khz;

double num(const json& p, const char* k) { return p.at(k).get<double>(); }
int integer(const json& p, const char* k) { return static_cast<int>(p.at(k).get<std::int64_t>()); }
std::string str(const json& p, const char* k) { return p.at(k).get<std::string>(); }
Axis axis(const json& p, const char* k) { return parse_axis(str(p, k)); }

std::vector<double> linspace(double a, double b, int steps) {
  std::vector<double> t(steps + 1);
  for (int k = 0; k <= steps; ++k) t[k] = a + (b - a) * k / steps;
  return t;
}

SpinState initial_state(int n, Axis ax, const std::string& kind, bool flip_center) {
  std::vector<bool> up(n, kind == "up");
  if (kind == "neel")
    for (int i = 0; i < n; ++i) up[i] = (i % 2 == 1);
  if (flip_center) up[(n - 1) / 2] = !up[(n - 1) / 2];
  return SpinState::product(ax, up);
}

IonCrystal crystal_of(const RunConfig& c) { return build_crystal(trap_spec(c)); }

void add_histogram(ProtocolResult& r, const RunConfig& c, const SpinState& s, Axis basis) {
  if (c.shots == 0) return;
  const std::uint64_t seed = derive_seed(c.seed, 0);
  r.derived_seeds.push_back(seed);
  r.histogram = measure(s, basis, c.shots, seed);
  const Prevalence p = most_prevalent(*r.histogram);
  r.scalars["most_prevalent"] = bitstring(p.state, s.n_sites);
  r.scalars["most_prevalent_margin"] = p.margin;
  r.scalars["required_shots"] = std::isfinite(p.required_shots) ? json(p.required_shots) : json(nullptr);
  r.scalars["prevalence_tie"] = p.tie;
}

ProtocolResult run_crystal(const RunConfig& c) {
  const TrapSpec t = trap_spec(c);
  const IonCrystal x = build_crystal(t);
  ProtocolResult r;
  r.series.header = {"index", "position", "mode_freq_khz"};
  for (int i = 0; i < x.size(); ++i) r.series.add({double(i + 1), x.positions[i], to_khz(x.mode_freqs[i])});
  r.scalars["n_ions"] = x.size();
  r.scalars["length_scale_um"] = length_scale(t) * 1e6;
  r.scalars["bandwidth_khz"] = to_khz(x.bandwidth());
  return r;
}

ProtocolResult run_couplings(const RunConfig& c) {
  const CouplingMatrix j = coupling_matrix(c);
  ProtocolResult r;
  if (j.rows() >= 3) {
    const PowerLawFit f = fit_power_law(j);
    r.scalars["fit_j0_khz"] = to_khz(f.j0);
    r.scalars["fit_alpha"] = f.alpha;
    r.scalars["fit_rms_residual"] = f.rms_residual;
  }
  r.scalars["j_max_khz"] = to_khz(j.cwiseAbs().maxCoeff());
  const auto& sweep = c.params.at("sweep_detunings");
  if (sweep.empty()) {
    r.series.header = {"i", "j", "j_khz"};
    for (int a = 0; a < j.rows(); ++a)
      for (int b = a + 1; b < j.cols(); ++b) r.series.add({double(a + 1), double(b + 1), to_khz(j(a, b))});
    return r;
  }
  if (str(c.couplings, "kind") != "trap") throw validation_error("params.sweep_detunings: needs couplings.kind = trap");
  const IonCrystal x = crystal_of(c);
  const double mass = num(c.trap, "mass_amu") * units::amu;
  r.series.header = {"detuning_khz", "fit_alpha", "fit_j0_khz", "fit_rms_residual"};
  for (const auto& d : sweep) {
    BeamSpec b{Eigen::VectorXd::Constant(x.size(), khz(num(c.beam, "rabi"))), x.mode_freqs[0] + khz(d.get<double>()),
               num(c.beam, "delta_k")};
    const PowerLawFit f = fit_power_law(ising_couplings(x, b, mass));
    r.series.add({d.get<double>(), f.alpha, to_khz(f.j0), f.rms_residual});
  }
  return r;
}

ProtocolResult run_design(const RunConfig& c) {
  const IonCrystal x = crystal_of(c);
  const double mass = num(c.trap, "mass_amu") * units::amu;
  const auto& p = c.params;
  const CouplingMatrix target = power_law_couplings(x.size(), khz(num(p, "target_j0")), num(p, "target_alpha"));
  DesignBounds bounds;
  bounds.rabi_max = khz(num(p, "rabi_max"));
  bounds.restarts = integer(p, "restarts");
  bounds.max_evals = integer(p, "max_evals");
  bounds.seed = c.seed;
  const double dk = c.beam.is_null() ? 2.0 * 2.0 * units::pi / 355e-9 : num(c.beam, "delta_k");
  const DesignResult d = design_couplings(target, x, integer(p, "n_tones"), bounds, dk, mass);
  const CouplingMatrix got = multi_tone_couplings(x, d.spec, mass);
  ProtocolResult r;
  r.series.header = {"i", "j", "target_khz", "achieved_khz"};
  for (int a = 0; a < x.size(); ++a)
    for (int b = a + 1; b < x.size(); ++b)
      r.series.add({double(a + 1), double(b + 1), to_khz(target(a, b)), to_khz(got(a, b))});
  r.scalars["residual_khz"] = to_khz(d.residual);
  r.scalars["relative_residual"] = d.residual / target.norm();
  r.scalars["converged"] = d.converged;
  r.scalars["evaluations"] = d.evaluations;
  json tones = json::array();
  for (const auto& t : d.spec.tones) {
    json rabi = json::array();
    for (Eigen::Index i = 0; i < t.rabi.size(); ++i) rabi.push_back(to_khz(t.rabi[i]));
    tones.push_back({{"mu_khz", to_khz(t.mu)}, {"rabi_khz", rabi}});
  }
  r.scalars["tones"] = tones;
  return r;
}

ProtocolResult run_evolve(const RunConfig& c) {
  const CouplingMatrix j = coupling_matrix(c);
  const int n = static_cast<int>(j.rows());
  const auto& p = c.params;
  HamiltonianSpec h(n);
  h.add_coupling(axis(p, "coupling_axis"), j);
  if (num(p, "field") != 0.0) h.add_uniform_field(axis(p, "field_axis"), khz(num(p, "field")));
  const SpinState s0 = initial_state(n, axis(p, "initial_axis"), str(p, "initial"), p.at("flip_center").get<bool>());
  const Axis m = axis(p, "measure_axis");
  const auto times = linspace(0.0, num(p, "t_end"), integer(p, "steps"));
  ProtocolResult r;
  r.series.header = {"t"};
  for (int i = 0; i < n; ++i) r.series.header.push_back(std::string("s") + axis_name(m) + "_" + std::to_string(i + 1));
  HamiltonianOperator op(h);
  SpinState last = s0;
  std::vector<double> tail(times.begin() + 1, times.end());
  evolve_observed(
      s0, op, 0.0, tail,
      [&](double t, const SpinState& s) {
        std::vector<double> row{t};
        const Eigen::VectorXd e = site_expectations(s, m);
        row.insert(row.end(), e.data(), e.data() + n);
        r.series.add(std::move(row));
        last = s;
      },
      {num(p, "tol"), 40, 1e-13});
  r.scalars["final_energy_khz"] = to_khz(energy(op, times.back(), last));
  add_histogram(r, c, last, m);
  return r;
}

ProtocolResult run_ramp(const RunConfig& c) {
  const CouplingMatrix j = coupling_matrix(c);
  const auto& p = c.params;
  const Axis ca = axis(p, "coupling_axis"), fa = axis(p, "field_axis");
  double b0 = khz(num(p, "b0"));
  if (b0 == 0.0) b0 = 5.0 * j.cwiseAbs().maxCoeff();
  const RampKind kind = parse_ramp_kind(str(p, "kind"));
  ProtocolResult r;
  GapTable gaps;
  const bool need_gaps = kind == RampKind::local_adiabatic;
  if (need_gaps) {
    gaps = gap_table(j, b0, integer(p, "gap_points"), ca, fa);
    const auto it = std::min_element(gaps.gap.begin(), gaps.gap.end());
    r.scalars["critical_gap_khz"] = to_khz(*it);
    r.scalars["critical_field_khz"] = to_khz(gaps.b[static_cast<std::size_t>(it - gaps.gap.begin())]);
  }
  const RampProfile ramp = build_ramp(kind, b0, num(p, "t_f"), need_gaps ? &gaps : nullptr);
  AdiabaticOptions opt;
  opt.coupling_axis = ca;
  opt.field_axis = fa;
  opt.decoherence_time = num(p, "decoherence_time");
  const auto record = linspace(0.0, ramp.t_f, integer(p, "record"));
  const AdiabaticResult a = run_adiabatic(j, ramp, std::vector<double>(record.begin() + 1, record.end()), opt);
  r.series.header = {"t", "field_khz", "p_ground", "mx_scaled", "binder_scaled"};
  for (const auto& s : a.samples) r.series.add({s.t, to_khz(s.field), s.p_ground, s.mx_scaled, s.binder_scaled});
  r.scalars["b0_khz"] = to_khz(b0);
  r.scalars["t_f"] = ramp.t_f;
  r.scalars["final_p_ground"] = a.samples.back().p_ground;
  if (kind == RampKind::exponential) r.scalars["tau"] = ramp.tau;
  if (kind == RampKind::local_adiabatic) r.scalars["gamma"] = ramp.gamma;
  add_histogram(r, c, a.final_state, ca);
  return r;
}

ProtocolResult run_spectroscopy(const RunConfig& c) {
  const CouplingMatrix j = coupling_matrix(c);
  const auto& p = c.params;
  const auto f = linspace(num(p, "omega_min"), num(p, "omega_max"), integer(p, "omega_steps"));
  std::vector<double> w;
  for (double x : f) w.push_back(khz(x));
  SpectroscopyOptions opt;
  opt.probe_time = num(p, "probe_time");
  opt.coupling_axis = axis(p, "coupling_axis");
  opt.field_axis = axis(p, "field_axis");
  const auto resp = spectroscopy_scan(j, khz(num(p, "b0")), khz(num(p, "bp")), w, opt);
  ProtocolResult r;
  r.series.header = {"omega_mod_khz", "response"};
  for (std::size_t k = 0; k < f.size(); ++k) r.series.add({f[k], resp[k]});
  const auto it = std::max_element(resp.begin(), resp.end());
  r.scalars["peak_omega_khz"] = f[static_cast<std::size_t>(it - resp.begin())];
  r.scalars["peak_response"] = *it;
  r.scalars["bp_over_jmax"] = num(p, "bp") / to_khz(j.cwiseAbs().maxCoeff());
  return r;
}

ProtocolResult run_quench(const RunConfig& c) {
  const CouplingMatrix j = coupling_matrix(c);
  const int n = static_cast<int>(j.rows());
  const auto& p = c.params;
  const QuenchKind kind = parse_quench_kind(str(p, "kind"));
  HamiltonianSpec h = str(p, "model") == "xy" ? xy_hopping(j) : HamiltonianSpec(n);
  if (str(p, "model") == "ising") h.add_coupling(Axis::x, j);
  if (num(p, "field") != 0.0) h.add_uniform_field(Axis::z, khz(num(p, "field")));
  const SpinState s0 = initial_state(n, Axis::z, "down", kind == QuenchKind::local);
  QuenchOptions opt;
  const std::string rule = str(p, "rule");
  opt.rule = rule == "half_peak" || (rule == "auto" && kind == QuenchKind::local) ? ArrivalRule::half_peak
                                                                                  : ArrivalRule::threshold;
  opt.threshold = num(p, "threshold");
  const auto times = linspace(0.0, num(p, "t_end"), integer(p, "steps"));
  const QuenchResult q = quench_run(kind, h, s0, times, opt);
  ProtocolResult r;
  r.series.header = {"t"};
  for (Eigen::Index k = 0; k < q.signal.cols(); ++k) r.series.header.push_back("signal_r" + std::to_string(k));
  for (std::size_t k = 0; k < times.size(); ++k) {
    std::vector<double> row{times[k]};
    for (Eigen::Index rr = 0; rr < q.signal.cols(); ++rr) row.push_back(q.signal(static_cast<Eigen::Index>(k), rr));
    r.series.add(std::move(row));
  }
  r.scalars["cone_exponent"] = std::isfinite(q.cone_exponent) ? json(q.cone_exponent) : json(nullptr);
  json arr = json::array();
  for (double a : q.arrival) arr.push_back(std::isfinite(a) ? json(a) : json(nullptr));
  r.scalars["arrival_times"] = arr;
  return r;
}

ProtocolResult run_mbl(const RunConfig& c) {
  const auto& p = c.params;
  MblOptions o;
  o.n_sites = integer(p, "n");
  o.j0 = khz(num(p, "j0"));
  o.alpha = num(p, "alpha");
  o.b = num(p, "b_over_j0") * o.j0;
  o.w = num(p, "w_over_j0") * o.j0;
  o.seeds = integer(p, "seeds");
  o.seed = c.seed;
  o.disorder_axis = axis(p, "disorder_axis");
  const auto tj = linspace(0.0, num(p, "t_end_j0"), integer(p, "steps"));
  std::vector<double> times;
  for (double x : tj) times.push_back(x / o.j0);
  const MblResult m = mbl_run(times, o);
  ProtocolResult r;
  r.series.header = {"t_j0", "hamming", "hamming_stderr"};
  for (std::size_t k = 0; k < times.size(); ++k) r.series.add({tj[k], m.d_mean[k], m.d_stderr[k]});
  if (tj.back() >= 5.0) r.scalars["hamming_plateau"] = window_average(tj, m.d_mean, 5.0, std::min(10.0, tj.back()));
  r.derived_seeds = m.realization_seeds;
  return r;
}

ProtocolResult run_dtc(const RunConfig& c) {
  const auto& p = c.params;
  DtcOptions o;
  o.n_sites = integer(p, "n");
  o.epsilon = num(p, "epsilon");
  o.g = khz(num(p, "g"));
  o.j0 = khz(num(p, "j0"));
  o.alpha = num(p, "alpha");
  o.t_ising = num(p, "t_ising");
  o.w = khz(num(p, "w"));
  o.n_periods = integer(p, "n_periods");
  o.disorder_axis = axis(p, "disorder_axis");
  o.seed = c.seed;
  const DtcResult d = dtc_run(o);
  ProtocolResult r;
  r.series.header = {"period", "magnetization"};
  for (std::size_t k = 0; k < d.magnetization.size(); ++k) r.series.add({double(k + 1), d.magnetization[k]});
  r.scalars["peak_freq"] = d.peak_freq;
  r.scalars["peak_height"] = d.peak_height;
  r.scalars["subharmonic_height"] = d.subharmonic_height;
  r.scalars["subharmonic_weight"] = d.subharmonic_weight;
  r.derived_seeds.push_back(derive_seed(c.seed, 0));
  return r;
}

ProtocolResult run_dqpt(const RunConfig& c) {
  const auto& p = c.params;
  DqptOptions o;
  o.n_sites = integer(p, "n");
  o.j0 = khz(num(p, "j0"));
  o.alpha = num(p, "alpha");
  o.b = num(p, "b_over_j0") * o.j0;
  o.initial = parse_dqpt_initial(str(p, "initial"));
  const auto tj = linspace(0.0, num(p, "t_end_j0"), integer(p, "steps"));
  std::vector<double> times;
  for (double x : tj) times.push_back(x / o.j0);
  const DqptResult d = dqpt_run(times, o);
  ProtocolResult r;
  r.series.header = {"t_j0", "rate", "c2", "mx"};
  for (std::size_t k = 0; k < times.size(); ++k) r.series.add({tj[k], d.rate[k], d.c2[k], d.mx[k]});
  json kinks = json::array(), zeros = json::array();
  for (double t : d.kink_times) kinks.push_back(t * o.j0);
  for (double t : d.mx_zero_times) zeros.push_back(t * o.j0);
  r.scalars["kink_times_j0"] = kinks;
  r.scalars["mx_zero_times_j0"] = zeros;
  const auto& fields = p.at("sweep_fields_over_j0");
  if (!fields.empty()) {
    std::vector<double> b;
    for (const auto& f : fields) b.push_back(f.get<double>() * o.j0);
    const auto sw = c2_sweep(b, num(p, "sweep_t_lo_j0") / o.j0, num(p, "sweep_t_hi_j0") / o.j0,
                             integer(p, "sweep_samples"), o);
    json s = json::array();
    for (const auto& q : sw) s.push_back({{"b_over_j0", q.b / o.j0}, {"c2", q.c2}});
    r.scalars["c2_sweep"] = s;
  }
  return r;
}

ProtocolResult run_otoc(const RunConfig& c) {
  const CouplingMatrix j = coupling_matrix(c);
  const int n = static_cast<int>(j.rows());
  const auto& p = c.params;
  HamiltonianSpec h(n);
  h.add_coupling(axis(p, "coupling_axis"), j);
  if (num(p, "field") != 0.0) h.add_uniform_field(axis(p, "field_axis"), khz(num(p, "field")));
  const int ws = integer(p, "w_site"), vs0 = integer(p, "v_site");
  const int vs = vs0 < 0 ? n + vs0 : vs0;
  if (ws < 0 || ws >= n) throw validation_error("params.w_site: outside the chain");
  if (vs < 0 || vs >= n) throw validation_error("params.v_site: outside the chain");
  const auto taus = linspace(0.0, num(p, "tau_end"), integer(p, "steps"));
  const OtocResult o = otoc_run(h, initial_state(n, axis(p, "initial_axis"), str(p, "initial"), false),
                                {{axis(p, "w_axis"), ws}}, {{axis(p, "v_axis"), vs}}, taus);
  ProtocolResult r;
  r.series.header = {"tau", "re", "im"};
  for (std::size_t k = 0; k < taus.size(); ++k) r.series.add({taus[k], o.re[k], o.im[k]});
  return r;
}

ProtocolResult run_qaoa(const RunConfig& c) {
  const CouplingMatrix j = coupling_matrix(c);
  const auto& p = c.params;
  QaoaOptions o;
  o.p = integer(p, "p");
  o.optimizer = parse_qaoa_optimizer(str(p, "optimizer"));
  o.field = num(p, "field");
  o.grid_points = integer(p, "grid_points");
  o.fd_delta = num(p, "fd_delta");
  o.step = num(p, "step");
  o.max_iterations = integer(p, "max_iterations");
  o.gamma_max = num(p, "gamma_max");
  o.beta_max = num(p, "beta_max");
  o.shots = c.shots;
  o.seed = c.seed;
  const QaoaResult q = qaoa_run(j, o);
  ProtocolResult r;
  r.series.header = {"iteration"};
  for (int k = 0; k < o.p; ++k) r.series.header.push_back("gamma_" + std::to_string(k + 1));
  for (int k = 0; k < o.p; ++k) r.series.header.push_back("beta_" + std::to_string(k + 1));
  r.series.header.push_back("eta");
  for (const auto& it : q.trajectory) {
    std::vector<double> row{double(it.iteration)};
    row.insert(row.end(), it.params.gammas.begin(), it.params.gammas.end());
    row.insert(row.end(), it.params.betas.begin(), it.params.betas.end());
    row.push_back(it.eta);
    r.series.add(std::move(row));
  }
  r.scalars["eta"] = q.eta;
  r.scalars["energy"] = q.energy;
  r.scalars["e_ground"] = q.e_ground;
  r.scalars["e_max"] = q.e_max;
  r.scalars["iterations"] = q.iterations;
  r.scalars["evaluations"] = q.evaluations;
  r.scalars["converged"] = q.converged;
  r.scalars["diverged"] = q.diverged;
  if (c.shots > 0) r.derived_seeds.push_back(derive_seed(c.seed, 0));
  return r;
}

ProtocolResult run_bench(const RunConfig& c) {
  const CouplingMatrix j = coupling_matrix(c);
  const int n = static_cast<int>(j.rows());
  const auto& p = c.params;
  const auto times = linspace(0.0, num(p, "t_end"), integer(p, "steps"));
  ProtocolResult r;
  if (str(p, "mode") == "pairs") {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& q : p.at("pairs")) pairs.emplace_back(q[0].get<int>() - 1, q[1].get<int>() - 1);
    if (pairs.empty())
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    const auto est = benchmark_pairs(j, pairs, times);
    r.series.header = {"i", "j", "j_true_khz", "j_fit_khz", "error_khz"};
    double worst = 0.0;
    for (const auto& e : est) {
      r.series.add({double(e.i + 1), double(e.j + 1), to_khz(e.j_true), to_khz(e.j_fit), to_khz(e.error)});
      worst = std::max(worst, to_khz(e.error));
    }
    r.scalars["max_error_khz"] = worst;
    return r;
  }
  const ChainSpectrum s = benchmark_chain(j, times);
  r.series.header = {"freq_khz", "amplitude"};
  for (Eigen::Index k = 0; k < s.spectrum.freq.size(); ++k) r.series.add({s.spectrum.freq[k], s.spectrum.amp[k]});
  json peaks = json::array();
  for (double w : s.peaks) peaks.push_back(to_khz(w));
  r.scalars["peaks_khz"] = peaks;
  if (n == 3 && s.peaks.size() >= 2) {
    const double hi = std::max(s.peaks[0], s.peaks[1]), lo = std::min(s.peaks[0], s.peaks[1]);
    const auto [j1, j2] = three_ion_couplings(hi, lo);
    r.scalars["j1_khz"] = to_khz(j1);
    r.scalars["j2_khz"] = to_khz(j2);
  }
  return r;
}

}  // namespace

TrapSpec trap_spec(const RunConfig& c) {
  if (c.trap.is_null()) throw validation_error("trap: section required");
  TrapSpec t;
  t.n_ions = integer(c.trap, "n_ions");
  t.omega_z = khz(num(c.trap, "omega_z"));
  t.omega_x = khz(num(c.trap, "omega_x"));
  t.quartic_coeff = num(c.trap, "quartic_coeff");
  t.ion_mass = num(c.trap, "mass_amu") * units::amu;
  t.charge = num(c.trap, "charge_e") * units::e_charge;
  t.validate();
  return t;
}

CouplingMatrix coupling_matrix(const RunConfig& c) {
  if (c.couplings.is_null()) throw validation_error("couplings: section required");
  const std::string kind = str(c.couplings, "kind");
  if (kind == "power_law")
    return power_law_couplings(integer(c.couplings, "n"), khz(num(c.couplings, "j0")), num(c.couplings, "alpha"));
  if (kind == "matrix") {
    const auto& m = c.couplings.at("matrix");
    const auto n = static_cast<Eigen::Index>(m.size());
    CouplingMatrix j(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b) j(a, b) = khz(m[a][b].get<double>());
    for (Eigen::Index a = 0; a < n; ++a) {
      if (j(a, a) != 0.0) throw validation_error("couplings.matrix: diagonal must be zero");
      for (Eigen::Index b = 0; b < n; ++b)
        if (std::abs(j(a, b) - j(b, a)) > 1e-12 * std::max(1.0, std::abs(j(a, b))))
          throw validation_error("couplings.matrix: must be symmetric");
    }
    return j;
  }
  const IonCrystal x = crystal_of(c);
  const double mass = num(c.trap, "mass_amu") * units::amu;
  BeamSpec b{Eigen::VectorXd::Constant(x.size(), khz(num(c.beam, "rabi"))),
             x.mode_freqs[0] + khz(num(c.beam, "detuning")), num(c.beam, "delta_k")};
  return ising_couplings(x, b, mass);
}

ProtocolResult run_experiment(const RunConfig& c) {
  const std::string& e = c.experiment;
  if (e == "crystal") return run_crystal(c);
  if (e == "couplings") return run_couplings(c);
  if (e == "design") return run_design(c);
  if (e == "evolve") return run_evolve(c);
  if (e == "ramp") return run_ramp(c);
  if (e == "spectroscopy") return run_spectroscopy(c);
  if (e == "quench") return run_quench(c);
  if (e == "mbl") return run_mbl(c);
  if (e == "dtc") return run_dtc(c);
  if (e == "dqpt") return run_dqpt(c);
  if (e == "otoc") return run_otoc(c);
  if (e == "qaoa") return run_qaoa(c);
  if (e == "bench") return run_bench(c);
  throw validation_error("unknown experiment '" + e + "'");
}

int dispatch(const RunConfig& c, std::ostream& err) {
  try {
    if (c.threads > 0) omp_set_num_threads(c.threads);
    const ProtocolResult r = run_experiment(c);
    write_run(c.output, c, r);
    return 0;
  } catch (const validation_error& e) {
    err << "validation error: " << e.what() << '\n';
    return 2;
  } catch (const numerical_error& e) {
    err << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ionspin

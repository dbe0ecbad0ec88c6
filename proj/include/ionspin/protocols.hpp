#pragma once

#include <cstdint>
#include <vector>

#include "ionspin/evolution.hpp"
#include "ionspin/observables.hpp"

namespace ionspin {

// sum_{i<j} (J_ij / 2)(s^x_i s^x_j + s^y_i s^y_j): nearest-neighbour flip-flop amplitude J_ij.
HamiltonianSpec xy_hopping(const CouplingMatrix& j);

// ---- quenches ---------------------------------------------------------------

enum class QuenchKind { global, local };
QuenchKind parse_quench_kind(const std::string& s);
const char* quench_kind_name(QuenchKind k);

enum class ArrivalRule {
  threshold,  // first time the signal reaches `threshold`
  half_peak   // first time the signal reaches half of its first local maximum
};

struct QuenchOptions {
  int center = -1;  // reference site; -1 picks (N-1)/2
  ArrivalRule rule = ArrivalRule::threshold;
  double threshold = 0.04;
  EvolveOptions evolve;
};

struct QuenchResult {
  std::vector<double> times;
  Eigen::MatrixXd sz;      // times x sites
  Eigen::MatrixXd signal;  // times x distance r = 0..N-1-center
  std::vector<double> arrival;  // per distance r >= 1; NaN when never reached
  double cone_exponent = 0.0;   // slope of log t_arrival vs log r
};

// Local kind: signal_r(t) = |<s^z_{c+r}(t)> - <s^z_{c+r}(0)>| / 2.
// Global kind: signal_r(t) = |C_{c,c+r}(t)|, connected z correlation.
QuenchResult quench_run(QuenchKind kind, const HamiltonianSpec& spec, const SpinState& initial,
                        const std::vector<double>& times, const QuenchOptions& opt = {});

// Least-squares slope of log y against log x over finite positive entries.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// ---- many-body localization -------------------------------------------------

struct MblOptions {
  int n_sites = 10;
  double j0 = 1.0;      // rad/ms
  double alpha = 1.13;
  double b = 4.0;       // rad/ms; H contains (B/2) sum s^z_i
  double w = 0.0;       // rad/ms; D_i uniform in [-W/2, W/2]
  Axis disorder_axis = Axis::z;
  int seeds = 30;
  std::uint64_t seed = 1;
  EvolveOptions evolve{1e-9, 40, 1e-13};
};

struct MblResult {
  std::vector<double> times;
  std::vector<double> d_mean, d_stderr;  // Hamming distance from the Neel state
  Eigen::MatrixXd sz_mean;               // times x sites
  std::vector<std::uint64_t> realization_seeds;
};

// H = sum J0/|i-j|^alpha s^x s^x + (B/2) sum s^z + sum D_i s^{disorder_axis}, from the Neel state.
MblResult mbl_run(const std::vector<double>& times, const MblOptions& opt);
// Mean of series over t in [t_lo, t_hi].
double window_average(const std::vector<double>& times, const std::vector<double>& series, double t_lo, double t_hi);

// ---- discrete time crystal --------------------------------------------------

struct DtcOptions {
  int n_sites = 10;
  double epsilon = 0.0;   // pulse error: rotation angle pi (1 - epsilon)
  double g = 1.0;         // pulse Rabi rate, rad/ms
  double j0 = 1.0;        // rad/ms; J_ij = j0 / |i-j|^alpha
  double alpha = 1.5;
  double t_ising = 1.0;   // ms of Ising plus disorder per period
  double w = 0.0;         // disorder width, rad/ms
  Axis disorder_axis = Axis::x;
  int n_periods = 100;
  std::uint64_t seed = 1;
  EvolveOptions evolve{1e-10, 40, 1e-13};
};

struct DtcResult {
  std::vector<double> magnetization;  // mean <s^x> after each period
  Spectrum spectrum;                  // frequency in units of the drive frequency
  double peak_freq = 0.0;
  double peak_height = 0.0;
  double subharmonic_height = 0.0;  // amplitude at nu = 1/2
  double subharmonic_weight = 0.0;  // power within one bin of 1/2 over total power
  std::vector<double> disorder;
};

DtcResult dtc_run(const DtcOptions& opt);
// Peak and weight analysis of a per-period series; bin = 1 / series length.
void dtc_analyse(DtcResult& r);

// ---- dynamical phase transitions --------------------------------------------

enum class DqptInitial { x_ordered, z_polarized };
DqptInitial parse_dqpt_initial(const std::string& s);
const char* dqpt_initial_name(DqptInitial k);

struct DqptOptions {
  int n_sites = 10;
  double j0 = 1.0;   // rad/ms; ferromagnetic J_ij = -j0 / |i-j|^alpha
  double alpha = 1.0;
  double b = 2.0;    // rad/ms; quench field along z
  DqptInitial initial = DqptInitial::x_ordered;
  EvolveOptions evolve{1e-10, 40, 1e-13};
};

struct DqptResult {
  std::vector<double> times;
  std::vector<double> rate;  // lambda(t) = -(1/N) log sum_r P_r
  std::vector<double> c2;
  std::vector<double> mx;    // mean <s^x>
  // Kinks: for the x-ordered start, times where the two return branches P_down and P_up cross
  // (the cusp of lambda as N grows); for the z start, curvature spikes of lambda.
  std::vector<int> kinks;            // first sample index after each kink
  std::vector<double> kink_times;    // linear-interpolated
  std::vector<double> mx_zero_times; // linear-interpolated sign changes of mx
};

DqptResult dqpt_run(const std::vector<double>& times, const DqptOptions& opt);

struct C2SweepPoint {
  double b = 0.0;
  double c2 = 0.0;  // late-time average
};
// Late-time averaged C2 after quenching the x-ordered state to each field.
std::vector<C2SweepPoint> c2_sweep(const std::vector<double>& fields, double t_lo, double t_hi, int samples,
                                   const DqptOptions& base);

// ---- OTOC ---------------------------------------------------------------------

struct OtocResult {
  std::vector<double> taus;
  std::vector<double> re, im;
};
OtocResult otoc_run(const HamiltonianSpec& spec, const SpinState& initial, const std::vector<PauliFactor>& w,
                    const std::vector<PauliFactor>& v, const std::vector<double>& taus);

// ---- coupling benchmarks ----------------------------------------------------

struct PairEstimate {
  int i = 0, j = 0;
  double j_true = 0.0;
  double j_fit = 0.0;
  double error = 0.0;
};
// Evolves |dd> under the 2-spin restriction J_ij s^x s^x and fits P(dd) = cos^2(J t).
std::vector<PairEstimate> benchmark_pairs(const CouplingMatrix& j, const std::vector<std::pair<int, int>>& pairs,
                                          const std::vector<double>& times);

struct ChainSpectrum {
  std::vector<double> times;
  std::vector<double> signal;  // <s^z_1>(t) from all spins down
  Spectrum spectrum;           // cycles per ms
  std::vector<double> peaks;   // angular frequencies of resolved peaks, descending amplitude
};
ChainSpectrum benchmark_chain(const CouplingMatrix& j, const std::vector<double>& times);
// For N=3 with J12 = J23 = J1 and J13 = J2: edge-spin frequencies 2(J1+J2) and 2|J1-J2|.
std::pair<double, double> three_ion_couplings(double omega_hi, double omega_lo);

}  // namespace ionspin

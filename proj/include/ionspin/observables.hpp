#pragma once

#include <vector>

#include "ionspin/hamiltonian.hpp"
#include "ionspin/measurement.hpp"

namespace ionspin {

struct Magnetization {
  double m = 0.0;       // (1/N) sum_s |N - 2s| P(s)
  double scaled = 0.0;  // (m0 - m) / (m0 - 1)
};
// P(s): probability of s down spins (bit 0) in the distribution's basis.
Eigen::VectorXd spin_count_distribution(const Distribution& d);
double paramagnet_magnetization(int n);
Magnetization magnetization_mx(const Distribution& d);

struct Binder {
  double g = 0.0;       // <M^4> / <M^2>^2
  double scaled = 0.0;  // (g0 - g) / (g0 - 1), g0 = 3 - 2/N
};
Binder binder_cumulant(const Distribution& d);

struct Structure {
  Eigen::VectorXd c;  // C(r), r = 1..N-1 stored at index r-1
  Eigen::VectorXd k;  // pi j / (N-1), j = 0..N-1
  Eigen::VectorXd s;  // S(k)
};
Structure correlations_and_structure(const Distribution& d);

// C_ij = <O_i O_j> - <O_i><O_j> with O = sigma_axis.
Eigen::MatrixXd connected_correlation(const SpinState& s, Axis axis);

// D = 1/2 - (1/2N) sum_i s_i <sigma^z_i>, s_i = +-1 the initial configuration.
double hamming_distance(const Eigen::VectorXd& sz, const std::vector<int>& initial_signs);
// Neel reference (-1)^i with 1-based i.
double hamming_distance(const Eigen::VectorXd& sz);

double center_of_excitation(const Eigen::VectorXd& sz);

// -(1/N) log sum_r |<r|psi>|^2
double rate_function(const SpinState& s, const std::vector<SpinState>& refs);
// Indices k where the discrete second difference spikes above factor x its
// median absolute value and is a local maximum in magnitude.
std::vector<int> detect_kinks(const std::vector<double>& series, double factor = 5.0);

// (1/N^2) sum_ij <s^x_i s^x_j>
double two_body_c2(const SpinState& s);
double two_body_c2(const Distribution& d);

struct DomainStats {
  Eigen::VectorXd size_histogram;  // expected number of domains of size L per shot, index L-1
  double mean_largest = 0.0;
};
DomainStats domain_statistics(const Distribution& d);

// F = <psi| W^dag(tau) V^dag W(tau) V |psi>, W(tau) = e^{iH tau} W e^{-iH tau}.
std::complex<double> otoc(const SpinState& s, const std::vector<PauliFactor>& w, const std::vector<PauliFactor>& v,
                          const HamiltonianOperator& op, double tau);

struct Spectrum {
  Eigen::VectorXd freq;  // cycles per unit of dt
  Eigen::VectorXd amp;   // |sum w_n x_n e^{-2 pi i f n dt}| / sum w_n
};
enum class Window { hann, rectangular };
// Mean-removed, windowed, zero-padded by pad (frequency grid step 1/(pad n dt)), up to Nyquist.
Spectrum fourier_spectrum(const std::vector<double>& series, double dt, Window window = Window::hann, int pad = 4,
                          bool remove_mean = true);

}  // namespace ionspin

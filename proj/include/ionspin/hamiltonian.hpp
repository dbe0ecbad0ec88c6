#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ionspin/couplings.hpp"
#include "ionspin/interp.hpp"

namespace ionspin {

enum class Axis { x, y, z };

Axis parse_axis(const std::string& s);
const char* axis_name(Axis a);

// Basis index bit k is site k+1; bit value 1 is |up> (sigma_z = +1).
struct SpinState {
  int n_sites = 0;
  Eigen::VectorXcd amp;

  std::uint64_t dim() const { return std::uint64_t{1} << n_sites; }
  double norm() const { return amp.norm(); }

  static SpinState basis(int n, std::uint64_t index);
  // Every site in the +1 (up) or -1 (down) eigenstate of sigma_axis.
  static SpinState polarized(int n, Axis axis, bool up);
  // Product state with per-site orientation along axis; up[k] for site k+1.
  static SpinState product(Axis axis, const std::vector<bool>& up);
};

double fidelity(const SpinState& a, const SpinState& b);

class Schedule {
 public:
  enum class Kind { constant, piecewise_linear, exponential, sinusoidal, tabulated };

  static Schedule constant(double c = 1.0);
  static Schedule piecewise_linear(std::vector<double> t, std::vector<double> v);
  // a exp(-t / tau) + offset
  static Schedule exponential(double a, double tau, double offset = 0.0);
  // offset + amplitude sin(omega t + phase)
  static Schedule sinusoidal(double offset, double amplitude, double omega, double phase = 0.0);
  // Monotone cubic through (t, v).
  static Schedule tabulated(std::vector<double> t, std::vector<double> v);

  double operator()(double t) const;
  Kind kind() const { return kind_; }
  bool is_constant() const { return kind_ == Kind::constant; }

 private:
  Kind kind_ = Kind::constant;
  double a_ = 1.0, b_ = 0.0, c_ = 0.0, d_ = 0.0;
  std::vector<double> t_, v_;
  MonotoneCubic table_;
};

// sum_{i<j} J_ij s^a_i s^a_j, scaled by schedule(t).
struct CouplingTerm {
  Axis axis = Axis::x;
  CouplingMatrix j;
  Schedule schedule;
};

// sum_i h_i s^a_i, scaled by schedule(t).
struct FieldTerm {
  Axis axis = Axis::z;
  Eigen::VectorXd h;
  Schedule schedule;
};

struct HamiltonianSpec {
  int n_sites = 0;
  std::vector<CouplingTerm> couplings;
  std::vector<FieldTerm> fields;

  explicit HamiltonianSpec(int n = 0) : n_sites(n) {}
  HamiltonianSpec& add_coupling(Axis a, CouplingMatrix j, Schedule s = Schedule::constant());
  HamiltonianSpec& add_field(Axis a, Eigen::VectorXd h, Schedule s = Schedule::constant());
  HamiltonianSpec& add_uniform_field(Axis a, double b, Schedule s = Schedule::constant());

  bool time_independent() const;
  // Throws validation_error on shape or symmetry violations.
  void validate() const;
  // Sum of absolute coefficients at t; an upper bound on the spectral radius.
  double norm_bound(double t) const;
};

// Matrix-free H(t) built once from a spec.
class HamiltonianOperator {
 public:
  explicit HamiltonianOperator(const HamiltonianSpec& spec);

  int n_sites() const { return n_; }
  std::uint64_t dim() const { return std::uint64_t{1} << n_; }
  bool time_independent() const { return static_ok_; }
  bool diagonal() const { return pairs_.empty() && singles_.empty(); }
  double norm_bound(double t) const { return spec_.norm_bound(t); }
  const HamiltonianSpec& spec() const { return spec_; }

  // out = H(t) in
  void apply(double t, const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;
  Eigen::VectorXd diagonal_at(double t) const;

 private:
  struct Diag {
    Eigen::VectorXd d;
    int term;  // index into schedules_
  };
  struct Pair {
    int i, j;
    double jxx, jyy;
    int term_x, term_y;
  };
  struct Single {
    int i;
    double hx, hy;
    int term_x, term_y;
  };

  HamiltonianSpec spec_;
  int n_;
  bool static_ok_;
  std::vector<Schedule> schedules_;
  std::vector<Diag> diags_;
  std::vector<Pair> pairs_;
  std::vector<Single> singles_;
};

SpinState apply_hamiltonian(const HamiltonianSpec& spec, double t, const SpinState& state);
double energy(const HamiltonianOperator& op, double t, const SpinState& state);

// Dense H(t); intended for small systems.
Eigen::MatrixXcd dense_matrix(const HamiltonianOperator& op, double t);

// Expectation of a product of Pauli operators, one per listed site.
struct PauliFactor {
  Axis axis;
  int site;  // zero-based
};
std::complex<double> expect_pauli(const SpinState& s, const std::vector<PauliFactor>& ops);
// Applies the Pauli string in place.
void apply_pauli(SpinState& s, const std::vector<PauliFactor>& ops);

// Per-site <sigma_axis> for all sites.
Eigen::VectorXd site_expectations(const SpinState& s, Axis axis);

// Binary dump: 8-byte little-endian N, then interleaved little-endian (re, im) doubles.
void write_state(const std::string& path, const SpinState& s);
SpinState read_state(const std::string& path);

}  // namespace ionspin

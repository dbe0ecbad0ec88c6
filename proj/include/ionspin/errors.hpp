#pragma once

#include <stdexcept>
#include <string>

namespace ionspin {

// Base class. Anything derived from numerical_error maps to CLI exit code 3,
// validation_error to exit code 2.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct validation_error : error {
  using error::error;
};

struct numerical_error : error {
  using error::error;
};

struct solver_error : numerical_error {
  double residual;
  solver_error(const std::string& what, double r) : numerical_error(what), residual(r) {}
};

struct instability_error : numerical_error {
  double eigenvalue;
  instability_error(const std::string& what, double ev) : numerical_error(what), eigenvalue(ev) {}
};

struct resonance_error : numerical_error {
  int mode;
  resonance_error(const std::string& what, int m) : numerical_error(what), mode(m) {}
};

struct spectral_error : numerical_error {
  using numerical_error::numerical_error;
};

struct integration_error : numerical_error {
  double t;
  double step;
  integration_error(const std::string& what, double at, double h)
      : numerical_error(what), t(at), step(h) {}
};

}  // namespace ionspin

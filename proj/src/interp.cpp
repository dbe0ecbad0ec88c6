#include "ionspin/interp.hpp"

#include <algorithm>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_interp.h>

#include "ionspin/errors.hpp"

namespace ionspin {

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size() || x_.size() < 2) throw validation_error("interpolation table needs >= 2 points");
  for (std::size_t i = 1; i < x_.size(); ++i)
    if (!(x_[i] > x_[i - 1])) throw validation_error("interpolation abscissae must be strictly increasing");
  gsl_set_error_handler_off();
  const gsl_interp_type* type = x_.size() >= 3 ? gsl_interp_steffen : gsl_interp_linear;
  gsl_interp* in = gsl_interp_alloc(type, x_.size());
  gsl_interp_init(in, x_.data(), y_.data(), x_.size());
  impl_ = std::shared_ptr<void>(in, [](void* p) { gsl_interp_free(static_cast<gsl_interp*>(p)); });
}

double MonotoneCubic::operator()(double x) const {
  x = std::clamp(x, x_.front(), x_.back());
  return gsl_interp_eval(static_cast<gsl_interp*>(impl_.get()), x_.data(), y_.data(), x, nullptr);
}

double MonotoneCubic::derivative(double x) const {
  x = std::clamp(x, x_.front(), x_.back());
  return gsl_interp_eval_deriv(static_cast<gsl_interp*>(impl_.get()), x_.data(), y_.data(), x, nullptr);
}

double MonotoneCubic::integral(double a, double b) const {
  a = std::clamp(a, x_.front(), x_.back());
  b = std::clamp(b, x_.front(), x_.back());
  if (a == b) return 0.0;
  if (a > b) return -integral(b, a);
  return gsl_interp_eval_integ(static_cast<gsl_interp*>(impl_.get()), x_.data(), y_.data(), a, b, nullptr);
}

}  // namespace ionspin

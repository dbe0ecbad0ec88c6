#pragma once

#include <memory>
#include <vector>

namespace ionspin {

// Monotonicity-preserving cubic (Steffen) through strictly increasing x.
// Two-point tables fall back to linear. Clamps outside the table.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double derivative(double x) const;
  // Integral over [a, b] within the table range.
  double integral(double a, double b) const;

  const std::vector<double>& xs() const { return x_; }
  const std::vector<double>& ys() const { return y_; }
  bool empty() const { return x_.empty(); }

 private:
  std::vector<double> x_, y_;
  std::shared_ptr<void> impl_;
};

}  // namespace ionspin

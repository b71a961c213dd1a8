#pragma once

#include "mtum/grouped_data.hpp"

namespace mtum {

// Exponential distribution with mean theta.
class ExponentialModel {
 public:
  explicit ExponentialModel(double theta);

  double theta() const noexcept { return theta_; }

  double cdf(double x) const noexcept;
  double survival(double x) const noexcept;
  double pdf(double x) const noexcept;
  double quantile(double s) const;

 private:
  double theta_;
};

// Single-parameter Pareto I with known lower threshold x0:
// F(y) = 1 - (x0 / y)^alpha for y > x0.
class ParetoModel {
 public:
  ParetoModel(double alpha, double x0);

  double alpha() const noexcept { return alpha_; }
  double x0() const noexcept { return x0_; }
  double cdf(double y) const noexcept;

  // log(Y / x0) ~ Exp(1 / alpha).
  ExponentialModel log_scale_model() const { return ExponentialModel(1.0 / alpha_); }

 private:
  double alpha_;
  double x0_;
};

double exp_cdf(const ExponentialModel& model, double x) noexcept;

// log(y / x0); BelowThreshold unless y > x0.
double pareto_to_exp(double y, const ParetoModel& pareto);

// Model cdf interpolated linearly between cuts, exact beyond c_m.
double linearized_cdf(const ExponentialModel& model, const GroupBoundaries& boundaries, double x);

// Inverse of linearized_cdf for 0 < s < 1.
double linearized_quantile(const ExponentialModel& model, const GroupBoundaries& boundaries,
                           double s);

}  // namespace mtum

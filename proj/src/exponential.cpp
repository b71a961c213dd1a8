#include "mtum/exponential.hpp"

#include <cmath>

#include "mtum/error.hpp"
#include "format_util.hpp"

namespace mtum {

ExponentialModel::ExponentialModel(double theta) : theta_(theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw Error(ErrorCode::InvalidArgument, "theta must be positive and finite");
  }
}

double ExponentialModel::cdf(double x) const noexcept {
  return x > 0.0 ? -std::expm1(-x / theta_) : 0.0;
}

double ExponentialModel::survival(double x) const noexcept {
  return x > 0.0 ? std::exp(-x / theta_) : 1.0;
}

double ExponentialModel::pdf(double x) const noexcept {
  return x >= 0.0 ? std::exp(-x / theta_) / theta_ : 0.0;
}

double ExponentialModel::quantile(double s) const {
  if (!(s >= 0.0 && s < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "quantile level must lie in [0, 1)");
  }
  return -theta_ * std::log1p(-s);
}

ParetoModel::ParetoModel(double alpha, double x0) : alpha_(alpha), x0_(x0) {
  if (!(alpha > 0.0) || !(x0 > 0.0) || !std::isfinite(alpha) || !std::isfinite(x0)) {
    throw Error(ErrorCode::InvalidArgument, "Pareto alpha and x0 must be positive");
  }
}

double ParetoModel::cdf(double y) const noexcept {
  return y > x0_ ? -std::expm1(alpha_ * std::log(x0_ / y)) : 0.0;
}

double exp_cdf(const ExponentialModel& model, double x) noexcept { return model.cdf(x); }

double pareto_to_exp(double y, const ParetoModel& pareto) {
  if (!(y > pareto.x0())) {
    throw Error(ErrorCode::BelowThreshold,
                "y = " + format_number(y) + " is not above x0 = " + format_number(pareto.x0()));
  }
  return std::log(y / pareto.x0());
}

double linearized_cdf(const ExponentialModel& model, const GroupBoundaries& boundaries,
                      double x) {
  if (std::isnan(x) || x < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "x must be non-negative");
  }
  if (x == 0.0) return 0.0;
  if (x > boundaries.last()) return model.cdf(x);
  const std::size_t j = boundaries.group_of(x);
  const double lo = boundaries.cut(j - 1);
  const double hi = boundaries.cut(j);
  if (x == hi) return model.cdf(hi);
  const double f_lo = model.cdf(lo);
  return f_lo + (x - lo) / (hi - lo) * (model.cdf(hi) - f_lo);
}

double linearized_quantile(const ExponentialModel& model, const GroupBoundaries& boundaries,
                           double s) {
  if (!(s > 0.0 && s < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "quantile level must lie in (0, 1)");
  }
  const std::size_t m = boundaries.size();
  if (s > model.cdf(boundaries.last())) return model.quantile(s);

  // Smallest j with F(c_j) >= s; the model cdf is increasing in the cuts.
  std::size_t lo_idx = 1;
  std::size_t hi_idx = m;
  while (lo_idx < hi_idx) {
    const std::size_t mid = (lo_idx + hi_idx) / 2;
    if (model.cdf(boundaries.cut(mid)) >= s) {
      hi_idx = mid;
    } else {
      lo_idx = mid + 1;
    }
  }
  const std::size_t j = lo_idx;
  const double f_hi = model.cdf(boundaries.cut(j));
  if (s == f_hi) return boundaries.cut(j);
  const double f_lo = model.cdf(boundaries.cut(j - 1));
  return boundaries.cut(j - 1) + boundaries.width(j) * (s - f_lo) / (f_hi - f_lo);
}

}  // namespace mtum

#include "mtum/mle.hpp"

#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "mtum/detail/root_finding.hpp"
#include "mtum/error.hpp"

namespace mtum {

namespace {

constexpr double kThetaMin = 1e-8;
constexpr double kThetaMax = 1e8;

// log P_j(theta), stable for every theta > 0.
double log_group_prob(const GroupBoundaries& b, std::size_t j, double theta) {
  if (j == b.group_count()) return -b.last() / theta;
  const double lo = b.cut(j - 1);
  return -lo / theta + std::log(-std::expm1(-(b.cut(j) - lo) / theta));
}

// d/dtheta log P_j(theta) = (c_{j-1} - w_j / (e^{w_j/theta} - 1)) / theta^2.
double group_score(const GroupBoundaries& b, std::size_t j, double theta) {
  if (j == b.group_count()) return b.last() / (theta * theta);
  const double lo = b.cut(j - 1);
  const double w = b.cut(j) - lo;
  return (lo - w / std::expm1(w / theta)) / (theta * theta);
}

}  // namespace

double grouped_log_likelihood(const GroupedSample& sample, double theta) {
  const auto& b = sample.boundaries();
  double total = 0.0;
  for (std::size_t j = 1; j <= b.group_count(); ++j) {
    if (sample.count(j) == 0) continue;
    total += static_cast<double>(sample.count(j)) * log_group_prob(b, j, theta);
  }
  return total;
}

double grouped_score(const GroupedSample& sample, double theta) {
  const auto& b = sample.boundaries();
  double total = 0.0;
  for (std::size_t j = 1; j <= b.group_count(); ++j) {
    if (sample.count(j) == 0) continue;
    total += static_cast<double>(sample.count(j)) * group_score(b, j, theta);
  }
  return total;
}

MleEstimate mle_estimate(const GroupedSample& sample) {
  std::size_t occupied = 0;
  for (auto c : sample.counts()) occupied += c > 0 ? 1 : 0;
  if (occupied < 2) {
    throw Error(ErrorCode::NonIdentifiable,
                "all observations fall in one group; the likelihood is monotone in theta");
  }

  // Coarse scan in log(theta) to bracket the maximum, then golden-section
  // with parabolic steps, then a root of the score for full precision.
  const double log_min = std::log(kThetaMin);
  const double log_max = std::log(kThetaMax);
  constexpr int kGrid = 161;
  const double step = (log_max - log_min) / (kGrid - 1);
  int best = 0;
  double best_ll = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGrid; ++i) {
    const double ll = grouped_log_likelihood(sample, std::exp(log_min + i * step));
    if (ll > best_ll) {
      best_ll = ll;
      best = i;
    }
  }
  if (best == 0 || best == kGrid - 1) {
    throw Error(ErrorCode::SolverFailure, "likelihood maximum not interior to [1e-8, 1e8]");
  }

  const double a = log_min + (best - 1) * step;
  const double b = log_min + (best + 1) * step;
  std::uintmax_t golden_iters = 200;
  const auto neg_ll = [&](double log_theta) {
    return -grouped_log_likelihood(sample, std::exp(log_theta));
  };
  const auto [log_theta, value] = boost::math::tools::brent_find_minima(
      neg_ll, a, b, std::numeric_limits<double>::digits, golden_iters);
  (void)value;

  // Polish on the score inside the grid cell around the optimum.
  double theta = std::exp(log_theta);
  int iterations = kGrid + static_cast<int>(golden_iters);
  const double lo = std::exp(a);
  const double hi = std::exp(b);
  const auto score = [&](double th) { return grouped_score(sample, th); };
  const double s_lo = score(lo);
  const double s_hi = score(hi);
  if (s_lo > 0.0 && s_hi < 0.0) {
    const auto root = detail::bracketed_zero(score, lo, hi, s_lo, s_hi, 200);
    if (root.converged) theta = root.x;
    iterations += root.iterations;
  }

  MleEstimate out;
  out.theta_hat = theta;
  out.score = score(theta);
  out.iterations = iterations;
  out.asymptotic_variance =
      1.0 / (static_cast<double>(sample.total()) *
             fisher_information(ExponentialModel(theta), sample.boundaries()));
  return out;
}

double fisher_information(const ExponentialModel& model, const GroupBoundaries& boundaries,
                          TailTerm tail) {
  const double theta = model.theta();
  const std::size_t last = tail == TailTerm::Include ? boundaries.group_count() : boundaries.size();
  double total = 0.0;
  for (std::size_t j = 1; j <= last; ++j) {
    const double p = std::exp(log_group_prob(boundaries, j, theta));
    const double s = group_score(boundaries, j, theta);
    total += p * s * s;
  }
  return total;
}

double ungrouped_mle_variance(const ExponentialModel& model, std::uint64_t sample_size) {
  if (sample_size == 0) {
    throw Error(ErrorCode::InvalidArgument, "sample size must be at least 1");
  }
  return model.theta() * model.theta() / static_cast<double>(sample_size);
}

}  // namespace mtum

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mtum/exponential.hpp"
#include "mtum/grouped_data.hpp"
#include "mtum/truncation_window.hpp"

namespace mtum {

// Method of truncated moments for grouped exponential data.
//
// The sample statistic is the truncated mean of the histogram over [t, T],
// a smooth function of the ogive at the cuts. The model counterpart uses the
// linearized population cdf. The estimate solves model(theta) = sample.

// Values of the model truncated moment as theta -> 0+ and theta -> inf.
// A solution exists (and is unique if the moment is increasing in theta)
// exactly when the sample moment lies strictly between them.
struct MomentLimits {
  double lower = 0.0;
  double upper = 0.0;
};

MomentLimits moment_limits(const TruncationWindow& window);

// Truncated moment as a function of (F(c_1), ..., F(c_m)), with F(c_0) = 0.
double truncated_moment(const TruncationWindow& window, std::span<const double> cdf_at_cuts);

// Gradient of truncated_moment with respect to (F(c_1), ..., F(c_m)).
// Only the entries l-1 ... r+1 can be non-zero.
std::vector<double> truncated_moment_gradient(const TruncationWindow& window,
                                              std::span<const double> cdf_at_cuts);

// EmptyWindow when the sample puts no mass in [t, T].
double sample_truncated_moment(const GroupedSample& sample, const TruncationWindow& window);

double population_truncated_moment(const ExponentialModel& model, const TruncationWindow& window);

// d/dtheta of the population truncated moment.
double population_moment_slope(const ExponentialModel& model, const TruncationWindow& window);

// Derivative of the inverse map mu -> theta at mu = population moment.
double inverse_moment_slope(const ExponentialModel& model, const TruncationWindow& window);

// Asymptotic covariance of sqrt(n) (F_n(c_1), ..., F_n(c_m)):
// sigma_{jk} = F(c_j) (1 - F(c_k)) for j <= k.
using CovarianceMatrix = Eigen::MatrixXd;
CovarianceMatrix cdf_covariance(const ExponentialModel& model, const GroupBoundaries& boundaries);

// D Sigma D' for the sample truncated moment, per observation.
double moment_variance(const ExponentialModel& model, const TruncationWindow& window);

// Delta-method variance of theta_hat at sample size n.
double asymptotic_variance(const ExponentialModel& model, std::uint64_t sample_size,
                           const TruncationWindow& window);

enum class SolverKind { FixedPoint, Bracketed };

const char* to_string(SolverKind kind) noexcept;

struct SolverOptions {
  double tolerance = 1e-10;  // relative, on the moment residual
  int max_iterations = 200;
  double theta_min = 1e-8;
  double theta_max = 1e8;
};

struct MomentRoot {
  double theta = 0.0;
  double residual = 0.0;
  SolverKind solver = SolverKind::Bracketed;
  int iterations = 0;
  // Set when the bracket scan saw the residual decrease in theta, which
  // would contradict monotonicity of the model moment.
  bool non_monotone = false;
};

struct MtumEstimate {
  double theta_hat = 0.0;
  double mu_hat = 0.0;
  double asymptotic_variance = 0.0;
  SolverKind solver = SolverKind::Bracketed;
  int iterations = 0;
  double residual = 0.0;
  bool non_monotone = false;
};

// The fixed-point map theta -> -c_r / log((mu A2 - P + mu Q) / (mu A2)).
// Empty when T lies on a cut or the log argument leaves (0, 1).
std::optional<double> fixed_point_map(double mu, const TruncationWindow& window, double theta);

// Fixed-point iteration from `start`. Empty when any iterate is invalid,
// leaves the search domain, or the iteration fails to settle.
std::optional<MomentRoot> solve_fixed_point(double mu, const TruncationWindow& window,
                                            double start, const SolverOptions& options = {});

// Expanding bracket from `start` followed by a TOMS 748 bracketed solve.
MomentRoot solve_bracketed(double mu, const TruncationWindow& window, double start,
                           const SolverOptions& options = {});

// Fixed point when usable, otherwise (or on failure) the bracketed solver.
// NoSolution when mu is outside the limits; SolverFailure if both fail.
MomentRoot solve_moment(double mu, const TruncationWindow& window, double start,
                        const SolverOptions& options = {});

// Grouped sample mean with midpoints for the finite groups and c_m for the
// open group; used to seed the solvers.
double moment_matched_start(const GroupedSample& sample);

// Full estimate: sample moment, root, and plug-in asymptotic variance.
MtumEstimate solve(const GroupedSample& sample, const TruncationWindow& window,
                   std::optional<double> theta_hint = std::nullopt,
                   const SolverOptions& options = {});

}  // namespace mtum

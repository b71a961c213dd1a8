#include "mtum/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mtum/detail/root_finding.hpp"
#include "mtum/error.hpp"
#include "format_util.hpp"

namespace mtum {

namespace {

// Pieces of the window: j = l is [t, c_l], l < j <= r are whole groups and
// j = r + 1 is [c_r, T]. Each piece contributes (moment coefficient, mass
// weight) = (u_l, A1), (v_j, 1) or (z_r, B2).
struct PieceCoefs {
  double moment;
  double mass;
};

PieceCoefs piece_coefs(const TruncationWindow& w, std::size_t j) {
  if (j == w.left_index()) return {w.left_moment_coef(), w.left_lower_weight()};
  if (j == w.right_index() + 1) return {w.right_moment_coef(), w.right_upper_weight()};
  return {w.midpoint(j), 1.0};
}

// Index of the piece whose ratio is the theta -> 0 limit.
std::size_t floor_piece(const TruncationWindow& w) {
  if (w.left_lower_weight() > 0.0) return w.left_index();
  if (w.left_index() < w.right_index()) return w.left_index() + 1;
  return w.right_index() + 1;
}

double floor_value(const TruncationWindow& w) {
  const PieceCoefs k = piece_coefs(w, floor_piece(w));
  return k.moment / k.mass;
}

// Population moment terms at theta, all multiplied by exp(c_{k-1} / theta)
// where k is the lowest piece with positive mass, so that piece never
// underflows. Pieces below k carry zero weight (t sits on c_l) and are
// skipped. Ratios are unaffected by the common factor.
struct ScaledTerms {
  double numerator = 0.0;        // N*
  double mass = 0.0;             // H* = F_G(T) - F_G(t)
  double numerator_slope = 0.0;  // dN*/dtheta
  double mass_slope = 0.0;       // -dH*/dtheta
};

ScaledTerms scaled_terms(const TruncationWindow& w, double theta) {
  const auto& b = w.boundaries();
  const std::size_t l = w.left_index();
  const std::size_t r = w.right_index();
  const std::size_t first = floor_piece(w);
  const double base = b.cut(first - 1);
  const double theta2 = theta * theta;
  const auto s = [&](std::size_t j) { return std::exp(-(b.cut(j) - base) / theta); };

  ScaledTerms out;
  double s_prev = 1.0;  // exp(-(c_{j-1} - base) / theta)
  for (std::size_t j = first; j <= r + 1; ++j) {
    const double c_lo = b.cut(j - 1);
    const double c_hi = b.cut(j);
    const double s_next = s(j);
    const double piece = -s_prev * std::expm1(-(c_hi - c_lo) / theta);
    const PieceCoefs k = piece_coefs(w, j);
    out.numerator += k.moment * piece;
    out.mass += k.mass * piece;
    out.numerator_slope += k.moment * (c_lo * s_prev - c_hi * s_next) / theta2;
    s_prev = s_next;
  }
  double slope = w.right_lower_weight() * b.cut(r) * s(r) +
                 w.right_upper_weight() * b.cut(r + 1) * s(r + 1) -
                 w.left_upper_weight() * b.cut(l) * s(l);
  if (first == l) slope -= w.left_lower_weight() * b.cut(l - 1) * s(l - 1);
  out.mass_slope = slope / theta2;
  return out;
}

// g = L + (N - L H) / H with L the theta -> 0 limit. The piece defining L
// contributes exactly zero to N - L H, so g settles on L without rounding
// jitter once the remaining pieces drop below double resolution.
double model_moment(const TruncationWindow& w, double theta) {
  const auto& b = w.boundaries();
  const std::size_t first = floor_piece(w);
  const double floor = floor_value(w);
  const double base = b.cut(first - 1);
  double excess = 0.0;
  double mass = 0.0;
  double s_prev = 1.0;
  for (std::size_t j = first; j <= w.right_index() + 1; ++j) {
    const double c_lo = b.cut(j - 1);
    const double c_hi = b.cut(j);
    const double piece = -s_prev * std::expm1(-(c_hi - c_lo) / theta);
    const PieceCoefs k = piece_coefs(w, j);
    if (j != first) excess += (k.moment - floor * k.mass) * piece;
    mass += k.mass * piece;
    s_prev = std::exp(-(c_hi - base) / theta);
  }
  return floor + excess / mass;
}

struct SampleTerms {
  double numerator;
  double mass;
};

SampleTerms sample_terms(const TruncationWindow& w, std::span<const double> p) {
  if (p.size() != w.boundaries().size()) {
    throw Error(ErrorCode::InvalidArgument, "expected one cdf value per cut");
  }
  const auto at = [&](std::size_t j) { return j == 0 ? 0.0 : p[j - 1]; };
  SampleTerms out{0.0, 0.0};
  for (std::size_t j = w.left_index(); j <= w.right_index() + 1; ++j) {
    const double piece = at(j) - at(j - 1);
    const PieceCoefs k = piece_coefs(w, j);
    out.numerator += k.moment * piece;
    out.mass += k.mass * piece;
  }
  return out;
}

std::vector<double> model_cdf_at_cuts(const ExponentialModel& model, const GroupBoundaries& b) {
  std::vector<double> out(b.size());
  for (std::size_t j = 1; j <= b.size(); ++j) out[j - 1] = model.cdf(b.cut(j));
  return out;
}

}  // namespace

MomentLimits moment_limits(const TruncationWindow& w) {
  const auto& b = w.boundaries();
  const std::size_t l = w.left_index();
  const std::size_t r = w.right_index();

  MomentLimits out;
  // As theta -> 0 the lowest piece of positive mass dominates.
  out.lower = floor_value(w);

  double num = w.left_moment_coef() * (b.cut(l - 1) - b.cut(l));
  for (std::size_t i = l + 1; i <= r; ++i) num += w.midpoint(i) * (b.cut(i - 1) - b.cut(i));
  num += w.right_moment_coef() * (b.cut(r) - b.cut(r + 1));
  const double den = w.left_lower_weight() * b.cut(l - 1) + w.left_upper_weight() * b.cut(l) -
                     w.right_lower_weight() * b.cut(r) - w.right_upper_weight() * b.cut(r + 1);
  out.upper = num / den;
  return out;
}

double truncated_moment(const TruncationWindow& window, std::span<const double> cdf_at_cuts) {
  const SampleTerms t = sample_terms(window, cdf_at_cuts);
  return t.numerator / t.mass;
}

std::vector<double> truncated_moment_gradient(const TruncationWindow& w,
                                              std::span<const double> cdf_at_cuts) {
  const SampleTerms t = sample_terms(w, cdf_at_cuts);
  const double n = t.numerator;
  const double h = t.mass;
  const double h2 = h * h;
  const std::size_t l = w.left_index();
  const std::size_t r = w.right_index();
  const double a1 = w.left_lower_weight(), b1 = w.left_upper_weight();
  const double a2 = w.right_lower_weight(), b2 = w.right_upper_weight();
  const double u = w.left_moment_coef(), z = w.right_moment_coef();
  const auto& b = w.boundaries();

  // Index j maps to slot j - 1; F(c_0) is fixed at zero, so for l = 1 the
  // j = l - 1 entry simply does not exist.
  std::vector<double> grad(b.size(), 0.0);
  auto set = [&](std::size_t j, double value) {
    if (j >= 1) grad[j - 1] = value;
  };
  set(l - 1, (-u * h + a1 * n) / h2);
  if (l < r) {
    set(l, ((u - w.midpoint(l + 1)) * h + b1 * n) / h2);
    for (std::size_t j = l + 1; j + 1 <= r; ++j) set(j, (b.cut(j - 1) - b.cut(j + 1)) / (2.0 * h));
    set(r, ((w.midpoint(r) - z) * h - a2 * n) / h2);
  } else {
    set(l, ((u - z) * h - (a2 - b1) * n) / h2);
  }
  set(r + 1, (z * h - b2 * n) / h2);
  return grad;
}

double sample_truncated_moment(const GroupedSample& sample, const TruncationWindow& window) {
  if (!(sample.boundaries() == window.boundaries())) {
    throw Error(ErrorCode::InvalidArgument, "window was resolved against different boundaries");
  }
  const SampleTerms t = sample_terms(window, sample.cdf_at_cuts());
  if (!(t.mass > 0.0)) {
    throw Error(ErrorCode::EmptyWindow, "no observations in [" + format_number(window.lower()) +
                                            ", " + format_number(window.upper()) + "]");
  }
  return t.numerator / t.mass;
}

double population_truncated_moment(const ExponentialModel& model, const TruncationWindow& window) {
  return model_moment(window, model.theta());
}

double inverse_moment_slope(const ExponentialModel& model, const TruncationWindow& window) {
  const ScaledTerms t = scaled_terms(window, model.theta());
  const double mu = model_moment(window, model.theta());
  // A - B reduces to the window mass because A1 + B1 = A2 + B2 = 1.
  // Gamma is the theta-derivative of the numerator (Lambda alone when the
  // truncation points sit in adjacent groups) and Delta = -mu dH/dtheta.
  const double a_minus_b = t.mass;
  const double gamma = t.numerator_slope;
  const double delta = mu * t.mass_slope;
  return a_minus_b / (gamma + delta);
}

double population_moment_slope(const ExponentialModel& model, const TruncationWindow& window) {
  return 1.0 / inverse_moment_slope(model, window);
}

CovarianceMatrix cdf_covariance(const ExponentialModel& model, const GroupBoundaries& boundaries) {
  const std::vector<double> f = model_cdf_at_cuts(model, boundaries);
  const auto m = static_cast<Eigen::Index>(f.size());
  CovarianceMatrix sigma(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index k = j; k < m; ++k) {
      sigma(j, k) = f[j] * (1.0 - f[k]);
      sigma(k, j) = sigma(j, k);
    }
  }
  return sigma;
}

double moment_variance(const ExponentialModel& model, const TruncationWindow& window) {
  const std::vector<double> f = model_cdf_at_cuts(model, window.boundaries());
  const std::vector<double> grad = truncated_moment_gradient(window, f);
  // Gradient support is l-1 .. r+1 (1-based), so skip the zero block.
  const std::size_t lo = window.left_index() >= 2 ? window.left_index() - 2 : 0;
  const std::size_t hi = window.right_index();  // slot of j = r + 1
  double total = 0.0;
  for (std::size_t j = lo; j <= hi; ++j) {
    double row = grad[j] * f[j] * (1.0 - f[j]);
    for (std::size_t k = j + 1; k <= hi; ++k) row += 2.0 * grad[k] * f[j] * (1.0 - f[k]);
    total += grad[j] * row;
  }
  return total;
}

double asymptotic_variance(const ExponentialModel& model, std::uint64_t sample_size,
                           const TruncationWindow& window) {
  if (sample_size == 0) {
    throw Error(ErrorCode::InvalidArgument, "sample size must be at least 1");
  }
  const double slope = inverse_moment_slope(model, window);
  return slope * slope * moment_variance(model, window) / static_cast<double>(sample_size);
}

const char* to_string(SolverKind kind) noexcept {
  return kind == SolverKind::FixedPoint ? "FixedPoint" : "Bracketed";
}

std::optional<double> fixed_point_map(double mu, const TruncationWindow& w, double theta) {
  const double a2 = w.right_lower_weight();
  if (!(a2 > 0.0) || !(theta > 0.0)) return std::nullopt;
  const auto& b = w.boundaries();
  const std::size_t l = w.left_index();
  const std::size_t r = w.right_index();
  const auto e = [&](std::size_t j) { return std::exp(-b.cut(j) / theta); };
  const auto cdf = [&](std::size_t j) { return -std::expm1(-b.cut(j) / theta); };

  double p = w.left_moment_coef() * (e(l - 1) - e(l));
  for (std::size_t i = l + 1; i <= r; ++i) p += w.midpoint(i) * (e(i - 1) - e(i));
  p += w.right_moment_coef() * (e(r) - e(r + 1));
  const double q = w.right_upper_weight() * cdf(r + 1) - w.left_lower_weight() * cdf(l - 1) -
                   w.left_upper_weight() * cdf(l);

  // log((mu A2 - P + mu Q) / (mu A2)) = log1p((mu Q - P) / (mu A2)); the
  // argument must stay in (0, 1), i.e. mu (A2 + Q) > P and mu Q < P.
  const double shift = (mu * q - p) / (mu * a2);
  if (!(shift > -1.0 && shift < 0.0)) return std::nullopt;
  return -b.cut(r) / std::log1p(shift);
}

namespace {

bool residual_ok(double residual, double mu, const SolverOptions& options) {
  return residual <= options.tolerance * std::max(1.0, std::fabs(mu));
}

double clamp_start(double start, const SolverOptions& options) {
  if (!std::isfinite(start) || !(start > 0.0)) start = 1.0;
  return std::clamp(start, options.theta_min, options.theta_max);
}

}  // namespace

std::optional<MomentRoot> solve_fixed_point(double mu, const TruncationWindow& window,
                                            double start, const SolverOptions& options) {
  double theta = clamp_start(start, options);
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    const auto next = fixed_point_map(mu, window, theta);
    if (!next || !std::isfinite(*next) || *next < options.theta_min ||
        *next > options.theta_max) {
      return std::nullopt;
    }
    const double step = std::fabs(*next - theta);
    theta = *next;
    if (step <= 1e-13 * theta) {
      const double residual = std::fabs(model_moment(window, theta) - mu);
      if (!residual_ok(residual, mu, options)) return std::nullopt;
      return MomentRoot{theta, residual, SolverKind::FixedPoint, iter, false};
    }
  }
  return std::nullopt;
}

MomentRoot solve_bracketed(double mu, const TruncationWindow& window, double start,
                           const SolverOptions& options) {
  const auto h = [&](double theta) { return model_moment(window, theta) - mu; };
  int evaluations = 1;
  bool non_monotone = false;

  double lo = clamp_start(start, options);
  double flo = h(lo);
  double hi = lo;
  double fhi = flo;
  if (flo < 0.0) {
    while (fhi < 0.0) {
      if (hi >= options.theta_max) {
        throw Error(ErrorCode::SolverFailure,
                    "root lies above theta_max = " + format_number(options.theta_max));
      }
      lo = hi;
      flo = fhi;
      hi = std::min(2.0 * hi, options.theta_max);
      fhi = h(hi);
      ++evaluations;
      if (fhi < flo) non_monotone = true;
    }
  } else if (flo > 0.0) {
    while (flo > 0.0) {
      if (lo <= options.theta_min) {
        throw Error(ErrorCode::SolverFailure,
                    "root lies below theta_min = " + format_number(options.theta_min));
      }
      hi = lo;
      fhi = flo;
      lo = std::max(0.5 * lo, options.theta_min);
      flo = h(lo);
      ++evaluations;
      if (flo > fhi) non_monotone = true;
    }
  }

  const detail::RootResult root =
      detail::bracketed_zero(h, lo, hi, flo, fhi, options.max_iterations);
  const double residual = std::fabs(root.fx);
  if (!root.converged || !residual_ok(residual, mu, options)) {
    throw Error(ErrorCode::SolverFailure,
                "bracketed solve did not converge: theta = " + format_number(root.x) +
                    ", residual = " + format_number(residual) + ", iterations = " +
                    std::to_string(root.iterations));
  }
  return MomentRoot{root.x, residual, SolverKind::Bracketed, evaluations + root.iterations,
                    non_monotone};
}

MomentRoot solve_moment(double mu, const TruncationWindow& window, double start,
                        const SolverOptions& options) {
  const MomentLimits limits = moment_limits(window);
  if (!(mu > limits.lower && mu < limits.upper)) {
    throw Error(ErrorCode::NoSolution, "sample moment " + format_number(mu) +
                                           " outside the attainable range (" +
                                           format_number(limits.lower) + ", " +
                                           format_number(limits.upper) + ")");
  }
  if (!window.upper_on_cut()) {
    if (auto fp = solve_fixed_point(mu, window, start, options)) return *fp;
  }
  return solve_bracketed(mu, window, start, options);
}

double moment_matched_start(const GroupedSample& sample) {
  const auto& b = sample.boundaries();
  double sum = 0.0;
  for (std::size_t j = 1; j <= b.size(); ++j) {
    sum += static_cast<double>(sample.count(j)) * 0.5 * (b.cut(j - 1) + b.cut(j));
  }
  sum += static_cast<double>(sample.count(b.group_count())) * b.last();
  return sum / static_cast<double>(sample.total());
}

MtumEstimate solve(const GroupedSample& sample, const TruncationWindow& window,
                   std::optional<double> theta_hint, const SolverOptions& options) {
  const double mu = sample_truncated_moment(sample, window);
  const double start = theta_hint.value_or(moment_matched_start(sample));
  const MomentRoot root = solve_moment(mu, window, start, options);

  MtumEstimate out;
  out.theta_hat = root.theta;
  out.mu_hat = mu;
  out.asymptotic_variance =
      asymptotic_variance(ExponentialModel(root.theta), sample.total(), window);
  out.solver = root.solver;
  out.iterations = root.iterations;
  out.residual = root.residual;
  out.non_monotone = root.non_monotone;
  return out;
}

}  // namespace mtum

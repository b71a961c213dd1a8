#pragma once

#include <cstdint>

#include <boost/math/tools/toms748_solve.hpp>

namespace mtum::detail {

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Bracketed zero of f on [a, b]; f(a) and f(b) must differ in sign or one
// of them must be zero.
template <class F>
RootResult bracketed_zero(F&& f, double a, double b, double fa, double fb, int max_iterations) {
  if (fa == 0.0) return {a, fa, 0, true};
  if (fb == 0.0) return {b, fb, 0, true};
  auto iterations = static_cast<std::uintmax_t>(max_iterations);
  const auto [lo, hi] = boost::math::tools::toms748_solve(
      f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(), iterations);
  const double x = 0.5 * (lo + hi);
  return {x, f(x), static_cast<int>(iterations),
          iterations < static_cast<std::uintmax_t>(max_iterations)};
}

}  // namespace mtum::detail

#pragma once

#include <cstddef>

#include "mtum/grouped_data.hpp"

namespace mtum {

// Fixed truncation window [t, T] resolved against a boundary vector.
//
// With l and r such that c_{l-1} < t <= c_l and c_r < T <= c_{r+1}, the
// ogive at the truncation points interpolates
//
//   F(t) = A1 F(c_{l-1}) + B1 F(c_l),   F(T) = A2 F(c_r) + B2 F(c_{r+1}),
//
// and the partial first moments of the two boundary pieces are
//
//   u_l = (c_l^2 - t^2) / (2 (c_l - c_{l-1})),
//   z_r = (T^2 - c_r^2) / (2 (c_{r+1} - c_r)).
//
// t = 0 resolves to l = 1 with A1 = 1. A window inside a single group
// (r = l - 1) carries no information about theta and is rejected.
class TruncationWindow {
 public:
  TruncationWindow(GroupBoundaries boundaries, double lower, double upper);

  const GroupBoundaries& boundaries() const noexcept { return boundaries_; }

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

  // l and r.
  std::size_t left_index() const noexcept { return left_; }
  std::size_t right_index() const noexcept { return right_; }
  bool adjacent_groups() const noexcept { return left_ == right_; }

  // A1, B1: weights of c_{l-1} and c_l in t.
  double left_lower_weight() const noexcept { return a1_; }
  double left_upper_weight() const noexcept { return b1_; }
  // A2, B2: weights of c_r and c_{r+1} in T.
  double right_lower_weight() const noexcept { return a2_; }
  double right_upper_weight() const noexcept { return b2_; }

  // u_l and z_r.
  double left_moment_coef() const noexcept { return u_; }
  double right_moment_coef() const noexcept { return z_; }

  // v_i = (c_i + c_{i-1}) / 2.
  double midpoint(std::size_t i) const { return 0.5 * (boundaries_.cut(i) + boundaries_.cut(i - 1)); }

  // T sits exactly on c_{r+1}, so A2 = 0 and the fixed-point map is unusable.
  bool upper_on_cut() const noexcept { return a2_ == 0.0; }

 private:
  GroupBoundaries boundaries_;
  double lower_;
  double upper_;
  std::size_t left_ = 0;
  std::size_t right_ = 0;
  double a1_ = 0.0, b1_ = 0.0, a2_ = 0.0, b2_ = 0.0;
  double u_ = 0.0, z_ = 0.0;
};

TruncationWindow resolve_window(const GroupBoundaries& boundaries, double lower, double upper);

}  // namespace mtum

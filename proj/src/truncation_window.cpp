#include "mtum/truncation_window.hpp"

#include <cmath>
#include <string>

#include "mtum/error.hpp"
#include "format_util.hpp"

namespace mtum {

TruncationWindow::TruncationWindow(GroupBoundaries boundaries, double lower, double upper)
    : boundaries_(std::move(boundaries)), lower_(lower), upper_(upper) {
  if (!std::isfinite(lower) || !std::isfinite(upper) || lower < 0.0 || !(lower < upper)) {
    throw Error(ErrorCode::InvalidWindow,
                "need 0 <= t < T, got t = " + format_number(lower) + ", T = " + format_number(upper));
  }
  if (upper > boundaries_.last()) {
    throw Error(ErrorCode::WindowBeyondCuts, "T = " + format_number(upper) +
                                                 " exceeds the last cut " +
                                                 format_number(boundaries_.last()));
  }
  left_ = lower == 0.0 ? 1 : boundaries_.group_of(lower);
  right_ = boundaries_.group_of(upper) - 1;
  if (right_ < left_) {
    throw Error(ErrorCode::NonIdentifiableWindow,
                "t = " + format_number(lower) + " and T = " + format_number(upper) +
                    " fall in the same group (" + format_number(boundaries_.cut(left_ - 1)) +
                    ", " + format_number(boundaries_.cut(left_)) + "]");
  }

  const double c_lm1 = boundaries_.cut(left_ - 1);
  const double c_l = boundaries_.cut(left_);
  const double c_r = boundaries_.cut(right_);
  const double c_rp1 = boundaries_.cut(right_ + 1);

  a1_ = (c_l - lower) / (c_l - c_lm1);
  b1_ = (lower - c_lm1) / (c_l - c_lm1);
  a2_ = (c_rp1 - upper) / (c_rp1 - c_r);
  b2_ = (upper - c_r) / (c_rp1 - c_r);
  u_ = (c_l * c_l - lower * lower) / (2.0 * (c_l - c_lm1));
  z_ = (upper * upper - c_r * c_r) / (2.0 * (c_rp1 - c_r));
}

TruncationWindow resolve_window(const GroupBoundaries& boundaries, double lower, double upper) {
  return TruncationWindow(boundaries, lower, upper);
}

}  // namespace mtum

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace mtum {

// Finite group boundaries c_1 < ... < c_m. The lower edge c_0 = 0 and the
// open upper edge c_{m+1} = +inf are implicit. Group j covers (c_{j-1}, c_j].
class GroupBoundaries {
 public:
  explicit GroupBoundaries(std::vector<double> cuts);

  // Number of finite cuts, m.
  std::size_t size() const noexcept { return cuts_.size(); }
  std::size_t group_count() const noexcept { return cuts_.size() + 1; }

  std::span<const double> cuts() const noexcept { return cuts_; }

  // c_j for 0 <= j <= m + 1.
  double cut(std::size_t j) const;
  double last() const noexcept { return cuts_.back(); }
  double width(std::size_t j) const { return cut(j) - cut(j - 1); }

  // Index j in [1, m + 1] with c_{j-1} < x <= c_j. Requires x > 0.
  std::size_t group_of(double x) const;

  friend bool operator==(const GroupBoundaries&, const GroupBoundaries&) = default;

 private:
  std::vector<double> cuts_;
};

// Counts n_1, ..., n_{m+1} per group. The last group is open to +inf.
class GroupedSample {
 public:
  GroupedSample(GroupBoundaries boundaries, std::vector<std::uint64_t> counts);

  const GroupBoundaries& boundaries() const noexcept { return boundaries_; }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::uint64_t total() const noexcept { return total_; }

  // n_j for 1 <= j <= m + 1.
  std::uint64_t count(std::size_t j) const { return counts_.at(j - 1); }

  // F_n(c_j) = (n_1 + ... + n_j) / n for 0 <= j <= m + 1, exact up to the
  // final division.
  double cdf_at_cut(std::size_t j) const;

  // (F_n(c_1), ..., F_n(c_m)).
  std::vector<double> cdf_at_cuts() const;

 private:
  GroupBoundaries boundaries_;
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint64_t> cumulative_;
  std::uint64_t total_ = 0;
};

// Tallies positive raw values into their right-closed groups.
GroupedSample group_raw(std::span<const double> values, const GroupBoundaries& boundaries);

// Linearly interpolated empirical cdf on [0, c_m].
double ogive(const GroupedSample& sample, double x);

// Piecewise-constant density n_j / (n (c_j - c_{j-1})) on (0, c_m].
double histogram(const GroupedSample& sample, double x);

// Inverse of the ogive on (0, F_n(c_m)]. Levels held by a zero-count
// group have no unique preimage and raise DegenerateInterval.
double empirical_quantile(const GroupedSample& sample, double s);

// Grouped CSV with header "lower,upper,count". Rows must be contiguous,
// start at 0, and only the last row may have upper = inf. When the last row
// is finite the open tail group gets a zero count.
GroupedSample read_grouped_csv(std::istream& in);
void write_grouped_csv(std::ostream& out, const GroupedSample& sample);

}  // namespace mtum

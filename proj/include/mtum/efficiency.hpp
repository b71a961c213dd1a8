#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "mtum/exponential.hpp"
#include "mtum/grouped_data.hpp"
#include "mtum/mle.hpp"
#include "mtum/truncation_window.hpp"

namespace mtum {

// I(theta)^{-1} / ((g'_theta)^2 D Sigma D'); the sample size cancels.
double are_mtum_vs_mle(const ExponentialModel& model, const GroupBoundaries& boundaries,
                       const TruncationWindow& window, TailTerm tail = TailTerm::Include);

struct EfficiencyCell {
  double lower = 0.0;
  double upper = 0.0;
  std::optional<double> are;  // empty for windows that cannot be resolved
  double f_lower = 0.0;       // F(t)
  double tail_upper = 0.0;    // 1 - F(T)
};

struct EfficiencyTable {
  std::vector<double> lowers;
  std::vector<double> uppers;
  std::vector<std::vector<EfficiencyCell>> cells;  // [lower][upper]

  std::size_t populated() const;
};

EfficiencyTable are_table(const ExponentialModel& model, const GroupBoundaries& boundaries,
                          std::span<const double> lowers, std::span<const double> uppers,
                          TailTerm tail = TailTerm::Include);

// Grid with t down the rows and T across the columns, F(t) and 1 - F(T) in
// parentheses, three decimals, "-" for unresolvable cells.
void write_table_text(std::ostream& out, const EfficiencyTable& table);
// One row per cell: t,F_t,T,tail_T,are with "null" for unresolvable cells.
void write_table_csv(std::ostream& out, const EfficiencyTable& table);

}  // namespace mtum

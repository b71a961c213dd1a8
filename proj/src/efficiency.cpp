#include "mtum/efficiency.hpp"

#include <cstdio>
#include <ostream>
#include <string>

#include "mtum/error.hpp"
#include "mtum/estimator.hpp"
#include "format_util.hpp"

namespace mtum {

double are_mtum_vs_mle(const ExponentialModel& model, const GroupBoundaries& boundaries,
                       const TruncationWindow& window, TailTerm tail) {
  const double mle_var = 1.0 / fisher_information(model, boundaries, tail);
  return mle_var / asymptotic_variance(model, 1, window);
}

std::size_t EfficiencyTable::populated() const {
  std::size_t n = 0;
  for (const auto& row : cells) {
    for (const auto& cell : row) n += cell.are.has_value() ? 1 : 0;
  }
  return n;
}

EfficiencyTable are_table(const ExponentialModel& model, const GroupBoundaries& boundaries,
                          std::span<const double> lowers, std::span<const double> uppers,
                          TailTerm tail) {
  EfficiencyTable table;
  table.lowers.assign(lowers.begin(), lowers.end());
  table.uppers.assign(uppers.begin(), uppers.end());
  for (double t : lowers) {
    auto& row = table.cells.emplace_back();
    for (double T : uppers) {
      EfficiencyCell cell;
      cell.lower = t;
      cell.upper = T;
      cell.f_lower = model.cdf(t);
      cell.tail_upper = model.survival(T);
      try {
        const TruncationWindow window(boundaries, t, T);
        cell.are = are_mtum_vs_mle(model, boundaries, window, tail);
      } catch (const Error&) {
        // t >= T, T beyond the cuts, or both points in one group.
      }
      row.push_back(cell);
    }
  }
  return table;
}

namespace {

std::string fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

void write_table_text(std::ostream& out, const EfficiencyTable& table) {
  constexpr std::size_t kWidth = 14;
  out << pad("t (F(t))", kWidth) << " |";
  for (std::size_t k = 0; k < table.uppers.size(); ++k) {
    const double tail = table.cells.empty() ? 0.0 : table.cells.front()[k].tail_upper;
    out << pad(format_number(table.uppers[k]) + " (" + fixed(tail, 2) + ")", kWidth);
  }
  out << '\n' << std::string(kWidth + 2 + kWidth * table.uppers.size(), '-') << '\n';
  for (std::size_t i = 0; i < table.lowers.size(); ++i) {
    const double f = table.cells[i].empty() ? 0.0 : table.cells[i].front().f_lower;
    out << pad(fixed(table.lowers[i], 1) + " (" + fixed(f, 2) + ")", kWidth) << " |";
    for (const auto& cell : table.cells[i]) {
      out << pad(cell.are ? fixed(*cell.are, 3) : "-", kWidth);
    }
    out << '\n';
  }
}

void write_table_csv(std::ostream& out, const EfficiencyTable& table) {
  out << "t,F_t,T,tail_T,are\n";
  for (const auto& row : table.cells) {
    for (const auto& cell : row) {
      out << format_number(cell.lower) << ',' << format_number(cell.f_lower) << ','
          << format_number(cell.upper) << ',' << format_number(cell.tail_upper) << ','
          << (cell.are ? format_number(*cell.are) : "null") << '\n';
    }
  }
}

}  // namespace mtum

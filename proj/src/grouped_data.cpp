#include "mtum/grouped_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "mtum/error.hpp"
#include "format_util.hpp"

namespace mtum {

GroupBoundaries::GroupBoundaries(std::vector<double> cuts) : cuts_(std::move(cuts)) {
  if (cuts_.size() < 2) {
    throw Error(ErrorCode::InvalidBoundaries, "at least two finite cuts are required");
  }
  double previous = 0.0;
  for (double c : cuts_) {
    if (!std::isfinite(c) || c <= previous) {
      throw Error(ErrorCode::InvalidBoundaries,
                  "cuts must be finite, positive and strictly increasing");
    }
    previous = c;
  }
}

double GroupBoundaries::cut(std::size_t j) const {
  if (j == 0) return 0.0;
  if (j <= cuts_.size()) return cuts_[j - 1];
  if (j == cuts_.size() + 1) return std::numeric_limits<double>::infinity();
  throw Error(ErrorCode::InvalidArgument, "cut index out of range");
}

std::size_t GroupBoundaries::group_of(double x) const {
  if (!(x > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "group lookup requires x > 0");
  }
  // First cut >= x closes the group (c_{j-1}, c_j].
  const auto it = std::lower_bound(cuts_.begin(), cuts_.end(), x);
  return static_cast<std::size_t>(it - cuts_.begin()) + 1;
}

GroupedSample::GroupedSample(GroupBoundaries boundaries, std::vector<std::uint64_t> counts)
    : boundaries_(std::move(boundaries)), counts_(std::move(counts)) {
  if (counts_.size() != boundaries_.group_count()) {
    throw Error(ErrorCode::InvalidCounts, "expected " +
                                              std::to_string(boundaries_.group_count()) +
                                              " counts, got " + std::to_string(counts_.size()));
  }
  cumulative_.assign(counts_.size() + 1, 0);
  for (std::size_t j = 0; j < counts_.size(); ++j) {
    cumulative_[j + 1] = cumulative_[j] + counts_[j];
  }
  total_ = cumulative_.back();
  if (total_ == 0) {
    throw Error(ErrorCode::EmptySample, "grouped sample has no observations");
  }
}

double GroupedSample::cdf_at_cut(std::size_t j) const {
  return static_cast<double>(cumulative_.at(j)) / static_cast<double>(total_);
}

std::vector<double> GroupedSample::cdf_at_cuts() const {
  std::vector<double> out(boundaries_.size());
  for (std::size_t j = 1; j <= out.size(); ++j) out[j - 1] = cdf_at_cut(j);
  return out;
}

GroupedSample group_raw(std::span<const double> values, const GroupBoundaries& boundaries) {
  if (values.empty()) {
    throw Error(ErrorCode::EmptySample, "no values to group");
  }
  std::vector<std::uint64_t> counts(boundaries.group_count(), 0);
  for (double x : values) {
    if (!(x > 0.0) || std::isnan(x)) {
      throw Error(ErrorCode::InvalidArgument, "raw values must be positive");
    }
    ++counts[boundaries.group_of(x) - 1];
  }
  return GroupedSample(boundaries, std::move(counts));
}

namespace {

void require_within_cuts(const GroupBoundaries& b, double x) {
  if (std::isnan(x) || x < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "x must be non-negative");
  }
  if (x > b.last()) {
    throw Error(ErrorCode::UndefinedBeyondLastCut,
                "x = " + format_number(x) + " exceeds the last cut " + format_number(b.last()));
  }
}

}  // namespace

double ogive(const GroupedSample& sample, double x) {
  const auto& b = sample.boundaries();
  require_within_cuts(b, x);
  if (x == 0.0) return 0.0;
  const std::size_t j = b.group_of(x);
  const double lo = b.cut(j - 1);
  const double hi = b.cut(j);
  if (x == hi) return sample.cdf_at_cut(j);
  const double f_lo = sample.cdf_at_cut(j - 1);
  return f_lo + (x - lo) / (hi - lo) * (sample.cdf_at_cut(j) - f_lo);
}

double histogram(const GroupedSample& sample, double x) {
  const auto& b = sample.boundaries();
  require_within_cuts(b, x);
  if (x == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "histogram is defined for x > 0");
  }
  const std::size_t j = b.group_of(x);
  return static_cast<double>(sample.count(j)) /
         (static_cast<double>(sample.total()) * b.width(j));
}

double empirical_quantile(const GroupedSample& sample, double s) {
  const auto& b = sample.boundaries();
  const std::size_t m = b.size();
  if (std::isnan(s) || s <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "quantile level must be positive");
  }
  if (s > sample.cdf_at_cut(m)) {
    throw Error(ErrorCode::UndefinedBeyondLastCut,
                "level " + format_number(s) + " exceeds F_n(c_m) = " +
                    format_number(sample.cdf_at_cut(m)));
  }
  // Smallest j with F_n(c_j) >= s.
  std::size_t j = 1;
  while (sample.cdf_at_cut(j) < s) ++j;
  const double f_lo = sample.cdf_at_cut(j - 1);
  const double f_hi = sample.cdf_at_cut(j);
  if (s == f_hi) {
    // A flat group right above the knot maps the same level onto a whole
    // segment; there is no unique inverse.
    if (j < m && sample.count(j + 1) == 0) {
      throw Error(ErrorCode::DegenerateInterval,
                  "level " + format_number(s) + " is held by zero-count group " +
                      std::to_string(j + 1));
    }
    return b.cut(j);
  }
  if (sample.count(j) == 0) {
    throw Error(ErrorCode::DegenerateInterval, "zero-count group " + std::to_string(j));
  }
  return b.cut(j - 1) + b.width(j) * (s - f_lo) / (f_hi - f_lo);
}

namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& why) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + why);
}

double parse_bound(const std::string& field, std::size_t line) {
  if (field == "inf" || field == "Inf" || field == "INF" || field == "+inf") {
    return std::numeric_limits<double>::infinity();
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value)) {
    parse_fail(line, "bad boundary '" + field + "'");
  }
  return value;
}

std::uint64_t parse_count(const std::string& field, std::size_t line) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    parse_fail(line, "bad count '" + field + "'");
  }
  return value;
}

}  // namespace

GroupedSample read_grouped_csv(std::istream& in) {
  std::string text;
  std::size_t line_no = 0;
  bool header_seen = false;
  bool closed = false;
  double previous_upper = 0.0;
  std::vector<double> cuts;
  std::vector<std::uint64_t> counts;

  while (std::getline(in, text)) {
    ++line_no;
    text = trim(text);
    if (text.empty()) continue;
    if (!header_seen) {
      std::string compact;
      for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
      }
      if (compact != "lower,upper,count") parse_fail(line_no, "expected header lower,upper,count");
      header_seen = true;
      continue;
    }
    if (closed) parse_fail(line_no, "rows after the open (upper=inf) group");

    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto comma = text.find(',', start);
      fields.push_back(trim(text.substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 3) parse_fail(line_no, "expected 3 fields");

    const double lower = parse_bound(fields[0], line_no);
    const double upper = parse_bound(fields[1], line_no);
    const std::uint64_t count = parse_count(fields[2], line_no);
    if (lower < previous_upper) parse_fail(line_no, "row overlaps the previous row");
    if (lower > previous_upper) parse_fail(line_no, "gap before this row");
    if (!(upper > lower)) parse_fail(line_no, "upper must exceed lower");

    counts.push_back(count);
    if (std::isinf(upper)) {
      closed = true;
    } else {
      cuts.push_back(upper);
      previous_upper = upper;
    }
  }
  if (!header_seen) parse_fail(line_no, "missing header");
  if (!closed) counts.push_back(0);

  try {
    return GroupedSample(GroupBoundaries(std::move(cuts)), std::move(counts));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::EmptySample) throw;
    throw Error(ErrorCode::ParseError, e.what());
  }
}

void write_grouped_csv(std::ostream& out, const GroupedSample& sample) {
  const auto& b = sample.boundaries();
  out << "lower,upper,count\n";
  for (std::size_t j = 1; j <= b.size(); ++j) {
    out << format_number(b.cut(j - 1)) << ',' << format_number(b.cut(j)) << ','
        << sample.count(j) << '\n';
  }
  out << format_number(b.last()) << ",inf," << sample.count(b.group_count()) << '\n';
}

}  // namespace mtum

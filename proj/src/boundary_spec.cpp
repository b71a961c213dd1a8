#include "mtum/boundary_spec.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "mtum/error.hpp"
#include "format_util.hpp"

namespace mtum {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view field) {
  field = trim(field);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() ||
      !std::isfinite(value)) {
    throw Error(ErrorCode::ParseError, "bad number '" + std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

void append_range(std::vector<double>& out, std::string_view item) {
  const auto parts = split(item, ':');
  if (parts.size() != 3) {
    throw Error(ErrorCode::ParseError, "range must be a:s:b, got '" + std::string(item) + "'");
  }
  const double a = parse_real(parts[0]);
  const double s = parse_real(parts[1]);
  const double b = parse_real(parts[2]);
  if (!(s > 0.0) || b < a) {
    throw Error(ErrorCode::ParseError, "range '" + std::string(item) + "' needs s > 0 and a <= b");
  }
  const double steps = std::floor((b - a) / s + 1e-9);
  if (steps > 1e7) throw Error(ErrorCode::ParseError, "range too long");
  for (long k = 0; k <= static_cast<long>(steps); ++k) out.push_back(a + static_cast<double>(k) * s);
}

bool is_inf(std::string_view item) {
  return item == "inf" || item == "Inf" || item == "INF" || item == "+inf";
}

}  // namespace

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  for (auto item : split(text, ',')) {
    item = trim(item);
    if (item.find(':') != std::string_view::npos) {
      append_range(out, item);
    } else {
      out.push_back(parse_real(item));
    }
  }
  return out;
}

GroupBoundaries parse_boundary_spec(std::string_view spec) {
  auto items = split(spec, ',');
  for (auto& item : items) item = trim(item);
  if (!items.empty() && is_inf(items.back())) items.pop_back();
  for (const auto& item : items) {
    if (is_inf(item)) throw Error(ErrorCode::ParseError, "'inf' is only allowed at the end");
  }

  std::vector<double> values;
  for (const auto& item : items) {
    if (item.find(':') != std::string_view::npos) {
      append_range(values, item);
    } else {
      values.push_back(parse_real(item));
    }
  }
  if (!values.empty() && values.front() == 0.0) values.erase(values.begin());
  try {
    return GroupBoundaries(std::move(values));
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string format_boundary_spec(const GroupBoundaries& boundaries) {
  const auto cuts = boundaries.cuts();
  std::vector<double> values{0.0};
  values.insert(values.end(), cuts.begin(), cuts.end());

  std::string out;
  std::size_t i = 0;
  while (i < values.size()) {
    if (!out.empty()) out += ',';
    // Fold a run only when the parser regenerates it bit for bit.
    std::size_t end = i;
    if (i + 2 < values.size()) {
      const double a = values[i];
      const double s = values[i + 1] - values[i];
      while (end + 1 < values.size() &&
             values[end + 1] == a + static_cast<double>(end + 1 - i) * s) {
        ++end;
      }
      if (end - i >= 2) {
        const std::string item =
            format_number(a) + ':' + format_number(s) + ':' + format_number(values[end]);
        std::vector<double> check;
        append_range(check, item);
        if (check.size() != end - i + 1) end = i;
        else out += item;
      } else {
        end = i;
      }
    }
    if (end == i) out += format_number(values[i]);
    i = end + 1;
  }
  return out + ",inf";
}

}  // namespace mtum

#include "mtum/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <thread>

#include "mtum/efficiency.hpp"
#include "mtum/error.hpp"
#include "mtum/estimator.hpp"
#include "mtum/mle.hpp"
#include "mtum/truncation_window.hpp"
#include "format_util.hpp"

namespace mtum {

namespace {
constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

RandomStream RandomStream::split(std::uint64_t tag) const noexcept {
  return RandomStream(mix64(key_ ^ mix64(tag + kGoldenGamma)) + kGoldenGamma);
}

std::uint64_t RandomStream::next_u64() noexcept {
  ++counter_;
  return mix64(key_ + counter_ * kGoldenGamma);
}

double RandomStream::next_uniform() noexcept {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<double> sample_exponential(const ExponentialModel& model, std::size_t n,
                                       RandomStream& stream) {
  std::vector<double> out(n);
  for (auto& x : out) x = -model.theta() * std::log1p(-stream.next_uniform());
  return out;
}

const SimulationRow* SimulationReport::find(double lower, double upper, std::uint64_t n) const {
  for (const auto& row : rows) {
    if (row.window.lower == lower && row.window.upper == upper && row.n == n) return &row;
  }
  return nullptr;
}

namespace {

struct WindowTally {
  std::uint64_t count = 0;
  std::uint64_t failures = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }
};

struct Job {
  std::size_t size_index;
  std::uint64_t batch;
};

double sample_sd(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

}  // namespace

SimulationReport run_study(const SimulationConfig& config) {
  if (!(config.theta > 0.0) || config.sample_sizes.empty() || config.windows.empty() ||
      config.replications_per_batch == 0 || config.batches == 0) {
    throw Error(ErrorCode::InvalidArgument, "simulation config needs theta > 0, windows, "
                                            "sample sizes, replications and batches");
  }
  for (auto n : config.sample_sizes) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "sample sizes must be positive");
  }

  const ExponentialModel model(config.theta);
  const GroupBoundaries& boundaries = config.boundaries;
  const double info = fisher_information(model, boundaries);
  const double mle_ratio = config.theta * config.theta * info;

  std::vector<std::optional<TruncationWindow>> windows;
  for (const auto& spec : config.windows) {
    try {
      windows.emplace_back(TruncationWindow(boundaries, spec.lower, spec.upper));
    } catch (const Error&) {
      windows.emplace_back(std::nullopt);
    }
  }

  std::vector<Job> jobs;
  for (std::size_t s = 0; s < config.sample_sizes.size(); ++s) {
    for (std::uint64_t b = 0; b < config.batches; ++b) jobs.push_back({s, b});
  }
  std::vector<std::vector<WindowTally>> tallies(jobs.size());

  const RandomStream root(config.seed);
  const auto run_job = [&](std::size_t job_index) {
    const Job& job = jobs[job_index];
    const std::uint64_t n = config.sample_sizes[job.size_index];
    std::vector<WindowTally> tally(windows.size());
    const RandomStream batch_stream = root.split(n).split(job.batch);
    for (std::uint64_t rep = 0; rep < config.replications_per_batch; ++rep) {
      RandomStream stream = batch_stream.split(rep);
      const GroupedSample sample =
          group_raw(sample_exponential(model, static_cast<std::size_t>(n), stream), boundaries);
      const double start = moment_matched_start(sample);
      for (std::size_t w = 0; w < windows.size(); ++w) {
        if (!windows[w]) continue;
        try {
          const double mu = sample_truncated_moment(sample, *windows[w]);
          tally[w].add(solve_moment(mu, *windows[w], start).theta);
        } catch (const Error&) {
          ++tally[w].failures;
        }
      }
    }
    tallies[job_index] = std::move(tally);
  };

  unsigned threads = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_job(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) run_job(i);
      });
    }
  }

  SimulationReport report;
  report.label = config.label;
  report.theta = config.theta;
  report.sample_sizes = config.sample_sizes;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t w = 0; w < windows.size(); ++w) {
    double are_grouped = nan;
    if (windows[w]) are_grouped = are_mtum_vs_mle(model, boundaries, *windows[w]);
    for (std::size_t s = 0; s < config.sample_sizes.size(); ++s) {
      SimulationRow row;
      row.window = config.windows[w];
      row.n = config.sample_sizes[s];
      row.are_mle_ratio = mle_ratio;
      if (!windows[w]) {
        row.applicable = false;
        row.mean_ratio = row.se_mean = row.re = row.se_re = nan;
        row.are_grouped = row.are_ungrouped = nan;
        report.rows.push_back(row);
        continue;
      }
      row.are_grouped = are_grouped;
      row.are_ungrouped = are_grouped * mle_ratio;

      const double mle_var = 1.0 / (info * static_cast<double>(row.n));
      std::vector<double> batch_means;
      std::vector<double> batch_re;
      for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (jobs[j].size_index != s) continue;
        const WindowTally& t = tallies[j][w];
        row.failures += t.failures;
        row.attempts += t.failures + t.count;
        batch_means.push_back(t.count > 0 ? t.mean : nan);
        batch_re.push_back(t.count > 1 ? mle_var / (t.m2 / static_cast<double>(t.count - 1))
                                       : nan);
      }
      const double mean_theta = mean_of(batch_means);
      row.mean_ratio = mean_theta / config.theta;
      row.se_mean = sample_sd(batch_means, mean_theta) / config.theta;
      row.re = mean_of(batch_re);
      row.se_re = sample_sd(batch_re, row.re);
      row.flagged = row.attempts > 0 && 100 * row.failures > row.attempts;
      report.rows.push_back(row);
    }
  }
  return report;
}

namespace {

std::string csv_value(double x) { return std::isnan(x) ? "n/a" : format_number(x); }

std::string fixed(double x, int decimals) {
  if (std::isnan(x)) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

void write_report_csv(std::ostream& out, const SimulationReport& report) {
  out << "window_t,window_T,n,mean_ratio,se_mean,re,se_re,are_grouped,are_ungrouped,"
         "are_mle_ratio,failures\n";
  for (const auto& row : report.rows) {
    out << format_number(row.window.lower) << ',' << format_number(row.window.upper) << ','
        << row.n << ',' << csv_value(row.mean_ratio) << ',' << csv_value(row.se_mean) << ','
        << csv_value(row.re) << ',' << csv_value(row.se_re) << ','
        << csv_value(row.are_grouped) << ',' << csv_value(row.are_ungrouped) << ','
        << csv_value(row.are_mle_ratio) << ',' << row.failures << '\n';
  }
}

void write_report_text(std::ostream& out, const SimulationReport& report) {
  constexpr std::size_t kCell = 16;
  constexpr std::size_t kInf = 8;
  if (!report.label.empty()) out << report.label << '\n';
  out << "theta = " << format_number(report.theta) << '\n';

  std::vector<WindowSpec> windows;
  for (const auto& row : report.rows) {
    const bool seen = std::any_of(windows.begin(), windows.end(), [&](const WindowSpec& w) {
      return w.lower == row.window.lower && w.upper == row.window.upper;
    });
    if (!seen) windows.push_back(row.window);
  }

  const auto header = [&](int inf_columns) {
    out << pad("", 6) << pad("t", 8) << pad("T", 8) << " |";
    for (auto n : report.sample_sizes) out << pad(std::to_string(n), kCell);
    for (int k = 0; k < inf_columns; ++k) out << pad("inf", kInf);
    out << '\n';
  };
  const auto cell = [](double value, double se) {
    if (std::isnan(value)) return std::string("n/a");
    return fixed(value, 3) + " (" + fixed(se, 3) + ")";
  };

  header(1);
  for (std::size_t w = 0; w < windows.size(); ++w) {
    out << pad(w == 0 ? "MEAN" : "", 6) << pad(format_number(windows[w].lower), 8)
        << pad(format_number(windows[w].upper), 8) << " |";
    bool applicable = true;
    for (auto n : report.sample_sizes) {
      const auto* row = report.find(windows[w].lower, windows[w].upper, n);
      applicable = row->applicable;
      out << pad(cell(row->mean_ratio, row->se_mean), kCell);
    }
    out << pad(applicable ? "1" : "n/a", kInf) << '\n';
  }
  out << '\n';
  header(3);
  for (std::size_t w = 0; w < windows.size(); ++w) {
    out << pad(w == 0 ? "RE" : "", 6) << pad(format_number(windows[w].lower), 8)
        << pad(format_number(windows[w].upper), 8) << " |";
    const SimulationRow* last = nullptr;
    for (auto n : report.sample_sizes) {
      last = report.find(windows[w].lower, windows[w].upper, n);
      out << pad(cell(last->re, last->se_re), kCell);
    }
    if (last->applicable) {
      out << pad(fixed(last->are_grouped, 3), kInf) << pad(fixed(last->are_ungrouped, 3), kInf)
          << pad(fixed(last->are_mle_ratio, 3), kInf);
    } else {
      out << pad("n/a", kInf) << pad("-", kInf) << pad("-", kInf);
    }
    out << '\n';
  }
  for (const auto& row : report.rows) {
    if (row.flagged) {
      out << "warning: window (" << format_number(row.window.lower) << ", "
          << format_number(row.window.upper) << "), n = " << row.n << ": " << row.failures
          << " of " << row.attempts << " replications had no MTuM solution\n";
    }
  }
}

}  // namespace mtum

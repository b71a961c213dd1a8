#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mtum/exponential.hpp"
#include "mtum/grouped_data.hpp"

namespace mtum {

// Counter-based generator: the i-th output of a stream is a SplitMix64
// finalizer applied to key + i * golden_gamma, so any stream can be
// addressed directly from its key without shared state.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) noexcept : key_(key) {}

  // Independent stream keyed by (key, tag).
  RandomStream split(std::uint64_t tag) const noexcept;

  std::uint64_t next_u64() noexcept;
  // Uniform on the open interval (0, 1).
  double next_uniform() noexcept;

  std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x) noexcept;

// n i.i.d. draws -theta log(1 - U).
std::vector<double> sample_exponential(const ExponentialModel& model, std::size_t n,
                                       RandomStream& stream);

struct WindowSpec {
  double lower = 0.0;
  double upper = 0.0;
};

struct SimulationConfig {
  double theta = 10.0;
  GroupBoundaries boundaries{{1.0, 2.0}};
  std::vector<WindowSpec> windows;
  std::vector<std::uint64_t> sample_sizes;
  std::uint64_t replications_per_batch = 1000;
  std::uint64_t batches = 10;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::string label;
};

inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct SimulationRow {
  WindowSpec window;
  std::uint64_t n = 0;
  bool applicable = true;  // false when the window cannot be resolved
  double mean_ratio = 0.0;
  double se_mean = 0.0;
  double re = 0.0;
  double se_re = 0.0;
  double are_grouped = 0.0;    // MTuM vs grouped MLE
  double are_ungrouped = 0.0;  // MTuM vs ungrouped MLE
  double are_mle_ratio = 0.0;  // grouped vs ungrouped MLE
  std::uint64_t failures = 0;
  std::uint64_t attempts = 0;
  bool flagged = false;  // failure rate above 1%
};

struct SimulationReport {
  std::string label;
  double theta = 0.0;
  std::vector<std::uint64_t> sample_sizes;
  std::vector<SimulationRow> rows;  // window-major, then sample size

  const SimulationRow* find(double lower, double upper, std::uint64_t n) const;
};

// For each sample size, batch and replication: draw, group, and solve every
// window on the same grouped sample. Per batch the estimates give a mean and
// an empirical variance; RE = I(theta)^{-1} / n over that variance. Means and
// sample standard deviations across batches are reported relative to theta.
// Replications without an MTuM solution are dropped and counted.
SimulationReport run_study(const SimulationConfig& config);

void write_report_csv(std::ostream& out, const SimulationReport& report);
void write_report_text(std::ostream& out, const SimulationReport& report);

}  // namespace mtum

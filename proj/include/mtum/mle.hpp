#pragma once

#include <cstdint>

#include "mtum/exponential.hpp"
#include "mtum/grouped_data.hpp"

namespace mtum {

struct MleEstimate {
  double theta_hat = 0.0;
  double asymptotic_variance = 0.0;  // 1 / (n I(theta_hat))
  int iterations = 0;
  double score = 0.0;
};

// sum_j n_j log P_j(theta) with P_j = e^{-c_{j-1}/theta} - e^{-c_j/theta}
// and P_{m+1} = e^{-c_m/theta}.
double grouped_log_likelihood(const GroupedSample& sample, double theta);

// d/dtheta of grouped_log_likelihood.
double grouped_score(const GroupedSample& sample, double theta);

// Grouped maximum likelihood over theta in [1e-8, 1e8]. NonIdentifiable
// when fewer than two groups are occupied.
MleEstimate mle_estimate(const GroupedSample& sample);

// Whether the open group (c_m, inf) contributes to the Fisher information.
enum class TailTerm { Include, Exclude };

// I(theta) = sum_j P_j(theta) (d log P_j / d theta)^2.
double fisher_information(const ExponentialModel& model, const GroupBoundaries& boundaries,
                          TailTerm tail = TailTerm::Include);

// theta^2 / n.
double ungrouped_mle_variance(const ExponentialModel& model, std::uint64_t sample_size);

}  // namespace mtum

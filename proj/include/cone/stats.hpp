#pragma once

#include <cstdint>
#include <vector>

namespace cone {

// Average ranks, 1-based; tied values receive the mean of their rank span.
std::vector<double> average_ranks(const std::vector<double>& values);

// Spearman's rank correlation: Pearson correlation of the average-rank
// transforms. Throws std::invalid_argument on length mismatch, n < 2, or a
// zero-variance rank vector (undefined correlation).
double spearman_rho(const std::vector<double>& xs, const std::vector<double>& ys);

// Two-sided significance of spearman_rho by permuting ys.
// For n! <= iterations the full permutation group is enumerated and the
// p-value is exact; otherwise `iterations` seeded shuffles are sampled and
// p = (1 + hits) / (iterations + 1). Deterministic for a given seed.
double permutation_p_value(const std::vector<double>& xs, const std::vector<double>& ys,
                           std::int64_t iterations, std::uint64_t seed);

} // namespace cone

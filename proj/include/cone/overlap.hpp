#pragma once

#include <set>
#include <string>

namespace cone {

// Files edited in both PRs. Inputs must already be allow-list- and
// hot-file-filtered.
std::set<std::string> overlap_files(const std::set<std::string>& ref_files,
                                    const std::set<std::string>& active_files);

// Extent of overlap: |ref ∩ active| / |ref| * 100, rounded to two decimals.
// 0 when ref_files is empty. Numerator and denominator use the same filtered
// universe, so a PR fully contained in another reaches 100.
double extent_of_overlap(const std::set<std::string>& ref_files,
                         const std::set<std::string>& active_files);

// Display/storage rounding: two decimals, half away from zero.
double round_percentage(double value);

// Threshold comparison on the unrounded ratio, done without division:
// overlap_count / ref_count * 100 >= min_percent  <=>
// 100 * overlap_count >= min_percent * ref_count.
// Exact, so a pair sitting at the gate never flaps on floating-point noise.
bool eoo_meets_threshold(std::size_t overlap_count, std::size_t ref_count,
                         double min_percent);

} // namespace cone

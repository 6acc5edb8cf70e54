#include "cone/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

namespace cone {

std::set<std::string> overlap_files(const std::set<std::string>& ref_files,
                                    const std::set<std::string>& active_files) {
    std::set<std::string> out;
    std::set_intersection(ref_files.begin(), ref_files.end(), active_files.begin(),
                          active_files.end(), std::inserter(out, out.begin()));
    return out;
}

double round_percentage(double value) {
    return std::round(value * 100.0) / 100.0;
}

double extent_of_overlap(const std::set<std::string>& ref_files,
                         const std::set<std::string>& active_files) {
    if (ref_files.empty()) return 0.0;
    const auto common = overlap_files(ref_files, active_files);
    const double raw =
        100.0 * static_cast<double>(common.size()) / static_cast<double>(ref_files.size());
    return round_percentage(raw);
}

bool eoo_meets_threshold(std::size_t overlap_count, std::size_t ref_count,
                         double min_percent) {
    if (ref_count == 0) return min_percent <= 0.0;
    return 100.0 * static_cast<double>(overlap_count) >=
           min_percent * static_cast<double>(ref_count);
}

} // namespace cone

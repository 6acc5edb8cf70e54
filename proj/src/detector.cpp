#include "cone/detector.hpp"

#include <algorithm>
#include <stdexcept>

#include "cone/overlap.hpp"

namespace cone {

std::vector<Candidate> rank(std::vector<Candidate> candidates) {
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) {
                         if (a.rce_count != b.rce_count) return a.rce_count > b.rce_count;
                         if (a.eoo != b.eoo) return a.eoo > b.eoo;
                         return a.active_pr < b.active_pr;
                     });
    return candidates;
}

DetectionResult evaluate(const ActivePullRequest& reference,
                         const std::map<std::int64_t, ActivePullRequest>& index,
                         const RceList& rces, const EditFrequencyTracker& tracker,
                         Instant now, const RepoConfig& config) {
    auto it = index.find(reference.pr_id);
    if (it == index.end() || it->second.pr_id != reference.pr_id)
        throw std::logic_error("evaluate: reference PR " + std::to_string(reference.pr_id) +
                               " not present in the active index");

    DetectionResult result;
    result.reference_pr = reference.pr_id;
    result.evaluated_at = now;

    // Step 1 (+ size gate): an ineligible reference produces no candidates.
    if (!is_eligible_reference(reference, now, tracker, config)) return result;

    // Step 2: reference file set after allow-list and hot-file filtering.
    const auto ref_files = effective_files(reference, now, tracker, config);

    for (const auto& [pr_id, other] : index) {
        // Step 3: active candidates, minus pairs the author already knows about.
        if (!is_candidate_pair(reference, other, now, config)) continue;
        const auto active_files = effective_files(other, now, tracker, config);

        // Step 4: extent of overlap for the pair.
        const auto common = overlap_files(ref_files, active_files);
        // Step 5: RCEs present in the overlap.
        const int rce_count = count_rces(rces, common);

        // Step 6: thresholds. The overlap-count gate belongs to the EOO branch;
        // the RCE branch stands on its own.
        const bool eoo_branch =
            eoo_meets_threshold(common.size(), ref_files.size(), config.eoo_min) &&
            static_cast<int>(common.size()) >= config.min_overlap_files;
        const bool rce_branch = rce_count >= config.rce_min;
        if (!eoo_branch && !rce_branch) continue;

        Candidate c;
        c.reference_pr = reference.pr_id;
        c.active_pr = pr_id;
        c.eoo = extent_of_overlap(ref_files, active_files);
        c.overlap_files = common;
        c.rce_count = rce_count;
        result.candidates.push_back(std::move(c));
    }

    // Step 7: ranking.
    result.candidates = rank(std::move(result.candidates));
    return result;
}

bool should_renotify(const std::vector<std::set<std::int64_t>>& previously_notified_sets,
                     const std::vector<Candidate>& new_candidates) {
    if (new_candidates.empty()) return false;
    std::set<std::int64_t> seen;
    for (const auto& s : previously_notified_sets) seen.insert(s.begin(), s.end());
    for (const auto& c : new_candidates)
        if (seen.count(c.active_pr) == 0) return true;
    return false;
}

} // namespace cone

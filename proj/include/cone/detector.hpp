#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cone/active_pr.hpp"
#include "cone/config.hpp"
#include "cone/filters.hpp"
#include "cone/rce.hpp"
#include "cone/time.hpp"

namespace cone {

// A scored (reference PR, active PR) pair that survived the thresholds.
// eoo is the display value (two decimals); threshold checks happen on the
// exact ratio before rounding.
struct Candidate {
    std::int64_t reference_pr = 0;
    std::int64_t active_pr = 0;
    double eoo = 0.0;
    std::set<std::string> overlap_files;
    int rce_count = 0;

    bool operator==(const Candidate&) const = default;
};

struct DetectionResult {
    std::int64_t reference_pr = 0;
    std::vector<Candidate> candidates;  // sorted: rce_count desc, eoo desc, pr_id asc
    Instant evaluated_at = 0;
    bool suppressed = false;  // set by the caller when re-notification blocks emission

    bool operator==(const DetectionResult&) const = default;
};

// Stable sort by rce_count desc, then eoo desc, then active pr_id asc.
// RCEs showing up in several live PRs is the stronger signal, so they lead.
std::vector<Candidate> rank(std::vector<Candidate> candidates);

// Runs the detection steps for one reference PR against the repo's active
// index: eligibility gates, effective file sets, per-pair EOO and RCE counts,
// the threshold predicate
//   (EOO >= eoo_min AND |overlap| >= min_overlap_files) OR rce_count >= rce_min
// and final ranking. An ineligible reference yields empty candidates.
// Throws std::logic_error if the reference is not in the index.
DetectionResult evaluate(const ActivePullRequest& reference,
                         const std::map<std::int64_t, ActivePullRequest>& index,
                         const RceList& rces, const EditFrequencyTracker& tracker,
                         Instant now, const RepoConfig& config);

// True iff new_candidates mention at least one active PR id that no prior
// notification for this reference PR has mentioned.
bool should_renotify(const std::vector<std::set<std::int64_t>>& previously_notified_sets,
                     const std::vector<Candidate>& new_candidates);

} // namespace cone

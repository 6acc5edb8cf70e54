#include "cone/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>

#include "cone/filters.hpp"
#include "cone/stats.hpp"

namespace cone {

namespace {

std::string lower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool has_token(const std::string& lowered, const std::string& token) {
    std::size_t pos = 0;
    const auto is_word = [](unsigned char c) { return std::isalnum(c) || c == '_'; };
    while ((pos = lowered.find(token, pos)) != std::string::npos) {
        const bool left_ok = pos == 0 || !is_word(lowered[pos - 1]);
        const std::size_t end = pos + token.size();
        const bool right_ok = end == lowered.size() || !is_word(lowered[end]);
        if (left_ok && right_ok) return true;
        ++pos;
    }
    return false;
}

bool has_phrase(const std::string& lowered, const std::string& phrase) {
    return lowered.find(phrase) != std::string::npos;
}

} // namespace

bool tag_bug_fix(const std::string& title, const std::vector<std::string>& commit_messages) {
    bool matched = false;
    std::vector<std::string> texts;
    texts.reserve(commit_messages.size() + 1);
    texts.push_back(lower(title));
    for (const auto& m : commit_messages) texts.push_back(lower(m));
    for (const auto& t : texts) {
        if (has_phrase(t, "test case") || has_phrase(t, "unit test")) return false;
        if (has_token(t, "bug") || has_token(t, "fix")) matched = true;
    }
    return matched;
}

bool tag_bug_fix(const CompletedPr& pr) {
    return tag_bug_fix(pr.title, pr.commit_messages);
}

std::map<std::string, std::vector<CompletedPr>> build_analysis_corpus(
    const std::vector<PullRequestEvent>& events, const RepoConfig& config) {
    // Fold per (repo, pr) lifecycles.
    struct Lifecycle {
        Instant created_at = 0;
        std::string author;
        std::set<std::string> files;
        std::string title;
        std::vector<std::string> commit_messages;
        bool created = false;
        bool merged = false;
        Instant merged_at = 0;
    };
    std::map<std::string, std::map<std::int64_t, Lifecycle>> repos;
    for (const auto& ev : events) {
        Lifecycle& life = repos[ev.repo_id][ev.pr_id];
        switch (ev.event_type) {
            case EventType::created:
                life.created = true;
                life.created_at = ev.timestamp;
                life.author = ev.author;
                life.files = ev.files;
                life.title = ev.title;
                life.commit_messages = ev.commit_messages;
                break;
            case EventType::updated:
                if (!ev.files.empty() || life.files.empty()) life.files = ev.files;
                if (!ev.title.empty()) life.title = ev.title;
                if (!ev.commit_messages.empty()) life.commit_messages = ev.commit_messages;
                break;
            case EventType::closed:
                if (!ev.files.empty()) life.files = ev.files;
                if (!ev.title.empty()) life.title = ev.title;
                if (!ev.commit_messages.empty()) life.commit_messages = ev.commit_messages;
                if (ev.close_reason == CloseReason::merged) {
                    life.merged = true;
                    life.merged_at = ev.timestamp;
                }
                break;
        }
    }

    std::map<std::string, std::vector<CompletedPr>> corpus;
    for (auto& [repo_id, lifecycles] : repos) {
        std::vector<CompletedPr> prs;
        for (auto& [pr_id, life] : lifecycles) {
            if (!life.created || !life.merged) continue;
            if (life.merged_at - life.created_at > days(config.max_pr_age_days)) continue;
            if (static_cast<int>(life.files.size()) > config.max_files_per_pr) continue;
            CompletedPr pr;
            pr.pr_id = pr_id;
            pr.author = life.author;
            pr.created_at = life.created_at;
            pr.merged_at = life.merged_at;
            pr.files = filter_allowed(life.files, config);
            pr.title = life.title;
            pr.commit_messages = life.commit_messages;
            pr.is_bug_fix = tag_bug_fix(pr);
            prs.push_back(std::move(pr));
        }

        // Hot files: any trailing 30-day window holding >= limit merges bans
        // the path from the whole corpus.
        std::map<std::string, std::vector<Instant>> merge_times;
        for (const auto& pr : prs)
            for (const auto& f : pr.files) merge_times[f].push_back(pr.merged_at);
        std::set<std::string> hot;
        for (auto& [path, times] : merge_times) {
            std::sort(times.begin(), times.end());
            std::size_t lo = 0;
            for (std::size_t hi = 0; hi < times.size(); ++hi) {
                while (times[hi] - times[lo] >= EditFrequencyTracker::kWindowSeconds) ++lo;
                if (static_cast<int>(hi - lo + 1) >= config.hot_file_edit_limit) {
                    hot.insert(path);
                    break;
                }
            }
        }
        if (!hot.empty())
            for (auto& pr : prs)
                for (const auto& h : hot) pr.files.erase(h);

        corpus[repo_id] = std::move(prs);
    }
    return corpus;
}

std::vector<EditRecord> classify_edits(const std::vector<CompletedPr>& history) {
    // Group PR indices per file, then test pairwise span overlap.
    std::map<std::string, std::vector<std::size_t>> by_file;
    for (std::size_t i = 0; i < history.size(); ++i)
        for (const auto& f : history[i].files) by_file[f].push_back(i);

    std::vector<EditRecord> records;
    for (const auto& [path, indices] : by_file) {
        for (std::size_t a = 0; a < indices.size(); ++a) {
            const CompletedPr& pr = history[indices[a]];
            bool concurrent = false;
            for (std::size_t b = 0; b < indices.size() && !concurrent; ++b) {
                if (a == b) continue;
                const CompletedPr& other = history[indices[b]];
                if (pr.created_at <= other.merged_at && other.created_at <= pr.merged_at)
                    concurrent = true;
            }
            EditRecord rec;
            rec.path = path;
            rec.pr_id = pr.pr_id;
            rec.merged_at = pr.merged_at;
            rec.mode = concurrent ? EditMode::concurrent : EditMode::non_concurrent;
            records.push_back(std::move(rec));
        }
    }
    return records;
}

RatesTable bug_induction_rates(const std::vector<CompletedPr>& history,
                               const std::vector<int>& windows_days, bool distinct_files) {
    RatesTable table;
    table.windows_days = windows_days;
    const auto records = classify_edits(history);
    if (records.empty()) return table;

    // Merge instants of bug-fix PRs per path, sorted for window lookups.
    std::map<std::string, std::vector<Instant>> bugfix_merges;
    for (const auto& pr : history)
        if (pr.is_bug_fix)
            for (const auto& f : pr.files) bugfix_merges[f].push_back(pr.merged_at);
    for (auto& [path, times] : bugfix_merges) std::sort(times.begin(), times.end());

    const auto followed_within = [&](const EditRecord& rec, int window) {
        auto it = bugfix_merges.find(rec.path);
        if (it == bugfix_merges.end()) return false;
        const auto& times = it->second;
        auto lo = std::upper_bound(times.begin(), times.end(), rec.merged_at);
        return lo != times.end() && *lo <= rec.merged_at + days(window);
    };

    for (std::size_t w = 0; w < windows_days.size(); ++w) {
        std::int64_t conc_total = 0, conc_hit = 0, non_total = 0, non_hit = 0;
        if (distinct_files) {
            // Unit = distinct path per mode; a path counts as bug-followed if
            // any of its edits of that mode is.
            std::map<std::string, bool> conc_seen, non_seen;
            for (const auto& rec : records) {
                auto& seen =
                    rec.mode == EditMode::concurrent ? conc_seen : non_seen;
                bool& hit = seen[rec.path];
                hit = hit || followed_within(rec, windows_days[w]);
            }
            conc_total = static_cast<std::int64_t>(conc_seen.size());
            non_total = static_cast<std::int64_t>(non_seen.size());
            for (const auto& [path, hit] : conc_seen) conc_hit += hit ? 1 : 0;
            for (const auto& [path, hit] : non_seen) non_hit += hit ? 1 : 0;
        } else {
            for (const auto& rec : records) {
                const bool hit = followed_within(rec, windows_days[w]);
                if (rec.mode == EditMode::concurrent) {
                    ++conc_total;
                    conc_hit += hit ? 1 : 0;
                } else {
                    ++non_total;
                    non_hit += hit ? 1 : 0;
                }
            }
        }
        table.concurrent_edits = conc_total;
        table.non_concurrent_edits = non_total;
        table.concurrent_pct.push_back(
            conc_total == 0 ? 0.0
                            : 100.0 * static_cast<double>(conc_hit) /
                                  static_cast<double>(conc_total));
        table.non_concurrent_pct.push_back(
            non_total == 0 ? 0.0
                           : 100.0 * static_cast<double>(non_hit) /
                                 static_cast<double>(non_total));
    }
    return table;
}

CorrelationReport correlation_report(
    const std::map<std::string, std::vector<CompletedPr>>& corpus,
    std::int64_t permutation_iterations, std::uint64_t seed) {
    CorrelationReport report;
    for (const auto& [repo_id, history] : corpus) {
        const auto records = classify_edits(history);

        std::map<std::string, double> total, concurrent, non_concurrent, bugfixes;
        for (const auto& rec : records) {
            total[rec.path] += 1.0;
            if (rec.mode == EditMode::concurrent)
                concurrent[rec.path] += 1.0;
            else
                non_concurrent[rec.path] += 1.0;
        }
        for (const auto& pr : history)
            if (pr.is_bug_fix)
                for (const auto& f : pr.files) bugfixes[f] += 1.0;

        if (total.size() < 2) {
            report.warnings.push_back("repo " + repo_id +
                                      ": fewer than two distinct files; row omitted");
            continue;
        }

        std::vector<double> x_total, x_conc, x_non, y;
        for (const auto& [path, count] : total) {
            x_total.push_back(count);
            x_conc.push_back(concurrent.count(path) ? concurrent[path] : 0.0);
            x_non.push_back(non_concurrent.count(path) ? non_concurrent[path] : 0.0);
            y.push_back(bugfixes.count(path) ? bugfixes[path] : 0.0);
        }

        CorrelationRow row;
        row.repo_id = repo_id;
        row.n = static_cast<std::int64_t>(total.size());

        const auto column = [&](const std::vector<double>& xs, const char* label,
                                std::optional<double>& rho, std::optional<double>& p) {
            try {
                rho = spearman_rho(xs, y);
                p = permutation_p_value(xs, y, permutation_iterations, seed);
            } catch (const std::invalid_argument& e) {
                report.warnings.push_back("repo " + repo_id + ", " + label + ": " + e.what());
            }
        };
        column(x_total, "total edits", row.rho_total, row.p_total);
        column(x_conc, "concurrent edits", row.rho_concurrent, row.p_concurrent);
        column(x_non, "non-concurrent edits", row.rho_non_concurrent,
               row.p_non_concurrent);
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string format_correlation_value(std::optional<double> rho, std::optional<double> p) {
    if (!rho) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", *rho);
    std::string out = buf;
    if (p) {
        if (*p < 0.001) out += "***";
        else if (*p < 0.01) out += "**";
        else if (*p < 0.05) out += "*";
    }
    return out;
}

} // namespace cone

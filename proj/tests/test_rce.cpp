#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cone/rce.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace cone;
using testsupport::kEpoch2020;

namespace {

PrInterval span(std::int64_t id, Instant from_day, Instant to_day,
                std::set<std::string> files) {
    PrInterval p;
    p.pr_id = id;
    p.author = "dev" + std::to_string(id);
    p.created_at = kEpoch2020 + from_day * kSecondsPerDay;
    p.closed_at = kEpoch2020 + to_day * kSecondsPerDay;
    p.files = std::move(files);
    return p;
}

} // namespace

TEST_CASE("three-PR build example") {
    // PR1 {a,b} days 1-3; PR2 {b,c} days 2-4; PR3 {d} days 5-6.
    const std::vector<PrInterval> history = {
        span(1, 1, 3, {"a.cs", "b.cs"}),
        span(2, 2, 4, {"b.cs", "c.cs"}),
        span(3, 5, 6, {"d.cs"}),
    };
    const Instant now = kEpoch2020 + 7 * kSecondsPerDay;
    const RepoConfig cfg;
    const auto list = build_rce_list("r", history, now, cfg);
    CHECK(list.files == std::set<std::string>{"a.cs", "c.cs", "d.cs"});
    CHECK(list.built_at == now);
    CHECK(list.window_days == cfg.rce_window_days);
}

TEST_CASE("single PR in window: all files are RCEs") {
    const auto list = build_rce_list("r", {span(1, 1, 2, {"a.cs", "b.cs"})},
                                     kEpoch2020 + 3 * kSecondsPerDay, RepoConfig{});
    CHECK(list.files == std::set<std::string>{"a.cs", "b.cs"});
}

TEST_CASE("identical overlapping PRs: no RCEs") {
    const auto list = build_rce_list(
        "r", {span(1, 1, 3, {"a.cs", "b.cs"}), span(2, 2, 4, {"a.cs", "b.cs"})},
        kEpoch2020 + 5 * kSecondsPerDay, RepoConfig{});
    CHECK(list.files.empty());
}

TEST_CASE("empty history is not an error") {
    const auto list = build_rce_list("r", {}, kEpoch2020, RepoConfig{});
    CHECK(list.files.empty());
}

TEST_CASE("spans touching at a single instant count as overlapping") {
    const auto list = build_rce_list(
        "r", {span(1, 1, 2, {"a.cs"}), span(2, 2, 3, {"a.cs"})},
        kEpoch2020 + 4 * kSecondsPerDay, RepoConfig{});
    CHECK(list.files.empty());
}

TEST_CASE("update removes newly concurrent files and adds new isolated ones") {
    const RepoConfig cfg;
    const Instant t1 = kEpoch2020 + 10 * kSecondsPerDay;
    const auto old = build_rce_list("r", {span(1, 5, 6, {"d.cs"})}, t1, cfg);
    CHECK(old.files == std::set<std::string>{"d.cs"});

    // A week later: an overlapping pair both touching d.cs, plus a fresh e.sql.
    const std::vector<PrInterval> recent = {
        span(1, 5, 6, {"d.cs"}),
        span(2, 11, 13, {"d.cs"}),
        span(3, 12, 14, {"d.cs"}),
        span(4, 15, 16, {"e.sql"}),
    };
    const Instant t2 = kEpoch2020 + 17 * kSecondsPerDay;
    const auto updated = update_rce_list(old, recent, t2, cfg);
    CHECK(updated.files.count("d.cs") == 0);
    CHECK(updated.files.count("e.sql") == 1);
    CHECK(updated.built_at == t2);
}

TEST_CASE("files whose only edits aged out of the window are dropped") {
    RepoConfig cfg;
    cfg.rce_window_days = 10;
    const Instant t1 = kEpoch2020 + 12 * kSecondsPerDay;
    const auto old = build_rce_list("r", {span(1, 5, 6, {"a.cs"})}, t1, cfg);
    CHECK(old.files == std::set<std::string>{"a.cs"});
    // Slide far enough that day-5 creation leaves the 10-day window.
    const Instant t2 = kEpoch2020 + 20 * kSecondsPerDay;
    const auto updated = update_rce_list(old, {span(1, 5, 6, {"a.cs"})}, t2, cfg);
    CHECK(updated.files.empty());
}

TEST_CASE("incremental update equals batch rebuild on random histories") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        RepoConfig cfg;
        cfg.rce_window_days = 20 + static_cast<int>(rng() % 40);
        const Instant t1 = kEpoch2020 + static_cast<Instant>(rng() % (50 * kSecondsPerDay));
        const Instant t2 = t1 + static_cast<Instant>(rng() % (20 * kSecondsPerDay));

        const auto h1 = testsupport::random_intervals(
            rng, t1 - days(cfg.rce_window_days), t1, rng() % 30, 25);
        auto h2 = h1;
        const auto fresh = testsupport::random_intervals(
            rng, t1 - days(cfg.rce_window_days), t2, rng() % 20, 25);
        h2.insert(h2.end(), fresh.begin(), fresh.end());

        const auto old = build_rce_list("r", h1, t1, cfg);
        const auto incremental = update_rce_list(old, h2, t2, cfg);
        const auto batch = build_rce_list("r", h2, t2, cfg);
        CHECK(incremental.files == batch.files);

        // And both agree with the brute-force oracle.
        CHECK(batch.files == testsupport::naive_rce_files(h2, t2, cfg));
    }
}

TEST_CASE("no RCE member appears in two overlapping windowed intervals") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        const RepoConfig cfg;
        const Instant now = kEpoch2020 + 100 * kSecondsPerDay;
        const auto history = testsupport::random_intervals(
            rng, now - days(cfg.rce_window_days), now, 25, 20);
        const auto list = build_rce_list("r", history, now, cfg);
        for (const auto& f : list.files) {
            for (std::size_t i = 0; i < history.size(); ++i)
                for (std::size_t j = i + 1; j < history.size(); ++j) {
                    if (history[i].files.count(f) == 0 || history[j].files.count(f) == 0)
                        continue;
                    const bool overlap = history[i].created_at <= history[j].closed_at &&
                                         history[j].created_at <= history[i].closed_at;
                    CHECK_FALSE(overlap);
                }
        }
    }
}

TEST_CASE("pr-level concurrency switch widens the concurrent set") {
    // PR1 {a} and PR2 {b} overlap in time but share no file.
    const std::vector<PrInterval> history = {span(1, 1, 3, {"a.cs"}),
                                             span(2, 2, 4, {"b.cs"})};
    const Instant now = kEpoch2020 + 5 * kSecondsPerDay;
    RepoConfig file_level;
    CHECK(build_rce_list("r", history, now, file_level).files ==
          std::set<std::string>{"a.cs", "b.cs"});
    RepoConfig pr_level;
    pr_level.rce_pr_level_concurrency = true;
    CHECK(build_rce_list("r", history, now, pr_level).files.empty());
}

TEST_CASE("count_rces") {
    RceList list;
    list.files = {"a.cs", "b.cs"};
    CHECK(count_rces(list, {"a.cs", "b.cs", "c.cs"}) == 2);
    CHECK(count_rces(RceList{}, {"a.cs"}) == 0);
    list.files = {"a.cs", "d.cs", "e.cs"};
    CHECK(count_rces(list, {"d.cs"}) == 1);
}

TEST_CASE("refresh staleness boundary") {
    RepoConfig cfg;  // refresh every 7 days
    RceList list;
    list.built_at = kEpoch2020;
    list.window_days = cfg.rce_window_days;
    CHECK_FALSE(needs_refresh(list, kEpoch2020 + days(7) - 1, cfg));
    CHECK(needs_refresh(list, kEpoch2020 + days(7), cfg));
}

TEST_CASE("rce list JSON round trip") {
    RceList list;
    list.repo_id = "repo/x";
    list.built_at = kEpoch2020 + 12345;
    list.window_days = 90;
    list.files = {"a.cs", "b.py"};
    CHECK(parse_rce_list(serialize_rce_list(list)) == list);
}

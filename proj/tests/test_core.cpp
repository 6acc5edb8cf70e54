#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cone/config.hpp"
#include "cone/errors.hpp"
#include "cone/event.hpp"
#include "cone/time.hpp"

using namespace cone;

TEST_CASE("instant round trip") {
    CHECK(parse_instant("1970-01-01T00:00:00Z") == 0);
    CHECK(parse_instant("2020-03-01T12:00:00Z") == 1583064000);
    CHECK(format_instant(1583064000) == "2020-03-01T12:00:00Z");
    CHECK(parse_instant("2020-03-01T12:00:00.123Z") == 1583064000);
    CHECK(parse_instant("2020-03-01T13:30:00+01:30") == 1583064000);
    CHECK(format_instant(parse_instant("1999-12-31T23:59:59Z")) == "1999-12-31T23:59:59Z");
    CHECK_THROWS_AS(parse_instant("2020-03-01"), std::invalid_argument);
    CHECK_THROWS_AS(parse_instant("not a time"), std::invalid_argument);
    CHECK_THROWS_AS(parse_instant("2020-13-01T00:00:00Z"), std::invalid_argument);
}

TEST_CASE("instant round trip over random instants") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const Instant t = static_cast<Instant>(rng() % 4102444800ULL);  // through 2099
        CHECK(parse_instant(format_instant(t)) == t);
    }
}

TEST_CASE("empty config document yields the built-in defaults") {
    const RepoConfig cfg = parse_config("{}");
    CHECK(cfg.eoo_min == 50.0);
    CHECK(cfg.rce_min == 2);
    CHECK(cfg.min_overlap_files == 2);
    CHECK(cfg.max_pr_age_days == 30);
    CHECK(cfg.max_files_per_pr == 50);
    CHECK(cfg.hot_file_edit_limit == 20);
    CHECK(cfg.rce_window_days == 90);
    CHECK(cfg.rce_refresh_days == 7);
    CHECK_FALSE(cfg.shadow_mode);
    CHECK(cfg.allow_list ==
          std::set<std::string>{".cs", ".c", ".cpp", ".ts", ".py", ".java", ".js", ".sql"});
}

TEST_CASE("config boundaries and errors") {
    CHECK(parse_config(R"({"eoo_min": 0})").eoo_min == 0.0);
    CHECK(parse_config(R"({"eoo_min": 100})").eoo_min == 100.0);
    CHECK_THROWS_WITH_AS(parse_config(R"({"eoo_min": 101})"),
                         doctest::Contains("eoo_min"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"rce_min": -1})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"allow_list": []})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"max_pr_age_days": 0})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"no_such_key": 1})"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_config("{\n  \"eoo_min\": 50,\n  oops\n}"),
                         doctest::Contains("line 3"), ParseError);
}

TEST_CASE("config serialize/parse identity on random valid configs") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        RepoConfig cfg;
        cfg.eoo_min = static_cast<double>(rng() % 401) / 4.0;  // [0, 100] in 0.25 steps
        cfg.rce_min = static_cast<int>(rng() % 5);
        cfg.min_overlap_files = static_cast<int>(rng() % 5);
        cfg.max_pr_age_days = 1 + static_cast<int>(rng() % 60);
        cfg.max_files_per_pr = static_cast<int>(rng() % 100);
        cfg.hot_file_edit_limit = static_cast<int>(rng() % 40);
        cfg.rce_window_days = 1 + static_cast<int>(rng() % 180);
        cfg.rce_refresh_days = 1 + static_cast<int>(rng() % 14);
        cfg.shadow_mode = rng() % 2 == 0;
        cfg.exclude_same_author = rng() % 2 == 0;
        cfg.rce_pr_level_concurrency = rng() % 2 == 0;
        if (rng() % 2 == 0) cfg.allow_list = {".rs", ".go"};
        CHECK(parse_config(serialize_config(cfg)) == cfg);
    }
}

namespace {

std::string event_json(const std::string& extra = "", const std::string& type = "created") {
    std::string body = R"({"repo_id":"r1","pr_id":4,"event_type":")" + type +
                       R"(","timestamp":"2020-03-01T12:00:00Z","author":"ada",)" +
                       R"("files":["a.cs","b.cs","c.py"])";
    if (!extra.empty()) body += "," + extra;
    return body + "}";
}

} // namespace

TEST_CASE("well-formed created event accepted") {
    const PullRequestEvent ev = validate_event(event_json());
    CHECK(ev.repo_id == "r1");
    CHECK(ev.pr_id == 4);
    CHECK(ev.event_type == EventType::created);
    CHECK(ev.files.size() == 3);
    CHECK(ev.author == "ada");
    CHECK_FALSE(ev.close_reason.has_value());
}

TEST_CASE("event validation rejects schema violations") {
    CHECK_THROWS_WITH_AS(validate_event(event_json("", "reopened")),
                         doctest::Contains("reopened"), ValidationError);
    CHECK_THROWS_WITH_AS(validate_event(event_json("", "closed")),
                         doctest::Contains("close_reason"), ValidationError);
    CHECK_THROWS_WITH_AS(
        validate_event(R"({"pr_id":4,"event_type":"created","timestamp":"2020-03-01T12:00:00Z","author":"a","files":[]})"),
        doctest::Contains("repo_id"), ValidationError);
    CHECK_THROWS_WITH_AS(
        validate_event(
            R"({"repo_id":"r","pr_id":4,"event_type":"created","timestamp":"yesterday","author":"a","files":[]})"),
        doctest::Contains("timestamp"), ValidationError);
    CHECK_THROWS_AS(
        validate_event(R"({"repo_id":"r","pr_id":0,"event_type":"created","timestamp":"2020-03-01T12:00:00Z","author":"a","files":[]})"),
        ValidationError);
    CHECK_THROWS_AS(validate_event("not json"), ParseError);
}

TEST_CASE("closed event may omit files, carries close_reason") {
    const auto ev = validate_event(
        R"({"repo_id":"r1","pr_id":4,"event_type":"closed","timestamp":"2020-03-02T12:00:00Z","author":"ada","close_reason":"merged"})");
    CHECK(ev.files.empty());
    CHECK(ev.close_reason == CloseReason::merged);
    CHECK_THROWS_AS(
        validate_event(event_json(R"("close_reason":"merged")")),
        ValidationError);  // close_reason on a created event
}

TEST_CASE("unknown top-level fields are ignored") {
    const auto ev = validate_event(event_json(R"("host_specific":{"x":1})"));
    CHECK(ev.pr_id == 4);
}

TEST_CASE("event serialize/validate round trip") {
    auto ev = validate_event(event_json(R"("title":"Fix parser","commit_messages":["fix"],"interacting_users":["bob"])"));
    CHECK(validate_event(serialize_event(ev)).title == "Fix parser");
    ev.event_type = EventType::closed;
    ev.close_reason = CloseReason::abandoned;
    const auto back = validate_event(serialize_event(ev));
    CHECK(back.close_reason == CloseReason::abandoned);
    CHECK(back.interacting_users == std::set<std::string>{"bob"});
}

#include "cone/config.hpp"

#include <algorithm>
#include <cctype>
#include <json.hpp>

#include "cone/errors.hpp"

namespace cone {

using nlohmann::json;

namespace {

// nlohmann reports byte offsets; convert to a 1-based line number.
std::size_t line_of_offset(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

[[noreturn]] void range_error(const std::string& key, const std::string& why) {
    throw ValidationError("config key '" + key + "': " + why);
}

int get_count(const json& v, const std::string& key) {
    if (!v.is_number_integer())
        range_error(key, "expected an integer");
    const auto n = v.get<std::int64_t>();
    if (n < 0) range_error(key, "must be >= 0");
    if (n > 1'000'000'000) range_error(key, "implausibly large");
    return static_cast<int>(n);
}

int get_day_span(const json& v, const std::string& key) {
    const int n = get_count(v, key);
    if (n == 0) range_error(key, "must be > 0");
    return n;
}

std::string normalize_extension(const std::string& ext, const std::string& key) {
    if (ext.empty()) range_error(key, "extension must be non-empty");
    std::string out = ext[0] == '.' ? ext : "." + ext;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

} // namespace

void validate_config(const RepoConfig& c) {
    if (c.eoo_min < 0.0 || c.eoo_min > 100.0)
        range_error("eoo_min", "must be within [0, 100]");
    if (c.rce_min < 0) range_error("rce_min", "must be >= 0");
    if (c.min_overlap_files < 0) range_error("min_overlap_files", "must be >= 0");
    if (c.max_pr_age_days <= 0) range_error("max_pr_age_days", "must be > 0");
    if (c.max_files_per_pr < 0) range_error("max_files_per_pr", "must be >= 0");
    if (c.hot_file_edit_limit < 0) range_error("hot_file_edit_limit", "must be >= 0");
    if (c.rce_window_days <= 0) range_error("rce_window_days", "must be > 0");
    if (c.rce_refresh_days <= 0) range_error("rce_refresh_days", "must be > 0");
    if (c.allow_list.empty()) range_error("allow_list", "must be non-empty");
}

RepoConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("config parse error at line " +
                         std::to_string(line_of_offset(text, e.byte)) + ": " + e.what());
    }
    if (!doc.is_object())
        throw ParseError("config must be a JSON object");

    RepoConfig cfg;
    for (const auto& [key, value] : doc.items()) {
        if (key == "eoo_min") {
            if (!value.is_number()) range_error(key, "expected a number");
            cfg.eoo_min = value.get<double>();
            if (cfg.eoo_min < 0.0 || cfg.eoo_min > 100.0)
                range_error(key, "must be within [0, 100]");
        } else if (key == "rce_min") {
            cfg.rce_min = get_count(value, key);
        } else if (key == "min_overlap_files") {
            cfg.min_overlap_files = get_count(value, key);
        } else if (key == "max_pr_age_days") {
            cfg.max_pr_age_days = get_day_span(value, key);
        } else if (key == "max_files_per_pr") {
            cfg.max_files_per_pr = get_count(value, key);
        } else if (key == "allow_list") {
            if (!value.is_array()) range_error(key, "expected an array of extensions");
            cfg.allow_list.clear();
            for (const auto& item : value) {
                if (!item.is_string()) range_error(key, "extensions must be strings");
                cfg.allow_list.insert(normalize_extension(item.get<std::string>(), key));
            }
            if (cfg.allow_list.empty()) range_error(key, "must be non-empty");
        } else if (key == "hot_file_edit_limit") {
            cfg.hot_file_edit_limit = get_count(value, key);
        } else if (key == "rce_window_days") {
            cfg.rce_window_days = get_day_span(value, key);
        } else if (key == "rce_refresh_days") {
            cfg.rce_refresh_days = get_day_span(value, key);
        } else if (key == "shadow_mode") {
            if (!value.is_boolean()) range_error(key, "expected a boolean");
            cfg.shadow_mode = value.get<bool>();
        } else if (key == "exclude_same_author") {
            if (!value.is_boolean()) range_error(key, "expected a boolean");
            cfg.exclude_same_author = value.get<bool>();
        } else if (key == "rce_pr_level_concurrency") {
            if (!value.is_boolean()) range_error(key, "expected a boolean");
            cfg.rce_pr_level_concurrency = value.get<bool>();
        } else {
            throw ValidationError("unknown config key '" + key + "'");
        }
    }
    validate_config(cfg);
    return cfg;
}

std::string serialize_config(const RepoConfig& c) {
    json doc;
    doc["eoo_min"] = c.eoo_min;
    doc["rce_min"] = c.rce_min;
    doc["min_overlap_files"] = c.min_overlap_files;
    doc["max_pr_age_days"] = c.max_pr_age_days;
    doc["max_files_per_pr"] = c.max_files_per_pr;
    doc["allow_list"] = c.allow_list;
    doc["hot_file_edit_limit"] = c.hot_file_edit_limit;
    doc["rce_window_days"] = c.rce_window_days;
    doc["rce_refresh_days"] = c.rce_refresh_days;
    doc["shadow_mode"] = c.shadow_mode;
    doc["exclude_same_author"] = c.exclude_same_author;
    doc["rce_pr_level_concurrency"] = c.rce_pr_level_concurrency;
    return doc.dump(2);
}

} // namespace cone

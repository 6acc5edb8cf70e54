#include "cone/time.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace cone {

namespace {

// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

bool all_digits(const std::string& s, std::size_t pos, std::size_t count) {
    if (pos + count > s.size()) return false;
    for (std::size_t i = 0; i < count; ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[pos + i]))) return false;
    return true;
}

int num(const std::string& s, std::size_t pos, std::size_t count) {
    int v = 0;
    for (std::size_t i = 0; i < count; ++i) v = v * 10 + (s[pos + i] - '0');
    return v;
}

[[noreturn]] void bad(const std::string& text) {
    throw std::invalid_argument("invalid RFC-3339 timestamp: '" + text + "'");
}

} // namespace

Instant parse_instant(const std::string& text) {
    // YYYY-MM-DDTHH:MM:SS[.frac](Z|+hh:mm|-hh:mm)
    if (text.size() < 20) bad(text);
    if (!all_digits(text, 0, 4) || text[4] != '-' || !all_digits(text, 5, 2) ||
        text[7] != '-' || !all_digits(text, 8, 2))
        bad(text);
    const char sep = text[10];
    if (sep != 'T' && sep != 't' && sep != ' ') bad(text);
    if (!all_digits(text, 11, 2) || text[13] != ':' || !all_digits(text, 14, 2) ||
        text[16] != ':' || !all_digits(text, 17, 2))
        bad(text);

    const int year = num(text, 0, 4);
    const int month = num(text, 5, 2);
    const int day = num(text, 8, 2);
    const int hour = num(text, 11, 2);
    const int minute = num(text, 14, 2);
    const int second = num(text, 17, 2);

    std::size_t pos = 19;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::size_t frac = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            ++frac;
        }
        if (frac == 0) bad(text);
    }
    if (pos >= text.size()) bad(text);

    std::int64_t offset = 0;
    if (text[pos] == 'Z' || text[pos] == 'z') {
        ++pos;
    } else if (text[pos] == '+' || text[pos] == '-') {
        const int sign = text[pos] == '+' ? 1 : -1;
        if (!all_digits(text, pos + 1, 2) || pos + 3 >= text.size() || text[pos + 3] != ':' ||
            !all_digits(text, pos + 4, 2))
            bad(text);
        const int oh = num(text, pos + 1, 2);
        const int om = num(text, pos + 4, 2);
        if (oh > 23 || om > 59) bad(text);
        offset = sign * (oh * 3600 + om * 60);
        pos += 6;
    } else {
        bad(text);
    }
    if (pos != text.size()) bad(text);

    if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 ||
        second > 60)
        bad(text);

    const std::int64_t d = days_from_civil(year, static_cast<unsigned>(month),
                                           static_cast<unsigned>(day));
    return d * kSecondsPerDay + hour * 3600 + minute * 60 + second - offset;
}

std::string format_instant(Instant t) {
    std::int64_t zdays = t / kSecondsPerDay;
    std::int64_t rem = t % kSecondsPerDay;
    if (rem < 0) {
        rem += kSecondsPerDay;
        zdays -= 1;
    }
    std::int64_t y;
    unsigned m, d;
    civil_from_days(zdays, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(y), m, d, static_cast<long long>(rem / 3600),
                  static_cast<long long>((rem / 60) % 60), static_cast<long long>(rem % 60));
    return buf;
}

} // namespace cone

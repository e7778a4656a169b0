#pragma once

// Calendar instants at year/month/day granularity and (possibly open)
// intervals over them. Mixed-granularity comparison widens a point to day
// precision, directionally: BEGIN picks the earliest covered day, END the
// latest. Open interval sides compare as -inf / +inf. Proleptic Gregorian,
// years >= 1, no time of day.

#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tqa/errors.hpp"

namespace tqa {

enum class Granularity { Year, Month, Day };
enum class Side { Begin, End };

constexpr bool is_leap_year(int y) {
    return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0);
}

constexpr int days_in_month(int y, int m) {
    constexpr int table[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return (m == 2 && is_leap_year(y)) ? 29 : table[m - 1];
}

struct TimePoint {
    int year = 1;
    std::optional<int> month;
    std::optional<int> day;

    TimePoint() = default;

    explicit TimePoint(int y) : year(y) { validate(); }

    TimePoint(int y, int m) : year(y), month(m) { validate(); }

    TimePoint(int y, int m, int d) : year(y), month(m), day(d) { validate(); }

    Granularity granularity() const {
        if (day) return Granularity::Day;
        if (month) return Granularity::Month;
        return Granularity::Year;
    }

    bool operator==(const TimePoint&) const = default;

    // ISO-8601 at the point's own granularity: YYYY, YYYY-MM or YYYY-MM-DD.
    std::string to_string() const {
        char buf[16];
        if (day) {
            std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, *month, *day);
        } else if (month) {
            std::snprintf(buf, sizeof buf, "%04d-%02d", year, *month);
        } else {
            std::snprintf(buf, sizeof buf, "%04d", year);
        }
        return buf;
    }

    static std::optional<TimePoint> parse(std::string_view s);

private:
    void validate() const {
        if (year < 1) throw std::invalid_argument("year must be >= 1: " + std::to_string(year));
        if (day && !month) throw std::invalid_argument("day without month");
        if (month && (*month < 1 || *month > 12))
            throw std::invalid_argument("month out of range: " + std::to_string(*month));
        if (day && (*day < 1 || *day > days_in_month(year, *month)))
            throw std::invalid_argument("invalid calendar date: " + std::to_string(year) + "-" +
                                        std::to_string(*month) + "-" + std::to_string(*day));
    }
};

// Days since 1970-01-01 (Howard Hinnant's civil calendar algorithms).
constexpr std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 +
                         static_cast<unsigned>(d) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097LL + static_cast<std::int64_t>(doe) - 719468;
}

struct CivilDate {
    int year;
    int month;
    int day;
};

constexpr CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp < 10 ? mp + 3 : mp - 9;
    return {static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

// Widen to day granularity: YEAR -> Jan 1 / Dec 31, MONTH -> first / last day
// of the month, DAY unchanged.
inline TimePoint widen(const TimePoint& p, Side side) {
    switch (p.granularity()) {
        case Granularity::Day:
            return p;
        case Granularity::Month:
            return side == Side::Begin ? TimePoint(p.year, *p.month, 1)
                                       : TimePoint(p.year, *p.month, days_in_month(p.year, *p.month));
        case Granularity::Year:
        default:
            return side == Side::Begin ? TimePoint(p.year, 1, 1) : TimePoint(p.year, 12, 31);
    }
}

inline std::int64_t day_number(const TimePoint& p, Side side) {
    const TimePoint w = widen(p, side);
    return days_from_civil(w.year, *w.month, *w.day);
}

inline TimePoint timepoint_from_day_number(std::int64_t n) {
    const CivilDate c = civil_from_days(n);
    return TimePoint(c.year, c.month, c.day);
}

// Total comparison after widening both points toward their earliest day.
// Returns -1, 0 or +1. Note: order-equality is coarser than value equality
// (2016 and 2016-01-01 compare equal here).
inline int compare_points(const TimePoint& a, const TimePoint& b) {
    const std::int64_t ka = day_number(a, Side::Begin);
    const std::int64_t kb = day_number(b, Side::Begin);
    return ka < kb ? -1 : (ka > kb ? 1 : 0);
}

inline bool point_before(const TimePoint& a, const TimePoint& b) {
    return compare_points(a, b) < 0;
}

constexpr std::int64_t kNegInfinity = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kPosInfinity = std::numeric_limits<std::int64_t>::max();

// Interval with optional endpoints; a missing side is open. begin = end
// represents a time point cast to an interval.
struct Interval {
    std::optional<TimePoint> begin;
    std::optional<TimePoint> end;

    Interval() = default;

    Interval(std::optional<TimePoint> b, std::optional<TimePoint> e)
        : begin(std::move(b)), end(std::move(e)) {
        if (begin && end && day_number(*begin, Side::Begin) > day_number(*end, Side::End))
            throw std::invalid_argument("interval begin after end: [" + begin->to_string() + ", " +
                                        end->to_string() + "]");
    }

    bool operator==(const Interval&) const = default;

    std::string to_string() const {
        return "[" + (begin ? begin->to_string() : "-inf") + ", " +
               (end ? end->to_string() : "+inf") + "]";
    }
};

// Day key of the begin side, widened toward the earliest covered day;
// -inf when open.
inline std::int64_t begin_key(const Interval& i) {
    return i.begin ? day_number(*i.begin, Side::Begin) : kNegInfinity;
}

// Day key of the end side, widened toward the latest covered day;
// +inf when open.
inline std::int64_t end_key(const Interval& i) {
    return i.end ? day_number(*i.end, Side::End) : kPosInfinity;
}

inline Interval interval_from_point(const TimePoint& p) {
    return Interval(widen(p, Side::Begin), widen(p, Side::End));
}

inline std::optional<TimePoint> TimePoint::parse(std::string_view s) {
    auto all_digits = [](std::string_view t) {
        if (t.empty()) return false;
        for (char c : t)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::vector<std::string_view> pieces;
    std::size_t pos = 0;
    while (true) {
        const std::size_t dash = s.find('-', pos);
        pieces.push_back(s.substr(pos, dash == std::string_view::npos ? std::string_view::npos
                                                                      : dash - pos));
        if (dash == std::string_view::npos) break;
        pos = dash + 1;
    }
    if (pieces.empty() || pieces.size() > 3) return std::nullopt;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (!all_digits(pieces[i])) return std::nullopt;
        if (pieces[i].size() != (i == 0 ? 4 : 2)) return std::nullopt;
    }
    try {
        if (pieces.size() == 1) return TimePoint(std::stoi(std::string(pieces[0])));
        if (pieces.size() == 2)
            return TimePoint(std::stoi(std::string(pieces[0])),
                             std::stoi(std::string(pieces[1])));
        return TimePoint(std::stoi(std::string(pieces[0])), std::stoi(std::string(pieces[1])),
                         std::stoi(std::string(pieces[2])));
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

}  // namespace tqa

#pragma once

// Rule-based temporal expression tagging and normalization, plus the
// named-event dictionary built from event-typed KB entities. The tagger
// covers written dates in several formats, month-year, bare years, decades,
// centuries, relative expressions, durations, periodic sets and event
// mentions. Relative expressions resolve against an explicit reference
// date, never the wall clock. The documented format table lives in
// docs/date-formats.md and data/date_formats.tsv.

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tqa/errors.hpp"
#include "tqa/kb.hpp"
#include "tqa/model.hpp"
#include "tqa/text.hpp"

namespace tqa {

// ---------------------------------------------------------------------------
// Event dictionary

class EventDictionary {
public:
    struct Entry {
        std::string event_id;
        Interval scope;
    };

    // Keeps the earliest-loaded entry on duplicate surface forms; returns
    // false and leaves the table unchanged in that case.
    bool add(const std::string& surface, Entry entry) {
        const std::string key = lower_ascii(surface);
        if (entries_.count(key)) return false;
        const auto words = tokenize_words(key);
        max_tokens_ = std::max(max_tokens_, words.size());
        entries_.emplace(key, std::move(entry));
        return true;
    }

    const Entry* lookup(const std::string& surface) const {
        auto it = entries_.find(lower_ascii(surface));
        return it == entries_.end() ? nullptr : &it->second;
    }

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    std::size_t max_tokens() const { return max_tokens_; }
    const std::map<std::string, Entry>& entries() const { return entries_; }

private:
    std::map<std::string, Entry> entries_;  // lower-cased surface form
    std::size_t max_tokens_ = 0;
};

// One dictionary entry per surface form of every event-typed entity with a
// resolvable time scope. Duplicate surfaces keep the earliest-loaded entity
// and are logged.
inline EventDictionary build_event_dictionary(const KBStore& store,
                                              std::vector<std::string>* log = nullptr) {
    EventDictionary dict;
    for (const auto& id : store.entity_order()) {
        if (!store.is_event_entity(id)) continue;
        const auto scope = entity_time_scope(store, id);
        if (!scope) {
            if (log)
                log->push_back("event entity without resolvable time scope skipped: " + id);
            continue;
        }
        for (const auto& surface : store.entities().at(id).surface_forms) {
            if (!dict.add(surface, EventDictionary::Entry{id, *scope}) && log)
                log->push_back("duplicate surface form \"" + lower_ascii(surface) +
                               "\" kept for earlier entry, ignored for " + id);
        }
    }
    return dict;
}

// ---------------------------------------------------------------------------
// Rule tagger

namespace detail {

inline const std::unordered_map<std::string, int>& month_names() {
    static const std::unordered_map<std::string, int> m = {
        {"january", 1},  {"jan", 1},  {"february", 2}, {"feb", 2},  {"march", 3},
        {"mar", 3},      {"april", 4}, {"apr", 4},     {"may", 5},  {"june", 6},
        {"jun", 6},      {"july", 7},  {"jul", 7},     {"august", 8}, {"aug", 8},
        {"september", 9}, {"sep", 9},  {"sept", 9},    {"october", 10}, {"oct", 10},
        {"november", 11}, {"nov", 11}, {"december", 12}, {"dec", 12}};
    return m;
}

inline const std::unordered_map<std::string, int>& number_words() {
    static const std::unordered_map<std::string, int> m = {
        {"one", 1}, {"two", 2},   {"three", 3}, {"four", 4}, {"five", 5},  {"six", 6},
        {"seven", 7}, {"eight", 8}, {"nine", 9}, {"ten", 10}, {"eleven", 11}, {"twelve", 12}};
    return m;
}

inline bool is_duration_unit(const std::string& t) {
    static const std::unordered_set<std::string> s = {
        "year", "years", "month", "months", "week", "weeks", "day", "days",
        "hour", "hours", "minute", "minutes", "decade", "decades", "century", "centuries"};
    return s.count(t) > 0;
}

inline bool is_weekday(const std::string& t) {
    static const std::unordered_set<std::string> s = {
        "monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday"};
    return s.count(t) > 0;
}

inline std::optional<int> year_token(const std::string& t) {
    if (t.size() == 4 && all_digits(t)) {
        const int y = std::stoi(t);
        if (y >= 1000 && y <= 2999) return y;  // avoids tagging plain counts
    }
    return std::nullopt;
}

inline std::optional<int> day_of_month_token(const std::string& t) {
    int d = 0;
    if (all_digits(t) && t.size() <= 2) {
        d = std::stoi(t);
    } else {
        d = parse_ordinal_number(t);  // "2nd", "31st"
    }
    if (d >= 1 && d <= 31) return d;
    return std::nullopt;
}

// "1990s" -> 1990
inline std::optional<int> decade_token(const std::string& t) {
    if (t.size() == 5 && t.back() == 's' && all_digits(t.substr(0, 4))) {
        const int y = std::stoi(t.substr(0, 4));
        if (y >= 1000 && y <= 2990 && y % 10 == 0) return y;
    }
    return std::nullopt;
}

}  // namespace detail

class RuleTagger {
public:
    explicit RuleTagger(const EventDictionary* events = nullptr) : events_(events) {}

    // Non-overlapping spans, longest match first, left to right.
    std::vector<TemporalExpressionSpan> tag(const std::vector<Token>& tokens) const {
        std::vector<TemporalExpressionSpan> spans;
        const int n = static_cast<int>(tokens.size());
        int i = 0;
        while (i < n) {
            TemporalExpressionSpan best;
            bool found = false;
            // event dictionary hits and date rules compete; the longest wins
            if (events_ && !events_->empty()) {
                const int max_len =
                    std::min<int>(static_cast<int>(events_->max_tokens()), n - i);
                for (int len = max_len; len >= 1; --len) {
                    std::string phrase;
                    for (int k = i; k < i + len; ++k) {
                        if (!phrase.empty()) phrase += ' ';
                        phrase += tokens[k].surface;
                    }
                    if (const auto* e = events_->lookup(phrase)) {
                        best = make_span(tokens, i, i + len, TimexType::Event);
                        best.normalized = e->scope;
                        best.event_id = e->event_id;
                        found = true;
                        break;
                    }
                }
            }
            TemporalExpressionSpan rule_span;
            if (match_rules(tokens, i, rule_span) &&
                (!found || rule_span.range.size() > best.range.size())) {
                best = rule_span;
                found = true;
            }
            if (found) {
                i = best.range.last;
                spans.push_back(std::move(best));
            } else {
                ++i;
            }
        }
        return spans;
    }

    std::vector<TemporalExpressionSpan> tag(const std::string& text) const {
        return tag(tokenize(text));
    }

    const EventDictionary* events() const { return events_; }

private:
    template <typename F>
    static void emit(const std::vector<Token>& tokens, int first, int last, F&& fill,
                     TemporalExpressionSpan& out, int& best_len) {
        if (last - first <= best_len) return;
        TemporalExpressionSpan span = make_span(tokens, first, last, TimexType::Date);
        fill(span);
        out = std::move(span);
        best_len = last - first;
    }

    static TemporalExpressionSpan make_span(const std::vector<Token>& tokens, int first,
                                            int last, TimexType type) {
        TemporalExpressionSpan span;
        span.range = TokenRange{first, last};
        span.type = type;
        for (int k = first; k < last; ++k) {
            if (k > first) span.surface += ' ';
            span.surface += tokens[k].surface;
        }
        return span;
    }

    // All date/time/duration/set rules anchored at position i; the longest
    // match is written to `out`.
    bool match_rules(const std::vector<Token>& tokens, int i,
                     TemporalExpressionSpan& out) const {
        using namespace detail;
        const int n = static_cast<int>(tokens.size());
        const auto word = [&](int k) -> const std::string& { return tokens[k].surface; };
        int best_len = 0;

        // ISO token: YYYY-MM-DD or YYYY-MM (but not a bare year, handled below)
        if (word(i).find('-') != std::string::npos) {
            if (const auto tp = TimePoint::parse(word(i))) {
                emit(tokens, i, i + 1,
                     [&](TemporalExpressionSpan& s) { s.normalized = interval_from_point(*tp); },
                     out, best_len);
            }
        }

        // month name anchored forms
        if (auto mit = month_names().find(word(i)); mit != month_names().end()) {
            const int month = mit->second;
            // may 2nd, 2016 / may 2 2016
            if (i + 2 < n) {
                const auto day = day_of_month_token(word(i + 1));
                const auto year = year_token(word(i + 2));
                if (day && year) {
                    try {
                        const TimePoint tp(*year, month, *day);
                        emit(tokens, i, i + 3,
                             [&](TemporalExpressionSpan& s) {
                                 s.normalized = interval_from_point(tp);
                             },
                             out, best_len);
                    } catch (const std::invalid_argument&) {
                    }
                }
            }
            // may 2016
            if (i + 1 < n) {
                if (const auto year = year_token(word(i + 1))) {
                    const TimePoint tp(*year, month);
                    emit(tokens, i, i + 2,
                         [&](TemporalExpressionSpan& s) { s.normalized = interval_from_point(tp); },
                         out, best_len);
                }
            }
            // may 2nd (year comes from the reference date)
            if (i + 1 < n) {
                if (const auto day = day_of_month_token(word(i + 1))) {
                    emit(tokens, i, i + 2,
                         [&](TemporalExpressionSpan& s) {
                             s.relative_kind = RelativeExpr::MonthDay;
                             s.rel_month = month;
                             s.rel_day = *day;
                         },
                         out, best_len);
                }
            }
        }

        // 2 may 2016 / 2nd of may 2016
        if (const auto day = day_of_month_token(word(i))) {
            int k = i + 1;
            if (k < n && word(k) == "of") ++k;
            if (k < n) {
                if (auto mit = month_names().find(word(k)); mit != month_names().end()) {
                    if (k + 1 < n) {
                        if (const auto year = year_token(word(k + 1))) {
                            try {
                                const TimePoint tp(*year, mit->second, *day);
                                emit(tokens, i, k + 2,
                                     [&](TemporalExpressionSpan& s) {
                                         s.normalized = interval_from_point(tp);
                                     },
                                     out, best_len);
                            } catch (const std::invalid_argument&) {
                            }
                        }
                    }
                }
            }
        }

        // decades: "the 1990s" (span covers the numeral token)
        if (const auto decade = decade_token(word(i))) {
            const Interval iv(TimePoint(*decade, 1, 1), TimePoint(*decade + 9, 12, 31));
            emit(tokens, i, i + 1,
                 [&](TemporalExpressionSpan& s) { s.normalized = iv; }, out, best_len);
        }

        // centuries: "18th century" -> [1701, 1800]
        if (const int nth = parse_ordinal_number(word(i));
            nth >= 1 && nth <= 29 && i + 1 < n &&
            (word(i + 1) == "century" || word(i + 1) == "centuries")) {
            const Interval iv(TimePoint((nth - 1) * 100 + 1, 1, 1), TimePoint(nth * 100, 12, 31));
            emit(tokens, i, i + 2,
                 [&](TemporalExpressionSpan& s) { s.normalized = iv; }, out, best_len);
        }

        // bare 4-digit year
        if (const auto year = year_token(word(i))) {
            const TimePoint tp(*year);
            emit(tokens, i, i + 1,
                 [&](TemporalExpressionSpan& s) { s.normalized = interval_from_point(tp); },
                 out, best_len);
        }

        // relative expressions
        if (i + 1 < n) {
            static const std::map<std::pair<std::string, std::string>, RelativeExpr> rel = {
                {{"last", "year"}, RelativeExpr::LastYear},
                {{"this", "year"}, RelativeExpr::ThisYear},
                {{"next", "year"}, RelativeExpr::NextYear},
                {{"last", "month"}, RelativeExpr::LastMonth},
                {{"this", "month"}, RelativeExpr::ThisMonth},
                {{"next", "month"}, RelativeExpr::NextMonth},
            };
            if (auto it = rel.find({word(i), word(i + 1)}); it != rel.end()) {
                const RelativeExpr kind = it->second;
                emit(tokens, i, i + 2,
                     [&](TemporalExpressionSpan& s) { s.relative_kind = kind; }, out, best_len);
            }
        }
        {
            static const std::map<std::string, RelativeExpr> rel1 = {
                {"today", RelativeExpr::Today},
                {"yesterday", RelativeExpr::Yesterday},
                {"tomorrow", RelativeExpr::Tomorrow},
            };
            if (auto it = rel1.find(word(i)); it != rel1.end()) {
                const RelativeExpr kind = it->second;
                emit(tokens, i, i + 1,
                     [&](TemporalExpressionSpan& s) { s.relative_kind = kind; }, out, best_len);
            }
        }

        // clock times: "9 pm", "9:30 am", "noon", "midnight"
        {
            const bool meridiem =
                i + 1 < n && (word(i + 1) == "am" || word(i + 1) == "pm" ||
                              word(i + 1) == "a.m" || word(i + 1) == "p.m");
            const bool clock_number =
                all_digits(word(i)) && word(i).size() <= 2 && std::stoi(word(i)) <= 12;
            const bool clock_colon = word(i).find(':') != std::string::npos;
            if ((clock_number || clock_colon) && meridiem) {
                emit(tokens, i, i + 2,
                     [&](TemporalExpressionSpan& s) {
                         s.type = TimexType::Time;
                         s.relative_kind = RelativeExpr::TimeOfDay;
                     },
                     out, best_len);
            }
            if (word(i) == "noon" || word(i) == "midnight") {
                emit(tokens, i, i + 1,
                     [&](TemporalExpressionSpan& s) {
                         s.type = TimexType::Time;
                         s.relative_kind = RelativeExpr::TimeOfDay;
                     },
                     out, best_len);
            }
        }

        // durations: "two years", "3 days"
        if (i + 1 < n && is_duration_unit(word(i + 1))) {
            const bool numeric = all_digits(word(i)) || number_words().count(word(i)) ||
                                 word(i) == "a" || word(i) == "an" || word(i) == "few" ||
                                 word(i) == "several";
            if (numeric) {
                emit(tokens, i, i + 2,
                     [&](TemporalExpressionSpan& s) { s.type = TimexType::Duration; }, out,
                     best_len);
            }
        }

        // periodic sets: "every monday", "every year"
        if (word(i) == "every" && i + 1 < n &&
            (is_weekday(word(i + 1)) || is_duration_unit(word(i + 1)))) {
            emit(tokens, i, i + 2,
                 [&](TemporalExpressionSpan& s) { s.type = TimexType::Set; }, out, best_len);
        }

        return best_len > 0;
    }

    const EventDictionary* events_;
};

// Resolve a span to an interval at the expression's granularity. Relative
// expressions resolve against `reference`; EVENT spans return the
// dictionary scope recorded at tagging time. Durations and sets have no
// anchor and cannot be normalized.
inline Interval normalize(const TemporalExpressionSpan& span, const TimePoint& reference) {
    if (span.type == TimexType::Duration || span.type == TimexType::Set)
        throw UnnormalizableExpression("cannot normalize " +
                                       std::string(to_string(span.type)) + " \"" + span.surface +
                                       "\" without an anchor");
    if (span.normalized) return *span.normalized;

    const TimePoint ref_day = widen(reference, Side::Begin);
    const int ry = ref_day.year;
    const int rm = *ref_day.month;
    switch (span.relative_kind) {
        case RelativeExpr::LastYear:
            return interval_from_point(TimePoint(ry - 1));
        case RelativeExpr::ThisYear:
            return interval_from_point(TimePoint(ry));
        case RelativeExpr::NextYear:
            return interval_from_point(TimePoint(ry + 1));
        case RelativeExpr::LastMonth:
            return rm == 1 ? interval_from_point(TimePoint(ry - 1, 12))
                           : interval_from_point(TimePoint(ry, rm - 1));
        case RelativeExpr::ThisMonth:
            return interval_from_point(TimePoint(ry, rm));
        case RelativeExpr::NextMonth:
            return rm == 12 ? interval_from_point(TimePoint(ry + 1, 1))
                            : interval_from_point(TimePoint(ry, rm + 1));
        case RelativeExpr::Today:
        case RelativeExpr::TimeOfDay:
            // no sub-day precision: clock times normalize to their date
            return interval_from_point(ref_day);
        case RelativeExpr::Yesterday:
            return interval_from_point(
                timepoint_from_day_number(day_number(ref_day, Side::Begin) - 1));
        case RelativeExpr::Tomorrow:
            return interval_from_point(
                timepoint_from_day_number(day_number(ref_day, Side::Begin) + 1));
        case RelativeExpr::MonthDay:
            return interval_from_point(TimePoint(ry, span.rel_month, span.rel_day));
        case RelativeExpr::None:
            break;
    }
    throw UnnormalizableExpression("span has no interval semantics: \"" + span.surface + "\"");
}

// Tag and normalize in one pass; DATE/TIME/EVENT spans carry `normalized`
// afterwards.
inline std::vector<TemporalExpressionSpan> tag_and_normalize(const RuleTagger& tagger,
                                                             const std::vector<Token>& tokens,
                                                             const TimePoint& reference) {
    auto spans = tagger.tag(tokens);
    for (auto& s : spans) {
        if (s.type == TimexType::Duration || s.type == TimexType::Set) continue;
        if (!s.normalized) s.normalized = normalize(s, reference);
    }
    return spans;
}

}  // namespace tqa

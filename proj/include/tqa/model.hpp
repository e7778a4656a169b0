#pragma once

// Shared domain types: temporal relations, question annotations, KB facts
// and answer sets. All types are immutable values once constructed.

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tqa/time.hpp"

namespace tqa {

// ---------------------------------------------------------------------------
// Temporal relations

enum class RelationKind { Before, After, Overlap };

// The three overlap constraint rows, keyed by their trigger signals.
enum class OverlapRow { DuringWhileWhen, SinceUntilIn, SameTimeAs };

struct TemporalRelation {
    RelationKind kind = RelationKind::Overlap;
    std::optional<OverlapRow> overlap_row;  // present iff kind == Overlap

    static TemporalRelation before() { return {RelationKind::Before, std::nullopt}; }
    static TemporalRelation after() { return {RelationKind::After, std::nullopt}; }
    static TemporalRelation overlap(OverlapRow row) { return {RelationKind::Overlap, row}; }

    bool operator==(const TemporalRelation&) const = default;
};

inline std::string to_string(const TemporalRelation& r) {
    switch (r.kind) {
        case RelationKind::Before:
            return "BEFORE";
        case RelationKind::After:
            return "AFTER";
        case RelationKind::Overlap:
            break;
    }
    if (!r.overlap_row) return "OVERLAP";
    switch (*r.overlap_row) {
        case OverlapRow::DuringWhileWhen:
            return "OVERLAP:DURING_WHILE_WHEN";
        case OverlapRow::SinceUntilIn:
            return "OVERLAP:SINCE_UNTIL_IN";
        case OverlapRow::SameTimeAs:
            return "OVERLAP:SAME_TIME_AS";
    }
    return "OVERLAP";
}

// The thirteen mutually exclusive relations between closed intervals.
enum class AllenRelation {
    Equal,
    Before,
    After,
    Meets,
    MetBy,
    Overlaps,
    OverlappedBy,
    During,
    Contains,
    Starts,
    StartedBy,
    Finishes,
    FinishedBy,
};

inline const char* to_string(AllenRelation r) {
    switch (r) {
        case AllenRelation::Equal: return "EQUAL";
        case AllenRelation::Before: return "BEFORE";
        case AllenRelation::After: return "AFTER";
        case AllenRelation::Meets: return "MEETS";
        case AllenRelation::MetBy: return "MET_BY";
        case AllenRelation::Overlaps: return "OVERLAPS";
        case AllenRelation::OverlappedBy: return "OVERLAPPED_BY";
        case AllenRelation::During: return "DURING";
        case AllenRelation::Contains: return "CONTAINS";
        case AllenRelation::Starts: return "STARTS";
        case AllenRelation::StartedBy: return "STARTED_BY";
        case AllenRelation::Finishes: return "FINISHES";
        case AllenRelation::FinishedBy: return "FINISHED_BY";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Question annotations

enum class Pos { Wh, Verb, Aux, Det, Prep, Pron, Noun, Ordinal, Number, Other };

struct Token {
    std::string surface;  // lower-cased
    Pos pos = Pos::Noun;
    int index = 0;
};

// Half-open token range [first, last).
struct TokenRange {
    int first = 0;
    int last = 0;

    int size() const { return last - first; }
    bool contains(int i) const { return i >= first && i < last; }
    bool overlaps(const TokenRange& o) const { return first < o.last && o.first < last; }
    bool operator==(const TokenRange&) const = default;
};

struct EntitySpan {
    TokenRange range;
    std::string entity_id;
};

enum class TimexType { Date, Time, Duration, Set, Event };

inline const char* to_string(TimexType t) {
    switch (t) {
        case TimexType::Date: return "DATE";
        case TimexType::Time: return "TIME";
        case TimexType::Duration: return "DURATION";
        case TimexType::Set: return "SET";
        case TimexType::Event: return "EVENT";
    }
    return "?";
}

// How a relative expression resolves against the reference date.
enum class RelativeExpr {
    None,
    LastYear,
    ThisYear,
    NextYear,
    LastMonth,
    ThisMonth,
    NextMonth,
    Today,
    Yesterday,
    Tomorrow,
    MonthDay,   // month/day without a year; takes the reference year
    TimeOfDay,  // clock time; normalized to the reference day
};

struct TemporalExpressionSpan {
    TokenRange range;
    TimexType type = TimexType::Date;
    std::optional<Interval> normalized;
    std::string surface;
    RelativeExpr relative_kind = RelativeExpr::None;
    int rel_month = 0;  // MonthDay payload
    int rel_day = 0;
    std::string event_id;  // EVENT spans only

    bool is_relative() const { return relative_kind != RelativeExpr::None; }
};

struct OrdinalKind {
    enum Kind { First, Last, Nth } kind = First;
    int n = 0;  // 1-based, Nth only

    static OrdinalKind first() { return {First, 0}; }
    static OrdinalKind last() { return {Last, 0}; }
    static OrdinalKind nth(int n) { return {Nth, n}; }

    bool operator==(const OrdinalKind&) const = default;
};

inline std::string to_string(const OrdinalKind& o) {
    switch (o.kind) {
        case OrdinalKind::First: return "FIRST";
        case OrdinalKind::Last: return "LAST";
        case OrdinalKind::Nth: return "NTH(" + std::to_string(o.n) + ")";
    }
    return "?";
}

struct SignalSpan {
    TokenRange range;
    std::string word;  // normalized phrase, e.g. "prior to"
};

struct OrdinalSpan {
    TokenRange range;
    OrdinalKind kind;
};

struct AnnotatedQuestion {
    std::string text;  // lower-cased input
    std::vector<Token> tokens;
    std::vector<EntitySpan> entity_spans;
    std::vector<TemporalExpressionSpan> timex_spans;
    std::optional<SignalSpan> signal_span;
    std::optional<OrdinalSpan> ordinal_span;
    bool answer_type_temporal = false;
    // Granularity implied by the answer-type pattern ("in what year" -> Year).
    std::optional<Granularity> answer_granularity;
};

// ---------------------------------------------------------------------------
// Facts

struct EntityRef {
    std::string id;
    bool operator==(const EntityRef&) const = default;
};

struct Literal {
    std::string text;
    bool operator==(const Literal&) const = default;
};

using FactObject = std::variant<EntityRef, Literal, TimePoint>;

struct Fact {
    std::string subject;
    std::string predicate;
    FactObject object;
    std::optional<std::string> compound;  // groups qualifier facts (CVT style)

    bool operator==(const Fact&) const = default;
};

inline std::string object_to_string(const FactObject& o) {
    if (const auto* e = std::get_if<EntityRef>(&o)) return e->id;
    if (const auto* l = std::get_if<Literal>(&o)) return "\"" + l->text + "\"";
    return std::get<TimePoint>(o).to_string();
}

// ---------------------------------------------------------------------------
// Answers

using AnswerValue = std::variant<std::string /* entity id */, TimePoint>;

// Stable identifier used for intersection, ordering ties and evaluation.
inline std::string answer_key(const AnswerValue& v) {
    if (const auto* id = std::get_if<std::string>(&v)) return *id;
    return std::get<TimePoint>(v).to_string();
}

struct Answer {
    AnswerValue value;
    std::vector<Interval> time_scopes;
    std::vector<std::string> predicates;  // provenance, for scope retrieval
    bool unscoped = false;  // scope retrieval ran and found nothing

    bool operator==(const Answer&) const = default;
};

struct AnswerSet {
    std::vector<Answer> answers;

    bool empty() const { return answers.empty(); }
    std::size_t size() const { return answers.size(); }

    std::set<std::string> keys() const {
        std::set<std::string> out;
        for (const auto& a : answers) out.insert(answer_key(a.value));
        return out;
    }

    bool operator==(const AnswerSet&) const = default;
};

}  // namespace tqa

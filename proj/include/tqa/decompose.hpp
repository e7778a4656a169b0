#pragma once

// Splits a temporal question at its signal pivot into a non-temporal
// sub-question and a temporal sub-question, following four rewrite cases:
//
//   input: wh* w1 ... wn SIGNAL w(n+1) ... wp ?
//   case 1 (constraint has entity and relation):  when w(n+1) ... wp ?
//   case 2 (relation, no entity):                 when <sq1-entity> w(n+1) ... wp ?
//   case 3 (entity, no relation):                 when w(n+1) ... wp w1 ... wn ?
//   case 4 (constraint is an event name):         when did w(n+1) ... wp happen ?
//
// Questions that are temporal only through an explicit date, an ordinal or
// a temporal answer type do not split: the date/ordinal span is excised
// from the question and the date becomes a constraint interval directly.

#include <optional>
#include <string>
#include <vector>

#include "tqa/detect.hpp"
#include "tqa/errors.hpp"
#include "tqa/model.hpp"
#include "tqa/timex.hpp"

namespace tqa {

enum class DecompositionCase { Case1, Case2, Case3, Case4, NoSplit };

inline const char* to_string(DecompositionCase c) {
    switch (c) {
        case DecompositionCase::Case1: return "CASE1";
        case DecompositionCase::Case2: return "CASE2";
        case DecompositionCase::Case3: return "CASE3";
        case DecompositionCase::Case4: return "CASE4";
        case DecompositionCase::NoSplit: return "NO_SPLIT";
    }
    return "?";
}

// Constraint taken directly from an explicit temporal expression, with the
// relation of the adjacent signal word when there is one.
struct TimexConstraint {
    Interval interval;
    TemporalRelation relation;
    std::string surface;
};

struct DecompositionResult {
    std::vector<std::string> nontemporal_subquestions;  // always >= 1
    std::optional<std::string> temporal_subquestion;
    std::optional<TemporalRelation> relation;  // present iff temporal_subquestion
    std::optional<OrdinalKind> ordinal;
    DecompositionCase case_used = DecompositionCase::NoSplit;
    std::vector<TimexConstraint> timex_constraints;
};

// The signal span acts as pivot only when a clause follows it; a signal
// directly followed by a bare date ("before 2013") leaves the question in
// the no-split path where the date itself is the constraint.
inline std::optional<SignalSpan> find_pivot(const AnnotatedQuestion& q) {
    if (!q.signal_span) return std::nullopt;
    const int n = static_cast<int>(q.tokens.size());
    for (int k = q.signal_span->range.last; k < n; ++k) {
        bool in_date = false;
        for (const auto& t : q.timex_spans)
            if (t.range.contains(k) && (t.type == TimexType::Date || t.type == TimexType::Time))
                in_date = true;
        if (!in_date) return q.signal_span;
    }
    if (q.signal_span->range.last >= n) return q.signal_span;  // empty constraint, reported later
    return std::nullopt;
}

// Case selection over the constraint fragment: an event mention wins,
// otherwise the presence of a relation token (verb) and of a linked entity
// decides. Fragments with neither fall back to case 3, behaving like a
// bare nominal constraint.
inline DecompositionCase select_case(const AnnotatedQuestion& q, const TokenRange& constraint) {
    if (constraint.size() <= 0)
        throw EmptyConstraint("no tokens follow the signal word in \"" + q.text + "\"");
    for (const auto& s : q.timex_spans) {
        if (s.type != TimexType::Event) continue;
        if (s.range.first < constraint.first || s.range.first >= constraint.last) continue;
        bool only_dets_before = true;
        for (int k = constraint.first; k < s.range.first; ++k)
            if (q.tokens[k].pos != Pos::Det) only_dets_before = false;
        if (only_dets_before) return DecompositionCase::Case4;
    }
    bool has_entity = false;
    for (const auto& e : q.entity_spans)
        if (e.range.overlaps(constraint)) has_entity = true;
    bool has_relation = false;
    for (int k = constraint.first; k < constraint.last; ++k)
        if (q.tokens[k].pos == Pos::Verb) has_relation = true;
    if (has_entity && has_relation) return DecompositionCase::Case1;
    if (has_relation) return DecompositionCase::Case2;
    return DecompositionCase::Case3;
}

namespace detail {

inline std::string join_question(const std::vector<std::string>& words) {
    std::string out;
    for (const auto& w : words) {
        if (!out.empty()) out += ' ';
        out += w;
    }
    out += '?';
    return out;
}

inline bool singular_count_noun(const std::string& w) {
    return !w.empty() && w.back() != 's';
}

}  // namespace detail

inline DecompositionResult decompose(const AnnotatedQuestion& q, const SignalDictionary& signals) {
    DecompositionResult r;
    const auto& toks = q.tokens;
    const int n = static_cast<int>(toks.size());

    auto date_span_at = [&](int index) -> const TemporalExpressionSpan* {
        for (const auto& s : q.timex_spans)
            if (s.range.first == index &&
                (s.type == TimexType::Date || s.type == TimexType::Time) && s.normalized)
                return &s;
        return nullptr;
    };

    // Collects head-clause words into `words`, turning date expressions
    // (with an adjacent leading signal word) into constraint intervals.
    auto consume_head = [&](int first, int last, std::vector<std::string>& words) {
        int i = first;
        while (i < last) {
            const TemporalExpressionSpan* next_date =
                (i + 1 < last && toks[i].pos != Pos::Number) ? date_span_at(i + 1) : nullptr;
            if (const auto rel = signals.lookup(toks[i].surface); rel && next_date) {
                // "in 2010", "before 2013": signal + date collapse into one constraint
                r.timex_constraints.push_back(
                    TimexConstraint{*next_date->normalized, *rel,
                                    toks[i].surface + " " + next_date->surface});
                i = next_date->range.last;
                continue;
            }
            if (const auto* span = date_span_at(i)) {
                r.timex_constraints.push_back(TimexConstraint{
                    *span->normalized, TemporalRelation::overlap(OverlapRow::SinceUntilIn),
                    span->surface});
                i = span->range.last;
                continue;
            }
            if (q.ordinal_span && q.ordinal_span->range.contains(i)) {
                ++i;  // the ordinal is an operator, not question content
                continue;
            }
            words.push_back(toks[i].surface);
            ++i;
        }
    };

    r.ordinal = q.ordinal_span ? std::optional<OrdinalKind>(q.ordinal_span->kind) : std::nullopt;

    const auto pivot = find_pivot(q);
    if (!pivot) {
        std::vector<std::string> head;
        consume_head(0, n, head);
        r.case_used = DecompositionCase::NoSplit;
        r.nontemporal_subquestions = {detail::join_question(head)};
        return r;
    }

    const TokenRange constraint{pivot->range.last, n};
    r.case_used = select_case(q, constraint);  // throws EmptyConstraint
    const auto rel = signals.lookup(pivot->word);
    if (!rel) throw UnmappedSignal("signal word not in dictionary: " + pivot->word);
    r.relation = rel;

    std::vector<std::string> head;
    consume_head(0, pivot->range.first, head);
    r.nontemporal_subquestions = {detail::join_question(head)};

    std::vector<std::string> fragment;
    for (int k = constraint.first; k < constraint.last; ++k)
        fragment.push_back(toks[k].surface);

    std::vector<std::string> sq2;
    switch (r.case_used) {
        case DecompositionCase::Case1: {
            sq2.push_back("when");
            sq2.insert(sq2.end(), fragment.begin(), fragment.end());
            break;
        }
        case DecompositionCase::Case2: {
            // the entity is borrowed from the first sub-question
            sq2.push_back("when");
            for (const auto& e : q.entity_spans) {
                if (e.range.last > pivot->range.first) continue;
                for (int k = e.range.first; k < e.range.last; ++k)
                    sq2.push_back(strip_possessive(toks[k].surface));
                break;
            }
            sq2.insert(sq2.end(), fragment.begin(), fragment.end());
            break;
        }
        case DecompositionCase::Case3: {
            // constraint entity first, then the head clause minus its wh word
            sq2.push_back("when");
            sq2.insert(sq2.end(), fragment.begin(), fragment.end());
            int start = 0;
            if (start < pivot->range.first && toks[start].pos == Pos::Wh) ++start;
            for (int k = start; k < pivot->range.first; ++k) {
                if (q.ordinal_span && q.ordinal_span->range.contains(k)) continue;
                sq2.push_back(toks[k].surface);
            }
            break;
        }
        case DecompositionCase::Case4: {
            sq2.push_back("when");
            sq2.push_back("did");
            sq2.insert(sq2.end(), fragment.begin(), fragment.end());
            sq2.push_back("happen");
            break;
        }
        case DecompositionCase::NoSplit:
            break;
    }
    r.temporal_subquestion = detail::join_question(sq2);

    // Singular answer-type nouns with before/after ask for the nearest
    // survivor ("which team ... before ..." wants the last one), realized
    // as an ordinal over the filtered candidates.
    if (!r.ordinal && r.relation &&
        (r.relation->kind == RelationKind::Before || r.relation->kind == RelationKind::After) &&
        n >= 2 && (toks[0].surface == "which" || toks[0].surface == "what") &&
        toks[1].pos == Pos::Noun && detail::singular_count_noun(toks[1].surface)) {
        r.ordinal = r.relation->kind == RelationKind::Before ? OrdinalKind::last()
                                                             : OrdinalKind::first();
    }
    return r;
}

}  // namespace tqa

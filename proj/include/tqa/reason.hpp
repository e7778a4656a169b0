#pragma once

// Interval-constraint reasoning: casting temporal results to intervals,
// the five constraint rows (before / after / three overlap rows), candidate
// filtering, ordinal selection, answer intersection, and classification of
// the thirteen interval relations. All comparisons are non-strict and run
// on day-widened endpoint keys; open sides compare as -inf / +inf.

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tqa/errors.hpp"
#include "tqa/model.hpp"

namespace tqa {

struct ConstraintSpec {
    TemporalRelation relation;
    Interval constraint_interval;
};

using TemporalResult = std::variant<TimePoint, Interval>;

// A single point becomes a point interval; a set of points spans from the
// earliest widened begin to the latest widened end; intervals pass through
// (several of them merge into their hull).
inline Interval cast_results_to_interval(const std::vector<TemporalResult>& results) {
    if (results.empty())
        throw EmptyTemporalResult("temporal sub-question produced no dates");
    if (results.size() == 1) {
        if (const auto* iv = std::get_if<Interval>(&results[0])) return *iv;
        return interval_from_point(std::get<TimePoint>(results[0]));
    }
    bool open_begin = false, open_end = false;
    std::optional<TimePoint> lo, hi;
    auto take = [&](const std::optional<TimePoint>& b, const std::optional<TimePoint>& e) {
        if (!b) {
            open_begin = true;
        } else if (!lo || day_number(*b, Side::Begin) < day_number(*lo, Side::Begin)) {
            lo = b;
        }
        if (!e) {
            open_end = true;
        } else if (!hi || day_number(*e, Side::End) > day_number(*hi, Side::End)) {
            hi = e;
        }
    };
    for (const auto& r : results) {
        if (const auto* iv = std::get_if<Interval>(&r)) {
            take(iv->begin, iv->end);
        } else {
            const auto& p = std::get<TimePoint>(r);
            take(widen(p, Side::Begin), widen(p, Side::End));
        }
    }
    return Interval(open_begin ? std::nullopt : lo, open_end ? std::nullopt : hi);
}

// The constraint test:
//   BEFORE                end_ans   <= begin_cons
//   AFTER                 begin_ans >= end_cons
//   OVERLAP during/while/when   begin_ans <= end_cons   <= end_ans
//   OVERLAP since/until/in      begin_ans <= begin_cons <= end_ans
//   OVERLAP at the same time as begin_cons <= begin_ans <= end_ans <= end_cons
inline bool satisfies(const TemporalRelation& rel, const Interval& ans, const Interval& cons) {
    const auto ba = begin_key(ans);
    const auto ea = end_key(ans);
    const auto bc = begin_key(cons);
    const auto ec = end_key(cons);
    switch (rel.kind) {
        case RelationKind::Before:
            return ea <= bc;
        case RelationKind::After:
            return ba >= ec;
        case RelationKind::Overlap:
            break;
    }
    if (!rel.overlap_row) throw Error("overlap relation without a constraint row");
    switch (*rel.overlap_row) {
        case OverlapRow::DuringWhileWhen:
            return ba <= ec && ec <= ea;
        case OverlapRow::SinceUntilIn:
            return ba <= bc && bc <= ea;
        case OverlapRow::SameTimeAs:
            return bc <= ba && ba <= ea && ea <= ec;
    }
    return false;
}

// Keeps a candidate iff any of its time scopes satisfies the constraint;
// input order is preserved. Unscoped candidates cannot satisfy anything and
// are dropped with a diagnostic instead of passing silently.
inline AnswerSet filter_candidates(const AnswerSet& candidates, const ConstraintSpec& spec,
                                   std::vector<std::string>* diagnostics = nullptr) {
    AnswerSet out;
    for (const auto& a : candidates.answers) {
        if (a.time_scopes.empty()) {
            if (diagnostics)
                diagnostics->push_back("unscoped candidate excluded by constraint: " +
                                       answer_key(a.value));
            continue;
        }
        const bool keep = std::any_of(
            a.time_scopes.begin(), a.time_scopes.end(),
            [&](const Interval& scope) { return satisfies(spec.relation, scope, spec.constraint_interval); });
        if (keep) out.answers.push_back(a);
    }
    return out;
}

namespace detail {

// Chronological sort key: earliest scope first, ties on the scope end, then
// on the answer id.
struct OrdinalKey {
    std::int64_t begin = 0;
    std::int64_t end = 0;
    std::string id;

    bool operator<(const OrdinalKey& o) const {
        if (begin != o.begin) return begin < o.begin;
        if (end != o.end) return end < o.end;
        return id < o.id;
    }
};

inline OrdinalKey ordinal_key(const Answer& a) {
    OrdinalKey key;
    key.id = answer_key(a.value);
    bool first = true;
    for (const auto& s : a.time_scopes) {
        const auto b = begin_key(s);
        const auto e = end_key(s);
        if (first || b < key.begin || (b == key.begin && e < key.end)) {
            key.begin = b;
            key.end = e;
            first = false;
        }
    }
    return key;
}

}  // namespace detail

// Chronological selection: FIRST / LAST / NTH (1-based). An NTH out of
// range selects nothing. Every candidate needs at least one scope to sort.
inline AnswerSet apply_ordinal(const AnswerSet& candidates, const OrdinalKind& kind) {
    for (const auto& a : candidates.answers)
        if (a.time_scopes.empty())
            throw UnscopedCandidate("cannot sort candidate without time scope: " +
                                    answer_key(a.value));
    AnswerSet out;
    if (candidates.empty()) return out;
    std::vector<const Answer*> sorted;
    for (const auto& a : candidates.answers) sorted.push_back(&a);
    std::sort(sorted.begin(), sorted.end(), [](const Answer* x, const Answer* y) {
        return detail::ordinal_key(*x) < detail::ordinal_key(*y);
    });
    std::size_t index = 0;
    switch (kind.kind) {
        case OrdinalKind::First:
            index = 0;
            break;
        case OrdinalKind::Last:
            index = sorted.size() - 1;
            break;
        case OrdinalKind::Nth:
            if (kind.n < 1 || static_cast<std::size_t>(kind.n) > sorted.size()) return out;
            index = static_cast<std::size_t>(kind.n) - 1;
            break;
    }
    out.answers.push_back(*sorted[index]);
    return out;
}

// Intersection by answer id, keeping the first set's order; scopes and
// provenance merge by union.
inline AnswerSet intersect(const std::vector<AnswerSet>& sets) {
    if (sets.empty()) throw Error("intersect needs at least one answer set");
    AnswerSet out;
    for (const auto& a : sets.front().answers) {
        const std::string key = answer_key(a.value);
        Answer merged = a;
        bool everywhere = true;
        for (std::size_t s = 1; s < sets.size() && everywhere; ++s) {
            bool found = false;
            for (const auto& b : sets[s].answers) {
                if (answer_key(b.value) != key) continue;
                found = true;
                for (const auto& scope : b.time_scopes)
                    if (std::find(merged.time_scopes.begin(), merged.time_scopes.end(), scope) ==
                        merged.time_scopes.end())
                        merged.time_scopes.push_back(scope);
                for (const auto& p : b.predicates)
                    if (std::find(merged.predicates.begin(), merged.predicates.end(), p) ==
                        merged.predicates.end())
                        merged.predicates.push_back(p);
            }
            everywhere = found;
        }
        if (everywhere) out.answers.push_back(std::move(merged));
    }
    return out;
}

// Unique Allen relation of two closed, non-degenerate intervals. Point and
// open intervals have no classification here; the pipeline's constraint
// test handles those through `satisfies`.
inline AllenRelation allen_relation(const Interval& a, const Interval& b) {
    if (!a.begin || !a.end || !b.begin || !b.end)
        throw DegenerateInterval("open interval has no Allen classification: " + a.to_string() +
                                 " vs " + b.to_string());
    const auto b1 = begin_key(a);
    const auto e1 = end_key(a);
    const auto b2 = begin_key(b);
    const auto e2 = end_key(b);
    if (b1 >= e1 || b2 >= e2)
        throw DegenerateInterval("point interval has no Allen classification: " + a.to_string() +
                                 " vs " + b.to_string());
    if (b1 == b2 && e1 == e2) return AllenRelation::Equal;
    if (e1 < b2) return AllenRelation::Before;
    if (b1 > e2) return AllenRelation::After;
    if (e1 == b2) return AllenRelation::Meets;
    if (b1 == e2) return AllenRelation::MetBy;
    if (b1 == b2) return e1 < e2 ? AllenRelation::Starts : AllenRelation::StartedBy;
    if (e1 == e2) return b1 > b2 ? AllenRelation::Finishes : AllenRelation::FinishedBy;
    if (b1 > b2 && e1 < e2) return AllenRelation::During;
    if (b1 < b2 && e1 > e2) return AllenRelation::Contains;
    return b1 < b2 ? AllenRelation::Overlaps : AllenRelation::OverlappedBy;
}

}  // namespace tqa

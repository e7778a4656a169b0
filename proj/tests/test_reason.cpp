#include <random>
#include <set>
#include <tuple>

#include <catch2/catch_amalgamated.hpp>

#include "tqa/reason.hpp"

using namespace tqa;

namespace {

// Grid helpers: integer endpoints 0..6 mapped onto consecutive days so that
// integer comparisons and day-key comparisons agree exactly.
TimePoint day(int i) { return TimePoint(2000, 1, 1 + i); }

Interval closed(int a, int b) { return Interval(day(a), day(b)); }

constexpr long kNeg = -1000;
constexpr long kPos = +1000;

struct IntInterval {
    long b;
    long e;
    Interval iv;
};

std::vector<IntInterval> grid_intervals(bool include_open, bool include_points) {
    std::vector<IntInterval> out;
    for (int a = 0; a <= 6; ++a)
        for (int b = a; b <= 6; ++b) {
            if (!include_points && a == b) continue;
            out.push_back({a, b, closed(a, b)});
        }
    if (include_open) {
        for (int a = 0; a <= 6; ++a) {
            out.push_back({a, kPos, Interval(day(a), std::nullopt)});
            out.push_back({kNeg, a, Interval(std::nullopt, day(a))});
        }
    }
    return out;
}

// Independent oracle for the five constraint rows, straight off the printed
// inequalities over integers with +-infinity sentinels.
bool oracle_satisfies(const TemporalRelation& rel, const IntInterval& ans,
                      const IntInterval& cons) {
    switch (rel.kind) {
        case RelationKind::Before:
            return ans.e <= cons.b;
        case RelationKind::After:
            return ans.b >= cons.e;
        case RelationKind::Overlap:
            break;
    }
    switch (*rel.overlap_row) {
        case OverlapRow::DuringWhileWhen:
            return ans.b <= cons.e && cons.e <= ans.e;
        case OverlapRow::SinceUntilIn:
            return ans.b <= cons.b && cons.b <= ans.e;
        case OverlapRow::SameTimeAs:
            return cons.b <= ans.b && ans.b <= ans.e && ans.e <= cons.e;
    }
    return false;
}

// Independent evaluator of the thirteen relations by their endpoint
// definitions over plain integers.
std::vector<AllenRelation> oracle_allen(long b1, long e1, long b2, long e2) {
    std::vector<AllenRelation> held;
    if (b1 == b2 && e1 == e2) held.push_back(AllenRelation::Equal);
    if (e1 < b2) held.push_back(AllenRelation::Before);
    if (b1 > e2) held.push_back(AllenRelation::After);
    if (e1 == b2 && b1 < b2 && e1 < e2) held.push_back(AllenRelation::Meets);
    if (b1 == e2 && b2 < b1 && e2 < e1) held.push_back(AllenRelation::MetBy);
    if (b1 < b2 && b2 < e1 && e1 < e2) held.push_back(AllenRelation::Overlaps);
    if (b2 < b1 && b1 < e2 && e2 < e1) held.push_back(AllenRelation::OverlappedBy);
    if (b1 > b2 && e1 < e2) held.push_back(AllenRelation::During);
    if (b1 < b2 && e1 > e2) held.push_back(AllenRelation::Contains);
    if (b1 == b2 && e1 < e2) held.push_back(AllenRelation::Starts);
    if (b1 == b2 && e1 > e2) held.push_back(AllenRelation::StartedBy);
    if (e1 == e2 && b1 > b2) held.push_back(AllenRelation::Finishes);
    if (e1 == e2 && b1 < b2) held.push_back(AllenRelation::FinishedBy);
    return held;
}

Answer make_answer(std::string id, std::vector<Interval> scopes) {
    Answer a;
    a.value = std::move(id);
    a.time_scopes = std::move(scopes);
    return a;
}

const std::vector<TemporalRelation>& all_relations() {
    static const std::vector<TemporalRelation> rels = {
        TemporalRelation::before(),
        TemporalRelation::after(),
        TemporalRelation::overlap(OverlapRow::DuringWhileWhen),
        TemporalRelation::overlap(OverlapRow::SinceUntilIn),
        TemporalRelation::overlap(OverlapRow::SameTimeAs),
    };
    return rels;
}

}  // namespace

TEST_CASE("casting temporal results to an interval") {
    // a run of years spans from the first Jan 1 to the last Dec 31
    const auto years = cast_results_to_interval(
        {TimePoint(2011), TimePoint(2012), TimePoint(2013)});
    CHECK(years == Interval(TimePoint(2011, 1, 1), TimePoint(2013, 12, 31)));

    const auto point = cast_results_to_interval({TimePoint(2013, 6, 3)});
    CHECK(point == Interval(TimePoint(2013, 6, 3), TimePoint(2013, 6, 3)));

    const Interval passthrough(TimePoint(2010, 6, 11), TimePoint(2010, 7, 11));
    CHECK(cast_results_to_interval({passthrough}) == passthrough);

    CHECK_THROWS_AS(cast_results_to_interval({}), EmptyTemporalResult);
}

TEST_CASE("constraint rows on worked examples") {
    CHECK(satisfies(TemporalRelation::before(), closed(2, 5), closed(6, 9)));
    CHECK_FALSE(satisfies(TemporalRelation::after(), closed(2, 5), closed(6, 9)));
    CHECK(satisfies(TemporalRelation::before(), closed(2, 6), closed(6, 9)));  // non-strict

    const Interval cup(TimePoint(2010, 6, 11), TimePoint(2010, 7, 11));
    const auto during = TemporalRelation::overlap(OverlapRow::DuringWhileWhen);
    CHECK_FALSE(satisfies(during, Interval(TimePoint(2013), TimePoint(2017)), cup));
    CHECK(satisfies(during, Interval(TimePoint(2009), TimePoint(2013)), cup));
}

TEST_CASE("constraint rows agree with the brute-force oracle on the full grid") {
    const auto intervals = grid_intervals(true, true);
    for (const auto& rel : all_relations())
        for (const auto& ans : intervals)
            for (const auto& cons : intervals) {
                INFO(to_string(rel) << " ans=" << ans.iv.to_string()
                                    << " cons=" << cons.iv.to_string());
                CHECK(satisfies(rel, ans.iv, cons.iv) == oracle_satisfies(rel, ans, cons));
            }
}

TEST_CASE("before/after are dual under swapping roles") {
    const auto intervals = grid_intervals(true, true);
    for (const auto& x : intervals)
        for (const auto& y : intervals)
            CHECK(satisfies(TemporalRelation::before(), x.iv, y.iv) ==
                  satisfies(TemporalRelation::after(), y.iv, x.iv));
}

TEST_CASE("allen classification on worked examples") {
    CHECK(allen_relation(closed(1, 3), closed(3, 5)) == AllenRelation::Meets);
    CHECK(allen_relation(closed(1, 5), closed(2, 3)) == AllenRelation::Contains);
    CHECK(allen_relation(closed(2, 4), closed(2, 4)) == AllenRelation::Equal);
    CHECK(allen_relation(closed(0, 2), closed(4, 6)) == AllenRelation::Before);
    CHECK(allen_relation(closed(2, 3), closed(1, 5)) == AllenRelation::During);
    CHECK_THROWS_AS(allen_relation(closed(2, 2), closed(1, 5)), DegenerateInterval);
    CHECK_THROWS_AS(allen_relation(Interval(day(1), std::nullopt), closed(1, 5)),
                    DegenerateInterval);
}

TEST_CASE("exactly one allen relation holds and matches the oracle") {
    const auto intervals = grid_intervals(false, false);  // closed, non-degenerate
    for (const auto& a : intervals)
        for (const auto& b : intervals) {
            const auto held = oracle_allen(a.b, a.e, b.b, b.e);
            INFO(a.iv.to_string() << " vs " << b.iv.to_string());
            REQUIRE(held.size() == 1);
            CHECK(allen_relation(a.iv, b.iv) == held[0]);
        }
}

TEST_CASE("filtering the worked candidate set") {
    AnswerSet candidates;
    candidates.answers.push_back(
        make_answer("santos", {Interval(TimePoint(2009), TimePoint(2013, 5))}));
    candidates.answers.push_back(
        make_answer("barcelona", {Interval(TimePoint(2013, 6), TimePoint(2017, 8))}));
    candidates.answers.push_back(
        make_answer("psg", {Interval(TimePoint(2017, 8), std::nullopt)}));
    const ConstraintSpec spec{TemporalRelation::before(),
                              interval_from_point(TimePoint(2013, 6, 3))};
    const auto filtered = filter_candidates(candidates, spec);
    CHECK(filtered.keys() == std::set<std::string>{"santos"});
}

TEST_CASE("filtering edge cases") {
    const ConstraintSpec spec{TemporalRelation::before(),
                              interval_from_point(TimePoint(2013))};
    CHECK(filter_candidates(AnswerSet{}, spec).empty());

    // an AFTER constraint with an open end can never be satisfied
    AnswerSet candidates;
    candidates.answers.push_back(make_answer("x", {closed(0, 2)}));
    candidates.answers.push_back(make_answer("y", {Interval(day(3), std::nullopt)}));
    const ConstraintSpec open_after{TemporalRelation::after(),
                                    Interval(day(0), std::nullopt)};
    CHECK(filter_candidates(candidates, open_after).empty());

    // unscoped candidates are excluded and reported
    AnswerSet unscoped;
    unscoped.answers.push_back(make_answer("ghost", {}));
    std::vector<std::string> diagnostics;
    CHECK(filter_candidates(unscoped, spec, &diagnostics).empty());
    REQUIRE(diagnostics.size() == 1);
    CHECK(diagnostics[0].find("ghost") != std::string::npos);
}

TEST_CASE("filtering is a subset operation and idempotent") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> endpoint(0, 6);
    for (int round = 0; round < 200; ++round) {
        AnswerSet candidates;
        const int n = std::uniform_int_distribution<int>(0, 6)(rng);
        for (int i = 0; i < n; ++i) {
            const int a = endpoint(rng);
            const int b = endpoint(rng);
            candidates.answers.push_back(
                make_answer("e" + std::to_string(i), {closed(std::min(a, b), std::max(a, b))}));
        }
        const int ca = endpoint(rng), cb = endpoint(rng);
        const auto& rel = all_relations()[std::uniform_int_distribution<std::size_t>(
            0, all_relations().size() - 1)(rng)];
        const ConstraintSpec spec{rel, closed(std::min(ca, cb), std::max(ca, cb))};
        const auto once = filter_candidates(candidates, spec);
        const auto twice = filter_candidates(once, spec);
        for (const auto& k : once.keys()) CHECK(candidates.keys().count(k) == 1);
        CHECK(once == twice);
    }
}

TEST_CASE("ordinal selection over the fixture clubs") {
    AnswerSet clubs;
    clubs.answers.push_back(
        make_answer("santos", {Interval(TimePoint(2009, 3, 7), TimePoint(2013, 5, 31))}));
    clubs.answers.push_back(
        make_answer("barcelona", {Interval(TimePoint(2013, 6, 3), TimePoint(2017, 8, 3))}));
    clubs.answers.push_back(
        make_answer("psg", {Interval(TimePoint(2017, 8, 3), std::nullopt)}));

    CHECK(apply_ordinal(clubs, OrdinalKind::first()).keys() ==
          std::set<std::string>{"santos"});
    CHECK(apply_ordinal(clubs, OrdinalKind::last()).keys() == std::set<std::string>{"psg"});
    CHECK(apply_ordinal(clubs, OrdinalKind::nth(2)).keys() ==
          std::set<std::string>{"barcelona"});
    CHECK(apply_ordinal(clubs, OrdinalKind::nth(99)).empty());

    AnswerSet singleton;
    singleton.answers.push_back(make_answer("only", {closed(1, 2)}));
    CHECK(apply_ordinal(singleton, OrdinalKind::last()).keys() ==
          std::set<std::string>{"only"});

    AnswerSet unscoped = clubs;
    unscoped.answers.push_back(make_answer("ghost", {}));
    CHECK_THROWS_AS(apply_ordinal(unscoped, OrdinalKind::first()), UnscopedCandidate);
}

TEST_CASE("first and last agree with an independent chronological scan") {
    std::mt19937 rng(123);
    std::uniform_int_distribution<int> endpoint(0, 6);
    for (int round = 0; round < 200; ++round) {
        AnswerSet set;
        const int n = std::uniform_int_distribution<int>(1, 7)(rng);
        for (int i = 0; i < n; ++i) {
            const int a = endpoint(rng);
            const int b = endpoint(rng);
            set.answers.push_back(
                make_answer("e" + std::to_string(i), {closed(std::min(a, b), std::max(a, b))}));
        }
        // independent scan with its own tuple comparison
        auto tuple_of = [](const Answer& a) {
            return std::make_tuple(begin_key(a.time_scopes[0]), end_key(a.time_scopes[0]),
                                   answer_key(a.value));
        };
        const Answer* lo = &set.answers[0];
        const Answer* hi = &set.answers[0];
        for (const auto& a : set.answers) {
            if (tuple_of(a) < tuple_of(*lo)) lo = &a;
            if (tuple_of(*hi) < tuple_of(a)) hi = &a;
        }
        CHECK(apply_ordinal(set, OrdinalKind::first()).keys() ==
              std::set<std::string>{answer_key(lo->value)});
        CHECK(apply_ordinal(set, OrdinalKind::last()).keys() ==
              std::set<std::string>{answer_key(hi->value)});
    }
}

TEST_CASE("intersection examples") {
    AnswerSet ab;
    ab.answers.push_back(make_answer("a", {}));
    ab.answers.push_back(make_answer("b", {closed(1, 2)}));
    AnswerSet bc;
    bc.answers.push_back(make_answer("b", {closed(3, 4)}));
    bc.answers.push_back(make_answer("c", {}));

    const auto both = intersect({ab, bc});
    CHECK(both.keys() == std::set<std::string>{"b"});
    REQUIRE(both.answers.size() == 1);
    CHECK(both.answers[0].time_scopes.size() == 2);  // scopes merge by union

    CHECK(intersect({ab}).keys() == ab.keys());
    CHECK(intersect({ab, AnswerSet{}}).empty());
    CHECK_THROWS_AS(intersect({}), Error);
}

TEST_CASE("intersection is commutative, associative and idempotent on keys") {
    std::mt19937 rng(7);
    auto random_set = [&](int round) {
        AnswerSet s;
        for (int i = 0; i < 6; ++i)
            if (std::uniform_int_distribution<int>(0, 1)(rng))
                s.answers.push_back(make_answer("e" + std::to_string(i), {}));
        (void)round;
        return s;
    };
    for (int round = 0; round < 100; ++round) {
        const auto a = random_set(round);
        const auto b = random_set(round);
        const auto c = random_set(round);
        CHECK(intersect({a, b}).keys() == intersect({b, a}).keys());
        CHECK(intersect({intersect({a, b}), c}).keys() ==
              intersect({a, intersect({b, c})}).keys());
        CHECK(intersect({a, a}).keys() == a.keys());
    }
}

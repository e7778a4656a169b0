#include <fstream>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "tqa/kb.hpp"
#include "tqa/timex.hpp"

using namespace tqa;

namespace {

const TimePoint kReference(2018, 1, 15);

std::string data_path(const char* name) {
    return std::string(TQA_SOURCE_DIR) + "/data/" + name;
}

KBStore toy_store() { return load_kb(data_path("toy.kb")); }

// first DATE/TIME span of the text, normalized
Interval normalize_first(const RuleTagger& tagger, const std::string& text,
                         const TimePoint& reference) {
    const auto spans = tagger.tag(text);
    REQUIRE_FALSE(spans.empty());
    return normalize(spans.front(), reference);
}

}  // namespace

TEST_CASE("the documented date-format table normalizes exactly") {
    RuleTagger tagger;
    std::ifstream in(data_path("date_formats.tsv"));
    REQUIRE(in.good());
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string surface, ref, begin, end;
        std::getline(ss, surface, '\t');
        std::getline(ss, ref, '\t');
        std::getline(ss, begin, '\t');
        std::getline(ss, end, '\t');
        const TimePoint reference = ref == "-" ? kReference : *TimePoint::parse(ref);
        INFO("row: " << surface << " @ " << reference.to_string());
        const Interval got = normalize_first(tagger, surface, reference);
        CHECK(got.begin->to_string() == begin);
        CHECK(got.end->to_string() == end);
        ++rows;
    }
    CHECK(rows >= 25);
}

TEST_CASE("a fully written date normalizes to its day interval") {
    RuleTagger tagger;
    const auto spans = tagger.tag(std::string("May 2nd, 2016"));
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].type == TimexType::Date);
    const auto iv = normalize(spans[0], kReference);
    CHECK(iv.begin->to_string() == "2016-05-02");
    CHECK(iv.end->to_string() == "2016-05-02");
}

TEST_CASE("empty input tags nothing") {
    RuleTagger tagger;
    CHECK(tagger.tag(std::string("")).empty());
    CHECK(tagger.tag(std::string("no dates here")).empty());
}

TEST_CASE("last year resolves against the reference date") {
    RuleTagger tagger;
    // hand table: one reference per row, expectation worked out on paper
    const std::pair<const char*, int> refs[12] = {
        {"2018-01-15", 2017}, {"2017-06-30", 2016}, {"2000-12-31", 1999},
        {"1999-01-01", 1998}, {"2016-02-29", 2015}, {"2020-07-04", 2019},
        {"1995-03-15", 1994}, {"2004-10-01", 2003}, {"2010-05-20", 2009},
        {"2013-11-11", 2012}, {"1987-08-09", 1986}, {"2021-04-22", 2020},
    };
    for (const auto& [ref, year] : refs) {
        const Interval iv = normalize_first(tagger, "last year", *TimePoint::parse(ref));
        CHECK(iv.begin->to_string() == std::to_string(year) + "-01-01");
        CHECK(iv.end->to_string() == std::to_string(year) + "-12-31");
    }
}

TEST_CASE("durations and sets are recognized but not normalizable") {
    RuleTagger tagger;
    const auto durations = tagger.tag(std::string("two years"));
    REQUIRE(durations.size() == 1);
    CHECK(durations[0].type == TimexType::Duration);
    CHECK_THROWS_AS(normalize(durations[0], kReference), UnnormalizableExpression);

    const auto sets = tagger.tag(std::string("every monday"));
    REQUIRE(sets.size() == 1);
    CHECK(sets[0].type == TimexType::Set);
    CHECK_THROWS_AS(normalize(sets[0], kReference), UnnormalizableExpression);
}

TEST_CASE("clock times normalize to the reference day") {
    RuleTagger tagger;
    const auto spans = tagger.tag(std::string("9 pm"));
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].type == TimexType::Time);
    const auto iv = normalize(spans[0], kReference);
    CHECK(iv.begin->to_string() == "2018-01-15");
    CHECK(iv.end->to_string() == "2018-01-15");
}

TEST_CASE("tagger spans never overlap and reproduce the input surface") {
    const auto store = toy_store();
    const auto events = build_event_dictionary(store);
    RuleTagger tagger(&events);
    const char* samples[] = {
        "may 2nd, 2016 and 2013 and every monday",
        "south africa world cup in june 2010",
        "before 2014 after the 1990s during two years",
        "from 2013-06-03 until may 2016 at 9 pm",
    };
    for (const char* text : samples) {
        const auto tokens = tokenize(text);
        const auto spans = tagger.tag(tokens);
        for (std::size_t i = 0; i < spans.size(); ++i) {
            for (std::size_t j = i + 1; j < spans.size(); ++j)
                CHECK_FALSE(spans[i].range.overlaps(spans[j].range));
            std::string expected;
            for (int k = spans[i].range.first; k < spans[i].range.last; ++k) {
                if (!expected.empty()) expected += ' ';
                expected += tokens[k].surface;
            }
            CHECK(spans[i].surface == expected);
        }
    }
}

TEST_CASE("event dictionary from the toy KB") {
    const auto store = toy_store();
    std::vector<std::string> log;
    const auto events = build_event_dictionary(store, &log);
    CHECK(events.size() == 3);  // three aliases of one event entity
    const auto* entry = events.lookup("south africa world cup");
    REQUIRE(entry != nullptr);
    CHECK(entry->event_id == "world_cup_2010");
    CHECK(entry->scope.begin->to_string() == "2010-06-11");
    CHECK(entry->scope.end->to_string() == "2010-07-11");
    CHECK(log.empty());
}

TEST_CASE("event tagging uses longest dictionary match") {
    const auto store = toy_store();
    const auto events = build_event_dictionary(store);
    RuleTagger tagger(&events);
    const auto spans = tagger.tag(std::string("where did neymar play during 2010 fifa world cup"));
    REQUIRE_FALSE(spans.empty());
    CHECK(spans[0].type == TimexType::Event);
    CHECK(spans[0].surface == "2010 fifa world cup");  // beats the bare year rule
    CHECK(spans[0].normalized->begin->to_string() == "2010-06-11");
}

TEST_CASE("no event-typed entities gives an empty dictionary") {
    const auto store = parse_kb("E\tx\tsome thing\tperson\n");
    CHECK(build_event_dictionary(store).empty());
}

TEST_CASE("duplicate surface forms keep the earliest entry and log") {
    const std::string kb_text =
        "E\tevent_a\tthe big game\ttime.event\n"
        "E\tevent_b\tthe big game|big game\ttime.event\n"
        "P\tevent.startDate\ttemporal:yes\trole:begin\n"
        "P\tevent.endDate\ttemporal:yes\trole:end\n"
        "F\tevent_a\tevent.startDate\t2001-01-01\t-\n"
        "F\tevent_a\tevent.endDate\t2001-01-02\t-\n"
        "F\tevent_b\tevent.startDate\t2002-01-01\t-\n"
        "F\tevent_b\tevent.endDate\t2002-01-02\t-\n";
    std::vector<std::string> log;
    const auto events = build_event_dictionary(parse_kb(kb_text), &log);
    CHECK(events.size() == 2);  // "the big game" once, "big game" once
    CHECK(events.lookup("the big game")->event_id == "event_a");
    REQUIRE(log.size() == 1);
    CHECK(log[0].find("duplicate surface form") != std::string::npos);
}

TEST_CASE("an event entity without a time scope is skipped") {
    const std::string kb_text = "E\tevent_x\tmystery festival\ttime.event\n";
    std::vector<std::string> log;
    const auto events = build_event_dictionary(parse_kb(kb_text), &log);
    CHECK(events.empty());
    REQUIRE(log.size() == 1);
    CHECK(log[0].find("without resolvable time scope") != std::string::npos);
}

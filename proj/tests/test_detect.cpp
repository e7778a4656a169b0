#include <fstream>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "tqa/annotate.hpp"
#include "tqa/detect.hpp"

using namespace tqa;

namespace {

std::string data_path(const char* name) {
    return std::string(TQA_SOURCE_DIR) + "/data/" + name;
}

struct Fixture {
    KBStore store;
    EventDictionary events;
    SignalDictionary signals;
    OrdinalDictionary ordinals;
    RuleTagger tagger;
    Annotator annotator;

    Fixture()
        : store(load_kb(data_path("toy.kb"))),
          events(build_event_dictionary(store)),
          signals(SignalDictionary::builtin()),
          ordinals(OrdinalDictionary::builtin()),
          tagger(&events),
          annotator(&store, &tagger, &signals, &ordinals, TimePoint(2018, 1, 15)) {}

    DetectionResult run(const std::string& question) const {
        return detect(annotator.annotate(question), events);
    }
};

const Fixture& fixture() {
    static const Fixture f;
    return f;
}

}  // namespace

TEST_CASE("a signal clause makes a question temporal") {
    const auto r = fixture().run("Which teams did Neymar play for before joining PSG?");
    CHECK(r.is_temporal);
    CHECK(r.cues.count(Cue::Signal) == 1);
    CHECK(r.signal_word == "before");
}

TEST_CASE("a when-question is temporal through its answer type alone") {
    const auto r = fixture().run("When did Neymar join PSG?");
    CHECK(r.is_temporal);
    CHECK(r.cues == std::set<Cue>{Cue::TemporalAnswerType});
}

TEST_CASE("a signal word in relational usage does not fire") {
    const auto r = fixture().run("After whom did Neymar's sister choose her last name?");
    CHECK_FALSE(r.is_temporal);
    CHECK(r.cues.empty());
}

TEST_CASE("signal dictionary lookups") {
    const auto signals = load_signal_dictionary();
    CHECK(signals.lookup("prior to") == TemporalRelation::before());
    CHECK(signals.lookup("while") ==
          TemporalRelation::overlap(OverlapRow::DuringWhileWhen));
    CHECK(signals.lookup("since") == TemporalRelation::overlap(OverlapRow::SinceUntilIn));
    CHECK(signals.lookup("at the same time as") ==
          TemporalRelation::overlap(OverlapRow::SameTimeAs));
    CHECK_FALSE(signals.lookup("banana").has_value());
}

TEST_CASE("the shipped signal file matches the builtin table") {
    const auto from_file = SignalDictionary::load(data_path("signals.tsv"));
    const auto builtin = SignalDictionary::builtin();
    for (const auto& [phrase, rel] : builtin.entries()) {
        INFO(phrase);
        CHECK(from_file.lookup(phrase) == rel);
    }
}

TEST_CASE("malformed dictionary files are configuration errors") {
    const std::string path = "/tmp/tqa_bad_signals.tsv";
    {
        std::ofstream out(path);
        out << "before BEFORE\n";  // space, not tab
    }
    CHECK_THROWS_AS(SignalDictionary::load(path), ConfigError);
    {
        std::ofstream out(path);
        out << "before\tSIDEWAYS\n";
    }
    CHECK_THROWS_AS(SignalDictionary::load(path), ConfigError);
    CHECK_THROWS_AS(SignalDictionary::load("/nonexistent/signals.tsv"), ConfigError);
}

TEST_CASE("ordinal dictionary lookups") {
    const auto ordinals = OrdinalDictionary::builtin();
    CHECK(ordinals.lookup("first") == OrdinalKind::first());
    CHECK(ordinals.lookup("last") == OrdinalKind::last());
    CHECK(ordinals.lookup("second") == OrdinalKind::nth(2));
    CHECK(ordinals.lookup("3rd") == OrdinalKind::nth(3));
    CHECK_FALSE(ordinals.lookup("banana").has_value());
    const auto from_file = OrdinalDictionary::load(data_path("ordinals.tsv"));
    CHECK(from_file.lookup("seventh") == OrdinalKind::nth(7));
}

TEST_CASE("locative 'in' is not a signal") {
    const auto r = fixture().run("what position does neymar play in barcelona?");
    CHECK_FALSE(r.is_temporal);
    // but 'in' before a date is
    const auto t = fixture().run("which team did neymar play for in 2010?");
    CHECK(t.is_temporal);
    CHECK(t.cues.count(Cue::Signal) == 1);
    CHECK(t.cues.count(Cue::Timex) == 1);
}

TEST_CASE("event mentions are cues") {
    const auto r = fixture().run("where did neymar play during south africa world cup?");
    CHECK(r.is_temporal);
    CHECK(r.cues.count(Cue::Event) == 1);
    CHECK(r.cues.count(Cue::Signal) == 1);
}

TEST_CASE("ordinals over entity-bearing noun phrases are cues") {
    const auto r = fixture().run("who was the first spouse of julia roberts?");
    CHECK(r.is_temporal);
    CHECK(r.cues.count(Cue::Ordinal) == 1);
    CHECK(r.ordinal == OrdinalKind::first());
    // "last name" has no entity in its noun phrase
    const auto n = fixture().run("what was her last name?");
    CHECK_FALSE(n.is_temporal);
}

TEST_CASE("detection is deterministic") {
    const std::string q = "which teams did neymar play for before joining psg?";
    const auto a = fixture().run(q);
    const auto b = fixture().run(q);
    CHECK(a.is_temporal == b.is_temporal);
    CHECK(a.cues == b.cues);
    CHECK(a.signal_word == b.signal_word);
}

TEST_CASE("adding a timex span never flips a temporal question to false") {
    const char* questions[] = {
        "which teams did neymar play for before joining psg?",
        "when did neymar join psg?",
        "who was the first spouse of julia roberts?",
    };
    for (const char* q : questions) {
        auto annotated = fixture().annotator.annotate(q);
        REQUIRE(detect(annotated, fixture().events).is_temporal);
        TemporalExpressionSpan extra;
        extra.range = TokenRange{0, 1};
        extra.type = TimexType::Date;
        extra.normalized = interval_from_point(TimePoint(1999));
        extra.surface = "1999";
        annotated.timex_spans.push_back(extra);
        CHECK(detect(annotated, fixture().events).is_temporal);
    }
}

TEST_CASE("the labeled mini-set classifies perfectly") {
    std::ifstream in(data_path("detect.bench"));
    REQUIRE(in.good());
    std::string line;
    int temporal = 0, nontemporal = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        REQUIRE(tab != std::string::npos);
        const std::string question = line.substr(0, tab);
        const std::string label = line.substr(tab + 1);
        const auto r = fixture().run(question);
        INFO(question << " cues=" << cues_to_string(r.cues));
        CHECK(r.is_temporal == (label == "temporal"));
        (label == "temporal" ? temporal : nontemporal)++;
    }
    CHECK(temporal == 20);
    CHECK(nontemporal == 10);
}

#pragma once

// Temporal-question detection: signal and ordinal dictionaries, answer-type
// patterns, and the cue-based decision over an annotated question.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tqa/errors.hpp"
#include "tqa/model.hpp"
#include "tqa/text.hpp"
#include "tqa/timex.hpp"

namespace tqa {

// ---------------------------------------------------------------------------
// Signal dictionary: phrase -> candidate temporal relation. Multi-word
// phrases are matched before single words.

class SignalDictionary {
public:
    static SignalDictionary builtin() {
        SignalDictionary d;
        d.add("before", TemporalRelation::before());
        d.add("prior to", TemporalRelation::before());
        d.add("after", TemporalRelation::after());
        d.add("following", TemporalRelation::after());
        d.add("during", TemporalRelation::overlap(OverlapRow::DuringWhileWhen));
        d.add("while", TemporalRelation::overlap(OverlapRow::DuringWhileWhen));
        d.add("when", TemporalRelation::overlap(OverlapRow::DuringWhileWhen));
        d.add("since", TemporalRelation::overlap(OverlapRow::SinceUntilIn));
        d.add("until", TemporalRelation::overlap(OverlapRow::SinceUntilIn));
        d.add("till", TemporalRelation::overlap(OverlapRow::SinceUntilIn));
        d.add("in", TemporalRelation::overlap(OverlapRow::SinceUntilIn));
        d.add("at the same time as", TemporalRelation::overlap(OverlapRow::SameTimeAs));
        return d;
    }

    // One entry per line: phrase<TAB>RELATION[:ROW], e.g.
    // "while<TAB>OVERLAP:DURING_WHILE_WHEN". '#' starts a comment.
    static SignalDictionary load(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open signal dictionary: " + path.string());
        SignalDictionary d;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            const std::size_t tab = line.find('\t');
            if (tab == std::string::npos)
                throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                                  ": expected phrase<TAB>relation");
            const std::string phrase = lower_ascii(line.substr(0, tab));
            const auto rel = parse_relation(line.substr(tab + 1));
            if (phrase.empty() || !rel)
                throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                                  ": malformed signal entry: " + line);
            d.add(phrase, *rel);
        }
        return d;
    }

    std::optional<TemporalRelation> lookup(const std::string& phrase) const {
        auto it = table_.find(lower_ascii(phrase));
        if (it == table_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t max_phrase_tokens() const { return max_tokens_; }
    const std::map<std::string, TemporalRelation>& entries() const { return table_; }

    void add(const std::string& phrase, TemporalRelation rel) {
        table_[phrase] = rel;
        max_tokens_ = std::max(max_tokens_, tokenize_words(phrase).size());
    }

    static std::optional<TemporalRelation> parse_relation(const std::string& spec) {
        if (spec == "BEFORE") return TemporalRelation::before();
        if (spec == "AFTER") return TemporalRelation::after();
        if (spec == "OVERLAP") return TemporalRelation::overlap(OverlapRow::SinceUntilIn);
        if (spec == "OVERLAP:DURING_WHILE_WHEN")
            return TemporalRelation::overlap(OverlapRow::DuringWhileWhen);
        if (spec == "OVERLAP:SINCE_UNTIL_IN")
            return TemporalRelation::overlap(OverlapRow::SinceUntilIn);
        if (spec == "OVERLAP:SAME_TIME_AS")
            return TemporalRelation::overlap(OverlapRow::SameTimeAs);
        return std::nullopt;
    }

private:
    std::map<std::string, TemporalRelation> table_;
    std::size_t max_tokens_ = 0;
};

// Convenience for the spec'd no-argument form.
inline SignalDictionary load_signal_dictionary() { return SignalDictionary::builtin(); }

// ---------------------------------------------------------------------------
// Ordinal dictionary

class OrdinalDictionary {
public:
    static OrdinalDictionary builtin() {
        OrdinalDictionary d;
        d.add("first", OrdinalKind::first());
        d.add("last", OrdinalKind::last());
        d.add("final", OrdinalKind::last());
        d.add("second", OrdinalKind::nth(2));
        d.add("third", OrdinalKind::nth(3));
        d.add("fourth", OrdinalKind::nth(4));
        d.add("fifth", OrdinalKind::nth(5));
        d.add("sixth", OrdinalKind::nth(6));
        d.add("seventh", OrdinalKind::nth(7));
        d.add("eighth", OrdinalKind::nth(8));
        d.add("ninth", OrdinalKind::nth(9));
        d.add("tenth", OrdinalKind::nth(10));
        return d;
    }

    // One entry per line: word<TAB>{FIRST|LAST|NTH:k}
    static OrdinalDictionary load(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open ordinal dictionary: " + path.string());
        OrdinalDictionary d;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            const std::size_t tab = line.find('\t');
            if (tab == std::string::npos)
                throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                                  ": expected word<TAB>kind");
            const std::string word = lower_ascii(line.substr(0, tab));
            const std::string kind = line.substr(tab + 1);
            if (kind == "FIRST") {
                d.add(word, OrdinalKind::first());
            } else if (kind == "LAST") {
                d.add(word, OrdinalKind::last());
            } else if (kind.rfind("NTH:", 0) == 0) {
                try {
                    d.add(word, OrdinalKind::nth(std::stoi(kind.substr(4))));
                } catch (const std::exception&) {
                    throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                                      ": bad NTH rank: " + kind);
                }
            } else {
                throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                                  ": malformed ordinal entry: " + line);
            }
        }
        return d;
    }

    // Digit ordinals ("2nd") resolve even without a table entry.
    std::optional<OrdinalKind> lookup(const std::string& word) const {
        auto it = table_.find(lower_ascii(word));
        if (it != table_.end()) return it->second;
        if (const int n = parse_ordinal_number(word); n > 0) {
            if (n == 1) return OrdinalKind::first();
            return OrdinalKind::nth(n);
        }
        return std::nullopt;
    }

    void add(const std::string& word, OrdinalKind kind) { table_[word] = kind; }

private:
    std::map<std::string, OrdinalKind> table_;
};

// ---------------------------------------------------------------------------
// Answer-type patterns

// Matches "when ...", "what date", "in what year", "which century", ...;
// the returned granularity drives date formatting of final answers
// (year-level patterns truncate day-level dates).
inline std::optional<Granularity> temporal_answer_type(const std::vector<Token>& tokens) {
    if (tokens.empty()) return std::nullopt;
    if (tokens[0].surface == "when") return Granularity::Day;
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        const std::string& a = tokens[i].surface;
        const std::string& b = tokens[i + 1].surface;
        if ((a == "what" || a == "which") && (b == "date" || b == "day" || b == "time"))
            return Granularity::Day;
        if ((a == "what" || a == "which") && b == "year") return Granularity::Year;
        if ((a == "what" || a == "which") && b == "century") return Granularity::Year;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Detection

enum class Cue { Timex, Event, Signal, Ordinal, TemporalAnswerType };

inline const char* to_string(Cue c) {
    switch (c) {
        case Cue::Timex: return "TIMEX";
        case Cue::Event: return "EVENT";
        case Cue::Signal: return "SIGNAL";
        case Cue::Ordinal: return "ORDINAL";
        case Cue::TemporalAnswerType: return "TEMPORAL_ANSWER_TYPE";
    }
    return "?";
}

struct DetectionResult {
    bool is_temporal = false;
    std::set<Cue> cues;
    std::optional<std::string> signal_word;
    std::optional<OrdinalKind> ordinal;
};

// Pure summary of the annotation layers; the heuristics live in the
// annotator. The event dictionary covers pre-annotated questions whose
// entity spans name an event but that carry no timex layer.
inline DetectionResult detect(const AnnotatedQuestion& q, const EventDictionary& events) {
    DetectionResult r;
    for (const auto& s : q.timex_spans) {
        if (s.type == TimexType::Event) {
            r.cues.insert(Cue::Event);
        } else {
            r.cues.insert(Cue::Timex);
        }
    }
    for (const auto& e : q.entity_spans) {
        std::string surface;
        for (int i = e.range.first; i < e.range.last; ++i) {
            if (!surface.empty()) surface += ' ';
            surface += q.tokens[i].surface;
        }
        if (events.lookup(surface)) r.cues.insert(Cue::Event);
    }
    if (q.signal_span) {
        r.cues.insert(Cue::Signal);
        r.signal_word = q.signal_span->word;
    }
    if (q.ordinal_span) {
        r.cues.insert(Cue::Ordinal);
        r.ordinal = q.ordinal_span->kind;
    }
    if (q.answer_type_temporal) r.cues.insert(Cue::TemporalAnswerType);
    r.is_temporal = !r.cues.empty();
    return r;
}

inline std::string cues_to_string(const std::set<Cue>& cues) {
    // fixed enum order: TIMEX,EVENT,SIGNAL,ORDINAL,TEMPORAL_ANSWER_TYPE
    static const Cue order[] = {Cue::Timex, Cue::Event, Cue::Signal, Cue::Ordinal,
                                Cue::TemporalAnswerType};
    std::string out;
    for (Cue c : order) {
        if (!cues.count(c)) continue;
        if (!out.empty()) out += ',';
        out += to_string(c);
    }
    return out;
}

}  // namespace tqa

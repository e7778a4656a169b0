#pragma once

// Builds AnnotatedQuestion values from raw question text: tokenization,
// coarse POS tags, entity linking against KB surface forms, substitution of
// third-person pronouns by the question's subject entity, temporal
// expression tagging, signal/ordinal span selection and answer-type
// patterns. Questions may also arrive pre-annotated; everything downstream
// consumes only AnnotatedQuestion.

#include <optional>
#include <string>
#include <vector>

#include "tqa/detect.hpp"
#include "tqa/kb.hpp"
#include "tqa/model.hpp"
#include "tqa/text.hpp"
#include "tqa/timex.hpp"

namespace tqa {

class Annotator {
public:
    Annotator(const KBStore* kb, const RuleTagger* tagger, const SignalDictionary* signals,
              const OrdinalDictionary* ordinals, TimePoint reference)
        : kb_(kb),
          tagger_(tagger),
          signals_(signals),
          ordinals_(ordinals),
          reference_(reference) {}

    AnnotatedQuestion annotate(const std::string& text) const {
        AnnotatedQuestion q;
        q.text = lower_ascii(text);
        auto words = tokenize_words(text);
        q.tokens = make_tokens(words);
        q.entity_spans = link_entities(q.tokens, *kb_);

        substitute_pronouns(q, words);

        q.timex_spans = tag_and_normalize(*tagger_, q.tokens, reference_);
        q.signal_span = pick_signal_span(q);
        q.ordinal_span = pick_ordinal_span(q);
        if (const auto g = temporal_answer_type(q.tokens)) {
            q.answer_type_temporal = true;
            q.answer_granularity = g;
        }
        return q;
    }

    const TimePoint& reference() const { return reference_; }

private:
    // "he joined barcelona" -> "neymar joined barcelona": nominative and
    // object third-person pronouns take the question's subject entity (the
    // first linked span). Possessives stay untouched; resolving them needs
    // real coreference.
    void substitute_pronouns(AnnotatedQuestion& q, std::vector<std::string>& words) const {
        static const std::unordered_set<std::string> substitutable = {"he", "she", "they",
                                                                      "him", "them"};
        if (q.entity_spans.empty()) return;
        const EntitySpan& subject = q.entity_spans.front();
        std::vector<std::string> subject_words;
        for (int i = subject.range.first; i < subject.range.last; ++i)
            subject_words.push_back(strip_possessive(q.tokens[i].surface));

        bool changed = false;
        std::vector<std::string> out;
        for (const auto& t : q.tokens) {
            const bool in_entity =
                std::any_of(q.entity_spans.begin(), q.entity_spans.end(),
                            [&](const EntitySpan& s) { return s.range.contains(t.index); });
            if (!in_entity && substitutable.count(t.surface)) {
                out.insert(out.end(), subject_words.begin(), subject_words.end());
                changed = true;
            } else {
                out.push_back(t.surface);
            }
        }
        if (!changed) return;
        words = std::move(out);
        q.tokens = make_tokens(words);
        q.entity_spans = link_entities(q.tokens, *kb_);
        std::string rebuilt;
        for (const auto& w : words) {
            if (!rebuilt.empty()) rebuilt += ' ';
            rebuilt += w;
        }
        q.text = rebuilt + "?";
    }

    bool covered_by_date_or_event(const AnnotatedQuestion& q, int index) const {
        for (const auto& s : q.timex_spans)
            if (s.range.contains(index) &&
                (s.type == TimexType::Date || s.type == TimexType::Time ||
                 s.type == TimexType::Event))
                return true;
        return false;
    }

    // Longest-match signal phrases filtered by temporal-usage heuristics;
    // with several surviving candidates the leftmost clause-introducing one
    // wins, falling back to the leftmost overall.
    std::optional<SignalSpan> pick_signal_span(const AnnotatedQuestion& q) const {
        const int n = static_cast<int>(q.tokens.size());
        std::vector<SignalSpan> candidates;
        int i = 0;
        while (i < n) {
            std::optional<SignalSpan> match;
            const int max_len = std::min<int>(static_cast<int>(signals_->max_phrase_tokens()),
                                              n - i);
            for (int len = max_len; len >= 1 && !match; --len) {
                std::string phrase;
                for (int k = i; k < i + len; ++k) {
                    if (!phrase.empty()) phrase += ' ';
                    phrase += q.tokens[k].surface;
                }
                if (signals_->lookup(phrase))
                    match = SignalSpan{TokenRange{i, i + len}, phrase};
            }
            if (!match) {
                ++i;
                continue;
            }
            if (signal_in_temporal_usage(q, *match)) candidates.push_back(*match);
            i = match->range.last;
        }
        if (candidates.empty()) return std::nullopt;
        for (const auto& c : candidates)
            if (clause_follows(q, c)) return c;
        return candidates.front();
    }

    bool signal_in_temporal_usage(const AnnotatedQuestion& q, const SignalSpan& s) const {
        const int next = s.range.last;
        const int n = static_cast<int>(q.tokens.size());
        // "when" at the start asks for a date; it is not a relation cue
        if (s.word == "when" && s.range.first == 0) return false;
        // "after whom", "before who": relational, not temporal
        if (next < n && q.tokens[next].pos == Pos::Wh) return false;
        // a possessive phrase with no clause after it ("after neymar's
        // sister") is not a temporal constraint
        if (next < n && ends_with(q.tokens[next].surface, "'s")) {
            bool verb_after = false;
            for (int k = next; k < n; ++k)
                if (q.tokens[k].pos == Pos::Verb) verb_after = true;
            if (!verb_after) return false;
        }
        // "in" is temporal only before a date or event mention
        if (s.word == "in") {
            int k = next;
            while (k < n && q.tokens[k].pos == Pos::Det) ++k;
            if (k >= n || !covered_by_date_or_event(q, k)) return false;
        }
        return true;
    }

    // The fragment after the signal is clausal when it contains tokens that
    // are not part of a date expression (a bare "before 2013" is an
    // explicit-date constraint, not a clause).
    bool clause_follows(const AnnotatedQuestion& q, const SignalSpan& s) const {
        const int n = static_cast<int>(q.tokens.size());
        for (int k = s.range.last; k < n; ++k) {
            bool in_date = false;
            for (const auto& t : q.timex_spans)
                if (t.range.contains(k) &&
                    (t.type == TimexType::Date || t.type == TimexType::Time))
                    in_date = true;
            if (!in_date) return true;
        }
        return false;
    }

    // An ordinal word counts only when it modifies an entity-bearing noun
    // phrase: a linked entity a couple of tokens to its left (possessor) or
    // a few tokens to its right, with no verb in between.
    std::optional<OrdinalSpan> pick_ordinal_span(const AnnotatedQuestion& q) const {
        const int n = static_cast<int>(q.tokens.size());
        for (int i = 0; i < n; ++i) {
            bool in_timex = false;
            for (const auto& t : q.timex_spans)
                if (t.range.contains(i)) in_timex = true;
            if (in_timex) continue;
            const auto kind = ordinals_->lookup(q.tokens[i].surface);
            if (!kind) continue;
            for (const auto& e : q.entity_spans) {
                if (e.range.last <= i) {
                    if (i - e.range.last > 2) continue;
                    bool verb_between = false;
                    for (int k = e.range.last; k < i; ++k)
                        if (q.tokens[k].pos == Pos::Verb || q.tokens[k].pos == Pos::Aux)
                            verb_between = true;
                    if (!verb_between) return OrdinalSpan{TokenRange{i, i + 1}, *kind};
                } else if (e.range.first > i) {
                    if (e.range.first - i > 5) continue;
                    bool verb_between = false;
                    for (int k = i + 1; k < e.range.first; ++k)
                        if (q.tokens[k].pos == Pos::Verb || q.tokens[k].pos == Pos::Aux)
                            verb_between = true;
                    if (!verb_between) return OrdinalSpan{TokenRange{i, i + 1}, *kind};
                }
            }
        }
        return std::nullopt;
    }

    const KBStore* kb_;
    const RuleTagger* tagger_;
    const SignalDictionary* signals_;
    const OrdinalDictionary* ordinals_;
    TimePoint reference_;
};

}  // namespace tqa

#pragma once

// End-to-end orchestration: annotate -> detect -> decompose -> answer
// sub-questions -> retrieve time scopes -> filter by constraints -> apply
// ordinal. Non-temporal questions pass straight to the backend. A stage
// failure yields an empty answer set plus diagnostics, never a crash.
//
// The pipeline is immutable after construction apart from the backend
// handle (an external backend is a single-flight subprocess), so questions
// may be answered from one thread at a time per pipeline instance.

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tqa/annotate.hpp"
#include "tqa/backend.hpp"
#include "tqa/decompose.hpp"
#include "tqa/detect.hpp"
#include "tqa/errors.hpp"
#include "tqa/kb.hpp"
#include "tqa/model.hpp"
#include "tqa/reason.hpp"
#include "tqa/timex.hpp"

namespace tqa {

struct PipelineConfig {
    std::filesystem::path kb_path;
    std::optional<std::filesystem::path> embeddings_path;
    std::optional<std::filesystem::path> signals_path;
    std::optional<std::filesystem::path> ordinals_path;
    std::optional<std::filesystem::path> event_aliases_path;
    // Relative expressions resolve against this date, never the wall clock.
    TimePoint reference_date = TimePoint(2018, 1, 15);
    // "builtin" or "cmd:<shell command>"
    std::string backend = "builtin";
};

struct PipelineResult {
    AnswerSet answers;
    DetectionResult detection;
    std::optional<DecompositionResult> decomposition;
    std::vector<std::string> diagnostics;
};

class Pipeline {
public:
    explicit Pipeline(const PipelineConfig& config) : config_(config) {
        store_ = load_kb(config.kb_path);
        if (config.embeddings_path) embeddings_ = Embeddings::load(*config.embeddings_path);
        signals_ = config.signals_path ? SignalDictionary::load(*config.signals_path)
                                       : SignalDictionary::builtin();
        ordinals_ = config.ordinals_path ? OrdinalDictionary::load(*config.ordinals_path)
                                         : OrdinalDictionary::builtin();
        events_ = build_event_dictionary(store_, &dictionary_log_);
        if (config.event_aliases_path) {
            alias_store_ = load_kb(*config.event_aliases_path);
            const auto extra = build_event_dictionary(*alias_store_, &dictionary_log_);
            for (const auto& [surface, entry] : extra.entries())
                if (!events_.add(surface, entry))
                    dictionary_log_.push_back("duplicate alias surface ignored: " + surface);
        }
        tagger_ = std::make_unique<RuleTagger>(&events_);
        annotator_ = std::make_unique<Annotator>(&store_, tagger_.get(), &signals_, &ordinals_,
                                                 config.reference_date);
        if (config.backend == "builtin") {
            backend_ = std::make_unique<BuiltinBackend>(
                &store_, embeddings_ ? &*embeddings_ : nullptr);
        } else if (config.backend.rfind("cmd:", 0) == 0) {
            backend_ = std::make_unique<ExternalProcessBackend>(config.backend.substr(4));
        } else {
            throw ConfigError("unknown backend selector: " + config.backend);
        }
    }

    Pipeline(const Pipeline&) = delete;
    Pipeline& operator=(const Pipeline&) = delete;

    const KBStore& store() const { return store_; }
    const EventDictionary& events() const { return events_; }
    const SignalDictionary& signals() const { return signals_; }
    const Annotator& annotator() const { return *annotator_; }
    const std::vector<std::string>& dictionary_log() const { return dictionary_log_; }

    AnnotatedQuestion annotate(const std::string& question) const {
        return annotator_->annotate(question);
    }

    DetectionResult detect_question(const std::string& question) const {
        return detect(annotate(question), events_);
    }

    DecompositionResult decompose_question(const std::string& question) const {
        return decompose(annotate(question), signals_);
    }

    PipelineResult answer_question(const std::string& question) {
        PipelineResult result;
        std::string stage = "annotate";
        try {
            const AnnotatedQuestion annotated = annotator_->annotate(question);

            stage = "detect";
            result.detection = detect(annotated, events_);
            if (!result.detection.is_temporal) {
                stage = "answer";
                auto backend_result = ask(annotated.text, AnswerKind::Entity);
                append(result.diagnostics, backend_result.diagnostics);
                result.answers = std::move(backend_result.answers);
                return result;
            }

            stage = "decompose";
            result.decomposition = decompose(annotated, signals_);
            const DecompositionResult& decomp = *result.decomposition;

            stage = "answer";
            const AnswerKind kind =
                annotated.answer_type_temporal ? AnswerKind::Date : AnswerKind::Entity;
            std::vector<AnswerSet> candidate_sets;
            std::string question_entity;
            for (const auto& sq : decomp.nontemporal_subquestions) {
                auto backend_result = ask(sq, kind);
                append(result.diagnostics, backend_result.diagnostics);
                if (question_entity.empty() && !backend_result.resolved_entities.empty())
                    question_entity = backend_result.resolved_entities.front();
                candidate_sets.push_back(std::move(backend_result.answers));
                if (question_entity.empty()) {
                    // external backends do not report entities; link locally
                    const auto spans = link_entities(tokenize(sq), store_);
                    if (!spans.empty()) question_entity = spans.front().entity_id;
                }
            }
            AnswerSet candidates = intersect(candidate_sets);

            std::vector<ConstraintSpec> constraints;
            if (decomp.temporal_subquestion) {
                auto backend_result = ask(*decomp.temporal_subquestion, AnswerKind::Date);
                append(result.diagnostics, backend_result.diagnostics);
                std::vector<TemporalResult> dates;
                for (const auto& a : backend_result.answers.answers)
                    if (const auto* tp = std::get_if<TimePoint>(&a.value)) dates.push_back(*tp);
                constraints.push_back(
                    ConstraintSpec{*decomp.relation, cast_results_to_interval(dates)});
            }
            for (const auto& tc : decomp.timex_constraints)
                constraints.push_back(ConstraintSpec{tc.relation, tc.interval});

            stage = "scope";
            const bool needs_scopes =
                (!constraints.empty() || decomp.ordinal) && kind == AnswerKind::Entity;
            if (needs_scopes) {
                for (auto& a : candidates.answers) {
                    if (!a.time_scopes.empty()) continue;
                    a.time_scopes = retrieve_time_scope(store_, question_entity, a.value,
                                                        a.predicates,
                                                        embeddings_ ? &*embeddings_ : nullptr);
                    if (a.time_scopes.empty()) {
                        a.unscoped = true;
                        result.diagnostics.push_back("NoScopeFound: candidate " +
                                                     answer_key(a.value) + " has no time scope");
                    }
                }
            }

            stage = "reason";
            for (const auto& c : constraints)
                candidates = filter_candidates(candidates, c, &result.diagnostics);
            if (decomp.ordinal) {
                AnswerSet scoped;
                for (const auto& a : candidates.answers) {
                    if (a.time_scopes.empty()) {
                        result.diagnostics.push_back("unscoped candidate skipped by ordinal: " +
                                                     answer_key(a.value));
                    } else {
                        scoped.answers.push_back(a);
                    }
                }
                candidates = apply_ordinal(scoped, *decomp.ordinal);
            }

            if (annotated.answer_granularity == Granularity::Year) truncate_years(candidates);
            result.answers = std::move(candidates);
        } catch (const Error& e) {
            result.diagnostics.push_back(stage + ": " + e.what());
            result.answers = {};
        } catch (const std::exception& e) {
            result.diagnostics.push_back(stage + ": unexpected error: " + std::string(e.what()));
            result.answers = {};
        }
        return result;
    }

private:
    BackendResult ask(const std::string& question, AnswerKind kind) {
        BackendQuery query;
        query.id = ++query_id_;
        query.question = question;
        query.kind = kind;
        return backend_->answer(query);
    }

    static void append(std::vector<std::string>& into, const std::vector<std::string>& from) {
        into.insert(into.end(), from.begin(), from.end());
    }

    // "in what year" answers report years, not full dates
    static void truncate_years(AnswerSet& set) {
        AnswerSet out;
        for (const auto& a : set.answers) {
            Answer copy = a;
            if (const auto* tp = std::get_if<TimePoint>(&a.value)) copy.value = TimePoint(tp->year);
            const std::string key = answer_key(copy.value);
            bool dup = false;
            for (const auto& existing : out.answers)
                if (answer_key(existing.value) == key) dup = true;
            if (!dup) out.answers.push_back(std::move(copy));
        }
        set = std::move(out);
    }

    PipelineConfig config_;
    KBStore store_;
    std::optional<KBStore> alias_store_;
    std::optional<Embeddings> embeddings_;
    SignalDictionary signals_;
    OrdinalDictionary ordinals_;
    EventDictionary events_;
    std::vector<std::string> dictionary_log_;
    std::unique_ptr<RuleTagger> tagger_;
    std::unique_ptr<Annotator> annotator_;
    std::unique_ptr<QaBackend> backend_;
    int query_id_ = 0;
};

}  // namespace tqa

// Command-line front end: detect / decompose / answer / eval subcommands
// over a temporal knowledge base. Output is line-oriented and
// deterministic; --json switches to structured output.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tqa/tqa.hpp"

namespace {

using nlohmann::json;

struct CommonOptions {
    std::string kb;
    std::string embeddings;
    std::string signals;
    std::string ordinals;
    std::string event_aliases;
    std::string reference_date = "2018-01-15";
    std::string backend = "builtin";
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--kb", opt.kb, "KB file")->required();
    cmd->add_option("--embeddings", opt.embeddings, "word embedding file");
    cmd->add_option("--signals", opt.signals, "signal dictionary file");
    cmd->add_option("--ordinals", opt.ordinals, "ordinal dictionary file");
    cmd->add_option("--event-aliases", opt.event_aliases,
                    "extra event entities (KB file format)");
    cmd->add_option("--reference-date", opt.reference_date,
                    "reference date for relative expressions (ISO-8601)");
    cmd->add_option("--backend", opt.backend, "builtin or cmd:<shell command>");
}

tqa::PipelineConfig make_config(const CommonOptions& opt) {
    tqa::PipelineConfig config;
    config.kb_path = opt.kb;
    if (!opt.embeddings.empty()) config.embeddings_path = opt.embeddings;
    if (!opt.signals.empty()) config.signals_path = opt.signals;
    if (!opt.ordinals.empty()) config.ordinals_path = opt.ordinals;
    if (!opt.event_aliases.empty()) config.event_aliases_path = opt.event_aliases;
    const auto ref = tqa::TimePoint::parse(opt.reference_date);
    if (!ref) throw tqa::ConfigError("bad --reference-date: " + opt.reference_date);
    config.reference_date = *ref;
    config.backend = opt.backend;
    return config;
}

json interval_to_json(const tqa::Interval& iv) {
    json j;
    j["begin"] = iv.begin ? json(iv.begin->to_string()) : json(nullptr);
    j["end"] = iv.end ? json(iv.end->to_string()) : json(nullptr);
    return j;
}

json answers_to_json(const tqa::AnswerSet& set) {
    json arr = json::array();
    for (const auto& a : set.answers) {
        json item;
        item["value"] = tqa::answer_key(a.value);
        json scopes = json::array();
        for (const auto& s : a.time_scopes) scopes.push_back(interval_to_json(s));
        item["time_scopes"] = scopes;
        item["predicates"] = a.predicates;
        arr.push_back(item);
    }
    return arr;
}

int run_detect(const CommonOptions& opt, const std::string& question, bool as_json) {
    tqa::Pipeline pipeline(make_config(opt));
    const auto result = pipeline.detect_question(question);
    if (as_json) {
        json j;
        j["question"] = tqa::lower_ascii(question);
        j["temporal"] = result.is_temporal;
        j["cues"] = tqa::cues_to_string(result.cues);
        if (result.signal_word) j["signal"] = *result.signal_word;
        if (result.ordinal) j["ordinal"] = tqa::to_string(*result.ordinal);
        std::cout << j.dump() << "\n";
        return 0;
    }
    std::cout << "temporal=" << (result.is_temporal ? "true" : "false")
              << " cues=" << tqa::cues_to_string(result.cues);
    if (result.signal_word) std::cout << " signal=" << *result.signal_word;
    if (result.ordinal) std::cout << " ordinal=" << tqa::to_string(*result.ordinal);
    std::cout << "\n";
    return 0;
}

int run_decompose(const CommonOptions& opt, const std::string& question, bool as_json) {
    tqa::Pipeline pipeline(make_config(opt));
    const auto result = pipeline.decompose_question(question);
    if (as_json) {
        json j;
        j["question"] = tqa::lower_ascii(question);
        j["case"] = tqa::to_string(result.case_used);
        j["subquestion1"] = result.nontemporal_subquestions;
        if (result.temporal_subquestion) j["subquestion2"] = *result.temporal_subquestion;
        if (result.relation) j["relation"] = tqa::to_string(*result.relation);
        if (result.ordinal) j["ordinal"] = tqa::to_string(*result.ordinal);
        json constraints = json::array();
        for (const auto& tc : result.timex_constraints) {
            json c;
            c["interval"] = interval_to_json(tc.interval);
            c["relation"] = tqa::to_string(tc.relation);
            c["surface"] = tc.surface;
            constraints.push_back(c);
        }
        j["timex_constraints"] = constraints;
        std::cout << j.dump() << "\n";
        return 0;
    }
    for (const auto& sq : result.nontemporal_subquestions)
        std::cout << "subquestion1: " << sq << "\n";
    if (result.temporal_subquestion)
        std::cout << "subquestion2: " << *result.temporal_subquestion << "\n";
    if (result.relation) std::cout << "relation: " << tqa::to_string(*result.relation) << "\n";
    if (result.ordinal) std::cout << "ordinal: " << tqa::to_string(*result.ordinal) << "\n";
    for (const auto& tc : result.timex_constraints)
        std::cout << "constraint: " << tc.interval.to_string() << " "
                  << tqa::to_string(tc.relation) << " (" << tc.surface << ")\n";
    std::cout << "case: " << tqa::to_string(result.case_used) << "\n";
    return 0;
}

int run_answer(const CommonOptions& opt, const std::string& question, bool as_json) {
    tqa::Pipeline pipeline(make_config(opt));
    auto result = pipeline.answer_question(question);
    if (as_json) {
        json j;
        j["question"] = tqa::lower_ascii(question);
        j["temporal"] = result.detection.is_temporal;
        j["cues"] = tqa::cues_to_string(result.detection.cues);
        j["answers"] = answers_to_json(result.answers);
        j["diagnostics"] = result.diagnostics;
        std::cout << j.dump() << "\n";
        return 0;
    }
    for (const auto& a : result.answers.answers) std::cout << tqa::answer_key(a.value) << "\n";
    for (const auto& d : result.diagnostics) std::cerr << "note: " << d << "\n";
    return 0;
}

int run_eval(const CommonOptions& opt, const std::string& benchmark_path, bool as_json) {
    tqa::Pipeline pipeline(make_config(opt));
    const auto items = tqa::load_benchmark(benchmark_path);
    std::vector<std::set<std::string>> predictions;
    std::vector<json> question_rows;
    for (const auto& item : items) {
        auto result = pipeline.answer_question(item.question);
        predictions.push_back(result.answers.keys());
        for (const auto& d : result.diagnostics)
            std::cerr << "note: " << item.question << ": " << d << "\n";
        json row;
        row["question"] = item.question;
        row["category"] = tqa::to_string(item.category);
        row["predicted"] = predictions.back();
        row["gold"] = item.gold;
        question_rows.push_back(row);
    }
    const auto report = tqa::evaluate(predictions, items);

    if (as_json) {
        json j;
        json per_question = json::array();
        for (std::size_t i = 0; i < items.size(); ++i) {
            question_rows[i]["precision"] = report.per_question[i].precision;
            question_rows[i]["recall"] = report.per_question[i].recall;
            question_rows[i]["f1"] = report.per_question[i].f1;
            per_question.push_back(question_rows[i]);
        }
        j["questions"] = per_question;
        json categories;
        for (const auto& [category, mean] : report.category_means) {
            json c;
            c["n"] = report.category_counts.at(category);
            c["precision"] = mean.precision;
            c["recall"] = mean.recall;
            c["f1"] = mean.f1;
            categories[tqa::to_string(category)] = c;
        }
        j["categories"] = categories;
        j["aggregate"] = {{"precision", report.aggregate.precision},
                          {"recall", report.aggregate.recall},
                          {"f1", report.aggregate.f1}};
        std::cout << j.dump() << "\n";
        return 0;
    }

    std::printf("%-16s %4s %10s %8s %8s\n", "category", "n", "precision", "recall", "f1");
    for (const auto& [category, mean] : report.category_means)
        std::printf("%-16s %4zu %10.3f %8.3f %8.3f\n", tqa::to_string(category),
                    report.category_counts.at(category), mean.precision, mean.recall, mean.f1);
    std::printf("%-16s %4zu %10.3f %8.3f %8.3f\n", "aggregate", items.size(),
                report.aggregate.precision, report.aggregate.recall, report.aggregate.f1);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"temporal question answering over a knowledge base"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string question;
    std::string benchmark;
    bool as_json = false;

    auto* detect_cmd = app.add_subcommand("detect", "classify a question as temporal or not");
    add_common_flags(detect_cmd, opt);
    detect_cmd->add_option("--question", question, "question text")->required();
    detect_cmd->add_flag("--json", as_json, "JSON output");

    auto* decompose_cmd =
        app.add_subcommand("decompose", "split a temporal question into sub-questions");
    add_common_flags(decompose_cmd, opt);
    decompose_cmd->add_option("--question", question, "question text")->required();
    decompose_cmd->add_flag("--json", as_json, "JSON output");

    auto* answer_cmd = app.add_subcommand("answer", "answer a question end to end");
    add_common_flags(answer_cmd, opt);
    answer_cmd->add_option("--question", question, "question text")->required();
    answer_cmd->add_flag("--json", as_json, "JSON output");

    auto* eval_cmd = app.add_subcommand("eval", "run a benchmark file and report P/R/F1");
    add_common_flags(eval_cmd, opt);
    eval_cmd->add_option("--benchmark", benchmark, "benchmark file")->required();
    eval_cmd->add_flag("--json", as_json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (detect_cmd->parsed()) return run_detect(opt, question, as_json);
        if (decompose_cmd->parsed()) return run_decompose(opt, question, as_json);
        if (answer_cmd->parsed()) return run_answer(opt, question, as_json);
        if (eval_cmd->parsed()) return run_eval(opt, benchmark, as_json);
    } catch (const tqa::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tqa::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const tqa::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

#pragma once

// Evaluation protocol: per-question precision/recall/F1 against gold answer
// sets, means per question category, and an aggregate that averages the
// category means (over the categories present in the benchmark file).

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tqa/errors.hpp"
#include "tqa/model.hpp"
#include "tqa/text.hpp"

namespace tqa {

enum class Category { Explicit, Implicit, TemporalAnswer, Ordinal };

inline const char* to_string(Category c) {
    switch (c) {
        case Category::Explicit: return "explicit";
        case Category::Implicit: return "implicit";
        case Category::TemporalAnswer: return "temporal_answer";
        case Category::Ordinal: return "ordinal";
    }
    return "?";
}

inline std::optional<Category> parse_category(const std::string& s) {
    const std::string t = lower_ascii(s);
    if (t == "explicit") return Category::Explicit;
    if (t == "implicit") return Category::Implicit;
    if (t == "temporal_answer") return Category::TemporalAnswer;
    if (t == "ordinal") return Category::Ordinal;
    return std::nullopt;
}

struct BenchmarkItem {
    std::string question;
    std::set<std::string> gold;  // entity ids and ISO dates
    Category category = Category::Explicit;
};

// One item per line: question<TAB>gold1[|gold2...]<TAB>category
inline std::vector<BenchmarkItem> load_benchmark(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open benchmark file: " + path.string());
    std::vector<BenchmarkItem> items;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::size_t tab1 = line.find('\t');
        const std::size_t tab2 = tab1 == std::string::npos ? std::string::npos
                                                           : line.find('\t', tab1 + 1);
        if (tab2 == std::string::npos)
            throw ParseError(path.string() + ":" + std::to_string(lineno) +
                             ": expected question<TAB>gold<TAB>category");
        BenchmarkItem item;
        item.question = line.substr(0, tab1);
        std::size_t pos = tab1 + 1;
        while (pos <= tab2) {
            const std::size_t bar = std::min(line.find('|', pos), tab2);
            const std::string gold = line.substr(pos, bar - pos);
            if (!gold.empty()) item.gold.insert(gold);
            pos = bar + 1;
        }
        const auto category = parse_category(line.substr(tab2 + 1));
        if (!category)
            throw ParseError(path.string() + ":" + std::to_string(lineno) +
                             ": unknown category: " + line.substr(tab2 + 1));
        if (item.gold.empty())
            throw ParseError(path.string() + ":" + std::to_string(lineno) +
                             ": empty gold answer set");
        item.category = *category;
        items.push_back(std::move(item));
    }
    return items;
}

struct QuestionScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct EvalReport {
    std::vector<QuestionScore> per_question;
    std::map<Category, QuestionScore> category_means;
    std::map<Category, std::size_t> category_counts;
    QuestionScore aggregate;  // mean of the category means present
};

// P = |pred ∩ gold| / |pred| (0 on empty predictions), R = |pred ∩ gold| /
// |gold|, F1 = 2PR/(P+R) (0 when P+R = 0).
inline QuestionScore score_question(const std::set<std::string>& predicted,
                                    const std::set<std::string>& gold) {
    QuestionScore s;
    if (gold.empty()) return s;
    std::size_t hit = 0;
    for (const auto& p : predicted) hit += gold.count(p);
    s.precision = predicted.empty() ? 0.0
                                    : static_cast<double>(hit) /
                                          static_cast<double>(predicted.size());
    s.recall = static_cast<double>(hit) / static_cast<double>(gold.size());
    s.f1 = (s.precision + s.recall) == 0.0
               ? 0.0
               : 2.0 * s.precision * s.recall / (s.precision + s.recall);
    return s;
}

inline EvalReport evaluate(const std::vector<std::set<std::string>>& predictions,
                           const std::vector<BenchmarkItem>& gold) {
    if (predictions.size() != gold.size())
        throw Error("evaluate: " + std::to_string(predictions.size()) + " predictions for " +
                    std::to_string(gold.size()) + " benchmark items");
    EvalReport report;
    std::map<Category, QuestionScore> sums;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        const QuestionScore s = score_question(predictions[i], gold[i].gold);
        report.per_question.push_back(s);
        auto& sum = sums[gold[i].category];
        sum.precision += s.precision;
        sum.recall += s.recall;
        sum.f1 += s.f1;
        report.category_counts[gold[i].category] += 1;
    }
    for (const auto& [category, sum] : sums) {
        const auto n = static_cast<double>(report.category_counts[category]);
        QuestionScore mean{sum.precision / n, sum.recall / n, sum.f1 / n};
        report.category_means[category] = mean;
        report.aggregate.precision += mean.precision;
        report.aggregate.recall += mean.recall;
        report.aggregate.f1 += mean.f1;
    }
    if (!sums.empty()) {
        const auto k = static_cast<double>(sums.size());
        report.aggregate.precision /= k;
        report.aggregate.recall /= k;
        report.aggregate.f1 /= k;
    }
    return report;
}

}  // namespace tqa

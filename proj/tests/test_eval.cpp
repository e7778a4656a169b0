#include <fstream>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "tqa/eval.hpp"

using namespace tqa;

namespace {

std::string data_path(const char* name) {
    return std::string(TQA_SOURCE_DIR) + "/data/" + name;
}

BenchmarkItem item(std::string q, std::set<std::string> gold, Category c) {
    BenchmarkItem b;
    b.question = std::move(q);
    b.gold = std::move(gold);
    b.category = c;
    return b;
}

}  // namespace

TEST_CASE("per-question precision, recall and F1") {
    const auto s = score_question({"a", "c"}, {"a", "b"});
    CHECK(s.precision == Catch::Approx(0.5));
    CHECK(s.recall == Catch::Approx(0.5));
    CHECK(s.f1 == Catch::Approx(0.5));

    const auto empty = score_question({}, {"a", "b"});
    CHECK(empty.precision == 0.0);
    CHECK(empty.recall == 0.0);
    CHECK(empty.f1 == 0.0);

    const auto perfect = score_question({"a", "b"}, {"a", "b"});
    CHECK(perfect.f1 == 1.0);
}

TEST_CASE("the aggregate averages the categories present") {
    // explicit: one item with F1 0.4; implicit: one item with F1 0.6
    const std::vector<BenchmarkItem> gold = {
        item("q1", {"a", "b", "c", "d"}, Category::Explicit),
        item("q2", {"a", "b", "c", "d", "e", "f"}, Category::Implicit),
    };
    const std::vector<std::set<std::string>> predictions = {
        {"a"},                  // P=1, R=0.25, F1=0.4
        {"a", "b", "c", "x"},   // P=0.75, R=0.5, F1=0.6
    };
    const auto report = evaluate(predictions, gold);
    CHECK(report.category_means.at(Category::Explicit).f1 == Catch::Approx(0.4));
    CHECK(report.category_means.at(Category::Implicit).f1 == Catch::Approx(0.6));
    CHECK(report.aggregate.f1 == Catch::Approx(0.5));
    CHECK(report.category_means.count(Category::Ordinal) == 0);
}

TEST_CASE("six-item fixture matches the hand computation exactly") {
    const std::vector<BenchmarkItem> gold = {
        item("q1", {"a", "b"}, Category::Explicit),
        item("q2", {"a"}, Category::Explicit),
        item("q3", {"a", "b", "c"}, Category::Implicit),
        item("q4", {"a", "b"}, Category::Implicit),
        item("q5", {"d1"}, Category::TemporalAnswer),
        item("q6", {"x"}, Category::Ordinal),
    };
    const std::vector<std::set<std::string>> predictions = {
        {"a", "c"},            // 0.5 / 0.5 / 0.5
        {"a"},                 // 1 / 1 / 1
        {},                    // 0 / 0 / 0
        {"a", "b", "c", "d"},  // 0.5 / 1 / 2/3
        {"d1", "d2"},          // 0.5 / 1 / 2/3
        {"y"},                 // 0 / 0 / 0
    };
    const auto report = evaluate(predictions, gold);

    // category means, worked by hand
    const double eps = 1e-9;
    CHECK(report.category_means.at(Category::Explicit).precision ==
          Catch::Approx(0.75).margin(eps));
    CHECK(report.category_means.at(Category::Explicit).recall ==
          Catch::Approx(0.75).margin(eps));
    CHECK(report.category_means.at(Category::Explicit).f1 == Catch::Approx(0.75).margin(eps));
    CHECK(report.category_means.at(Category::Implicit).precision ==
          Catch::Approx(0.25).margin(eps));
    CHECK(report.category_means.at(Category::Implicit).recall ==
          Catch::Approx(0.5).margin(eps));
    CHECK(report.category_means.at(Category::Implicit).f1 ==
          Catch::Approx(1.0 / 3.0).margin(eps));
    CHECK(report.category_means.at(Category::TemporalAnswer).f1 ==
          Catch::Approx(2.0 / 3.0).margin(eps));
    CHECK(report.category_means.at(Category::Ordinal).f1 == Catch::Approx(0.0).margin(eps));

    // aggregate = mean of the four category means
    CHECK(report.aggregate.precision == Catch::Approx(0.375).margin(eps));
    CHECK(report.aggregate.recall == Catch::Approx(0.5625).margin(eps));
    CHECK(report.aggregate.f1 == Catch::Approx((0.75 + 1.0 / 3.0 + 2.0 / 3.0) / 4.0).margin(eps));
}

TEST_CASE("F1 algebra holds on random sets") {
    std::mt19937 rng(5);
    const std::vector<std::string> pool = {"a", "b", "c", "d", "e", "f", "g"};
    for (int round = 0; round < 500; ++round) {
        std::set<std::string> predicted, gold;
        for (const auto& x : pool) {
            if (std::uniform_int_distribution<int>(0, 1)(rng)) predicted.insert(x);
            if (std::uniform_int_distribution<int>(0, 1)(rng)) gold.insert(x);
        }
        if (gold.empty()) gold.insert("z");
        const auto s = score_question(predicted, gold);
        if (s.precision > 0 && s.recall > 0) {
            CHECK(s.f1 == Catch::Approx(2.0 / (1.0 / s.precision + 1.0 / s.recall)));
        } else {
            CHECK(s.f1 == 0.0);
        }
        CHECK(s.f1 <= (s.precision + s.recall) / 2.0 + 1e-12);
        CHECK(s.precision >= 0.0);
        CHECK(s.precision <= 1.0);
        CHECK(s.recall >= 0.0);
        CHECK(s.recall <= 1.0);
    }
}

TEST_CASE("prediction and gold lists must align") {
    const std::vector<BenchmarkItem> gold = {item("q1", {"a"}, Category::Explicit)};
    CHECK_THROWS_AS(evaluate({}, gold), Error);
}

TEST_CASE("the toy benchmark file loads") {
    const auto items = load_benchmark(data_path("toy.bench"));
    REQUIRE(items.size() == 16);
    std::map<Category, int> counts;
    for (const auto& it : items) counts[it.category]++;
    CHECK(counts[Category::Explicit] == 4);
    CHECK(counts[Category::Implicit] == 4);
    CHECK(counts[Category::TemporalAnswer] == 4);
    CHECK(counts[Category::Ordinal] == 4);
    CHECK(items[4].gold == std::set<std::string>{"santos", "barcelona"});
}

TEST_CASE("malformed benchmark files are rejected") {
    const std::string path = "/tmp/tqa_bad_bench.tsv";
    {
        std::ofstream out(path);
        out << "question without tabs\n";
    }
    CHECK_THROWS_AS(load_benchmark(path), ParseError);
    {
        std::ofstream out(path);
        out << "q?\t\texplicit\n";  // empty gold
    }
    CHECK_THROWS_AS(load_benchmark(path), ParseError);
    {
        std::ofstream out(path);
        out << "q?\ta\tbogus_category\n";
    }
    CHECK_THROWS_AS(load_benchmark(path), ParseError);
    CHECK_THROWS_AS(load_benchmark("/nonexistent/bench.tsv"), ConfigError);
}

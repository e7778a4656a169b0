#pragma once

// The pluggable KB-QA backend contract. Sub-questions are answered either
// by the builtin naive matcher or by an external engine spoken to over a
// one-JSON-object-per-line protocol on the child process's stdin/stdout:
//
//   request:  {"id": 1, "question": "when did x happen?", "kind": "DATE"}
//   response: {"id": 1, "answers": [{"value": "...", "predicates": ["..."]}]}
//
// A DATE-kind value is an ISO-8601 date; anything else is an entity id.
// Implementations must be safe for concurrent calls or declare themselves
// single-flight; the external adapter below is single-flight.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include "tqa/errors.hpp"
#include "tqa/kb.hpp"
#include "tqa/model.hpp"

namespace tqa {

class QaBackend {
public:
    virtual ~QaBackend() = default;
    virtual BackendResult answer(const BackendQuery& query) = 0;
    virtual std::string name() const = 0;
};

class BuiltinBackend : public QaBackend {
public:
    BuiltinBackend(const KBStore* store, const Embeddings* embeddings)
        : store_(store), embeddings_(embeddings) {}

    BackendResult answer(const BackendQuery& query) override {
        return answer_subquestion(query.question, *store_, embeddings_, query.kind);
    }

    std::string name() const override { return "builtin"; }

private:
    const KBStore* store_;
    const Embeddings* embeddings_;
};

// Runs `command` through /bin/sh and exchanges line-delimited JSON with it.
class ExternalProcessBackend : public QaBackend {
public:
    explicit ExternalProcessBackend(std::string command) : command_(std::move(command)) {
        int to_child[2];
        int from_child[2];
        if (::pipe(to_child) != 0 || ::pipe(from_child) != 0)
            throw ConfigError("cannot create pipes for external backend");
        pid_ = ::fork();
        if (pid_ < 0) throw ConfigError("cannot fork external backend");
        if (pid_ == 0) {
            ::dup2(to_child[0], STDIN_FILENO);
            ::dup2(from_child[1], STDOUT_FILENO);
            ::close(to_child[0]);
            ::close(to_child[1]);
            ::close(from_child[0]);
            ::close(from_child[1]);
            ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
            _exit(127);
        }
        ::close(to_child[0]);
        ::close(from_child[1]);
        to_child_ = ::fdopen(to_child[1], "w");
        from_child_ = ::fdopen(from_child[0], "r");
        if (!to_child_ || !from_child_) throw ConfigError("cannot open backend pipe streams");
    }

    ~ExternalProcessBackend() override {
        if (to_child_) std::fclose(to_child_);
        if (from_child_) std::fclose(from_child_);
        if (pid_ > 0) {
            int status = 0;
            ::waitpid(pid_, &status, 0);
        }
    }

    ExternalProcessBackend(const ExternalProcessBackend&) = delete;
    ExternalProcessBackend& operator=(const ExternalProcessBackend&) = delete;

    BackendResult answer(const BackendQuery& query) override {
        nlohmann::json request = {
            {"id", query.id},
            {"question", query.question},
            {"kind", query.kind == AnswerKind::Date ? "DATE" : "ENTITY"},
        };
        const std::string line = request.dump();
        if (std::fprintf(to_child_, "%s\n", line.c_str()) < 0 || std::fflush(to_child_) != 0)
            throw Error("external backend pipe closed while writing");

        std::string reply;
        int c;
        while ((c = std::fgetc(from_child_)) != EOF && c != '\n')
            reply.push_back(static_cast<char>(c));
        if (reply.empty() && c == EOF)
            throw Error("external backend closed its output stream");

        BackendResult result;
        nlohmann::json response;
        try {
            response = nlohmann::json::parse(reply);
        } catch (const nlohmann::json::exception& e) {
            throw Error(std::string("malformed backend response: ") + e.what());
        }
        if (response.value("id", -1) != query.id)
            throw Error("backend response id does not match request id");
        for (const auto& item : response.value("answers", nlohmann::json::array())) {
            Answer ans;
            const std::string value = item.value("value", "");
            if (value.empty()) continue;
            if (query.kind == AnswerKind::Date) {
                const auto tp = TimePoint::parse(value);
                if (!tp) {
                    result.diagnostics.push_back("backend returned a non-date for a DATE query: " +
                                                 value);
                    continue;
                }
                ans.value = *tp;
                ans.time_scopes.push_back(interval_from_point(*tp));
            } else {
                ans.value = value;
            }
            if (item.contains("predicates"))
                for (const auto& p : item["predicates"]) ans.predicates.push_back(p);
            result.answers.answers.push_back(std::move(ans));
        }
        return result;
    }

    std::string name() const override { return "cmd:" + command_; }

private:
    std::string command_;
    pid_t pid_ = -1;
    std::FILE* to_child_ = nullptr;
    std::FILE* from_child_ = nullptr;
};

}  // namespace tqa

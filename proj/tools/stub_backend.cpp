// Canned external QA backend speaking the line-JSON protocol: one request
// object per line on stdin, one response object per line on stdout. Used to
// demonstrate that the pipeline runs unchanged on top of a foreign engine.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

using nlohmann::json;

struct Canned {
    std::vector<std::pair<std::string, std::vector<std::string>>> answers;
};

const std::map<std::string, Canned>& canned_answers() {
    static const std::map<std::string, Canned> table = {
        {"which teams did neymar play for?",
         {{{"santos", {"team.players"}},
           {"barcelona", {"team.players"}},
           {"psg", {"team.players"}}}}},
        {"where did neymar play?",
         {{{"santos", {"team.players"}},
           {"barcelona", {"team.players"}},
           {"psg", {"team.players"}}}}},
        {"when joining psg?", {{{"2017-08-03", {"footballPlayer.team.joinedOnDate"}}}}},
        {"when neymar joined barcelona?",
         {{{"2013-06-03", {"footballPlayer.team.joinedOnDate"}}}}},
        {"who was the spouse of julia roberts?",
         {{{"lyle_lovett", {"marriage.spouse"}}, {"daniel_moder", {"marriage.spouse"}}}}},
    };
    return table;
}

}  // namespace

int main() {
    std::string line;
    while (std::getline(std::cin, line)) {
        if (line.empty()) continue;
        json request;
        try {
            request = json::parse(line);
        } catch (const json::exception&) {
            continue;
        }
        json response;
        response["id"] = request.value("id", 0);
        json answers = json::array();
        const std::string question = request.value("question", "");
        if (auto it = canned_answers().find(question); it != canned_answers().end()) {
            for (const auto& [value, predicates] : it->second.answers) {
                json a;
                a["value"] = value;
                a["predicates"] = predicates;
                answers.push_back(a);
            }
        }
        response["answers"] = answers;
        std::cout << response.dump() << "\n" << std::flush;
    }
    return 0;
}

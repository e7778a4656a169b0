#pragma once

// Tokenization, a coarse rule-based POS lexicon and light stemming.
// Everything operates on lower-cased ASCII; other bytes pass through.

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tqa/model.hpp"

namespace tqa {

inline std::string lower_ascii(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

// Whitespace split; surrounding punctuation is stripped, inner apostrophes
// and hyphens are kept ("neymar's", "saint-germain").
inline std::vector<std::string> tokenize_words(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        std::size_t b = 0, e = cur.size();
        auto is_strip = [](unsigned char c) {
            return std::ispunct(c) && c != '\'' && c != '-';
        };
        while (b < e && is_strip(static_cast<unsigned char>(cur[b]))) ++b;
        while (e > b && is_strip(static_cast<unsigned char>(cur[e - 1]))) --e;
        // a bare trailing apostrophe carries nothing
        while (e > b && cur[e - 1] == '\'') --e;
        if (e > b) out.push_back(cur.substr(b, e - b));
        cur.clear();
    };
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) {
            flush();
        } else {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
        }
    }
    flush();
    return out;
}

inline bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// "neymar's" -> "neymar"; unchanged when there is no possessive marker.
inline std::string strip_possessive(std::string_view token) {
    if (ends_with(token, "'s")) return std::string(token.substr(0, token.size() - 2));
    return std::string(token);
}

namespace detail {

inline const std::unordered_set<std::string>& wh_words() {
    static const std::unordered_set<std::string> s = {
        "who", "whom", "whose", "what", "which", "where", "when", "why", "how"};
    return s;
}

inline const std::unordered_set<std::string>& aux_words() {
    static const std::unordered_set<std::string> s = {
        "did", "do", "does", "done", "has", "have", "had", "will", "would", "can", "could",
        "shall", "should", "may", "might", "must"};
    return s;
}

inline const std::unordered_set<std::string>& copula_words() {
    static const std::unordered_set<std::string> s = {"is", "are", "was", "were", "be", "been",
                                                      "being", "am"};
    return s;
}

inline const std::unordered_set<std::string>& det_words() {
    static const std::unordered_set<std::string> s = {"the", "a",     "an",   "this", "that",
                                                      "these", "those", "every", "each", "some"};
    return s;
}

inline const std::unordered_set<std::string>& prep_words() {
    static const std::unordered_set<std::string> s = {
        "in", "on", "at", "for", "of", "from", "to", "with", "by", "about", "under", "over",
        "before", "after", "during", "since", "until", "between", "within", "as"};
    return s;
}

inline const std::unordered_set<std::string>& pron_words() {
    static const std::unordered_set<std::string> s = {
        "he", "she", "it", "they", "him", "her", "them", "his", "hers", "its", "their",
        "theirs", "i", "you", "we", "me", "us", "my", "your", "our"};
    return s;
}

inline const std::unordered_set<std::string>& verb_lexicon() {
    static const std::unordered_set<std::string> s = {
        "play",   "plays",   "join",    "joins",   "live",  "lives",  "leave",  "leaves",
        "left",   "marry",   "marries", "choose",  "chose", "chosen", "win",    "wins",
        "won",    "happen",  "happens", "occur",   "occurs", "start",  "starts", "work",
        "works",  "release", "releases", "land",   "lands", "come",   "comes",  "came",
        "become", "becomes", "became",  "move",    "moves", "sign",   "signs",  "retire",
        "retires", "found",  "founds",  "born",    "make",  "makes",  "made",   "begin",
        "begins", "began",   "end",     "ends",    "take",  "takes",  "took",   "get",
        "gets",   "got"};
    return s;
}

inline const std::unordered_set<std::string>& noun_ing_exceptions() {
    // -ing forms that are ordinary nouns in questions
    static const std::unordered_set<std::string> s = {"king", "thing", "something", "anything",
                                                      "nothing", "everything", "ring", "wing",
                                                      "spring", "evening", "morning", "wedding",
                                                      "building"};
    return s;
}

}  // namespace detail

// Ordinal number token such as "2nd" or "18th"; returns the rank or 0.
inline int parse_ordinal_number(std::string_view token) {
    std::size_t i = 0;
    while (i < token.size() && std::isdigit(static_cast<unsigned char>(token[i]))) ++i;
    if (i == 0 || i + 2 != token.size()) return 0;
    const std::string_view suffix = token.substr(i);
    if (suffix != "st" && suffix != "nd" && suffix != "rd" && suffix != "th") return 0;
    return std::stoi(std::string(token.substr(0, i)));
}

// Coarse POS tag from closed-class lexicons plus -ed/-ing morphology.
inline Pos guess_pos(const std::string& token) {
    using namespace detail;
    if (wh_words().count(token)) return Pos::Wh;
    if (aux_words().count(token)) return Pos::Aux;
    if (copula_words().count(token)) return Pos::Verb;  // copulas head clauses
    if (det_words().count(token)) return Pos::Det;
    if (pron_words().count(token)) return Pos::Pron;
    if (prep_words().count(token)) return Pos::Prep;
    if (all_digits(token)) return Pos::Number;
    if (parse_ordinal_number(token) > 0) return Pos::Ordinal;
    if (verb_lexicon().count(token)) return Pos::Verb;
    if (ends_with(token, "ing") && token.size() > 5 && !noun_ing_exceptions().count(token))
        return Pos::Verb;
    if (ends_with(token, "ed") && token.size() > 4) {
        const std::string base = token.substr(0, token.size() - 2);
        if (verb_lexicon().count(base) || verb_lexicon().count(base + "e") || token.size() > 5)
            return Pos::Verb;
    }
    return Pos::Noun;
}

inline std::vector<Token> make_tokens(const std::vector<std::string>& words) {
    std::vector<Token> tokens;
    tokens.reserve(words.size());
    for (std::size_t i = 0; i < words.size(); ++i)
        tokens.push_back(Token{words[i], guess_pos(words[i]), static_cast<int>(i)});
    return tokens;
}

inline std::vector<Token> tokenize(std::string_view text) {
    return make_tokens(tokenize_words(text));
}

// Light suffix stripping used only for question-to-predicate matching
// ("joining" ~ "joined", "teams" ~ "team").
inline std::string stem(std::string_view token) {
    std::string t(token);
    if (ends_with(t, "ing") && t.size() > 5) {
        t.resize(t.size() - 3);
    } else if (ends_with(t, "ed") && t.size() > 4) {
        t.resize(t.size() - 2);
    } else if (ends_with(t, "es") && t.size() > 4) {
        t.resize(t.size() - 1);
    } else if (ends_with(t, "s") && !ends_with(t, "ss") && t.size() > 3) {
        t.resize(t.size() - 1);
    }
    return t;
}

namespace detail {

// equal, or one is a prefix of the other with at least four shared chars
inline bool stems_relate(std::string_view sa, std::string_view sb) {
    if (sa == sb) return true;
    const std::string_view shorter = sa.size() <= sb.size() ? sa : sb;
    const std::string_view longer = sa.size() <= sb.size() ? sb : sa;
    return shorter.size() >= 4 && longer.substr(0, shorter.size()) == shorter;
}

}  // namespace detail

// Stem comparison; a trailing-y respelling covers pairs like
// "marry" ~ "marriage".
inline bool tokens_match(std::string_view a, std::string_view b) {
    std::string sa = stem(a);
    std::string sb = stem(b);
    if (detail::stems_relate(sa, sb)) return true;
    if (!sa.empty() && sa.back() == 'y') sa.back() = 'i';
    if (!sb.empty() && sb.back() == 'y') sb.back() = 'i';
    return detail::stems_relate(sa, sb);
}

// Words that never count as question content when matching predicates.
inline bool is_stop_word(const std::string& token) {
    using namespace detail;
    static const std::unordered_set<std::string> extra = {"and", "or", "not", "'s", "s"};
    return wh_words().count(token) || aux_words().count(token) || copula_words().count(token) ||
           det_words().count(token) || prep_words().count(token) || pron_words().count(token) ||
           extra.count(token) > 0;
}

}  // namespace tqa

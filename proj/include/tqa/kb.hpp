#pragma once

// In-memory temporal knowledge base: loading and validation of the
// line-oriented KB file, surface-form entity linking, predicate
// tokenization and similarity, the naive pattern-matching backend for
// rewritten sub-questions, and time-scope retrieval for candidate answers.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tqa/errors.hpp"
#include "tqa/model.hpp"
#include "tqa/text.hpp"

namespace tqa {

enum class PredicateRole { Begin, End, Point };

inline const char* to_string(PredicateRole r) {
    switch (r) {
        case PredicateRole::Begin: return "begin";
        case PredicateRole::End: return "end";
        case PredicateRole::Point: return "point";
    }
    return "-";
}

// Split a dotted predicate name on dots and camel-case boundaries,
// lower-case, and drop connective tokens:
// footballPlayer.team.joinedOnDate -> {football, player, team, joined}.
inline std::vector<std::string> tokenize_predicate(std::string_view name) {
    static const std::unordered_set<std::string> stop = {"on", "of",  "the", "date", "in",
                                                         "at", "by",  "for", "to",   "a",
                                                         "an", "and", "or"};
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        if (!stop.count(cur) && std::find(out.begin(), out.end(), cur) == out.end())
            out.push_back(cur);
        cur.clear();
    };
    for (char c : name) {
        if (c == '.' || c == '_') {
            flush();
        } else if (c >= 'A' && c <= 'Z') {
            flush();
            cur.push_back(static_cast<char>(c - 'A' + 'a'));
        } else {
            cur.push_back(c);
        }
    }
    flush();
    return out;
}

// ---------------------------------------------------------------------------
// Word embeddings (optional input; plain text "token v1 v2 ... vd" per line)

class Embeddings {
public:
    static Embeddings load(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open embeddings file: " + path.string());
        Embeddings emb;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ss(line);
            std::string token;
            ss >> token;
            std::vector<double> vec;
            double v;
            while (ss >> v) vec.push_back(v);
            if (token.empty() || vec.empty())
                throw ParseError(path.string() + ":" + std::to_string(lineno) +
                                 ": malformed embedding line");
            if (emb.dim_ == 0) emb.dim_ = vec.size();
            if (vec.size() != emb.dim_)
                throw ParseError(path.string() + ":" + std::to_string(lineno) +
                                 ": inconsistent embedding dimension");
            emb.vectors_.emplace(lower_ascii(token), std::move(vec));
        }
        return emb;
    }

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return vectors_.size(); }

    const std::vector<double>* find(const std::string& token) const {
        auto it = vectors_.find(token);
        return it == vectors_.end() ? nullptr : &it->second;
    }

    // Mean of the known token vectors; nullopt when every token is unknown.
    std::optional<std::vector<double>> mean_of(const std::vector<std::string>& tokens) const {
        std::vector<double> acc(dim_, 0.0);
        std::size_t known = 0;
        for (const auto& t : tokens) {
            if (const auto* v = find(t)) {
                for (std::size_t i = 0; i < dim_; ++i) acc[i] += (*v)[i];
                ++known;
            }
        }
        if (known == 0) return std::nullopt;
        for (auto& x : acc) x /= static_cast<double>(known);
        return acc;
    }

    void add(const std::string& token, std::vector<double> vec) {
        if (dim_ == 0) dim_ = vec.size();
        vectors_.emplace(token, std::move(vec));
    }

private:
    std::unordered_map<std::string, std::vector<double>> vectors_;
    std::size_t dim_ = 0;
};

inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0 || nb == 0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

// Similarity of two predicate names in [-1, 1]: cosine of mean token
// vectors when embeddings are given (unknown tokens skipped), otherwise
// Jaccard overlap of the token sets.
inline double predicate_similarity(std::string_view p1, std::string_view p2,
                                   const Embeddings* emb = nullptr) {
    const auto t1 = tokenize_predicate(p1);
    const auto t2 = tokenize_predicate(p2);
    if (t1.empty() || t2.empty()) return 0.0;
    if (emb) {
        const auto v1 = emb->mean_of(t1);
        const auto v2 = emb->mean_of(t2);
        if (v1 && v2) return cosine(*v1, *v2);
    }
    const std::set<std::string> s1(t1.begin(), t1.end());
    const std::set<std::string> s2(t2.begin(), t2.end());
    std::size_t inter = 0;
    for (const auto& t : s1) inter += s2.count(t);
    const std::size_t uni = s1.size() + s2.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

// ---------------------------------------------------------------------------
// Store

class KBStore {
public:
    struct EntityInfo {
        std::vector<std::string> surface_forms;
        std::vector<std::string> types;
    };

    struct PredicateInfo {
        bool is_temporal = false;
        std::optional<PredicateRole> role;
    };

    // --- builder interface; the store is immutable once finalize() ran ----

    void add_entity(const std::string& id, std::vector<std::string> surfaces,
                    std::vector<std::string> types) {
        if (!entities_.count(id)) entity_order_.push_back(id);
        entities_[id] = EntityInfo{std::move(surfaces), std::move(types)};
    }

    void add_predicate(const std::string& name, PredicateInfo info) {
        if (!predicates_.count(name)) predicate_order_.push_back(name);
        predicates_[name] = info;
    }

    void add_fact(Fact f) { facts_.push_back(std::move(f)); }

    // Builds indexes; call once after all records were added.
    void finalize() {
        by_subject_.clear();
        by_predicate_.clear();
        by_object_entity_.clear();
        by_compound_.clear();
        surface_index_.clear();
        max_surface_tokens_ = 0;
        for (std::size_t i = 0; i < facts_.size(); ++i) {
            const Fact& f = facts_[i];
            by_subject_[f.subject].push_back(i);
            by_predicate_[f.predicate].push_back(i);
            if (const auto* e = std::get_if<EntityRef>(&f.object))
                by_object_entity_[e->id].push_back(i);
            if (f.compound) by_compound_[*f.compound].push_back(i);
        }
        for (const auto& id : entity_order_) {
            for (const auto& surface : entities_.at(id).surface_forms) {
                const auto words = tokenize_words(surface);
                if (words.empty()) continue;
                std::string key;
                for (const auto& w : words) {
                    if (!key.empty()) key += ' ';
                    key += w;
                }
                max_surface_tokens_ = std::max(max_surface_tokens_, words.size());
                surface_index_.emplace(key, id);  // first entry wins
            }
        }
    }

    // --- queries ----------------------------------------------------------

    const std::vector<Fact>& facts() const { return facts_; }
    const Fact& fact(std::size_t i) const { return facts_[i]; }
    const std::map<std::string, EntityInfo>& entities() const { return entities_; }
    const std::map<std::string, PredicateInfo>& predicates() const { return predicates_; }
    const std::vector<std::string>& entity_order() const { return entity_order_; }
    const std::vector<std::string>& predicate_order() const { return predicate_order_; }

    bool has_entity(const std::string& id) const { return entities_.count(id) > 0; }
    bool has_predicate(const std::string& name) const { return predicates_.count(name) > 0; }

    const std::vector<std::size_t>& facts_by_subject(const std::string& id) const {
        return lookup(by_subject_, id);
    }
    const std::vector<std::size_t>& facts_by_predicate(const std::string& name) const {
        return lookup(by_predicate_, name);
    }
    const std::vector<std::size_t>& facts_by_object(const std::string& id) const {
        return lookup(by_object_entity_, id);
    }
    const std::vector<std::size_t>& facts_by_compound(const std::string& cid) const {
        return lookup(by_compound_, cid);
    }

    bool is_temporal(const std::string& predicate) const {
        auto it = predicates_.find(predicate);
        return it != predicates_.end() && it->second.is_temporal;
    }

    // Declared role, falling back to inference from the name segments
    // (joined/start/from -> begin; left/end/to -> end; else point).
    std::optional<PredicateRole> role_of(const std::string& predicate) const {
        auto it = predicates_.find(predicate);
        if (it == predicates_.end() || !it->second.is_temporal) return std::nullopt;
        if (it->second.role) return it->second.role;
        static const std::unordered_set<std::string> begin_cues = {
            "joined", "join", "start", "started", "from", "begin", "began", "since"};
        static const std::unordered_set<std::string> end_cues = {"left", "leave", "end",
                                                                 "ended", "to", "until"};
        const auto parts = raw_name_segments(predicate);
        for (const auto& p : parts)
            if (begin_cues.count(p)) return PredicateRole::Begin;
        for (const auto& p : parts)
            if (end_cues.count(p)) return PredicateRole::End;
        return PredicateRole::Point;
    }

    // Dot and camel-case segments without stop-token removal.
    static std::vector<std::string> raw_name_segments(std::string_view name) {
        std::vector<std::string> parts;
        std::string cur;
        for (char ch : name) {
            if (ch == '.' || ch == '_') {
                if (!cur.empty()) parts.push_back(cur);
                cur.clear();
            } else if (ch >= 'A' && ch <= 'Z') {
                if (!cur.empty()) parts.push_back(cur);
                cur.clear();
                cur.push_back(static_cast<char>(ch - 'A' + 'a'));
            } else {
                cur.push_back(ch);
            }
        }
        if (!cur.empty()) parts.push_back(cur);
        return parts;
    }

    bool is_event_entity(const std::string& id) const {
        auto it = entities_.find(id);
        if (it == entities_.end()) return false;
        for (const auto& t : it->second.types)
            if (t == "time.event" || t == "event") return true;
        return false;
    }

    // Longest-match surface lookup; phrase tokens are space-joined, already
    // lower-cased and possessive-stripped.
    std::optional<std::string> entity_by_surface(const std::string& phrase) const {
        auto it = surface_index_.find(phrase);
        if (it == surface_index_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t max_surface_tokens() const { return max_surface_tokens_; }

private:
    static const std::vector<std::size_t>& lookup(
        const std::unordered_map<std::string, std::vector<std::size_t>>& index,
        const std::string& key) {
        static const std::vector<std::size_t> empty;
        auto it = index.find(key);
        return it == index.end() ? empty : it->second;
    }

    std::vector<Fact> facts_;
    std::map<std::string, EntityInfo> entities_;
    std::map<std::string, PredicateInfo> predicates_;
    std::vector<std::string> entity_order_;
    std::vector<std::string> predicate_order_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_subject_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_predicate_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_object_entity_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_compound_;
    std::unordered_map<std::string, std::string> surface_index_;
    std::size_t max_surface_tokens_ = 0;
};

// ---------------------------------------------------------------------------
// KB file format
//
//   # comment
//   E<TAB>entity_id<TAB>surface[|surface...]<TAB>type[,type...]
//   P<TAB>predicate<TAB>temporal:{yes|no}<TAB>role:{begin|end|point|-}
//   F<TAB>subject<TAB>predicate<TAB>object<TAB>compound_id_or_-
//
// Dates in object position are ISO-8601 (YYYY, YYYY-MM or YYYY-MM-DD) and
// are only legal for temporal predicates. Non-temporal objects are entity
// ids or double-quoted string literals.

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = s.find(sep, pos);
        out.push_back(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

}  // namespace detail

inline KBStore parse_kb(std::istream& in, const std::string& source) {
    KBStore store;
    std::vector<std::string> errors;
    struct PendingFact {
        std::string subject, predicate, object, compound;
        std::size_t lineno;
    };
    std::vector<PendingFact> pending;
    std::string line;
    std::size_t lineno = 0;
    auto err = [&](std::size_t n, const std::string& msg) {
        errors.push_back(source + ":" + std::to_string(n) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto fields = detail::split(line, '\t');
        if (fields[0] == "E") {
            if (fields.size() != 4) {
                err(lineno, "E record needs 4 tab-separated fields");
                continue;
            }
            if (store.has_entity(fields[1])) {
                err(lineno, "duplicate entity id: " + fields[1]);
                continue;
            }
            store.add_entity(fields[1], detail::split(fields[2], '|'),
                             detail::split(fields[3], ','));
        } else if (fields[0] == "P") {
            if (fields.size() != 4) {
                err(lineno, "P record needs 4 tab-separated fields");
                continue;
            }
            KBStore::PredicateInfo info;
            if (fields[2] == "temporal:yes") {
                info.is_temporal = true;
            } else if (fields[2] != "temporal:no") {
                err(lineno, "bad temporal flag: " + fields[2]);
                continue;
            }
            if (fields[3] == "role:begin") {
                info.role = PredicateRole::Begin;
            } else if (fields[3] == "role:end") {
                info.role = PredicateRole::End;
            } else if (fields[3] == "role:point") {
                info.role = PredicateRole::Point;
            } else if (fields[3] != "role:-") {
                err(lineno, "bad role: " + fields[3]);
                continue;
            }
            if (info.role && !info.is_temporal) {
                err(lineno, "role declared on non-temporal predicate: " + fields[1]);
                continue;
            }
            store.add_predicate(fields[1], info);
        } else if (fields[0] == "F") {
            if (fields.size() != 5) {
                err(lineno, "F record needs 5 tab-separated fields");
                continue;
            }
            pending.push_back({fields[1], fields[2], fields[3], fields[4], lineno});
        } else {
            err(lineno, "unknown record kind: " + fields[0]);
        }
    }

    // Facts are validated after the whole file is read so that record order
    // does not matter.
    std::map<std::string, std::size_t> compound_sizes;
    for (const auto& p : pending) {
        if (!store.has_entity(p.subject)) {
            err(p.lineno, "unknown subject entity: " + p.subject);
            continue;
        }
        if (!store.has_predicate(p.predicate)) {
            err(p.lineno, "undeclared predicate: " + p.predicate);
            continue;
        }
        Fact f;
        f.subject = p.subject;
        f.predicate = p.predicate;
        if (p.compound != "-") f.compound = p.compound;
        if (store.is_temporal(p.predicate)) {
            const auto tp = TimePoint::parse(p.object);
            if (!tp) {
                err(p.lineno, "temporal predicate needs an ISO-8601 date object, got: " + p.object);
                continue;
            }
            f.object = *tp;
        } else if (p.object.size() >= 2 && p.object.front() == '"' && p.object.back() == '"') {
            f.object = Literal{p.object.substr(1, p.object.size() - 2)};
        } else if (store.has_entity(p.object)) {
            f.object = EntityRef{p.object};
        } else {
            err(p.lineno, "unknown entity in object position: " + p.object);
            continue;
        }
        if (f.compound) ++compound_sizes[*f.compound];
        store.add_fact(std::move(f));
    }
    for (const auto& [cid, n] : compound_sizes)
        if (n < 2) errors.push_back(source + ": compound " + cid + " has fewer than 2 facts");

    if (!errors.empty()) {
        std::string msg = "KB validation failed:";
        for (const auto& e : errors) msg += "\n  " + e;
        throw ParseError(msg);
    }
    store.finalize();
    return store;
}

inline KBStore parse_kb(std::string_view text, const std::string& source = "<memory>") {
    std::istringstream in{std::string(text)};
    return parse_kb(in, source);
}

inline KBStore load_kb(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open KB file: " + path.string());
    return parse_kb(in, path.filename().string());
}

inline std::string serialize_kb(const KBStore& store) {
    std::string out;
    for (const auto& id : store.entity_order()) {
        const auto& info = store.entities().at(id);
        out += "E\t" + id + "\t";
        for (std::size_t i = 0; i < info.surface_forms.size(); ++i)
            out += (i ? "|" : "") + info.surface_forms[i];
        out += "\t";
        for (std::size_t i = 0; i < info.types.size(); ++i) out += (i ? "," : "") + info.types[i];
        out += "\n";
    }
    for (const auto& name : store.predicate_order()) {
        const auto& info = store.predicates().at(name);
        out += "P\t" + name + "\t";
        out += info.is_temporal ? "temporal:yes" : "temporal:no";
        out += "\trole:";
        out += info.role ? to_string(*info.role) : "-";
        out += "\n";
    }
    for (const auto& f : store.facts()) {
        out += "F\t" + f.subject + "\t" + f.predicate + "\t";
        if (const auto* e = std::get_if<EntityRef>(&f.object)) {
            out += e->id;
        } else if (const auto* l = std::get_if<Literal>(&f.object)) {
            out += "\"" + l->text + "\"";
        } else {
            out += std::get<TimePoint>(f.object).to_string();
        }
        out += "\t" + (f.compound ? *f.compound : std::string("-")) + "\n";
    }
    return out;
}

inline void save_kb(const KBStore& store, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write KB file: " + path.string());
    out << serialize_kb(store);
}

// ---------------------------------------------------------------------------
// Entity linking

// Greedy left-to-right longest match of token n-grams against entity
// surface forms. Possessive markers are ignored ("neymar's" links "neymar").
inline std::vector<EntitySpan> link_entities(const std::vector<Token>& tokens,
                                             const KBStore& store) {
    std::vector<EntitySpan> spans;
    const int n = static_cast<int>(tokens.size());
    int i = 0;
    while (i < n) {
        bool matched = false;
        const int max_len = std::min<int>(static_cast<int>(store.max_surface_tokens()), n - i);
        for (int len = max_len; len >= 1 && !matched; --len) {
            std::string phrase;
            for (int k = i; k < i + len; ++k) {
                if (!phrase.empty()) phrase += ' ';
                phrase += strip_possessive(tokens[k].surface);
            }
            if (auto id = store.entity_by_surface(phrase)) {
                spans.push_back(EntitySpan{TokenRange{i, i + len}, *id});
                i += len;
                matched = true;
            }
        }
        if (!matched) ++i;
    }
    return spans;
}

// ---------------------------------------------------------------------------
// Naive backend

enum class AnswerKind { Entity, Date };

struct BackendQuery {
    int id = 0;
    std::string question;
    AnswerKind kind = AnswerKind::Entity;
};

struct BackendResult {
    AnswerSet answers;
    std::vector<std::string> resolved_entities;  // in question order
    std::vector<std::string> diagnostics;
};

namespace detail {

// Soft overlap between question content words and predicate-name tokens:
// Jaccard over stem-matched tokens, or embedding cosine when available.
inline double match_score(const std::vector<std::string>& content,
                          const std::vector<std::string>& pred_tokens, const Embeddings* emb,
                          std::size_t* overlap_out = nullptr) {
    if (content.empty() || pred_tokens.empty()) {
        if (overlap_out) *overlap_out = 0;
        return 0.0;
    }
    std::size_t inter = 0;
    for (const auto& c : content)
        for (const auto& p : pred_tokens)
            if (tokens_match(c, p)) {
                ++inter;
                break;
            }
    if (overlap_out) *overlap_out = inter;
    if (emb) {
        const auto vq = emb->mean_of(content);
        const auto vp = emb->mean_of(pred_tokens);
        if (vq && vp) return cosine(*vq, *vp);
    }
    const std::size_t uni = content.size() + pred_tokens.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

inline bool fact_touches(const KBStore& store, const Fact& f, const std::string& entity) {
    if (f.subject == entity) return true;
    if (const auto* e = std::get_if<EntityRef>(&f.object)) return e->id == entity;
    (void)store;
    return false;
}

// The fact, or any fact in its compound, mentions the entity.
inline bool fact_connects(const KBStore& store, std::size_t fact_idx, const std::string& entity) {
    const Fact& f = store.fact(fact_idx);
    if (fact_touches(store, f, entity)) return true;
    if (!f.compound) return false;
    for (std::size_t j : store.facts_by_compound(*f.compound))
        if (fact_touches(store, store.fact(j), entity)) return true;
    return false;
}

inline bool fact_connects_all(const KBStore& store, std::size_t fact_idx,
                              const std::vector<std::string>& entities) {
    for (const auto& e : entities)
        if (!fact_connects(store, fact_idx, e)) return false;
    return true;
}

inline bool generic_when_verb(const std::string& token) {
    static const std::unordered_set<std::string> s = {
        "happen", "happened", "happens", "occur", "occurred", "occurs",
        "take",   "takes",    "took",    "place"};
    return s.count(token) > 0;
}

struct ScoredPredicate {
    std::string name;
    double score = 0.0;
    std::size_t overlap = 0;
};

// score desc, then token-overlap desc, then name asc (determinism)
inline bool better(const ScoredPredicate& a, const ScoredPredicate& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.overlap != b.overlap) return a.overlap > b.overlap;
    return a.name < b.name;
}

}  // namespace detail

// Interval covered by an entity's own temporal facts (role begin/end/point
// facts with the entity as subject). Used for event scopes and generic
// "when did X happen?" questions.
inline std::optional<Interval> entity_time_scope(const KBStore& store, const std::string& id) {
    std::optional<TimePoint> begin, end;
    std::vector<TimePoint> points;
    for (std::size_t i : store.facts_by_subject(id)) {
        const Fact& f = store.fact(i);
        const auto role = store.role_of(f.predicate);
        if (!role) continue;
        const auto* tp = std::get_if<TimePoint>(&f.object);
        if (!tp) continue;
        switch (*role) {
            case PredicateRole::Begin:
                if (!begin || point_before(*tp, *begin)) begin = *tp;
                break;
            case PredicateRole::End:
                if (!end || point_before(*end, *tp)) end = *tp;
                break;
            case PredicateRole::Point:
                points.push_back(*tp);
                break;
        }
    }
    if (!begin && !end && !points.empty()) {
        TimePoint lo = points[0], hi = points[0];
        for (const auto& p : points) {
            if (point_before(p, lo)) lo = p;
            if (point_before(hi, p)) hi = p;
        }
        return Interval(lo, hi);
    }
    if (begin || end) return Interval(begin, end);
    return std::nullopt;
}

// Scope predicates of an entity, for answer provenance.
inline std::vector<std::string> entity_scope_predicates(const KBStore& store,
                                                        const std::string& id) {
    std::vector<std::string> out;
    for (std::size_t i : store.facts_by_subject(id)) {
        const Fact& f = store.fact(i);
        if (store.role_of(f.predicate) &&
            std::find(out.begin(), out.end(), f.predicate) == out.end())
            out.push_back(f.predicate);
    }
    return out;
}

// Answer a rewritten sub-question against the store. Entities are resolved
// by surface form; predicates touching the first resolved entity are scored
// against the question's non-entity content words; objects (or subjects,
// for inverse matches) of the best predicate become the answers. Questions
// asking for a date restrict to temporal predicates and return time points.
inline BackendResult answer_subquestion(const std::string& question, const KBStore& store,
                                        const Embeddings* emb = nullptr,
                                        std::optional<AnswerKind> kind_override = std::nullopt) {
    BackendResult result;
    const auto tokens = tokenize(question);
    const auto entity_spans = link_entities(tokens, store);
    if (entity_spans.empty()) {
        result.diagnostics.push_back("NoEntityResolved: no KB entity found in \"" + question +
                                     "\"");
        return result;
    }
    std::vector<std::string> entities;
    for (const auto& s : entity_spans)
        if (std::find(entities.begin(), entities.end(), s.entity_id) == entities.end())
            entities.push_back(s.entity_id);
    result.resolved_entities = entities;
    const std::string& primary = entities.front();

    AnswerKind kind;
    if (kind_override) {
        kind = *kind_override;
    } else {
        kind = (!tokens.empty() && tokens[0].surface == "when") ? AnswerKind::Date
                                                                : AnswerKind::Entity;
    }

    // content words: not inside an entity span, not stop/number tokens
    std::vector<std::string> content;
    for (const auto& t : tokens) {
        bool in_entity = false;
        for (const auto& s : entity_spans)
            if (s.range.contains(t.index)) in_entity = true;
        if (in_entity || is_stop_word(t.surface) || t.pos == Pos::Number ||
            t.pos == Pos::Ordinal)
            continue;
        content.push_back(t.surface);
    }

    if (kind == AnswerKind::Date) {
        bool generic = true;
        for (const auto& c : content)
            if (!detail::generic_when_verb(c)) generic = false;
        if (generic) {
            // "when did X happen?" and friends: the entity's own time scope
            for (const auto& id : entities) {
                if (const auto scope = entity_time_scope(store, id)) {
                    const auto preds = entity_scope_predicates(store, id);
                    auto emit = [&](const TimePoint& p) {
                        for (const auto& a : result.answers.answers)
                            if (answer_key(a.value) == p.to_string()) return;
                        Answer ans;
                        ans.value = p;
                        ans.predicates = preds;
                        ans.time_scopes.push_back(interval_from_point(p));
                        result.answers.answers.push_back(std::move(ans));
                    };
                    if (scope->begin) emit(*scope->begin);
                    if (scope->end) emit(*scope->end);
                    return result;
                }
            }
            result.diagnostics.push_back("NoScopeFound: no temporal facts for entities in \"" +
                                         question + "\"");
            return result;
        }
        // best temporal predicate over facts connecting all question entities
        detail::ScoredPredicate best;
        std::vector<std::string> seen;
        for (std::size_t i = 0; i < store.facts().size(); ++i) {
            const Fact& f = store.fact(i);
            if (!store.is_temporal(f.predicate)) continue;
            if (!detail::fact_connects_all(store, i, entities)) continue;
            if (std::find(seen.begin(), seen.end(), f.predicate) != seen.end()) continue;
            seen.push_back(f.predicate);
            detail::ScoredPredicate sp;
            sp.name = f.predicate;
            sp.score =
                detail::match_score(content, tokenize_predicate(f.predicate), emb, &sp.overlap);
            if (best.name.empty() || detail::better(sp, best)) best = sp;
        }
        if (best.name.empty() || best.score <= 0.0) {
            result.diagnostics.push_back("NoPredicateMatched: no temporal predicate matches \"" +
                                         question + "\"");
            return result;
        }
        // Does the question name the begin/end role itself ("joined",
        // "start"), or only the relationship ("captain")? Only in the first
        // case are the chosen predicate's dates answers by themselves; in
        // the second the begin/end qualifiers describe a period, so both
        // endpoints of the compound are returned.
        const auto role = store.role_of(best.name);
        bool role_specific = true;
        if (role == PredicateRole::Begin || role == PredicateRole::End) {
            const std::size_t dot = best.name.rfind('.');
            const auto last_tokens = KBStore::raw_name_segments(
                dot == std::string::npos ? best.name : best.name.substr(dot + 1));
            role_specific = false;
            for (const auto& c : content)
                for (const auto& t : last_tokens)
                    if (tokens_match(c, t)) role_specific = true;
        }
        auto emit_date = [&](const TimePoint& tp, const std::string& pred) {
            for (const auto& a : result.answers.answers)
                if (answer_key(a.value) == tp.to_string()) return;
            Answer ans;
            ans.value = tp;
            ans.predicates.push_back(pred);
            ans.time_scopes.push_back(interval_from_point(tp));
            result.answers.answers.push_back(std::move(ans));
        };
        for (std::size_t i = 0; i < store.facts().size(); ++i) {
            const Fact& f = store.fact(i);
            if (f.predicate != best.name) continue;
            if (!detail::fact_connects_all(store, i, entities)) continue;
            const auto* tp = std::get_if<TimePoint>(&f.object);
            if (!tp) continue;
            emit_date(*tp, best.name);
            if (!role_specific && f.compound) {
                // the opposite endpoint of the same compound completes the period
                for (std::size_t j : store.facts_by_compound(*f.compound)) {
                    const Fact& q = store.fact(j);
                    if (j == i || !store.is_temporal(q.predicate)) continue;
                    const auto qrole = store.role_of(q.predicate);
                    if (!qrole || *qrole == PredicateRole::Point || qrole == role) continue;
                    if (const auto* qtp = std::get_if<TimePoint>(&q.object))
                        emit_date(*qtp, q.predicate);
                }
            }
        }
        if (result.answers.empty())
            result.diagnostics.push_back("NoPredicateMatched: predicate " + best.name +
                                         " yielded no dates");
        return result;
    }

    // Entity answers: score non-temporal predicates touching the primary
    // entity.
    detail::ScoredPredicate best;
    std::vector<std::string> seen;
    auto consider = [&](const Fact& f) {
        if (store.is_temporal(f.predicate)) return;
        if (std::find(seen.begin(), seen.end(), f.predicate) != seen.end()) return;
        seen.push_back(f.predicate);
        detail::ScoredPredicate sp;
        sp.name = f.predicate;
        sp.score = detail::match_score(content, tokenize_predicate(f.predicate), emb, &sp.overlap);
        if (best.name.empty() || detail::better(sp, best)) best = sp;
    };
    for (std::size_t i : store.facts_by_subject(primary)) consider(store.fact(i));
    for (std::size_t i : store.facts_by_object(primary)) consider(store.fact(i));
    if (best.name.empty() || best.score <= 0.0) {
        result.diagnostics.push_back("NoPredicateMatched: no predicate matches \"" + question +
                                     "\"");
        return result;
    }
    auto emit = [&](const AnswerValue& value) {
        const std::string key = answer_key(value);
        for (auto& a : result.answers.answers) {
            if (answer_key(a.value) == key) {
                if (std::find(a.predicates.begin(), a.predicates.end(), best.name) ==
                    a.predicates.end())
                    a.predicates.push_back(best.name);
                return;
            }
        }
        Answer ans;
        ans.value = value;
        ans.predicates.push_back(best.name);
        result.answers.answers.push_back(std::move(ans));
    };
    for (std::size_t i = 0; i < store.facts().size(); ++i) {
        const Fact& f = store.fact(i);
        if (f.predicate != best.name) continue;
        if (entities.size() > 1 && !detail::fact_connects_all(store, i, entities)) continue;
        if (f.subject == primary) {
            if (const auto* e = std::get_if<EntityRef>(&f.object)) {
                if (e->id != primary) emit(AnswerValue{e->id});
            } else if (const auto* l = std::get_if<Literal>(&f.object)) {
                emit(AnswerValue{l->text});
            }
        } else if (const auto* e = std::get_if<EntityRef>(&f.object); e && e->id == primary) {
            emit(AnswerValue{f.subject});
        }
    }
    if (result.answers.empty())
        result.diagnostics.push_back("NoPredicateMatched: predicate " + best.name +
                                     " yielded no answers");
    return result;
}

// ---------------------------------------------------------------------------
// Time-scope retrieval

namespace detail {

// Scopes carried by one compound: a point-role qualifier yields a point
// interval; begin/end qualifiers pair up; a lone begin (or end) leaves the
// other side open.
inline std::vector<Interval> scopes_from_compound(const KBStore& store, const std::string& cid,
                                                  std::size_t skip_fact) {
    std::vector<Interval> out;
    std::optional<TimePoint> begin, end;
    for (std::size_t j : store.facts_by_compound(cid)) {
        if (j == skip_fact) continue;
        const Fact& q = store.fact(j);
        const auto role = store.role_of(q.predicate);
        const auto* tp = std::get_if<TimePoint>(&q.object);
        if (!role || !tp) continue;
        switch (*role) {
            case PredicateRole::Point:
                out.push_back(interval_from_point(*tp));
                break;
            case PredicateRole::Begin:
                if (!begin) begin = *tp;
                break;
            case PredicateRole::End:
                if (!end) end = *tp;
                break;
        }
    }
    if (begin || end) out.emplace_back(begin, end);
    return out;
}

}  // namespace detail

// Time scopes for a candidate answer. Date answers scope themselves. For
// entity answers: (a) when a provenance fact sits in a compound, its
// temporal qualifier facts carry the scope; (b) otherwise all temporal
// predicates on facts linking question entity and answer are ranked by
// similarity against the provenance predicate, choosing the best point
// predicate or begin/end pair (paired by shared name prefix).
inline std::vector<Interval> retrieve_time_scope(const KBStore& store,
                                                 const std::string& question_entity,
                                                 const AnswerValue& answer,
                                                 const std::vector<std::string>& provenance,
                                                 const Embeddings* emb = nullptr) {
    std::vector<Interval> scopes;
    auto push_unique = [&](const Interval& iv) {
        if (std::find(scopes.begin(), scopes.end(), iv) == scopes.end()) scopes.push_back(iv);
    };

    if (const auto* tp = std::get_if<TimePoint>(&answer)) {
        push_unique(interval_from_point(*tp));
        return scopes;
    }
    const std::string& ans_id = std::get<std::string>(answer);
    if (!store.has_entity(ans_id)) return scopes;  // literal answers have no scope

    // (a) compound qualifiers of the provenance facts
    for (const auto& pred : provenance) {
        for (std::size_t i : store.facts_by_predicate(pred)) {
            const Fact& f = store.fact(i);
            if (!detail::fact_touches(store, f, question_entity) ||
                !detail::fact_touches(store, f, ans_id))
                continue;
            if (!f.compound) continue;
            for (const auto& iv : detail::scopes_from_compound(store, *f.compound, i))
                push_unique(iv);
        }
    }
    if (!scopes.empty()) return scopes;

    // (b) similarity-ranked temporal predicates connecting the two entities
    struct Candidate {
        std::string predicate;
        double sim = 0.0;
        std::optional<PredicateRole> role;
        std::vector<std::size_t> fact_idx;
    };
    std::map<std::string, Candidate> candidates;
    for (std::size_t i = 0; i < store.facts().size(); ++i) {
        const Fact& f = store.fact(i);
        if (!store.is_temporal(f.predicate)) continue;
        if (!detail::fact_connects(store, i, question_entity) ||
            !detail::fact_connects(store, i, ans_id))
            continue;
        auto& c = candidates[f.predicate];
        c.predicate = f.predicate;
        c.role = store.role_of(f.predicate);
        c.fact_idx.push_back(i);
    }
    if (candidates.empty()) return scopes;
    const std::string anchor = provenance.empty() ? std::string() : provenance.front();
    for (auto& [name, c] : candidates)
        c.sim = anchor.empty() ? 0.0 : predicate_similarity(anchor, name, emb);

    auto pair_key = [](const std::string& pred) {
        const std::size_t dot = pred.rfind('.');
        return dot == std::string::npos ? std::string() : pred.substr(0, dot);
    };

    // best point predicate
    const Candidate* best_point = nullptr;
    for (const auto& [name, c] : candidates) {
        if (c.role != PredicateRole::Point) continue;
        if (!best_point || c.sim > best_point->sim ||
            (c.sim == best_point->sim && name < best_point->predicate))
            best_point = &c;
    }
    // best begin/end pair grouped by shared prefix
    struct Pair {
        const Candidate* begin = nullptr;
        const Candidate* end = nullptr;
        double sim() const {
            return std::max(begin ? begin->sim : -2.0, end ? end->sim : -2.0);
        }
        std::string name() const { return begin ? begin->predicate : end->predicate; }
    };
    std::map<std::string, Pair> pairs;
    for (const auto& [name, c] : candidates) {
        if (c.role == PredicateRole::Begin) {
            pairs[pair_key(name)].begin = &c;
        } else if (c.role == PredicateRole::End) {
            pairs[pair_key(name)].end = &c;
        }
    }
    const Pair* best_pair = nullptr;
    for (const auto& [key, p] : pairs) {
        if (!best_pair || p.sim() > best_pair->sim() ||
            (p.sim() == best_pair->sim() && p.name() < best_pair->name()))
            best_pair = &p;
    }

    const bool use_pair =
        best_pair && (!best_point || best_pair->sim() >= best_point->sim);
    if (use_pair) {
        // one interval per compound instance
        std::map<std::string, std::pair<std::optional<TimePoint>, std::optional<TimePoint>>>
            by_compound;
        auto gather = [&](const Candidate* c, bool is_begin) {
            if (!c) return;
            for (std::size_t i : c->fact_idx) {
                const Fact& f = store.fact(i);
                const auto* tp = std::get_if<TimePoint>(&f.object);
                if (!tp) continue;
                const std::string key = f.compound ? *f.compound : "@" + std::to_string(i);
                auto& slot = by_compound[key];
                if (is_begin && !slot.first) slot.first = *tp;
                if (!is_begin && !slot.second) slot.second = *tp;
            }
        };
        gather(best_pair->begin, true);
        gather(best_pair->end, false);
        for (const auto& [key, slot] : by_compound)
            if (slot.first || slot.second) push_unique(Interval(slot.first, slot.second));
    } else if (best_point) {
        for (std::size_t i : best_point->fact_idx) {
            const Fact& f = store.fact(i);
            if (const auto* tp = std::get_if<TimePoint>(&f.object))
                push_unique(interval_from_point(*tp));
        }
    }
    return scopes;
}

}  // namespace tqa

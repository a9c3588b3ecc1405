// Core domain types: tokens, sentences, documents, mentions and entity sets.
#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coref/tree.hpp"
#include "coref/util.hpp"

namespace coref {

enum class Scheme { riddle, sonar };

inline const char* to_string(Scheme s) {
    return s == Scheme::riddle ? "riddle" : "sonar";
}

inline Scheme scheme_from_string(const std::string& s) {
    if (s == "riddle") return Scheme::riddle;
    if (s == "sonar") return Scheme::sonar;
    throw data_error("unknown scheme '" + s + "' (expected riddle or sonar)");
}

enum class SurfaceType : uint8_t { name, nominal, pronoun };

inline const char* to_string(SurfaceType t) {
    switch (t) {
        case SurfaceType::name: return "name";
        case SurfaceType::nominal: return "nominal";
        default: return "pronoun";
    }
}

enum class Gender : uint8_t { unknown, masc, fem, neuter };
enum class GrNumber : uint8_t { unknown, sg, pl };
enum class Animacy : uint8_t { unknown, animate, inanimate };
enum class Person : uint8_t { unknown, p1, p2, p3 };

struct AgreementFeatures {
    Gender gender = Gender::unknown;
    GrNumber number = GrNumber::unknown;
    Animacy animacy = Animacy::unknown;
    Person person = Person::unknown;

    bool operator==(const AgreementFeatures&) const = default;
};

// Identity of a mention inside one document: exact span match is the unit
// of mention alignment everywhere.
struct MentionKey {
    int sentence = 0;
    int start = 0;  // token span, inclusive
    int end = 0;

    auto operator<=>(const MentionKey&) const = default;
};

struct Mention {
    int sentence = 0;
    int start = 0;
    int end = 0;          // inclusive
    int min_start = -1;   // minimal span; -1 means "same as span"
    int min_end = -1;
    int head = -1;        // token index within the sentence; -1 = not computed
    bool head_fallback = false;
    SurfaceType type = SurfaceType::nominal;
    bool type_known = false;
    AgreementFeatures features;
    std::string text;

    MentionKey key() const { return MentionKey{sentence, start, end}; }
    int minimal_start() const { return min_start < 0 ? start : min_start; }
    int minimal_end() const { return min_end < 0 ? end : min_end; }
    int size() const { return end - start + 1; }
};

struct Entity {
    int id = 0;
    std::vector<Mention> mentions;  // document order
    AgreementFeatures features;     // accumulated over members

    int size() const { return static_cast<int>(mentions.size()); }
};

// A partition of a document's mentions into entities.
struct EntitySet {
    std::vector<Entity> entities;

    size_t mention_count() const {
        size_t n = 0;
        for (const auto& e : entities) n += e.mentions.size();
        return n;
    }

    std::set<MentionKey> mention_keys() const {
        std::set<MentionKey> keys;
        for (const auto& e : entities)
            for (const auto& m : e.mentions) keys.insert(m.key());
        return keys;
    }
};

struct NerSpan {
    int start = 0;
    int end = 0;  // inclusive
    std::string label;
};

struct Token {
    int index = 0;  // 0-based position in the sentence
    std::string form;
    std::string pos;
    std::string parse_bit = "*";
    std::string ner_bit = "*";
    std::string coref_bit = "-";
};

struct Sentence {
    std::vector<Token> tokens;
    std::shared_ptr<const TreeNode> parse;  // absent when parse bits are all "*"
    std::vector<NerSpan> ner_spans;

    int size() const { return static_cast<int>(tokens.size()); }

    std::string text(int start, int end) const {
        std::string out;
        for (int t = start; t <= end && t < size(); ++t) {
            if (t > start) out += ' ';
            out += tokens[t].form;
        }
        return out;
    }
};

struct Document {
    std::string id;
    std::optional<int> part;
    std::optional<std::string> genre;
    std::vector<Sentence> sentences;
    std::optional<EntitySet> entities;  // gold annotation on input, system output on write

    std::string display_id() const {
        if (part) return id + "#" + std::to_string(*part);
        return id;
    }

    size_t token_count() const {
        size_t n = 0;
        for (const auto& s : sentences) n += s.tokens.size();
        return n;
    }
};

struct Corpus {
    std::vector<Document> documents;
    std::optional<std::string> split_label;  // train / dev / test

    const Document* find(const std::string& display_id) const {
        for (const auto& d : documents)
            if (d.display_id() == display_id) return &d;
        return nullptr;
    }
};

// Genre heuristic for corpora whose files carry no genre column: path-style
// ids use their first component, SoNaR-style "WR-P-E-C-0000000021" ids their
// alphabetic prefix, and anything else defaults to the single label "novel".
inline std::string derive_genre(const std::string& doc_id) {
    auto slash = doc_id.find('/');
    if (slash != std::string::npos && slash > 0) return doc_id.substr(0, slash);
    size_t tail = doc_id.size();
    while (tail > 0 && std::isdigit(static_cast<unsigned char>(doc_id[tail - 1]))) --tail;
    if (tail > 1 && tail < doc_id.size() && (doc_id[tail - 1] == '-' || doc_id[tail - 1] == '_'))
        return doc_id.substr(0, tail - 1);
    return "novel";
}

}  // namespace coref

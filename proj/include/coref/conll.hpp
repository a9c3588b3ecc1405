// CoNLL-2012 coreference file format: parsing, validation and writing.
//
// Layout notes (matching the shared-task conventions):
//   - "#begin document (<id>); part <n>" ... "#end document" delimit documents;
//     the "; part" suffix is optional on input and preserved on output.
//   - blank lines separate sentences; token lines are whitespace-split columns:
//     doc id, part, token index, form, POS, parse bit, ..., NER (column 10),
//     coreference in the last column.
//   - coreference bits are "-" or "|"-joined items "(k", "k)", "(k)" with
//     numeric entity ids; spans never cross sentence boundaries.
#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "coref/types.hpp"
#include "coref/util.hpp"

namespace coref {

namespace detail {

struct OpenBracket {
    int entity_id;
    int start_token;
};

inline std::vector<NerSpan> parse_ner_bits(const std::vector<std::string>& bits,
                                           const std::string& where) {
    std::vector<NerSpan> spans;
    std::optional<NerSpan> open;
    for (size_t t = 0; t < bits.size(); ++t) {
        std::string bit = bits[t];
        if (bit == "*" || bit == "-") continue;
        size_t i = 0;
        if (bit[i] == '(') {
            if (open)
                throw data_error("nested NER span in " + where);
            size_t j = i + 1;
            while (j < bit.size() && bit[j] != '*' && bit[j] != ')') ++j;
            open = NerSpan{static_cast<int>(t), static_cast<int>(t), bit.substr(i + 1, j - i - 1)};
            i = j;
        }
        for (; i < bit.size(); ++i) {
            if (bit[i] == ')') {
                if (!open) throw data_error("unopened NER close in " + where);
                open->end = static_cast<int>(t);
                spans.push_back(*open);
                open.reset();
            }
        }
    }
    if (open)
        throw data_error("NER span (" + open->label + " never closed in " + where);
    return spans;
}

}  // namespace detail

// Incrementally decodes the coreference column of one document.
// Spans must close within their sentence (CoNLL-2012 convention).
class CorefColumnDecoder {
  public:
    explicit CorefColumnDecoder(std::string doc_label) : doc_(std::move(doc_label)) {}

    void token(int sentence, int tok, const std::string& bit) {
        if (bit == "-" || bit == "_" || bit.empty()) return;
        for (const std::string& item : util::split(bit, '|')) {
            if (item.empty())
                throw err(sentence, tok, "empty coreference item in '" + bit + "'");
            bool opens = item.front() == '(';
            bool closes = item.back() == ')';
            std::string id_str = item.substr(opens ? 1 : 0,
                                             item.size() - (opens ? 1 : 0) - (closes ? 1 : 0));
            if (!util::all_digits(id_str))
                throw err(sentence, tok, "non-numeric entity id '" + id_str + "'");
            int id = std::stoi(id_str);
            if (opens && closes) {
                add_mention(id, sentence, tok, tok);
            } else if (opens) {
                open_[id].push_back(tok);
            } else if (closes) {
                auto it = open_.find(id);
                if (it == open_.end() || it->second.empty())
                    throw err(sentence, tok, "close bracket for entity " + id_str +
                                                 " without matching open");
                int start = it->second.back();
                it->second.pop_back();
                add_mention(id, sentence, start, tok);
            } else {
                throw err(sentence, tok, "malformed coreference item '" + item + "'");
            }
        }
    }

    void end_sentence(int sentence) {
        for (const auto& [id, starts] : open_) {
            if (!starts.empty())
                throw err(sentence, starts.back(),
                          "coreference span for entity " + std::to_string(id) +
                              " never closed");
        }
        open_.clear();
    }

    // entity id -> mention spans, in document order of first occurrence
    const std::map<int, std::vector<MentionKey>>& mentions() const { return mentions_; }

  private:
    data_error err(int sentence, int tok, const std::string& msg) const {
        return data_error("document " + doc_ + ", sentence " + std::to_string(sentence) +
                          ", token " + std::to_string(tok) + ": " + msg);
    }

    void add_mention(int id, int sentence, int start, int end) {
        mentions_[id].push_back(MentionKey{sentence, start, end});
    }

    std::string doc_;
    std::unordered_map<int, std::vector<int>> open_;
    std::map<int, std::vector<MentionKey>> mentions_;
};

namespace detail {

inline EntitySet materialize_entities(const std::map<int, std::vector<MentionKey>>& raw,
                                      const Document& doc) {
    EntitySet set;
    std::map<MentionKey, int> owner;
    for (const auto& [id, keys] : raw) {
        Entity e;
        e.id = id;
        std::vector<MentionKey> sorted = keys;
        std::sort(sorted.begin(), sorted.end());
        for (size_t i = 0; i < sorted.size(); ++i) {
            const MentionKey& k = sorted[i];
            if (i > 0 && sorted[i - 1] == k)
                throw data_error("document " + doc.display_id() + ": span [" +
                                 std::to_string(k.sentence) + ":" + std::to_string(k.start) +
                                 "-" + std::to_string(k.end) + "] occurs twice in entity " +
                                 std::to_string(id));
            auto [it, fresh] = owner.emplace(k, id);
            if (!fresh)
                throw data_error("document " + doc.display_id() + ": span [" +
                                 std::to_string(k.sentence) + ":" + std::to_string(k.start) +
                                 "-" + std::to_string(k.end) + "] assigned to entities " +
                                 std::to_string(it->second) + " and " + std::to_string(id));
            Mention m;
            m.sentence = k.sentence;
            m.start = k.start;
            m.end = k.end;
            m.text = doc.sentences[k.sentence].text(k.start, k.end);
            e.mentions.push_back(std::move(m));
        }
        set.entities.push_back(std::move(e));
    }
    return set;
}

}  // namespace detail

inline Corpus parse_conll(std::istream& in) {
    Corpus corpus;
    std::unordered_set<std::string> seen_ids;

    std::string line;
    int lineno = 0;

    Document* doc = nullptr;
    std::optional<CorefColumnDecoder> decoder;
    std::vector<Token> tokens;

    auto fail = [&](const std::string& msg) -> void {
        throw data_error("line " + std::to_string(lineno) + ": " + msg);
    };

    auto flush_sentence = [&]() {
        if (tokens.empty()) return;
        Sentence s;
        s.tokens = std::move(tokens);
        tokens.clear();
        int sent_index = static_cast<int>(doc->sentences.size());
        std::string where = "document " + doc->display_id() + ", sentence " +
                            std::to_string(sent_index);
        std::vector<std::string> parse_bits, ner_bits;
        for (const auto& t : s.tokens) {
            parse_bits.push_back(t.parse_bit);
            ner_bits.push_back(t.ner_bit);
        }
        if (auto tree = build_parse_tree(parse_bits, where))
            s.parse = std::make_shared<TreeNode>(std::move(*tree));
        s.ner_spans = detail::parse_ner_bits(ner_bits, where);
        decoder->end_sentence(sent_index);
        doc->sentences.push_back(std::move(s));
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string trimmed = util::trim(line);

        if (trimmed.rfind("#begin document", 0) == 0) {
            if (doc) fail("#begin document before previous document ended");
            corpus.documents.emplace_back();
            doc = &corpus.documents.back();
            auto lp = trimmed.find('(');
            auto rp = trimmed.rfind(')');
            if (lp == std::string::npos || rp == std::string::npos || rp < lp)
                fail("malformed #begin document header: " + trimmed);
            doc->id = trimmed.substr(lp + 1, rp - lp - 1);
            auto part_pos = trimmed.find("part", rp);
            if (part_pos != std::string::npos) {
                std::string rest = util::trim(trimmed.substr(part_pos + 4));
                if (!util::all_digits(rest)) fail("malformed part number: " + trimmed);
                doc->part = std::stoi(rest);
            }
            if (!seen_ids.insert(doc->display_id()).second)
                fail("duplicate document id " + doc->display_id());
            decoder.emplace(doc->display_id());
            continue;
        }
        if (trimmed.rfind("#end document", 0) == 0) {
            if (!doc) fail("#end document without #begin document");
            flush_sentence();
            doc->entities = detail::materialize_entities(decoder->mentions(), *doc);
            doc = nullptr;
            decoder.reset();
            continue;
        }
        if (trimmed.empty()) {
            if (doc) flush_sentence();
            continue;
        }
        if (trimmed[0] == '#') continue;  // other comment lines
        if (!doc) fail("token line outside of a document: " + trimmed);

        std::vector<std::string> cols = util::split_ws(trimmed);
        if (cols.size() < 6)
            fail("document " + doc->display_id() + ": expected at least 6 columns, got " +
                 std::to_string(cols.size()));
        Token t;
        t.index = static_cast<int>(tokens.size());
        t.form = cols[3];
        t.pos = cols[4];
        t.parse_bit = cols[5];
        t.ner_bit = cols.size() >= 12 ? cols[10] : "*";
        t.coref_bit = cols.back();
        if (t.form.empty()) fail("empty token form");
        decoder->token(static_cast<int>(doc->sentences.size()), t.index, t.coref_bit);
        tokens.push_back(std::move(t));
    }
    if (doc)
        throw data_error("document " + doc->display_id() + " has no #end document");
    return corpus;
}

inline Corpus parse_conll(const std::string& text) {
    std::istringstream in(text);
    return parse_conll(in);
}

// Canonical per-token coreference bits for one document's entity set.
// Ordering rules make the column parse back with the usual LIFO pairing:
// closes (inner first), then opens (outer first), then single-token mentions.
inline std::vector<std::vector<std::string>> encode_coref_column(const Document& doc) {
    std::vector<std::vector<std::string>> bits(doc.sentences.size());
    for (size_t s = 0; s < doc.sentences.size(); ++s)
        bits[s].assign(doc.sentences[s].tokens.size(), "-");
    if (!doc.entities) return bits;

    struct Item {
        int id;
        MentionKey key;
    };
    std::map<MentionKey, std::vector<int>> seen;
    std::vector<Item> items;
    for (const auto& e : doc.entities->entities) {
        for (const auto& m : e.mentions) {
            MentionKey k = m.key();
            if (k.sentence < 0 || k.sentence >= static_cast<int>(doc.sentences.size()) ||
                k.start < 0 || k.end < k.start ||
                k.end >= doc.sentences[k.sentence].size())
                throw data_error("document " + doc.display_id() +
                                 ": mention span out of range");
            auto& owners = seen[k];
            if (std::find(owners.begin(), owners.end(), e.id) != owners.end())
                throw data_error("document " + doc.display_id() + ": entity " +
                                 std::to_string(e.id) + " contains span [" +
                                 std::to_string(k.sentence) + ":" + std::to_string(k.start) +
                                 "-" + std::to_string(k.end) + "] twice");
            owners.push_back(e.id);
            items.push_back({e.id, k});
        }
        // crossing spans within one entity cannot be encoded: the close
        // bracket pairs with the most recent open of the same id
        for (size_t i = 0; i < e.mentions.size(); ++i)
            for (size_t j = i + 1; j < e.mentions.size(); ++j) {
                const MentionKey a = e.mentions[i].key();
                const MentionKey b = e.mentions[j].key();
                if (a.sentence != b.sentence) continue;
                const MentionKey& lo = a.start <= b.start ? a : b;
                const MentionKey& hi = a.start <= b.start ? b : a;
                if (hi.start <= lo.end && hi.end > lo.end && hi.start > lo.start)
                    throw data_error("document " + doc.display_id() + ": entity " +
                                     std::to_string(e.id) +
                                     " holds crossing spans, not encodable in CoNLL");
            }
    }

    struct Part {
        std::vector<Item> closes, opens, selfs;
    };
    std::map<std::pair<int, int>, Part> per_token;  // (sentence, token)
    for (const auto& it : items) {
        if (it.key.start == it.key.end) {
            per_token[{it.key.sentence, it.key.start}].selfs.push_back(it);
        } else {
            per_token[{it.key.sentence, it.key.start}].opens.push_back(it);
            per_token[{it.key.sentence, it.key.end}].closes.push_back(it);
        }
    }
    for (auto& [pos, part] : per_token) {
        std::sort(part.closes.begin(), part.closes.end(), [](const Item& a, const Item& b) {
            if (a.key.start != b.key.start) return a.key.start > b.key.start;
            return a.id < b.id;
        });
        std::sort(part.opens.begin(), part.opens.end(), [](const Item& a, const Item& b) {
            if (a.key.end != b.key.end) return a.key.end > b.key.end;
            return a.id < b.id;
        });
        std::sort(part.selfs.begin(), part.selfs.end(),
                  [](const Item& a, const Item& b) { return a.id < b.id; });
        std::vector<std::string> pieces;
        for (const auto& it : part.closes) pieces.push_back(std::to_string(it.id) + ")");
        for (const auto& it : part.opens) pieces.push_back("(" + std::to_string(it.id));
        for (const auto& it : part.selfs)
            pieces.push_back("(" + std::to_string(it.id) + ")");
        bits[pos.first][pos.second] = util::join(pieces, "|");
    }
    return bits;
}

inline void write_conll(const Corpus& corpus, std::ostream& out) {
    for (const auto& doc : corpus.documents) {
        out << "#begin document (" << doc.id << ")";
        if (doc.part) out << "; part " << util::strprintf("%03d", *doc.part);
        out << "\n";
        auto coref = encode_coref_column(doc);
        std::string part_col = doc.part ? std::to_string(*doc.part) : "0";
        for (size_t s = 0; s < doc.sentences.size(); ++s) {
            const Sentence& sent = doc.sentences[s];
            for (int t = 0; t < sent.size(); ++t) {
                const Token& tok = sent.tokens[t];
                auto col = [](const std::string& v) { return v.empty() ? "-" : v; };
                out << doc.id << ' ' << part_col << ' ' << t << ' ' << tok.form << ' '
                    << col(tok.pos) << ' '
                    << (tok.parse_bit.empty() ? "*" : tok.parse_bit)
                    << " - - - - " << (tok.ner_bit.empty() ? "*" : tok.ner_bit) << ' '
                    << coref[s][t] << "\n";
            }
            out << "\n";
        }
        out << "#end document\n";
    }
}

inline std::string write_conll(const Corpus& corpus) {
    std::ostringstream out;
    write_conll(corpus, out);
    return out.str();
}

// Partition view used for comparisons: entity id -> sorted mention keys.
inline std::map<int, std::vector<MentionKey>> partition_view(const EntitySet& set) {
    std::map<int, std::vector<MentionKey>> view;
    for (const auto& e : set.entities) {
        auto& keys = view[e.id];
        for (const auto& m : e.mentions) keys.push_back(m.key());
        std::sort(keys.begin(), keys.end());
    }
    return view;
}

// Equality on everything the file format encodes. Raw coref bit strings are
// not compared (item order within a token is presentation); the entity
// partition, with ids, is.
inline bool semantically_equal(const Document& a, const Document& b) {
    if (a.id != b.id || a.part != b.part) return false;
    if (a.sentences.size() != b.sentences.size()) return false;
    for (size_t s = 0; s < a.sentences.size(); ++s) {
        const auto& sa = a.sentences[s];
        const auto& sb = b.sentences[s];
        if (sa.tokens.size() != sb.tokens.size()) return false;
        for (size_t t = 0; t < sa.tokens.size(); ++t) {
            const Token& ta = sa.tokens[t];
            const Token& tb = sb.tokens[t];
            if (ta.form != tb.form || ta.pos != tb.pos || ta.parse_bit != tb.parse_bit ||
                ta.ner_bit != tb.ner_bit)
                return false;
        }
    }
    bool ea = a.entities.has_value() && !a.entities->entities.empty();
    bool eb = b.entities.has_value() && !b.entities->entities.empty();
    if (ea != eb) return false;
    if (ea && partition_view(*a.entities) != partition_view(*b.entities)) return false;
    return true;
}

inline bool semantically_equal(const Corpus& a, const Corpus& b) {
    if (a.documents.size() != b.documents.size()) return false;
    for (size_t i = 0; i < a.documents.size(); ++i)
        if (!semantically_equal(a.documents[i], b.documents[i])) return false;
    return true;
}

}  // namespace coref

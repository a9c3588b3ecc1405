// Deterministic multi-pass (sieve) coreference resolution with quote
// speaker/addressee heuristics. Sieves only merge entities, never split;
// each pass runs over mentions in document order, so results are a pure
// function of (document, mentions, config).
#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coref/features.hpp"
#include "coref/mention.hpp"
#include "coref/types.hpp"

namespace coref {

inline const std::vector<std::string>& sieve_catalogue() {
    static const std::vector<std::string> names{
        "exact_match",       "precise_constructs", "strict_head_match",
        "relaxed_head_match", "proper_head_match", "pronoun_resolution"};
    return names;
}

struct SieveConfig {
    std::vector<std::string> sieves = sieve_catalogue();  // order is significant
    Scheme scheme = Scheme::riddle;
    int pronoun_window = 3;    // sentences: same + (window-1) previous
    int relaxed_window = 50;   // prior entities scanned by relaxed_head_match
    bool link_addressees = true;

    static SieveConfig all() { return SieveConfig{}; }
    static SieveConfig none() {
        SieveConfig c;
        c.sieves.clear();
        return c;
    }

    void validate() const {
        for (const auto& s : sieves)
            if (std::find(sieve_catalogue().begin(), sieve_catalogue().end(), s) ==
                sieve_catalogue().end())
                throw data_error("unknown sieve '" + s + "'");
    }
};

// Config file: one sieve name per line in order, plus optional
// "scheme=riddle|sonar", "window=N", "addressees=on|off" lines and '#'
// comments. The special name "none" yields an empty sieve list.
inline SieveConfig parse_sieve_config(std::istream& in) {
    SieveConfig config;
    config.sieves.clear();
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::string t = util::trim(line);
        if (t.empty()) continue;
        auto eq = t.find('=');
        if (eq != std::string::npos) {
            std::string key = util::trim(t.substr(0, eq));
            std::string val = util::trim(t.substr(eq + 1));
            if (key == "scheme")
                config.scheme = scheme_from_string(val);
            else if (key == "window")
                config.pronoun_window = std::stoi(val);
            else if (key == "relaxed_window")
                config.relaxed_window = std::stoi(val);
            else if (key == "addressees")
                config.link_addressees = (val == "on" || val == "true" || val == "1");
            else
                throw data_error("unknown sieve config key '" + key + "'");
            continue;
        }
        if (t == "none") continue;
        if (t == "all") {
            config.sieves = sieve_catalogue();
            continue;
        }
        config.sieves.push_back(t);
    }
    config.validate();
    return config;
}

struct QuoteSpan {
    // content range between the quote marks, inclusive
    int begin_sent = 0, begin_tok = 0;
    int end_sent = 0, end_tok = 0;
    std::optional<int> speaker;    // index into the mention list
    std::optional<int> addressee;  // index into the mention list
};

namespace detail {

struct DocFlat {
    std::vector<int> sent_offset;  // global index of each sentence's first token
    int total = 0;

    explicit DocFlat(const Document& doc) {
        sent_offset.reserve(doc.sentences.size());
        for (const auto& s : doc.sentences) {
            sent_offset.push_back(total);
            total += s.size();
        }
    }
    int flat(int sent, int tok) const { return sent_offset[sent] + tok; }
};

inline bool is_quote_mark(const std::string& form, bool& opener, bool& closer) {
    static const std::set<std::string> open_marks{"“", "„", "«", "‘", ",,"};
    static const std::set<std::string> close_marks{"”", "»", "’", "''"};
    if (open_marks.count(form)) {
        opener = true;
        closer = false;
        return true;
    }
    if (close_marks.count(form)) {
        opener = false;
        closer = true;
        return true;
    }
    if (form == "\"" || form == "'") {
        opener = closer = true;  // straight marks toggle
        return true;
    }
    return false;
}

}  // namespace detail

// Quote spans delimited by straight or typographic quote-mark tokens.
// An explicit opening mark while a quote is still open closes the previous
// quote just before it (CoNLL input has no paragraph boundaries); a quote
// still open at document end closes there. The speaker is the nearest
// speech-verb subject in the framing clause; unattributed turns alternate
// between the two most recent distinct speakers.
inline std::vector<QuoteSpan> detect_quotes(const Document& doc,
                                            const std::vector<Mention>& mentions,
                                            const Resources& res) {
    std::vector<QuoteSpan> quotes;

    struct Pos {
        int sent, tok;
    };
    std::optional<Pos> open_mark;
    auto prev_pos = [&](Pos p) -> Pos {
        if (p.tok > 0) return {p.sent, p.tok - 1};
        int s = p.sent - 1;
        while (s >= 0 && doc.sentences[s].size() == 0) --s;
        if (s < 0) return p;
        return {s, doc.sentences[s].size() - 1};
    };
    auto next_pos = [&](Pos p) -> std::optional<Pos> {
        if (p.tok + 1 < doc.sentences[p.sent].size()) return Pos{p.sent, p.tok + 1};
        int s = p.sent + 1;
        while (s < static_cast<int>(doc.sentences.size()) && doc.sentences[s].size() == 0) ++s;
        if (s >= static_cast<int>(doc.sentences.size())) return std::nullopt;
        return Pos{s, 0};
    };
    auto close_quote = [&](Pos open_at, Pos close_before) {
        auto begin = next_pos(open_at);
        if (!begin) return;
        Pos end = close_before;
        if (end.sent < begin->sent || (end.sent == begin->sent && end.tok < begin->tok))
            return;  // empty quote
        QuoteSpan q;
        q.begin_sent = begin->sent;
        q.begin_tok = begin->tok;
        q.end_sent = end.sent;
        q.end_tok = end.tok;
        quotes.push_back(q);
    };

    std::string open_form;
    for (int s = 0; s < static_cast<int>(doc.sentences.size()); ++s) {
        const Sentence& sent = doc.sentences[s];
        for (int t = 0; t < sent.size(); ++t) {
            const std::string& form = sent.tokens[t].form;
            bool opener = false, closer = false;
            if (!detail::is_quote_mark(form, opener, closer)) continue;
            Pos here{s, t};
            if (!open_mark) {
                if (opener) {
                    open_mark = here;
                    open_form = form;
                }
                continue;
            }
            // German-style pairs close a low quote with a high opener mark
            bool germanic_close = open_form == "„" && form == "“";
            if (closer || germanic_close) {
                close_quote(*open_mark, prev_pos(here));
                open_mark.reset();
            } else {
                // a fresh opener while open: previous quote lost its closer
                close_quote(*open_mark, prev_pos(here));
                open_mark = here;
                open_form = form;
            }
        }
    }
    if (open_mark && !doc.sentences.empty()) {
        int last_s = static_cast<int>(doc.sentences.size()) - 1;
        while (last_s >= 0 && doc.sentences[last_s].size() == 0) --last_s;
        if (last_s >= 0)
            close_quote(*open_mark, Pos{last_s, doc.sentences[last_s].size() - 1});
    }

    // speaker binding from the framing clause
    auto mentions_in = [&](int sent_i, int from, int to) {
        std::vector<int> out;
        for (size_t i = 0; i < mentions.size(); ++i)
            if (mentions[i].sentence == sent_i && mentions[i].start >= from &&
                mentions[i].end <= to)
                out.push_back(static_cast<int>(i));
        return out;
    };
    auto bind_speaker = [&](QuoteSpan& q) {
        const int nsent = static_cast<int>(doc.sentences.size());
        struct Segment {
            int sent, from, to;
        };
        std::vector<Segment> segments;
        if (q.end_tok + 2 < doc.sentences[q.end_sent].size())
            segments.push_back({q.end_sent, q.end_tok + 2,
                                doc.sentences[q.end_sent].size() - 1});
        else if (q.end_sent + 1 < nsent && doc.sentences[q.end_sent + 1].size() > 0) {
            // framing clause may start the next sentence: „...!" zei Jan.
            segments.push_back({q.end_sent + 1, 0,
                                doc.sentences[q.end_sent + 1].size() - 1});
        }
        if (q.begin_tok - 2 >= 0) segments.push_back({q.begin_sent, 0, q.begin_tok - 2});
        for (const auto& seg : segments) {
            const Sentence& sent = doc.sentences[seg.sent];
            for (int v = seg.from; v <= seg.to; ++v) {
                if (!res.speech_verbs.count(util::lower(sent.tokens[v].form))) continue;
                // inverted clause: verb then subject ("zei Jan")
                auto after = mentions_in(seg.sent, v + 1, std::min(seg.to, v + 3));
                for (int mi : after)
                    if (mentions[mi].start <= v + 2) {
                        q.speaker = mi;
                        return;
                    }
                // plain clause: subject then verb ("Jan zei")
                int best = -1;
                for (int mi : mentions_in(seg.sent, seg.from, v - 1))
                    if (best < 0 || mentions[mi].end > mentions[best].end) best = mi;
                if (best >= 0) {
                    q.speaker = best;
                    return;
                }
            }
        }
    };
    for (auto& q : quotes) bind_speaker(q);

    // alternation over dialogue turns; participant identity at this level is
    // the normalized mention string (the resolver redoes this with entities)
    auto participant = [&](int mi) { return normalize_mention_text(mentions[mi].text, res); };
    std::deque<int> recent;  // mention indices of the two most recent distinct speakers
    auto note_speaker = [&](int mi) {
        std::string p = participant(mi);
        for (auto it = recent.begin(); it != recent.end();)
            if (participant(*it) == p)
                it = recent.erase(it);
            else
                ++it;
        recent.push_front(mi);
        while (recent.size() > 2) recent.pop_back();
    };
    for (auto& q : quotes) {
        if (!q.speaker && recent.size() == 2) q.speaker = recent[1];  // the other voice
        if (q.speaker) {
            if (recent.size() >= 1 && participant(recent[0]) != participant(*q.speaker))
                q.addressee = recent[0];
            note_speaker(*q.speaker);
            if (!q.addressee && recent.size() == 2) q.addressee = recent[1];
        }
    }
    return quotes;
}

struct MergeEvent {
    std::string sieve;
    int from_mention = 0;  // mention whose entity was absorbed
    int into_mention = 0;
    AgreementFeatures from_features, into_features;
};

struct ResolveTrace {
    int initial_entities = 0;
    std::vector<std::pair<std::string, int>> entity_counts;  // after each pass
    std::vector<MergeEvent> merges;
};

namespace detail {

class Resolver {
  public:
    Resolver(const Document& doc, std::vector<Mention> mentions, const SieveConfig& config,
             const Resources& res, ResolveTrace* trace)
        : doc_(doc),
          mentions_(std::move(mentions)),
          config_(config),
          res_(res),
          trace_(trace) {
        sort_mentions();
        parent_.resize(mentions_.size());
        feats_.resize(mentions_.size());
        for (size_t i = 0; i < mentions_.size(); ++i) {
            parent_[i] = static_cast<int>(i);
            if (mentions_[i].head < 0)
                finish_mention(mentions_[i], doc_.sentences.at(mentions_[i].sentence),
                               res_.policy);
            mentions_[i].features =
                assign_features(mentions_[i], doc_.sentences.at(mentions_[i].sentence), res_);
            feats_[i] = mentions_[i].features;
        }
    }

    EntitySet run() {
        if (trace_) trace_->initial_entities = entity_count();
        for (const std::string& sieve : config_.sieves) {
            if (sieve == "exact_match") pass_exact_match();
            else if (sieve == "precise_constructs") pass_precise_constructs();
            else if (sieve == "strict_head_match") pass_head_match(HeadMatch::strict);
            else if (sieve == "relaxed_head_match") pass_head_match(HeadMatch::relaxed);
            else if (sieve == "proper_head_match") pass_head_match(HeadMatch::proper);
            else if (sieve == "pronoun_resolution") pass_pronouns();
            else throw data_error("unknown sieve '" + sieve + "'");
            if (trace_) trace_->entity_counts.emplace_back(sieve, entity_count());
        }
        return finalize();
    }

  private:
    enum class HeadMatch { strict, relaxed, proper };

    void sort_mentions() {
        std::sort(mentions_.begin(), mentions_.end(), [](const Mention& a, const Mention& b) {
            if (a.sentence != b.sentence) return a.sentence < b.sentence;
            if (a.start != b.start) return a.start < b.start;
            return a.end > b.end;
        });
    }

    int find(int i) const {
        while (parent_[i] != i) i = parent_[i];
        return i;
    }

    // roots stay at the smallest mention index of their entity
    bool merge(int a, int b, const char* sieve, bool check_compat) {
        int ra = find(a), rb = find(b);
        if (ra == rb) return false;
        if (check_compat && !compatible(feats_[ra], feats_[rb])) return false;
        int keep = std::min(ra, rb), drop = std::max(ra, rb);
        if (trace_)
            trace_->merges.push_back(
                {sieve, drop, keep, feats_[drop], feats_[keep]});
        parent_[drop] = keep;
        feats_[keep] = merge_features(feats_[keep], feats_[drop]);
        return true;
    }

    int entity_count() const {
        int n = 0;
        for (size_t i = 0; i < parent_.size(); ++i)
            if (find(static_cast<int>(i)) == static_cast<int>(i)) ++n;
        return n;
    }

    const Sentence& sent_of(const Mention& m) const { return doc_.sentences[m.sentence]; }

    bool is_pronoun(int i) const { return mentions_[i].type == SurfaceType::pronoun; }

    std::string norm(int i) const { return normalize_mention_text(mentions_[i].text, res_); }

    bool nested(int i, int j) const {
        const Mention& a = mentions_[i];
        const Mention& b = mentions_[j];
        if (a.sentence != b.sentence) return false;
        return (a.start >= b.start && a.end <= b.end) ||
               (b.start >= a.start && b.end <= a.end);
    }

    std::string head_form(int i) const {
        const Mention& m = mentions_[i];
        return util::lower(sent_of(m).tokens[m.head].form);
    }

    // -------- sieve 1: exact match --------------------------------------
    // Identical normalized strings of non-pronouns always merge; this keeps
    // the exact-match closure property no matter what the features say.
    void pass_exact_match() {
        std::map<std::string, int> first;
        for (size_t i = 0; i < mentions_.size(); ++i) {
            if (is_pronoun(static_cast<int>(i))) continue;
            std::string key = norm(static_cast<int>(i));
            if (key.empty()) continue;
            auto [it, fresh] = first.emplace(key, static_cast<int>(i));
            if (!fresh) merge(it->second, static_cast<int>(i), "exact_match", false);
        }
    }

    // -------- sieve 2: appositives and predicate nominatives ------------
    void pass_precise_constructs() {
        for (size_t j = 0; j < mentions_.size(); ++j) {
            const Mention& b = mentions_[j];
            if (b.type == SurfaceType::pronoun) continue;
            for (size_t i = 0; i < j; ++i) {
                const Mention& a = mentions_[i];
                if (a.sentence != b.sentence) continue;
                if (nested(static_cast<int>(i), static_cast<int>(j))) continue;
                if (is_appositive(a, b) || is_predicate_nominative(a, b)) {
                    merge(static_cast<int>(i), static_cast<int>(j), "precise_constructs",
                          true);
                    break;
                }
            }
        }
    }

    bool is_appositive(const Mention& a, const Mention& b) const {
        // [Jan] , [de burgemeester] ,  -- appositive NP right after a comma,
        // itself closed off by a comma or the sentence end
        if (a.type == SurfaceType::pronoun || b.type != SurfaceType::nominal) return false;
        const Sentence& sent = doc_.sentences[a.sentence];
        if (a.end + 2 != b.start) return false;
        if (sent.tokens[a.end + 1].form != ",") return false;
        int after = b.end + 1;
        if (after < sent.size() && sent.tokens[after].form != "," &&
            !res_.policy.is_verb(sent.tokens[after].pos))
            return false;
        return true;
    }

    bool is_predicate_nominative(const Mention& a, const Mention& b) const {
        // [A] is/was/werd [B] -- copular link
        if (b.type == SurfaceType::pronoun) return false;
        const Sentence& sent = doc_.sentences[a.sentence];
        int v = a.end + 1;
        if (v >= sent.size()) return false;
        if (!res_.copulas.count(util::lower(sent.tokens[v].form))) return false;
        return b.start == v + 1 || b.start == v + 2;
    }

    // -------- sieves 3-5: head matching ----------------------------------
    std::set<std::string> content_words(const Mention& m) const {
        std::set<std::string> out;
        const Sentence& sent = doc_.sentences[m.sentence];
        for (int t = m.start; t <= m.end; ++t) {
            const Token& tok = sent.tokens[t];
            if (res_.policy.is_det(tok.pos) || res_.policy.is_prep(tok.pos) ||
                res_.policy.is_conj(tok.pos) || res_.policy.is_punct(tok.pos))
                continue;
            std::string f = util::lower(tok.form);
            if (res_.articles.count(f)) continue;
            out.insert(f);
        }
        return out;
    }

    std::set<std::string> entity_content_words(int root) const {
        std::set<std::string> out;
        for (size_t i = 0; i < mentions_.size(); ++i)
            if (find(static_cast<int>(i)) == root) {
                auto w = content_words(mentions_[i]);
                out.insert(w.begin(), w.end());
            }
        return out;
    }

    std::set<std::string> modifier_digits(const Mention& m) const {
        std::set<std::string> out;
        const Sentence& sent = doc_.sentences[m.sentence];
        for (int t = m.start; t <= m.end; ++t)
            if (util::all_digits(sent.tokens[t].form)) out.insert(sent.tokens[t].form);
        return out;
    }

    static const std::set<std::string>& location_modifiers() {
        static const std::set<std::string> words{
            "noord",      "zuid",      "oost",      "west",     "noordelijk",
            "zuidelijk",  "oostelijk", "westelijk", "noordelijke", "zuidelijke",
            "oostelijke", "westelijke", "boven", "beneden", "binnen", "buiten"};
        return words;
    }

    std::set<std::string> modifier_locations(const Mention& m) const {
        std::set<std::string> out;
        const Sentence& sent = doc_.sentences[m.sentence];
        for (int t = m.start; t <= m.end; ++t) {
            std::string f = util::lower(sent.tokens[t].form);
            if (location_modifiers().count(f)) out.insert(f);
        }
        return out;
    }

    bool modifiers_clash(const Mention& a, int root_b) const {
        auto da = modifier_digits(a);
        auto la = modifier_locations(a);
        for (size_t i = 0; i < mentions_.size(); ++i) {
            if (find(static_cast<int>(i)) != root_b) continue;
            auto db = modifier_digits(mentions_[i]);
            if (!da.empty() && !db.empty() && da != db) return true;
            auto lb = modifier_locations(mentions_[i]);
            if (!la.empty() && !lb.empty() && la != lb) return true;
        }
        return false;
    }

    void pass_head_match(HeadMatch kind) {
        const char* name = kind == HeadMatch::strict   ? "strict_head_match"
                           : kind == HeadMatch::relaxed ? "relaxed_head_match"
                                                        : "proper_head_match";
        for (size_t j = 0; j < mentions_.size(); ++j) {
            if (is_pronoun(static_cast<int>(j))) continue;
            const Mention& m = mentions_[j];
            if (kind == HeadMatch::proper &&
                !res_.policy.is_proper(sent_of(m).tokens[m.head].pos))
                continue;
            std::string head = head_form(static_cast<int>(j));

            // all prior mentions, nearest first; the relaxed window counts
            // distinct prior entities
            std::set<int> windowed_roots;
            bool merged = false;
            for (int i = static_cast<int>(j) - 1; i >= 0 && !merged; --i) {
                int root = find(i);
                if (root == find(static_cast<int>(j))) continue;
                if (kind == HeadMatch::relaxed && windowed_roots.insert(root).second &&
                    static_cast<int>(windowed_roots.size()) > config_.relaxed_window)
                    break;
                if (is_pronoun(i)) continue;
                if (nested(i, static_cast<int>(j))) continue;
                if (head_form(i) != head) continue;
                const Mention& c = mentions_[i];
                if (kind == HeadMatch::proper &&
                    !res_.policy.is_proper(sent_of(c).tokens[c.head].pos))
                    continue;
                if (kind == HeadMatch::strict) {
                    auto mine = content_words(m);
                    auto theirs = entity_content_words(root);
                    if (!std::includes(theirs.begin(), theirs.end(), mine.begin(),
                                       mine.end()))
                        continue;
                }
                if (modifiers_clash(m, root)) continue;
                merged = merge(i, static_cast<int>(j), name, true);
            }
        }
    }

    // -------- sieve 6: pronouns ------------------------------------------
    bool is_subject(const Mention& m) const {
        if (m.start == 0) return true;
        const Sentence& sent = doc_.sentences[m.sentence];
        return m.end + 1 < sent.size() && res_.policy.is_verb(sent.tokens[m.end + 1].pos);
    }

    bool in_quote(const Mention& m, const std::vector<QuoteSpan>& quotes,
                  const QuoteSpan** which = nullptr) const {
        for (const auto& q : quotes) {
            bool after_begin = m.sentence > q.begin_sent ||
                               (m.sentence == q.begin_sent && m.start >= q.begin_tok);
            bool before_end = m.sentence < q.end_sent ||
                              (m.sentence == q.end_sent && m.end <= q.end_tok);
            if (after_begin && before_end) {
                if (which) *which = &q;
                return true;
            }
        }
        return false;
    }

    void pass_pronouns() {
        std::vector<QuoteSpan> quotes = detect_quotes(doc_, mentions_, res_);
        refine_quote_roles(quotes);

        for (size_t j = 0; j < mentions_.size(); ++j) {
            if (!is_pronoun(static_cast<int>(j))) continue;
            const Mention& m = mentions_[j];
            Person person = mentions_[j].features.person;

            const QuoteSpan* q = nullptr;
            bool quoted = in_quote(m, quotes, &q);
            if (person == Person::p1 || person == Person::p2) {
                if (quoted && person == Person::p1 && q->speaker) {
                    merge(*q->speaker, static_cast<int>(j), "pronoun_resolution", true);
                    continue;
                }
                if (quoted && person == Person::p2 && config_.link_addressees &&
                    q->addressee) {
                    merge(*q->addressee, static_cast<int>(j), "pronoun_resolution", true);
                    continue;
                }
                // no binding: chain to the most recent same-person pronoun in
                // the same narration/quotation layer
                for (int i = static_cast<int>(j) - 1; i >= 0; --i)
                    if (is_pronoun(i) && mentions_[i].features.person == person &&
                        in_quote(mentions_[i], quotes) == quoted) {
                        merge(i, static_cast<int>(j), "pronoun_resolution", true);
                        break;
                    }
                continue;
            }

            // relative pronoun attaches to the NP it directly follows
            if (is_relative_form(sent_of(m).tokens[m.head].form)) {
                bool linked = false;
                for (size_t i = 0; i < j; ++i) {
                    const Mention& c = mentions_[i];
                    if (c.sentence == m.sentence && c.end == m.start - 1 &&
                        !is_pronoun(static_cast<int>(i)))
                        if (merge(static_cast<int>(i), static_cast<int>(j),
                                  "pronoun_resolution", true)) {
                            linked = true;
                            break;
                        }
                }
                if (linked) continue;
            }

            bool reflexive = is_reflexive_form(sent_of(m).tokens[m.head].form);
            int max_dist = reflexive ? 1 : config_.pronoun_window;

            bool merged = false;
            for (int dist = 0; dist < max_dist && !merged; ++dist) {
                int target_sent = m.sentence - dist;
                if (target_sent < 0) break;
                std::vector<int> subjects, others;
                for (int i = static_cast<int>(j) - 1; i >= 0; --i) {
                    const Mention& c = mentions_[i];
                    if (c.sentence != target_sent) continue;
                    if (dist == 0 && c.start >= m.start) continue;
                    if (nested(i, static_cast<int>(j))) continue;
                    (is_subject(c) ? subjects : others).push_back(i);
                }
                for (int i : subjects)
                    if ((merged = merge(i, static_cast<int>(j), "pronoun_resolution", true)))
                        break;
                if (merged) break;
                if (reflexive) continue;  // reflexives bind to subjects only
                for (int i : others)
                    if ((merged = merge(i, static_cast<int>(j), "pronoun_resolution", true)))
                        break;
            }
        }
    }

    // alternation and addressees over entity roots (names merged by earlier
    // sieves count as one participant)
    void refine_quote_roles(std::vector<QuoteSpan>& quotes) {
        std::deque<int> recent;  // roots
        auto note = [&](int root) {
            for (auto it = recent.begin(); it != recent.end();)
                if (*it == root)
                    it = recent.erase(it);
                else
                    ++it;
            recent.push_front(root);
            while (recent.size() > 2) recent.pop_back();
        };
        auto mention_of_root = [&](int root) -> std::optional<int> {
            for (size_t i = 0; i < mentions_.size(); ++i)
                if (find(static_cast<int>(i)) == root) return static_cast<int>(i);
            return std::nullopt;
        };
        for (auto& q : quotes) {
            std::optional<int> root;
            if (q.speaker) root = find(*q.speaker);
            if (!root && recent.size() == 2) {
                root = recent[1];
                q.speaker = mention_of_root(*root);
            }
            if (!root) continue;
            q.addressee.reset();
            if (!recent.empty() && recent[0] != *root)
                q.addressee = mention_of_root(recent[0]);
            note(*root);
            if (!q.addressee && recent.size() == 2) q.addressee = mention_of_root(recent[1]);
        }
    }

    EntitySet finalize() const {
        std::map<int, std::vector<int>> groups;  // root -> mention indices
        for (size_t i = 0; i < mentions_.size(); ++i)
            groups[find(static_cast<int>(i))].push_back(static_cast<int>(i));
        EntitySet set;
        int next_id = 0;
        for (const auto& [root, members] : groups) {
            Entity e;
            e.id = next_id++;
            e.features = feats_[root];
            for (int i : members) e.mentions.push_back(mentions_[i]);
            set.entities.push_back(std::move(e));
        }
        return set;
    }

    const Document& doc_;
    std::vector<Mention> mentions_;
    SieveConfig config_;
    const Resources& res_;
    ResolveTrace* trace_;
    std::vector<int> parent_;
    std::vector<AgreementFeatures> feats_;
};

}  // namespace detail

// Entity-centric multi-pass resolution. Starts from all-singletons, applies
// the configured sieves in order (merge-only), and returns entities numbered
// in document order of their first mention.
inline EntitySet resolve(const Document& doc, std::vector<Mention> mentions,
                         const SieveConfig& config, const Resources& res,
                         ResolveTrace* trace = nullptr) {
    config.validate();
    detail::Resolver r(doc, std::move(mentions), config, res, trace);
    return r.run();
}

}  // namespace coref

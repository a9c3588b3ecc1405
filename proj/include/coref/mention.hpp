// Mention detection over constituency parses: NP/pronoun/NER span harvesting,
// head finding, minimal spans, pleonastic-pronoun filtering and the
// annotation-scheme filter.
#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "coref/features.hpp"
#include "coref/lexicon.hpp"
#include "coref/types.hpp"

namespace coref {

// lowercase, strip leading articles, collapse whitespace
inline std::string normalize_mention_text(const std::string& text,
                                          const Resources& res) {
    std::vector<std::string> words = util::split_ws(util::lower(text));
    size_t skip = 0;
    while (skip < words.size() && res.articles.count(words[skip])) ++skip;
    if (skip == words.size()) skip = 0;  // a bare article keeps its form
    return util::join({words.begin() + skip, words.end()}, " ");
}

struct HeadResult {
    int index = -1;
    bool fallback = false;
};

namespace detail {

// Flat head rule: rightmost nominal token before the first preposition,
// relative pronoun or subordinating boundary that follows a nominal.
inline HeadResult flat_head(const Sentence& sent, int start, int end,
                            const TagPolicy& policy) {
    int cut = end;
    bool seen_nominal = false;
    for (int t = start; t <= end; ++t) {
        const std::string& pos = sent.tokens[t].pos;
        if (seen_nominal &&
            (policy.is_prep(pos) ||
             (policy.is_pronoun(pos) && is_relative_form(sent.tokens[t].form)))) {
            cut = t - 1;
            break;
        }
        if (policy.is_nominal_tag(pos)) seen_nominal = true;
    }
    for (int t = cut; t >= start; --t)
        if (policy.is_nominal_tag(sent.tokens[t].pos)) return {t, false};
    for (int t = end; t >= start; --t)
        if (policy.is_nominal_tag(sent.tokens[t].pos)) return {t, false};
    return {end, true};
}

inline const TreeNode* find_node(const TreeNode& root, int start, int end,
                                 const TagPolicy& policy) {
    const TreeNode* best = nullptr;
    for (const TreeNode* n : all_nodes(root))
        if (n->start == start && n->end == end && policy.is_np_label(n->label))
            if (!best) best = n;
    return best;
}

}  // namespace detail

// Rightmost noun/pronoun/proper-noun token on the constituent's head path:
// material after a post-nominal preposition or relative pronoun is modifier
// territory and never supplies the head. A constituent without any nominal
// token falls back to its last token, flagged.
inline HeadResult head_of(const TreeNode& node, const Sentence& sent,
                          const TagPolicy& policy) {
    return detail::flat_head(sent, node.start, node.end, policy);
}

inline HeadResult head_of_span(const Sentence& sent, int start, int end,
                               const TagPolicy& policy) {
    if (sent.parse)
        if (const TreeNode* n = detail::find_node(*sent.parse, start, end, policy))
            return head_of(*n, sent, policy);
    return detail::flat_head(sent, start, end, policy);
}

// Minimal span: trailing PP modifiers and relative clauses after the head are
// stripped; the head always stays inside.
inline MentionKey minimal_span(const TreeNode& node, int head, const Sentence& sent,
                               const TagPolicy& policy) {
    int min_end = node.end;
    // tree-aware: cut before the first post-head PP / relative-clause child
    for (const TreeNode& c : node.children) {
        if (c.start <= head) continue;
        if (policy.is_pp_label(c.label) || policy.is_relclause_label(c.label)) {
            min_end = c.start - 1;
            break;
        }
    }
    // flat fallback: cut before the first post-head preposition or relative pronoun
    for (int t = head + 1; t <= min_end; ++t) {
        const Token& tok = sent.tokens[t];
        if (policy.is_prep(tok.pos) ||
            (policy.is_pronoun(tok.pos) && is_relative_form(tok.form)) ||
            (tok.form == "," && t + 1 <= min_end &&
             is_relative_form(sent.tokens[t + 1].form))) {
            min_end = t - 1;
            break;
        }
    }
    min_end = std::max(min_end, head);
    // drop trailing punctuation
    while (min_end > head && policy.is_punct(sent.tokens[min_end].pos)) --min_end;
    return MentionKey{0, node.start, min_end};
}

inline MentionKey minimal_span_of(const Sentence& sent, int start, int end, int head,
                                  const TagPolicy& policy) {
    if (sent.parse)
        if (const TreeNode* n = detail::find_node(*sent.parse, start, end, policy))
            return minimal_span(*n, head, sent, policy);
    TreeNode flat;
    flat.start = start;
    flat.end = end;
    return minimal_span(flat, head, sent, policy);
}

inline SurfaceType classify_span(const Sentence& sent, int head,
                                 const TagPolicy& policy) {
    const std::string& pos = sent.tokens[head].pos;
    if (policy.is_pronoun(pos)) return SurfaceType::pronoun;
    for (const NerSpan& n : sent.ner_spans)
        if (n.start <= head && head <= n.end) return SurfaceType::name;
    if (policy.is_proper(pos)) return SurfaceType::name;
    return SurfaceType::nominal;
}

// classify_mention_type: pronoun by head POS, name by NER/proper-noun head,
// nominal otherwise. Throws when the head index is out of range.
inline SurfaceType classify_mention_type(const Mention& mention, const Sentence& sent,
                                         const TagPolicy& policy) {
    int head = mention.head;
    if (head < 0) head = detail::flat_head(sent, mention.start, mention.end, policy).index;
    if (head < mention.start || head > mention.end || head >= sent.size())
        throw data_error("mention head index " + std::to_string(head) +
                         " outside span [" + std::to_string(mention.start) + "," +
                         std::to_string(mention.end) + "]");
    return classify_span(sent, head, policy);
}

// True for the neuter expletive "het" in a listed construction (weather verbs,
// clefts, fixed expressions). Ambiguous bare "het" follows
// res.default_het_pleonastic, which defaults to treating it as non-referring.
inline bool is_pleonastic(const Mention& pronoun, const Sentence& sent,
                          const Resources& res) {
    if (pronoun.start != pronoun.end) return false;
    std::string form = util::lower(sent.tokens[pronoun.start].form);
    if (form != "het") return false;
    std::vector<std::string> forms;
    forms.reserve(sent.tokens.size());
    for (const auto& t : sent.tokens) forms.push_back(util::lower(t.form));
    if (res.pleonastic.matches_after(forms, pronoun.start + 1)) return true;
    return res.default_het_pleonastic;
}

namespace detail {

inline void finish_mention(Mention& m, const Sentence& sent, const TagPolicy& policy) {
    HeadResult h = head_of_span(sent, m.start, m.end, policy);
    m.head = h.index;
    m.head_fallback = h.fallback;
    MentionKey ms = minimal_span_of(sent, m.start, m.end, m.head, policy);
    m.min_start = ms.start;
    m.min_end = ms.end;
    m.type = classify_span(sent, m.head, policy);
    m.type_known = true;
    m.text = sent.text(m.start, m.end);
}

}  // namespace detail

// Fills head / minimal span / surface type / text on mentions that lack them
// (e.g. gold mentions fresh from parse_conll).
inline void enrich_mentions(EntitySet& set, const Document& doc, const Resources& res) {
    for (Entity& e : set.entities)
        for (Mention& m : e.mentions) {
            if (m.head >= 0 && m.type_known) continue;
            const Sentence& sent = doc.sentences.at(m.sentence);
            detail::finish_mention(m, sent, res.policy);
            m.features = assign_features(m, sent, res);
        }
}

// All NP constituents, pronoun tokens and NER spans, deduplicated by span and
// ordered by (sentence, start, end descending). Pleonastic pronouns are
// dropped under the riddle scheme and kept under sonar.
inline std::vector<Mention> detect_mentions(const Document& doc, Scheme scheme,
                                            const Resources& res) {
    std::vector<Mention> out;
    for (size_t si = 0; si < doc.sentences.size(); ++si) {
        const Sentence& sent = doc.sentences[si];
        if (!sent.parse)
            throw data_error("document " + doc.display_id() + ": sentence " +
                             std::to_string(si) + " has no parse tree");
        std::set<std::pair<int, int>> spans;
        for (const TreeNode* n : all_nodes(*sent.parse))
            if (res.policy.is_np_label(n->label)) spans.insert({n->start, n->end});
        for (int t = 0; t < sent.size(); ++t)
            if (res.policy.is_pronoun(sent.tokens[t].pos)) spans.insert({t, t});
        for (const NerSpan& n : sent.ner_spans) spans.insert({n.start, n.end});

        std::vector<Mention> here;
        for (auto [start, end] : spans) {
            Mention m;
            m.sentence = static_cast<int>(si);
            m.start = start;
            m.end = end;
            detail::finish_mention(m, sent, res.policy);
            m.features = assign_features(m, sent, res);
            if (scheme == Scheme::riddle && m.type == SurfaceType::pronoun &&
                is_pleonastic(m, sent, res))
                continue;
            here.push_back(std::move(m));
        }
        std::sort(here.begin(), here.end(), [](const Mention& a, const Mention& b) {
            if (a.start != b.start) return a.start < b.start;
            return a.end > b.end;
        });
        for (auto& m : here) out.push_back(std::move(m));
    }
    return out;
}

// Adjusts a detected mention list and its entity partition to an annotation
// scheme: sonar keeps all markables on full constituent spans; riddle drops
// non-referring pronouns and narrows spans to the corrected (minimal)
// boundaries. Entities that lose every mention disappear.
inline std::pair<std::vector<Mention>, EntitySet> scheme_filter(
    const std::vector<Mention>& mentions, const EntitySet& entities, Scheme scheme,
    const Document& doc, const Resources& res) {
    std::set<MentionKey> dropped;
    std::map<MentionKey, MentionKey> respan;

    if (scheme == Scheme::riddle) {
        for (const Mention& m : mentions) {
            const Sentence& sent = doc.sentences.at(m.sentence);
            if (m.type == SurfaceType::pronoun && is_pleonastic(m, sent, res)) {
                dropped.insert(m.key());
                continue;
            }
            if (m.minimal_start() != m.start || m.minimal_end() != m.end)
                respan[m.key()] = MentionKey{m.sentence, m.minimal_start(), m.minimal_end()};
        }
    }

    auto rewrite = [&](Mention m) -> Mention {
        auto it = respan.find(m.key());
        if (it != respan.end()) {
            m.start = it->second.start;
            m.end = it->second.end;
            m.min_start = -1;
            m.min_end = -1;
            m.text = doc.sentences.at(m.sentence).text(m.start, m.end);
        }
        return m;
    };

    std::vector<Mention> kept;
    std::set<MentionKey> seen;
    for (const Mention& m : mentions) {
        if (dropped.count(m.key())) continue;
        Mention r = rewrite(m);
        if (!seen.insert(r.key()).second) continue;  // boundary collisions collapse
        kept.push_back(std::move(r));
    }

    EntitySet filtered;
    std::set<MentionKey> claimed;
    for (const Entity& e : entities.entities) {
        Entity ne;
        ne.id = e.id;
        ne.features = e.features;
        for (const Mention& m : e.mentions) {
            if (dropped.count(m.key())) continue;
            Mention r = rewrite(m);
            if (!claimed.insert(r.key()).second) continue;
            ne.mentions.push_back(std::move(r));
        }
        if (!ne.mentions.empty()) filtered.entities.push_back(std::move(ne));
    }
    return {std::move(kept), std::move(filtered)};
}

}  // namespace coref

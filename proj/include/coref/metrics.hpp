// Coreference evaluation: mention alignment, MUC, B-cubed, CEAFe, LEA, the
// CoNLL average, singleton filtering and score reports.
//
// Every metric is computed as numerator/denominator pairs per document so
// corpus scores micro-average by summing counts across documents.
#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "coref/assignment.hpp"
#include "coref/types.hpp"
#include "coref/util.hpp"

namespace coref {

enum class SingletonMode { included, excluded };
enum class MentionMode { predicted, gold };

inline const char* to_string(SingletonMode m) {
    return m == SingletonMode::included ? "included" : "excluded";
}
inline const char* to_string(MentionMode m) {
    return m == MentionMode::predicted ? "predicted" : "gold";
}

struct PRFScore {
    double recall = 0.0;
    double precision = 0.0;
    double f1 = 0.0;
    bool degenerate = false;  // no gradable material on either side (e.g. MUC
                              // over all-singleton partitions)
};

inline PRFScore make_prf(double rn, double rd, double pn, double pd) {
    PRFScore s;
    s.recall = rd > 0.0 ? rn / rd : 0.0;
    s.precision = pd > 0.0 ? pn / pd : 0.0;
    s.f1 = (s.recall + s.precision) > 0.0
               ? 2.0 * s.recall * s.precision / (s.recall + s.precision)
               : 0.0;
    s.degenerate = (rd == 0.0 && pd == 0.0);
    return s;
}

// Numerator/denominator pairs for one metric on one document.
struct MetricCounts {
    double rec_num = 0.0, rec_den = 0.0;
    double prec_num = 0.0, prec_den = 0.0;

    MetricCounts& operator+=(const MetricCounts& o) {
        rec_num += o.rec_num;
        rec_den += o.rec_den;
        prec_num += o.prec_num;
        prec_den += o.prec_den;
        return *this;
    }
    PRFScore prf() const { return make_prf(rec_num, rec_den, prec_num, prec_den); }
};

namespace detail {

// partition as sorted key clusters + key -> cluster index
struct Partition {
    std::vector<std::vector<MentionKey>> clusters;
    std::map<MentionKey, int> cluster_of;

    explicit Partition(const EntitySet& set) {
        for (const auto& e : set.entities) {
            std::vector<MentionKey> keys;
            keys.reserve(e.mentions.size());
            for (const auto& m : e.mentions) keys.push_back(m.key());
            std::sort(keys.begin(), keys.end());
            int idx = static_cast<int>(clusters.size());
            for (const auto& k : keys) cluster_of.emplace(k, idx);
            clusters.push_back(std::move(keys));
        }
    }

    // index of the cluster containing k, or -1 when k is unmatched
    int find(const MentionKey& k) const {
        auto it = cluster_of.find(k);
        return it == cluster_of.end() ? -1 : it->second;
    }
};

}  // namespace detail

struct MentionAlignment {
    std::vector<MentionKey> matched;
    std::vector<MentionKey> missing;  // gold-only
    std::vector<MentionKey> extra;    // sys-only
    MetricCounts counts;              // matched / |gold| / matched / |sys|
};

// Exact span matching between the two sides' mention sets.
inline MentionAlignment align_mentions(const EntitySet& gold, const EntitySet& sys) {
    std::set<MentionKey> gold_keys = gold.mention_keys();
    std::set<MentionKey> sys_keys = sys.mention_keys();
    MentionAlignment a;
    for (const auto& k : gold_keys)
        (sys_keys.count(k) ? a.matched : a.missing).push_back(k);
    for (const auto& k : sys_keys)
        if (!gold_keys.count(k)) a.extra.push_back(k);
    a.counts.rec_num = a.counts.prec_num = static_cast<double>(a.matched.size());
    a.counts.rec_den = static_cast<double>(gold_keys.size());
    a.counts.prec_den = static_cast<double>(sys_keys.size());
    return a;
}

// MUC: link-based. Recall sums |S| - |partition of S by sys| over key
// entities (mentions absent from sys count as their own parts); precision is
// the same with the roles swapped.
inline MetricCounts muc_counts(const EntitySet& gold, const EntitySet& sys) {
    detail::Partition g(gold), s(sys);
    auto side = [](const detail::Partition& key, const detail::Partition& resp,
                   double& num, double& den) {
        for (const auto& cluster : key.clusters) {
            std::set<int> parts;
            int unmatched = 0;
            for (const auto& k : cluster) {
                int c = resp.find(k);
                if (c < 0)
                    ++unmatched;
                else
                    parts.insert(c);
            }
            int pieces = static_cast<int>(parts.size()) + unmatched;
            num += static_cast<double>(static_cast<int>(cluster.size()) - pieces);
            den += static_cast<double>(cluster.size() - 1);
        }
    };
    MetricCounts c;
    side(g, s, c.rec_num, c.rec_den);
    side(s, g, c.prec_num, c.prec_den);
    return c;
}

inline PRFScore muc(const EntitySet& gold, const EntitySet& sys) {
    return muc_counts(gold, sys).prf();
}

// B-cubed: per-mention cluster overlap. A mention the other side lacks is
// treated as a singleton on that side.
inline MetricCounts b_cubed_counts(const EntitySet& gold, const EntitySet& sys) {
    detail::Partition g(gold), s(sys);
    auto side = [](const detail::Partition& key, const detail::Partition& resp,
                   double& num, double& den) {
        for (const auto& cluster : key.clusters) {
            for (const auto& k : cluster) {
                int c = resp.find(k);
                double inter;
                if (c < 0) {
                    inter = 1.0;  // an unmatched mention finds only itself
                } else {
                    const auto& other = resp.clusters[c];
                    inter = 0.0;
                    for (const auto& m : other)
                        if (std::binary_search(cluster.begin(), cluster.end(), m))
                            inter += 1.0;
                }
                num += inter / static_cast<double>(cluster.size());
                den += 1.0;
            }
        }
    };
    MetricCounts c;
    side(g, s, c.rec_num, c.rec_den);
    side(s, g, c.prec_num, c.prec_den);
    return c;
}

inline PRFScore b_cubed(const EntitySet& gold, const EntitySet& sys) {
    return b_cubed_counts(gold, sys).prf();
}

// CEAFe: optimal one-to-one entity alignment under phi4(K,R) =
// 2|K cap R| / (|K| + |R|).
inline MetricCounts ceaf_e_counts(const EntitySet& gold, const EntitySet& sys) {
    detail::Partition g(gold), s(sys);
    const size_t ng = g.clusters.size(), ns = s.clusters.size();
    MetricCounts c;
    c.rec_den = static_cast<double>(ng);
    c.prec_den = static_cast<double>(ns);
    if (ng == 0 || ns == 0) return c;
    std::vector<std::vector<double>> phi(ng, std::vector<double>(ns, 0.0));
    for (size_t i = 0; i < ng; ++i)
        for (size_t j = 0; j < ns; ++j) {
            double inter = 0.0;
            for (const auto& k : s.clusters[j])
                if (std::binary_search(g.clusters[i].begin(), g.clusters[i].end(), k))
                    inter += 1.0;
            phi[i][j] = 2.0 * inter /
                        static_cast<double>(g.clusters[i].size() + s.clusters[j].size());
        }
    double total = max_weight_assignment(phi);
    c.rec_num = c.prec_num = total;
    return c;
}

inline PRFScore ceaf_e(const EntitySet& gold, const EntitySet& sys) {
    return ceaf_e_counts(gold, sys).prf();
}

// LEA: link-based entity-aware. Each key entity contributes its size times
// the fraction of its links resolved in the response; links(e) is
// |e|(|e|-1)/2 for |e| >= 2 and one self-link for singletons. A self-link
// resolves only when the mention is a singleton on both sides.
inline MetricCounts lea_counts(const EntitySet& gold, const EntitySet& sys) {
    detail::Partition g(gold), s(sys);
    auto side = [](const detail::Partition& key, const detail::Partition& resp,
                   double& num, double& den) {
        for (const auto& cluster : key.clusters) {
            double size = static_cast<double>(cluster.size());
            double resolved = 0.0, links = 0.0;
            if (cluster.size() == 1) {
                links = 1.0;
                int c = resp.find(cluster[0]);
                if (c >= 0 && resp.clusters[c].size() == 1) resolved = 1.0;
            } else {
                links = size * (size - 1.0) / 2.0;
                for (size_t a = 0; a < cluster.size(); ++a)
                    for (size_t b = a + 1; b < cluster.size(); ++b) {
                        int ca = resp.find(cluster[a]);
                        int cb = resp.find(cluster[b]);
                        if (ca >= 0 && ca == cb) resolved += 1.0;
                    }
            }
            num += size * (resolved / links);
            den += size;
        }
    };
    MetricCounts c;
    side(g, s, c.rec_num, c.rec_den);
    side(s, g, c.prec_num, c.prec_den);
    return c;
}

inline PRFScore lea(const EntitySet& gold, const EntitySet& sys) {
    return lea_counts(gold, sys).prf();
}

// CoNLL score: arithmetic mean of the MUC, B-cubed and CEAFe F1 values.
inline double conll_score(const PRFScore& muc_s, const PRFScore& b3_s,
                          const PRFScore& ceafe_s) {
    return (muc_s.f1 + b3_s.f1 + ceafe_s.f1) / 3.0;
}

// Drops entities of size one.
inline EntitySet filter_singletons(const EntitySet& set) {
    EntitySet out;
    for (const auto& e : set.entities)
        if (e.mentions.size() > 1) out.entities.push_back(e);
    return out;
}

struct ScoreReport {
    PRFScore mention, muc, b3, ceafe, lea;
    double conll = 0.0;
    SingletonMode singleton_mode = SingletonMode::included;
    MentionMode mention_mode = MentionMode::predicted;
};

// All counts needed to assemble a report; summable across documents.
struct ScoreCounts {
    MetricCounts mention, muc, b3, ceafe, lea;

    ScoreCounts& operator+=(const ScoreCounts& o) {
        mention += o.mention;
        muc += o.muc;
        b3 += o.b3;
        ceafe += o.ceafe;
        lea += o.lea;
        return *this;
    }
};

inline ScoreCounts score_counts(const EntitySet& gold, const EntitySet& sys,
                                SingletonMode singletons) {
    const EntitySet* g = &gold;
    const EntitySet* s = &sys;
    EntitySet gf, sf;
    if (singletons == SingletonMode::excluded) {
        gf = filter_singletons(gold);
        sf = filter_singletons(sys);
        g = &gf;
        s = &sf;
    }
    ScoreCounts c;
    c.mention = align_mentions(*g, *s).counts;
    c.muc = muc_counts(*g, *s);
    c.b3 = b_cubed_counts(*g, *s);
    c.ceafe = ceaf_e_counts(*g, *s);
    c.lea = lea_counts(*g, *s);
    return c;
}

inline ScoreReport report_from_counts(const ScoreCounts& c, SingletonMode singletons,
                                      MentionMode mentions) {
    ScoreReport r;
    r.mention = c.mention.prf();
    r.muc = c.muc.prf();
    r.b3 = c.b3.prf();
    r.ceafe = c.ceafe.prf();
    r.lea = c.lea.prf();
    r.conll = conll_score(r.muc, r.b3, r.ceafe);
    r.singleton_mode = singletons;
    r.mention_mode = mentions;
    return r;
}

inline ScoreReport score(const EntitySet& gold, const EntitySet& sys,
                         SingletonMode singletons = SingletonMode::included,
                         MentionMode mentions = MentionMode::predicted) {
    return report_from_counts(score_counts(gold, sys, singletons), singletons, mentions);
}

namespace detail {

inline const EntitySet& entities_or_throw(const Document& doc) {
    if (!doc.entities)
        throw data_error("document " + doc.display_id() + " has no coreference annotation");
    return *doc.entities;
}

}  // namespace detail

// Pairs documents of two corpora by display id; unmatched ids are an error.
inline std::vector<std::pair<const Document*, const Document*>> pair_documents(
    const Corpus& gold, const Corpus& sys) {
    std::map<std::string, const Document*> sys_by_id;
    for (const auto& d : sys.documents) sys_by_id[d.display_id()] = &d;
    std::vector<std::pair<const Document*, const Document*>> pairs;
    std::vector<std::string> unmatched;
    for (const auto& d : gold.documents) {
        auto it = sys_by_id.find(d.display_id());
        if (it == sys_by_id.end()) {
            unmatched.push_back(d.display_id());
            continue;
        }
        pairs.emplace_back(&d, it->second);
        sys_by_id.erase(it);
    }
    for (const auto& [id, d] : sys_by_id) unmatched.push_back(id);
    if (!unmatched.empty())
        throw data_error("documents not present on both sides: " +
                         util::join(unmatched, ", "));
    return pairs;
}

// Micro-averaged corpus score: counts summed over documents.
inline ScoreReport score_corpus(const Corpus& gold, const Corpus& sys,
                                SingletonMode singletons = SingletonMode::included,
                                MentionMode mentions = MentionMode::predicted) {
    ScoreCounts total;
    for (auto [g, s] : pair_documents(gold, sys))
        total += score_counts(detail::entities_or_throw(*g),
                              detail::entities_or_throw(*s), singletons);
    return report_from_counts(total, singletons, mentions);
}

// ---- report rendering ----------------------------------------------------

inline std::string format_score_report(const ScoreReport& r,
                                       const std::string& title = {}) {
    std::string out;
    if (!title.empty()) out += "# " + title + "\n";
    out += util::strprintf("# singletons=%s mentions=%s\n", to_string(r.singleton_mode),
                           to_string(r.mention_mode));
    util::TextTable t;
    t.add_row({"metric", "R", "P", "F1"});
    auto row = [&](const char* name, const PRFScore& s) {
        t.add_row({name, util::fmt2(s.recall * 100.0), util::fmt2(s.precision * 100.0),
                   util::fmt2(s.f1 * 100.0)});
    };
    row("mentions", r.mention);
    row("muc", r.muc);
    row("b3", r.b3);
    row("ceafe", r.ceafe);
    row("lea", r.lea);
    t.add_row({"conll", "", "", util::fmt2(r.conll * 100.0)});
    out += t.render({1, 2, 3});
    if (r.muc.degenerate) out += "# note: muc degenerate (no multi-mention entities)\n";
    return out;
}

// machine-readable: one metric per line, tab-separated
inline std::string score_report_kv(const ScoreReport& r) {
    std::string out;
    out += std::string("singleton_mode\t") + to_string(r.singleton_mode) + "\n";
    out += std::string("mention_mode\t") + to_string(r.mention_mode) + "\n";
    auto kv = [&](const char* name, const PRFScore& s) {
        out += util::strprintf("%s_recall\t%.2f\n", name, s.recall * 100.0);
        out += util::strprintf("%s_precision\t%.2f\n", name, s.precision * 100.0);
        out += util::strprintf("%s_f1\t%.2f\n", name, s.f1 * 100.0);
    };
    kv("mention", r.mention);
    kv("muc", r.muc);
    kv("b3", r.b3);
    kv("ceafe", r.ceafe);
    kv("lea", r.lea);
    out += util::strprintf("conll\t%.2f\n", r.conll * 100.0);
    return out;
}

}  // namespace coref

// Experiment procedures: truncation/length-correlation study, per-document
// comparison tables, condition grids and gold-annotation audits.
#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coref/mention.hpp"
#include "coref/metrics.hpp"
#include "coref/types.hpp"
#include "coref/util.hpp"

namespace coref {

// Cuts both documents at the sentence boundary nearest to fraction% of the
// words (ties resolve toward the shorter document; at least one sentence
// survives). Entities are restricted to surviving mentions and empty
// entities dropped. Gold and system are cut identically, so truncation
// introduces no new errors.
inline std::pair<Document, Document> truncate_pair(const Document& gold,
                                                   const Document& sys, double fraction) {
    if (!(fraction > 0.0) || fraction > 100.0)
        throw data_error("truncation fraction must be in (0, 100], got " +
                         util::fmt2(fraction));
    if (gold.sentences.size() != sys.sentences.size())
        throw data_error("documents " + gold.display_id() + " and " + sys.display_id() +
                         " differ in sentence count");
    for (size_t s = 0; s < gold.sentences.size(); ++s)
        if (gold.sentences[s].size() != sys.sentences[s].size())
            throw data_error("documents " + gold.display_id() + " and " +
                             sys.display_id() + " differ in sentence " + std::to_string(s));

    const size_t nsent = gold.sentences.size();
    const double total = static_cast<double>(gold.token_count());
    const double target = fraction / 100.0 * total;
    size_t best_k = nsent;
    double best_diff = -1.0;
    double words = 0.0;
    for (size_t k = 1; k <= nsent; ++k) {
        words += static_cast<double>(gold.sentences[k - 1].size());
        double diff = std::abs(words - target);
        if (best_diff < 0.0 || diff < best_diff) {  // ties keep the smaller k
            best_diff = diff;
            best_k = k;
        }
    }

    auto cut = [&](const Document& doc) {
        Document out;
        out.id = doc.id;
        out.part = doc.part;
        out.genre = doc.genre;
        out.sentences.assign(doc.sentences.begin(),
                             doc.sentences.begin() + static_cast<long>(best_k));
        if (doc.entities) {
            EntitySet set;
            for (const auto& e : doc.entities->entities) {
                Entity ne;
                ne.id = e.id;
                ne.features = e.features;
                for (const auto& m : e.mentions)
                    if (m.sentence < static_cast<int>(best_k)) ne.mentions.push_back(m);
                if (!ne.mentions.empty()) set.entities.push_back(std::move(ne));
            }
            out.entities = std::move(set);
        }
        return out;
    };
    return {cut(gold), cut(sys)};
}

struct CorrelationResult {
    double r = 0.0;
    size_t n = 0;
    bool degenerate = false;  // zero variance on an axis
};

inline CorrelationResult length_correlation(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2)
        throw data_error("correlation needs at least 2 points, got " +
                         std::to_string(points.size()));
    CorrelationResult out;
    out.n = points.size();
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : points) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(points.size());
    my /= static_cast<double>(points.size());
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
        sxy += (x - mx) * (y - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) {
        out.degenerate = true;
        out.r = 0.0;
        return out;
    }
    out.r = sxy / std::sqrt(sxx * syy);
    return out;
}

inline double metric_value(const ScoreReport& r, const std::string& name) {
    static const std::map<std::string, double ScoreReport::*> scalars{
        {"conll", &ScoreReport::conll}};
    if (auto it = scalars.find(name); it != scalars.end()) return r.*(it->second) * 100.0;
    auto pick = [&](const PRFScore& s, const std::string& suffix) {
        if (suffix == "f1") return s.f1 * 100.0;
        if (suffix == "recall" || suffix == "r") return s.recall * 100.0;
        if (suffix == "precision" || suffix == "p") return s.precision * 100.0;
        throw data_error("unknown metric component '" + suffix + "'");
    };
    auto us = name.rfind('_');
    if (us == std::string::npos) throw data_error("unknown metric '" + name + "'");
    std::string base = name.substr(0, us), suffix = name.substr(us + 1);
    if (base == "lea") return pick(r.lea, suffix);
    if (base == "muc") return pick(r.muc, suffix);
    if (base == "b3") return pick(r.b3, suffix);
    if (base == "ceafe") return pick(r.ceafe, suffix);
    if (base == "mention" || base == "mentions") return pick(r.mention, suffix);
    throw data_error("unknown metric '" + name + "'");
}

struct TruncationPoint {
    std::string doc_id;
    double fraction = 0.0;
    long words = 0;
    ScoreReport score;
};

struct TruncationStudy {
    std::vector<TruncationPoint> points;               // sorted by (doc, fraction)
    std::vector<std::string> metrics;
    std::map<std::string, CorrelationResult> correlation;  // score vs. absolute length
};

// For every (document, fraction): truncate the aligned pair and score it.
// Correlations relate each metric to the absolute truncated word count.
inline TruncationStudy run_truncation_study(const Corpus& gold, const Corpus& sys,
                                            const std::vector<double>& fractions,
                                            const std::vector<std::string>& metrics,
                                            SingletonMode singletons = SingletonMode::included) {
    TruncationStudy study;
    study.metrics = metrics;
    for (auto [g, s] : pair_documents(gold, sys)) {
        for (double f : fractions) {
            auto [tg, ts] = truncate_pair(*g, *s, f);
            TruncationPoint p;
            p.doc_id = g->display_id();
            p.fraction = f;
            p.words = static_cast<long>(tg.token_count());
            p.score = score(tg.entities ? *tg.entities : EntitySet{},
                            ts.entities ? *ts.entities : EntitySet{}, singletons);
            study.points.push_back(std::move(p));
        }
    }
    for (const std::string& m : metrics) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : study.points)
            pts.emplace_back(static_cast<double>(p.words), metric_value(p.score, m));
        if (pts.size() >= 2) study.correlation[m] = length_correlation(pts);
    }
    return study;
}

// tab-separated study table with correlation summary as trailing comments
inline std::string format_truncation_study(const TruncationStudy& study) {
    std::string out = "doc_id\tfraction\twords\tmetric\tvalue\n";
    for (const auto& p : study.points)
        for (const auto& m : study.metrics)
            out += p.doc_id + "\t" + util::fmt1(p.fraction) + "\t" +
                   std::to_string(p.words) + "\t" + m + "\t" +
                   util::fmt2(metric_value(p.score, m)) + "\n";
    for (const auto& [m, c] : study.correlation) {
        out += "# pearson_r\t" + m + "\t" + (c.degenerate ? "nan" : util::strprintf("%.4f", c.r)) +
               "\tn=" + std::to_string(c.n);
        if (c.degenerate) out += "\t(zero variance)";
        out += "\n";
    }
    return out;
}

// ---- per-document comparison table ----------------------------------------

struct PerDocumentRow {
    std::string doc_id;
    std::string system;
    ScoreReport score;
    bool best_lea = false;
    bool best_conll = false;
};

inline std::vector<PerDocumentRow> per_document_table(
    const Corpus& gold, const std::vector<std::pair<std::string, const Corpus*>>& outputs,
    SingletonMode singletons = SingletonMode::included) {
    std::vector<PerDocumentRow> rows;
    for (const auto& gd : gold.documents) {
        size_t first_row = rows.size();
        for (const auto& [name, sys] : outputs) {
            const Document* sd = sys->find(gd.display_id());
            if (!sd)
                throw data_error("system '" + name + "' lacks document " + gd.display_id());
            PerDocumentRow row;
            row.doc_id = gd.display_id();
            row.system = name;
            row.score = score(detail::entities_or_throw(gd), detail::entities_or_throw(*sd),
                              singletons);
            rows.push_back(std::move(row));
        }
        // flag the best LEA F1 and best CoNLL per document
        if (rows.size() > first_row) {
            size_t best_l = first_row, best_c = first_row;
            for (size_t i = first_row; i < rows.size(); ++i) {
                if (rows[i].score.lea.f1 > rows[best_l].score.lea.f1) best_l = i;
                if (rows[i].score.conll > rows[best_c].score.conll) best_c = i;
            }
            rows[best_l].best_lea = true;
            rows[best_c].best_conll = true;
        }
    }
    return rows;
}

inline std::string format_per_document_table(const std::vector<PerDocumentRow>& rows,
                                             SingletonMode singletons) {
    std::string out = util::strprintf("# singletons=%s mentions=predicted\n",
                                      to_string(singletons));
    util::TextTable t;
    t.add_row({"document", "system", "ment_R", "ment_P", "ment_F1", "lea_R", "lea_P",
               "lea_F1", "conll"});
    for (const auto& r : rows) {
        auto pct = [](double v) { return util::fmt2(v * 100.0); };
        t.add_row({r.doc_id, r.system, pct(r.score.mention.recall),
                   pct(r.score.mention.precision), pct(r.score.mention.f1),
                   pct(r.score.lea.recall), pct(r.score.lea.precision),
                   pct(r.score.lea.f1) + (r.best_lea ? "*" : ""),
                   pct(r.score.conll) + (r.best_conll ? "*" : "")});
    }
    out += t.render({2, 3, 4, 5, 6, 7, 8});
    out += "# * best per document\n";
    return out;
}

// ---- condition grid ---------------------------------------------------------

struct GridCell {
    MentionMode mentions;
    SingletonMode singletons;
    ScoreReport score;
};

// {predicted, gold mentions} x {included, excluded singletons}. The
// gold-mention rows need a resolver run seeded with gold mention spans.
inline std::vector<GridCell> condition_grid(const Corpus& gold, const Corpus& sys_predicted,
                                            const Corpus* sys_gold_mentions = nullptr) {
    std::vector<GridCell> cells;
    for (SingletonMode sm : {SingletonMode::excluded, SingletonMode::included}) {
        GridCell c{MentionMode::predicted, sm,
                   score_corpus(gold, sys_predicted, sm, MentionMode::predicted)};
        cells.push_back(std::move(c));
    }
    if (sys_gold_mentions) {
        for (SingletonMode sm : {SingletonMode::excluded, SingletonMode::included}) {
            GridCell c{MentionMode::gold, sm,
                       score_corpus(gold, *sys_gold_mentions, sm, MentionMode::gold)};
            cells.push_back(std::move(c));
        }
    }
    return cells;
}

inline std::string format_condition_grid(const std::vector<GridCell>& cells) {
    util::TextTable t;
    t.add_row({"mentions", "singletons", "mentions_F1", "lea_F1", "conll"});
    for (const auto& c : cells) {
        auto pct = [](double v) { return util::fmt2(v * 100.0); };
        t.add_row({to_string(c.mentions), to_string(c.singletons), pct(c.score.mention.f1),
                   pct(c.score.lea.f1), pct(c.score.conll)});
    }
    return t.render({2, 3, 4});
}

// ---- gold-annotation audit -------------------------------------------------

enum class AuditKind { unlinked_exact_match, suspicious_boundary };

inline const char* to_string(AuditKind k) {
    return k == AuditKind::unlinked_exact_match ? "unlinked_exact_match"
                                                : "suspicious_boundary";
}

struct AuditFinding {
    AuditKind kind;
    std::string doc_id;
    Mention a;
    std::optional<Mention> b;
    int entity_a = -1;
    int entity_b = -1;
};

// Flags (1) name/nominal mentions with identical normalized strings living in
// different entities -- one finding per (string, entity pair) -- and
// (2) mentions containing a coordinating conjunction strictly inside the span
// after the head.
inline std::vector<AuditFinding> audit_annotations(const Corpus& gold,
                                                   const Resources& res) {
    std::vector<AuditFinding> findings;
    for (const auto& doc : gold.documents) {
        if (!doc.entities) continue;
        EntitySet set = *doc.entities;
        enrich_mentions(set, doc, res);

        // normalized string -> entity id -> first mention
        std::map<std::string, std::map<int, const Mention*>> by_norm;
        for (const auto& e : set.entities)
            for (const auto& m : e.mentions) {
                if (m.type == SurfaceType::pronoun) continue;
                std::string key = normalize_mention_text(m.text, res);
                if (key.empty()) continue;
                by_norm[key].emplace(e.id, &m);
            }
        for (const auto& [norm, owners] : by_norm) {
            if (owners.size() < 2) continue;
            for (auto i = owners.begin(); i != owners.end(); ++i)
                for (auto j = std::next(i); j != owners.end(); ++j) {
                    AuditFinding f;
                    f.kind = AuditKind::unlinked_exact_match;
                    f.doc_id = doc.display_id();
                    f.a = *i->second;
                    f.b = *j->second;
                    f.entity_a = i->first;
                    f.entity_b = j->first;
                    findings.push_back(std::move(f));
                }
        }

        for (const auto& e : set.entities)
            for (const auto& m : e.mentions) {
                const Sentence& sent = doc.sentences.at(m.sentence);
                for (int t = m.start + 1; t < m.end; ++t) {
                    if (m.head >= t) continue;
                    std::string form = util::lower(sent.tokens[t].form);
                    if (!res.coord_conjunctions.count(form) &&
                        !res.policy.is_conj(sent.tokens[t].pos))
                        continue;
                    if (!res.coord_conjunctions.count(form)) continue;
                    AuditFinding f;
                    f.kind = AuditKind::suspicious_boundary;
                    f.doc_id = doc.display_id();
                    f.a = m;
                    f.entity_a = e.id;
                    findings.push_back(std::move(f));
                    break;
                }
            }
    }
    return findings;
}

inline std::string format_audit(const std::vector<AuditFinding>& findings) {
    std::string out;
    auto span = [](const Mention& m) {
        return util::strprintf("%d:%d-%d", m.sentence, m.start, m.end);
    };
    for (const auto& f : findings) {
        out += std::string(to_string(f.kind)) + "\t" + f.doc_id + "\t" + span(f.a) + "\t" +
               f.a.text;
        if (f.b)
            out += "\tentity " + std::to_string(f.entity_a) + " vs " +
                   std::to_string(f.entity_b) + "\t" + span(*f.b) + "\t" + f.b->text;
        out += "\n";
    }
    return out;
}

}  // namespace coref

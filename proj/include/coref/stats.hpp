// Corpus statistics (dataset-description style) and stratified splitting.
#pragma once

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "coref/mention.hpp"
#include "coref/types.hpp"
#include "coref/util.hpp"

namespace coref {

struct StatsReport {
    long n_documents = 0;
    long n_sentences = 0;
    long n_tokens = 0;
    double sents_per_doc = 0.0;
    double avg_sent_len = 0.0;
    long n_mentions = 0;
    long n_entities = 0;
    double mentions_per_token = 0.0;
    double mentions_per_entity = 0.0;
    double entities_per_token = 0.0;
    double pct_pronouns = 0.0;
    double pct_nominal = 0.0;
    double pct_names = 0.0;
};

// Counts are over gold mentions/entities, singletons included. Mention
// surface types come from classify_mention_type. System outputs are never
// counted here.
inline StatsReport corpus_stats(const Corpus& corpus, const Resources& res) {
    StatsReport r;
    long pron = 0, nom = 0, name = 0;
    for (const auto& doc : corpus.documents) {
        ++r.n_documents;
        r.n_sentences += static_cast<long>(doc.sentences.size());
        r.n_tokens += static_cast<long>(doc.token_count());
        if (!doc.entities)
            throw data_error("document " + doc.display_id() +
                             " has no gold annotation; stats need gold entities");
        for (const auto& e : doc.entities->entities) {
            ++r.n_entities;
            for (const auto& m : e.mentions) {
                ++r.n_mentions;
                switch (classify_mention_type(m, doc.sentences.at(m.sentence), res.policy)) {
                    case SurfaceType::pronoun: ++pron; break;
                    case SurfaceType::name: ++name; break;
                    case SurfaceType::nominal: ++nom; break;
                }
            }
        }
    }
    if (r.n_documents > 0) r.sents_per_doc = double(r.n_sentences) / double(r.n_documents);
    if (r.n_sentences > 0) r.avg_sent_len = double(r.n_tokens) / double(r.n_sentences);
    if (r.n_tokens > 0) {
        r.mentions_per_token = double(r.n_mentions) / double(r.n_tokens);
        r.entities_per_token = double(r.n_entities) / double(r.n_tokens);
    }
    if (r.n_entities > 0) r.mentions_per_entity = double(r.n_mentions) / double(r.n_entities);
    if (r.n_mentions > 0) {
        r.pct_pronouns = 100.0 * double(pron) / double(r.n_mentions);
        r.pct_nominal = 100.0 * double(nom) / double(r.n_mentions);
        r.pct_names = 100.0 * double(name) / double(r.n_mentions);
    }
    return r;
}

// ratios to 2 decimals, percentages to 1 decimal
inline std::string format_stats(const StatsReport& r, const std::string& label = {}) {
    std::string out;
    if (!label.empty()) out += "# " + label + "\n";
    util::TextTable t;
    t.add_row({"documents", std::to_string(r.n_documents)});
    t.add_row({"sentences", std::to_string(r.n_sentences)});
    t.add_row({"tokens", std::to_string(r.n_tokens)});
    t.add_row({"sents per doc", util::fmt2(r.sents_per_doc)});
    t.add_row({"avg sent len", util::fmt2(r.avg_sent_len)});
    t.add_row({"mentions", std::to_string(r.n_mentions)});
    t.add_row({"entities", std::to_string(r.n_entities)});
    t.add_row({"mentions/tokens", util::fmt2(r.mentions_per_token)});
    t.add_row({"mentions/entities", util::fmt2(r.mentions_per_entity)});
    t.add_row({"entities/tokens", util::fmt2(r.entities_per_token)});
    t.add_row({"% pronouns", util::fmt1(r.pct_pronouns)});
    t.add_row({"% nominal", util::fmt1(r.pct_nominal)});
    t.add_row({"% names", util::fmt1(r.pct_names)});
    out += t.render({1});
    return out;
}

inline std::string stats_kv(const StatsReport& r) {
    std::string out;
    out += "documents\t" + std::to_string(r.n_documents) + "\n";
    out += "sentences\t" + std::to_string(r.n_sentences) + "\n";
    out += "tokens\t" + std::to_string(r.n_tokens) + "\n";
    out += "sents_per_doc\t" + util::fmt2(r.sents_per_doc) + "\n";
    out += "avg_sent_len\t" + util::fmt2(r.avg_sent_len) + "\n";
    out += "mentions\t" + std::to_string(r.n_mentions) + "\n";
    out += "entities\t" + std::to_string(r.n_entities) + "\n";
    out += "mentions_per_token\t" + util::fmt2(r.mentions_per_token) + "\n";
    out += "mentions_per_entity\t" + util::fmt2(r.mentions_per_entity) + "\n";
    out += "entities_per_token\t" + util::fmt2(r.entities_per_token) + "\n";
    out += "pct_pronouns\t" + util::fmt1(r.pct_pronouns) + "\n";
    out += "pct_nominal\t" + util::fmt1(r.pct_nominal) + "\n";
    out += "pct_names\t" + util::fmt1(r.pct_names) + "\n";
    return out;
}

struct SplitResult {
    std::array<Corpus, 3> parts;  // train, dev, test
    std::vector<std::string> warnings;
};

// Genre-stratified split. Within each genre, counts follow the ratios with
// largest-remainder rounding, so the deviation from the exact share is below
// one document per genre per split. Deterministic for a given seed.
inline SplitResult stratified_split(const Corpus& corpus,
                                    const std::array<double, 3>& ratios, uint64_t seed) {
    double sum = ratios[0] + ratios[1] + ratios[2];
    if (std::abs(sum - 1.0) > 1e-9)
        throw data_error("split ratios must sum to 1, got " + util::fmt2(sum));
    for (double r : ratios)
        if (r < 0.0) throw data_error("split ratios must be non-negative");

    std::map<std::string, std::vector<size_t>> by_genre;
    for (size_t i = 0; i < corpus.documents.size(); ++i) {
        const Document& d = corpus.documents[i];
        if (!d.genre || d.genre->empty())
            throw data_error("document " + d.display_id() +
                             " has no genre label; stratified split needs one");
        by_genre[*d.genre].push_back(i);
    }

    SplitResult result;
    result.parts[0].split_label = "train";
    result.parts[1].split_label = "dev";
    result.parts[2].split_label = "test";

    std::array<std::vector<size_t>, 3> assigned;
    for (auto& [genre, docs] : by_genre) {
        if (docs.size() < 3)
            result.warnings.push_back("genre '" + genre + "' has only " +
                                      std::to_string(docs.size()) +
                                      " document(s); assigned to largest splits first");
        util::SplitMix64 rng(seed ^ util::fnv1a(genre));
        util::deterministic_shuffle(docs, rng);

        // largest-remainder apportionment
        std::array<long, 3> count{};
        std::array<double, 3> frac{};
        long used = 0;
        for (int p = 0; p < 3; ++p) {
            double exact = ratios[p] * static_cast<double>(docs.size());
            count[p] = static_cast<long>(std::floor(exact));
            frac[p] = exact - std::floor(exact);
            used += count[p];
        }
        long left = static_cast<long>(docs.size()) - used;
        std::array<int, 3> order{0, 1, 2};
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (frac[a] != frac[b]) return frac[a] > frac[b];
            if (ratios[a] != ratios[b]) return ratios[a] > ratios[b];
            return a < b;
        });
        for (long k = 0; k < left; ++k) ++count[order[static_cast<size_t>(k) % 3]];

        size_t at = 0;
        for (int p = 0; p < 3; ++p)
            for (long k = 0; k < count[p]; ++k) assigned[p].push_back(docs[at++]);
    }

    for (int p = 0; p < 3; ++p) {
        std::sort(assigned[p].begin(), assigned[p].end());
        for (size_t i : assigned[p])
            result.parts[p].documents.push_back(corpus.documents[i]);
    }
    return result;
}

}  // namespace coref

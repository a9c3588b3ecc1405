// coref: batch command-line front end.
//
// Subcommands: resolve, score, analyze-errors, stats, split, truncate-study,
// audit, grid. Exit codes: 0 success, 1 usage error, 2 data error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "coref/coref.hpp"

namespace {

using namespace coref;

Corpus read_corpus(const std::string& path) {
    if (path == "-") return parse_conll(std::cin);
    std::ifstream in(path);
    if (!in) throw data_error("cannot open " + path);
    return parse_conll(in);
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-" || path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw data_error("cannot write " + path);
    out << text;
}

struct ResourceFlags {
    std::string tags_path, lexicon_path, pleonastic_path, speech_verbs_path;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--tags", tags_path, "tag policy file (category\\tvalues...)");
        cmd->add_option("--lexicon", lexicon_path,
                        "noun lexicon file (form\\tgender\\tanimacy)");
        cmd->add_option("--pleonastic", pleonastic_path,
                        "pleonastic pattern list (one pattern per line)");
        cmd->add_option("--speech-verbs", speech_verbs_path,
                        "speech verb list (one verb per line)");
    }

    Resources load() const {
        Resources res = Resources::defaults();
        auto open = [](const std::string& path) {
            std::ifstream in(path);
            if (!in) throw data_error("cannot open " + path);
            return in;
        };
        if (!tags_path.empty()) {
            auto in = open(tags_path);
            load_tag_policy(in, res.policy);
        }
        if (!lexicon_path.empty()) {
            auto in = open(lexicon_path);
            res.nouns.load(in);
        }
        if (!pleonastic_path.empty()) {
            auto in = open(pleonastic_path);
            res.pleonastic = PatternList{};
            res.pleonastic.load(in);
        }
        if (!speech_verbs_path.empty()) {
            auto in = open(speech_verbs_path);
            res.speech_verbs.clear();
            std::string line;
            while (std::getline(in, line)) {
                auto hash = line.find('#');
                if (hash != std::string::npos) line.resize(hash);
                for (auto& w : util::split_ws(line))
                    res.speech_verbs.insert(util::lower(w));
            }
        }
        return res;
    }
};

SingletonMode singleton_mode(const std::string& flag) {
    if (flag == "include" || flag == "included") return SingletonMode::included;
    if (flag == "exclude" || flag == "excluded") return SingletonMode::excluded;
    throw data_error("--singletons expects include or exclude, got '" + flag + "'");
}

void enrich_corpus(Corpus& corpus, const Resources& res) {
    for (auto& doc : corpus.documents)
        if (doc.entities) enrich_mentions(*doc.entities, doc, res);
}

// ---- resolve ---------------------------------------------------------------

struct ResolveArgs {
    std::string in, out = "-";
    std::string scheme = "riddle";
    std::string sieves;  // path, or "none"/"all"
    std::string mentions = "predicted";
    int window = 0;
    bool no_addressees = false;
    int jobs = 1;
    ResourceFlags resources;
};

int run_resolve(const ResolveArgs& args) {
    Resources res = args.resources.load();
    SieveConfig config;
    if (args.sieves.empty() || args.sieves == "all") {
        config = SieveConfig::all();
    } else if (args.sieves == "none") {
        config = SieveConfig::none();
    } else {
        std::ifstream in(args.sieves);
        if (!in) throw data_error("cannot open " + args.sieves);
        config = parse_sieve_config(in);
    }
    config.scheme = scheme_from_string(args.scheme);
    if (args.window > 0) config.pronoun_window = args.window;
    if (args.no_addressees) config.link_addressees = false;

    Corpus corpus = read_corpus(args.in);
    bool gold_mentions = args.mentions == "gold";
    if (!gold_mentions && args.mentions != "predicted")
        throw data_error("--mentions expects predicted or gold");

    std::vector<size_t> index(corpus.documents.size());
    for (size_t i = 0; i < index.size(); ++i) index[i] = i;
    std::function<EntitySet(const size_t&)> one = [&](const size_t& i) {
        Document& doc = corpus.documents[i];
        std::vector<Mention> mentions;
        if (gold_mentions) {
            if (!doc.entities)
                throw data_error("document " + doc.display_id() +
                                 " has no gold mentions to seed the resolver");
            EntitySet gold = *doc.entities;
            enrich_mentions(gold, doc, res);
            for (const auto& e : gold.entities)
                for (const auto& m : e.mentions) mentions.push_back(m);
        } else {
            mentions = detect_mentions(doc, config.scheme, res);
        }
        EntitySet resolved = resolve(doc, std::move(mentions), config, res);
        if (!gold_mentions) {
            std::vector<Mention> flat;
            for (const auto& e : resolved.entities)
                for (const auto& m : e.mentions) flat.push_back(m);
            auto [kept, filtered] = scheme_filter(flat, resolved, config.scheme, doc, res);
            resolved = std::move(filtered);
        }
        return resolved;
    };
    std::vector<EntitySet> results = parallel_map(index, one, args.jobs);
    for (size_t i = 0; i < corpus.documents.size(); ++i)
        corpus.documents[i].entities = std::move(results[i]);

    std::ostringstream out;
    write_conll(corpus, out);
    write_text(args.out, out.str());
    return 0;
}

// ---- score -----------------------------------------------------------------

struct ScoreArgs {
    std::string gold, sys;
    std::string singletons = "include";
    std::string mentions = "predicted";
    std::string format = "text";
    std::string out = "-";
    bool per_document = false;
    int jobs = 1;
};

int run_score(const ScoreArgs& args) {
    Corpus gold = read_corpus(args.gold);
    Corpus sys = read_corpus(args.sys);
    SingletonMode sm = singleton_mode(args.singletons);
    MentionMode mm = args.mentions == "gold" ? MentionMode::gold : MentionMode::predicted;

    auto pairs = pair_documents(gold, sys);
    std::function<ScoreCounts(const std::pair<const Document*, const Document*>&)> one =
        [&](const std::pair<const Document*, const Document*>& p) {
            auto need = [](const Document* d) -> const EntitySet& {
                if (!d->entities)
                    throw data_error("document " + d->display_id() + " has no annotation");
                return *d->entities;
            };
            return score_counts(need(p.first), need(p.second), sm);
        };
    std::vector<ScoreCounts> counts = parallel_map(pairs, one, args.jobs);
    ScoreCounts total;
    for (const auto& c : counts) total += c;
    ScoreReport report = report_from_counts(total, sm, mm);

    std::string text;
    if (args.format == "kv")
        text = score_report_kv(report);
    else
        text = format_score_report(report, args.gold + " vs " + args.sys);
    if (args.per_document) {
        std::vector<std::pair<std::string, const Corpus*>> outputs{{"sys", &sys}};
        text += format_per_document_table(per_document_table(gold, outputs, sm), sm);
    }
    write_text(args.out, text);
    return 0;
}

// ---- analyze-errors ----------------------------------------------------------

struct ErrorsArgs {
    std::string gold, sys;
    bool include_singletons = false;
    std::string log_path;
    std::string out = "-";
    ResourceFlags resources;
};

int run_errors(const ErrorsArgs& args) {
    Resources res = args.resources.load();
    Corpus gold = read_corpus(args.gold);
    Corpus sys = read_corpus(args.sys);
    enrich_corpus(gold, res);
    enrich_corpus(sys, res);

    ErrorLog all;
    for (auto [g, s] : pair_documents(gold, sys)) {
        if (!g->entities || !s->entities)
            throw data_error("document " + g->display_id() + " has no annotation");
        ErrorLog log =
            analyze(*g->entities, *s->entities, !args.include_singletons, g->display_id());
        for (auto& r : log.records) all.records.push_back(std::move(r));
    }

    std::string text = format_error_table(
        all.counts(), std::string("singletons=") +
                          (args.include_singletons ? "included" : "ignored"));
    text += "\n";
    text += format_mention_type_breakdown(breakdown_by_mention_type(all));
    text += "\n";
    text += format_composition_breakdown(composition_breakdown(all));
    write_text(args.out, text);
    if (!args.log_path.empty()) write_text(args.log_path, error_log_lines(all));
    return 0;
}

// ---- stats -------------------------------------------------------------------

struct StatsArgs {
    std::string in;
    std::string label;
    std::string format = "text";
    std::string out = "-";
    ResourceFlags resources;
};

int run_stats(const StatsArgs& args) {
    Resources res = args.resources.load();
    Corpus corpus = read_corpus(args.in);
    StatsReport report = corpus_stats(corpus, res);
    if (args.format == "kv")
        write_text(args.out, stats_kv(report));
    else
        write_text(args.out, format_stats(report, args.label));
    return 0;
}

// ---- split -------------------------------------------------------------------

struct SplitArgs {
    std::string in;
    std::string ratios = "0.7,0.15,0.15";
    uint64_t seed = 42;
    std::string out_prefix = "split";
    std::string genre = "auto";
};

int run_split(const SplitArgs& args) {
    Corpus corpus = read_corpus(args.in);
    auto parts = util::split(args.ratios, ',');
    if (parts.size() != 3) throw data_error("--ratios expects three comma-separated values");
    std::array<double, 3> ratios{std::stod(parts[0]), std::stod(parts[1]),
                                 std::stod(parts[2])};
    for (auto& doc : corpus.documents)
        if (!doc.genre)
            doc.genre = args.genre == "auto" ? derive_genre(doc.id) : args.genre;

    SplitResult result = stratified_split(corpus, ratios, args.seed);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    const char* names[3] = {"train", "dev", "test"};
    for (int p = 0; p < 3; ++p) {
        std::string path = args.out_prefix + "." + names[p] + ".conll";
        std::ostringstream out;
        write_conll(result.parts[p], out);
        write_text(path, out.str());
        std::cerr << names[p] << ": " << result.parts[p].documents.size()
                  << " documents -> " << path << "\n";
    }
    return 0;
}

// ---- truncate-study ------------------------------------------------------------

struct StudyArgs {
    std::string gold, sys;
    std::string fractions = "10,20,30,40,50,60,70,80,90,100";
    std::string metrics = "lea_f1,conll";
    std::string singletons = "include";
    std::string out = "-";
};

int run_study(const StudyArgs& args) {
    Corpus gold = read_corpus(args.gold);
    Corpus sys = read_corpus(args.sys);
    std::vector<double> fractions;
    for (const auto& f : util::split(args.fractions, ','))
        fractions.push_back(std::stod(f));
    std::vector<std::string> metrics = util::split(args.metrics, ',');
    TruncationStudy study = run_truncation_study(gold, sys, fractions, metrics,
                                                 singleton_mode(args.singletons));
    write_text(args.out, format_truncation_study(study));
    return 0;
}

// ---- audit -------------------------------------------------------------------

struct AuditArgs {
    std::string gold;
    std::string out = "-";
    ResourceFlags resources;
};

int run_audit(const AuditArgs& args) {
    Resources res = args.resources.load();
    Corpus gold = read_corpus(args.gold);
    auto findings = audit_annotations(gold, res);
    std::string text = format_audit(findings);
    long exact = 0, boundary = 0;
    for (const auto& f : findings)
        (f.kind == AuditKind::unlinked_exact_match ? exact : boundary) += 1;
    text += util::strprintf("# unlinked_exact_match\t%ld\n", exact);
    text += util::strprintf("# suspicious_boundary\t%ld\n", boundary);
    write_text(args.out, text);
    return 0;
}

// ---- grid --------------------------------------------------------------------

struct GridArgs {
    std::string gold, sys, sys_gold;
    std::string out = "-";
};

int run_grid(const GridArgs& args) {
    Corpus gold = read_corpus(args.gold);
    Corpus sys = read_corpus(args.sys);
    std::optional<Corpus> sys_gold;
    if (!args.sys_gold.empty()) sys_gold = read_corpus(args.sys_gold);
    auto cells = condition_grid(gold, sys, sys_gold ? &*sys_gold : nullptr);
    write_text(args.out, format_condition_grid(cells));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dutch coreference resolution and evaluation toolkit"};
    app.require_subcommand(1);

    ResolveArgs resolve_args;
    auto* resolve_cmd = app.add_subcommand("resolve", "run the sieve resolver on a corpus");
    resolve_cmd->add_option("--in", resolve_args.in, "input CoNLL file (with parse trees)")
        ->required();
    resolve_cmd->add_option("--out", resolve_args.out, "output CoNLL file (default stdout)");
    resolve_cmd->add_option("--scheme", resolve_args.scheme, "riddle or sonar");
    resolve_cmd->add_option("--sieves", resolve_args.sieves,
                            "sieve config file, or 'all'/'none'");
    resolve_cmd->add_option("--mentions", resolve_args.mentions,
                            "predicted (detect) or gold (seed with gold spans)");
    resolve_cmd->add_option("--window", resolve_args.window, "pronoun sentence window");
    resolve_cmd->add_flag("--no-addressees", resolve_args.no_addressees,
                          "do not link second-person pronouns to addressees");
    resolve_cmd->add_option("--jobs", resolve_args.jobs, "parallel documents");
    resolve_args.resources.add_to(resolve_cmd);

    ScoreArgs score_args;
    auto* score_cmd = app.add_subcommand("score", "score a system output against gold");
    score_cmd->add_option("--gold", score_args.gold, "gold CoNLL file")->required();
    score_cmd->add_option("--sys", score_args.sys, "system CoNLL file")->required();
    score_cmd->add_option("--singletons", score_args.singletons, "include or exclude");
    score_cmd->add_option("--mentions", score_args.mentions,
                          "predicted or gold (report label)");
    score_cmd->add_option("--format", score_args.format, "text or kv");
    score_cmd->add_option("--out", score_args.out, "output file (default stdout)");
    score_cmd->add_flag("--per-document", score_args.per_document,
                        "append a per-document table");
    score_cmd->add_option("--jobs", score_args.jobs, "parallel documents");

    ErrorsArgs errors_args;
    auto* errors_cmd =
        app.add_subcommand("analyze-errors", "typed error analysis of a system output");
    errors_cmd->add_option("--gold", errors_args.gold, "gold CoNLL file")->required();
    errors_cmd->add_option("--sys", errors_args.sys, "system CoNLL file")->required();
    errors_cmd->add_flag("--include-singletons", errors_args.include_singletons,
                         "keep singleton entities (default: ignored)");
    errors_cmd->add_option("--log", errors_args.log_path, "write per-record log here");
    errors_cmd->add_option("--out", errors_args.out, "output file (default stdout)");
    errors_args.resources.add_to(errors_cmd);

    StatsArgs stats_args;
    auto* stats_cmd = app.add_subcommand("stats", "dataset statistics of a gold corpus");
    stats_cmd->add_option("--in", stats_args.in, "gold CoNLL file")->required();
    stats_cmd->add_option("--label", stats_args.label, "header label (e.g. scheme name)");
    stats_cmd->add_option("--format", stats_args.format, "text or kv");
    stats_cmd->add_option("--out", stats_args.out, "output file (default stdout)");
    stats_args.resources.add_to(stats_cmd);

    SplitArgs split_args;
    auto* split_cmd =
        app.add_subcommand("split", "genre-stratified train/dev/test split");
    split_cmd->add_option("--in", split_args.in, "input CoNLL file")->required();
    split_cmd->add_option("--ratios", split_args.ratios, "three fractions, default 0.7,0.15,0.15");
    split_cmd->add_option("--seed", split_args.seed, "shuffle seed");
    split_cmd->add_option("--out-prefix", split_args.out_prefix,
                          "writes <prefix>.{train,dev,test}.conll");
    split_cmd->add_option("--genre", split_args.genre,
                          "'auto' (derive from id) or a fixed label");

    StudyArgs study_args;
    auto* study_cmd =
        app.add_subcommand("truncate-study", "document-length truncation study");
    study_cmd->add_option("--gold", study_args.gold, "gold CoNLL file")->required();
    study_cmd->add_option("--sys", study_args.sys, "system CoNLL file")->required();
    study_cmd->add_option("--fractions", study_args.fractions, "comma-separated percentages");
    study_cmd->add_option("--metrics", study_args.metrics,
                          "comma-separated metric names (e.g. lea_f1,conll)");
    study_cmd->add_option("--singletons", study_args.singletons, "include or exclude");
    study_cmd->add_option("--out", study_args.out, "output file (default stdout)");

    AuditArgs audit_args;
    auto* audit_cmd = app.add_subcommand("audit", "audit gold annotations");
    audit_cmd->add_option("--gold", audit_args.gold, "gold CoNLL file")->required();
    audit_cmd->add_option("--out", audit_args.out, "output file (default stdout)");
    audit_args.resources.add_to(audit_cmd);

    GridArgs grid_args;
    auto* grid_cmd = app.add_subcommand("grid", "condition grid (mentions x singletons)");
    grid_cmd->add_option("--gold", grid_args.gold, "gold CoNLL file")->required();
    grid_cmd->add_option("--sys", grid_args.sys, "system output, predicted mentions")
        ->required();
    grid_cmd->add_option("--sys-gold", grid_args.sys_gold,
                         "system output seeded with gold mentions");
    grid_cmd->add_option("--out", grid_args.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (resolve_cmd->parsed()) return run_resolve(resolve_args);
        if (score_cmd->parsed()) return run_score(score_args);
        if (errors_cmd->parsed()) return run_errors(errors_args);
        if (stats_cmd->parsed()) return run_stats(stats_args);
        if (split_cmd->parsed()) return run_split(split_args);
        if (study_cmd->parsed()) return run_study(study_args);
        if (audit_cmd->parsed()) return run_audit(audit_args);
        if (grid_cmd->parsed()) return run_grid(grid_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

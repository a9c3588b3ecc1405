#include "doctest.h"

#include <map>
#include <sstream>

#include "coref/conll.hpp"
#include "coref/sieve.hpp"
#include "support/synthetic.hpp"

using namespace coref;

namespace {

Document doc_from(const std::string& body) {
    Corpus c = parse_conll("#begin document (t); part 000\n" + body + "#end document\n");
    return c.documents.at(0);
}

std::string tok(int i, const std::string& form, const std::string& pos,
                const std::string& parse, const std::string& ner = "*") {
    return "t 0 " + std::to_string(i) + " " + form + " " + pos + " " + parse +
           " - - - - " + ner + " -\n";
}

int entity_of(const EntitySet& set, int sentence, int start, int end) {
    for (const auto& e : set.entities)
        for (const auto& m : e.mentions)
            if (m.sentence == sentence && m.start == start && m.end == end) return e.id;
    return -1;
}

EntitySet run_resolve(const Document& doc, const SieveConfig& config,
                      ResolveTrace* trace = nullptr) {
    Resources res = Resources::defaults();
    auto mentions = detect_mentions(doc, config.scheme, res);
    return resolve(doc, std::move(mentions), config, res, trace);
}

}  // namespace

TEST_CASE("closed-class pronoun features") {
    AgreementFeatures f;
    REQUIRE(pronoun_features("hij", f));
    CHECK(f.gender == Gender::masc);
    CHECK(f.number == GrNumber::sg);
    CHECK(f.person == Person::p3);
    CHECK(f.animacy == Animacy::animate);
    REQUIRE(pronoun_features("zij", f));
    CHECK(f.number == GrNumber::unknown);  // fem-sg or plural, context decides
    REQUIRE(pronoun_features("het", f));
    CHECK(f.gender == Gender::neuter);
    REQUIRE(pronoun_features("ik", f));
    CHECK(f.person == Person::p1);
    CHECK(!pronoun_features("tafel", f));
}

TEST_CASE("compatible: unknown unifies, known values clash") {
    AgreementFeatures masc_sg{Gender::masc, GrNumber::sg, Animacy::unknown, Person::unknown};
    AgreementFeatures unk_sg{Gender::unknown, GrNumber::sg, Animacy::unknown, Person::unknown};
    AgreementFeatures fem_sg{Gender::fem, GrNumber::sg, Animacy::unknown, Person::unknown};
    CHECK(compatible(masc_sg, unk_sg));
    CHECK(!compatible(masc_sg, fem_sg));
}

TEST_CASE("biological gender exception: animate neuter nouns accept masc/fem pronouns") {
    AgreementFeatures meisje{Gender::neuter, GrNumber::sg, Animacy::animate, Person::unknown};
    AgreementFeatures fem{Gender::fem, GrNumber::sg, Animacy::animate, Person::p3};
    AgreementFeatures masc{Gender::masc, GrNumber::sg, Animacy::animate, Person::p3};
    AgreementFeatures neuter_pron{Gender::neuter, GrNumber::sg, Animacy::unknown, Person::p3};
    CHECK(compatible(meisje, fem));
    CHECK(compatible(meisje, masc));
    CHECK(compatible(meisje, neuter_pron));
    AgreementFeatures boek{Gender::neuter, GrNumber::sg, Animacy::inanimate, Person::unknown};
    CHECK(!compatible(boek, fem));
}

TEST_CASE("assign_features: lexicon nouns, names via NER, unlisted unknown") {
    Resources res = Resources::defaults();
    Document doc = doc_from(tok(0, "het", "LID(bep)", "(NP*") +
                            tok(1, "meisje", "N(soort,ev)", "*)") +
                            tok(2, "Jan", "N(eigen,ev)", "(NP*)", "(PER)") +
                            tok(3, "fnorkel", "N(soort,ev)", "(NP*)") + "\n");
    Mention meisje = synth::span_mention(0, 0, 1);
    meisje.head = 1;
    AgreementFeatures f = assign_features(meisje, doc.sentences[0], res);
    CHECK(f.gender == Gender::neuter);
    CHECK(f.animacy == Animacy::animate);

    Mention jan = synth::span_mention(0, 2, 2);
    jan.head = 2;
    f = assign_features(jan, doc.sentences[0], res);
    CHECK(f.animacy == Animacy::animate);

    Mention unlisted = synth::span_mention(0, 3, 3);
    unlisted.head = 3;
    f = assign_features(unlisted, doc.sentences[0], res);
    CHECK(f.gender == Gender::unknown);
    CHECK(f.animacy == Animacy::unknown);
}

TEST_CASE("exact match links repeated names") {
    Document doc = doc_from(
        tok(0, "Amsterdam", "N(eigen,ev)", "(TOP(S(NP*)", "(LOC)") +
        tok(1, "groeit", "WW(pv,tgw)", "(VP*)") + tok(2, ".", "LET", "*))") + "\n" +
        tok(0, "Amsterdam", "N(eigen,ev)", "(TOP(S(NP*)", "(LOC)") +
        tok(1, "bloeit", "WW(pv,tgw)", "(VP*)") + tok(2, ".", "LET", "*))") + "\n");
    SieveConfig config;
    config.sieves = {"exact_match"};
    EntitySet set = run_resolve(doc, config);
    CHECK(entity_of(set, 0, 0, 0) == entity_of(set, 1, 0, 0));
}

TEST_CASE("exact match is case-insensitive and determiner-stripped") {
    Document doc = doc_from(
        tok(0, "De", "LID(bep)", "(TOP(S(NP*") + tok(1, "burgemeester", "N(soort,ev)", "*)") +
        tok(2, "sprak", "WW(pv,verl)", "(VP*)") + tok(3, ".", "LET", "*))") + "\n" +
        tok(0, "de", "LID(bep)", "(TOP(S(NP*") + tok(1, "BURGEMEESTER", "N(soort,ev)", "*)") +
        tok(2, "zweeg", "WW(pv,verl)", "(VP*)") + tok(3, ".", "LET", "*))") + "\n");
    SieveConfig config;
    config.sieves = {"exact_match"};
    EntitySet set = run_resolve(doc, config);
    CHECK(entity_of(set, 0, 0, 1) == entity_of(set, 1, 0, 1));
}

TEST_CASE("agreement blocks hij from a neuter inanimate antecedent") {
    Document doc = doc_from(
        tok(0, "Het", "LID(bep)", "(TOP(S(NP*") + tok(1, "boek", "N(soort,ev)", "*)") +
        tok(2, "lag", "WW(pv,verl)", "(VP*)") + tok(3, ".", "LET", "*))") + "\n" +
        tok(0, "Hij", "VNW(pers,pron)", "(TOP(S(NP*)") +
        tok(1, "sliep", "WW(pv,verl)", "(VP*)") + tok(2, ".", "LET", "*))") + "\n");
    EntitySet set = run_resolve(doc, SieveConfig::all());
    CHECK(entity_of(set, 1, 0, 0) != entity_of(set, 0, 0, 1));
}

TEST_CASE("pronoun resolution links hij to a preceding name") {
    Document doc = doc_from(
        tok(0, "Jan", "N(eigen,ev)", "(TOP(S(NP*)", "(PER)") +
        tok(1, "lachte", "WW(pv,verl)", "(VP*)") + tok(2, ".", "LET", "*))") + "\n" +
        tok(0, "Hij", "VNW(pers,pron)", "(TOP(S(NP*)") +
        tok(1, "sliep", "WW(pv,verl)", "(VP*)") + tok(2, ".", "LET", "*))") + "\n");
    EntitySet set = run_resolve(doc, SieveConfig::all());
    CHECK(entity_of(set, 1, 0, 0) == entity_of(set, 0, 0, 0));
}

TEST_CASE("het meisje accepts both het and zij") {
    Document base = doc_from(
        tok(0, "Het", "LID(bep)", "(TOP(S(NP*") + tok(1, "meisje", "N(soort,ev)", "*)") +
        tok(2, "zong", "WW(pv,verl)", "(VP*)") + tok(3, ".", "LET", "*))") + "\n" +
        tok(0, "Zij", "VNW(pers,pron)", "(TOP(S(NP*)") +
        tok(1, "lachte", "WW(pv,verl)", "(VP*)") + tok(2, ".", "LET", "*))") + "\n");
    EntitySet set = run_resolve(base, SieveConfig::all());
    CHECK(entity_of(set, 1, 0, 0) == entity_of(set, 0, 0, 1));
}

TEST_CASE("appositive merges via precise_constructs") {
    // Jan , de burgemeester , lachte .
    Document doc = doc_from(tok(0, "Jan", "N(eigen,ev)", "(TOP(S(NP(NP*)", "(PER)") +
                            tok(1, ",", "LET", "*") + tok(2, "de", "LID(bep)", "(NP*") +
                            tok(3, "burgemeester", "N(soort,ev)", "*)") +
                            tok(4, ",", "LET", "*)") +
                            tok(5, "lachte", "WW(pv,verl)", "(VP*)") +
                            tok(6, ".", "LET", "*))") + "\n");
    SieveConfig config;
    config.sieves = {"precise_constructs"};
    EntitySet set = run_resolve(doc, config);
    CHECK(entity_of(set, 0, 0, 0) == entity_of(set, 0, 2, 3));
}

TEST_CASE("predicate nominative merges via precise_constructs") {
    // Jan is de burgemeester .
    Document doc = doc_from(tok(0, "Jan", "N(eigen,ev)", "(TOP(S(NP*)", "(PER)") +
                            tok(1, "is", "WW(pv,tgw)", "(VP*") +
                            tok(2, "de", "LID(bep)", "(NP*") +
                            tok(3, "burgemeester", "N(soort,ev)", "*))") +
                            tok(4, ".", "LET", "*))") + "\n");
    SieveConfig config;
    config.sieves = {"precise_constructs"};
    EntitySet set = run_resolve(doc, config);
    CHECK(entity_of(set, 0, 0, 0) == entity_of(set, 0, 2, 3));
}

TEST_CASE("strict head match requires word inclusion") {
    Document doc = doc_from(
        tok(0, "de", "LID(bep)", "(TOP(S(NP*") + tok(1, "oude", "ADJ(prenom)", "*") +
        tok(2, "man", "N(soort,ev)", "*)") + tok(3, "sliep", "WW(pv,verl)", "(VP*)") +
        tok(4, ".", "LET", "*))") + "\n" +
        tok(0, "de", "LID(bep)", "(TOP(S(NP*") + tok(1, "man", "N(soort,ev)", "*)") +
        tok(2, "snurkte", "WW(pv,verl)", "(VP*)") + tok(3, ".", "LET", "*))") + "\n" +
        tok(0, "de", "LID(bep)", "(TOP(S(NP*") + tok(1, "jonge", "ADJ(prenom)", "*") +
        tok(2, "man", "N(soort,ev)", "*)") + tok(3, "riep", "WW(pv,verl)", "(VP*)") +
        tok(4, ".", "LET", "*))") + "\n");
    SieveConfig config;
    config.sieves = {"strict_head_match"};
    EntitySet set = run_resolve(doc, config);
    // "de man" is included in "de oude man"; "de jonge man" is not
    CHECK(entity_of(set, 1, 0, 1) == entity_of(set, 0, 0, 2));
    CHECK(entity_of(set, 2, 0, 2) != entity_of(set, 0, 0, 2));
}

TEST_CASE("relaxed head match only needs the same head word") {
    Document doc = doc_from(
        tok(0, "de", "LID(bep)", "(TOP(S(NP*") + tok(1, "oude", "ADJ(prenom)", "*") +
        tok(2, "man", "N(soort,ev)", "*)") + tok(3, "sliep", "WW(pv,verl)", "(VP*)") +
        tok(4, ".", "LET", "*))") + "\n" +
        tok(0, "de", "LID(bep)", "(TOP(S(NP*") + tok(1, "jonge", "ADJ(prenom)", "*") +
        tok(2, "man", "N(soort,ev)", "*)") + tok(3, "riep", "WW(pv,verl)", "(VP*)") +
        tok(4, ".", "LET", "*))") + "\n");
    SieveConfig strict_only;
    strict_only.sieves = {"strict_head_match"};
    CHECK(run_resolve(doc, strict_only).entities.size() == 2);
    SieveConfig relaxed;
    relaxed.sieves = {"relaxed_head_match"};
    CHECK(run_resolve(doc, relaxed).entities.size() == 1);
}

TEST_CASE("quote detection binds speakers and alternates turns") {
    Resources res = Resources::defaults();
    std::string q_open = "„", q_close = "”";
    auto turn = [&](const std::string& word, const std::string& name) {
        return tok(0, q_open, "LET", "(TOP*") + tok(1, word, "WW(pv,tgw)", "(SV1*") +
               tok(2, ",", "LET", "*)") + tok(3, q_close, "LET", "*") +
               tok(4, "zei", "WW(pv,verl)", "(S*") +
               tok(5, name, "N(eigen,ev)", "(NP*)", "(PER)") + tok(6, ".", "LET", "*))") +
               "\n";
    };
    auto bare_turn = [&](const std::string& word) {
        return tok(0, q_open, "LET", "(TOP*") + tok(1, word, "WW(pv,tgw)", "(SV1*") +
               tok(2, "!", "LET", "*)") + tok(3, q_close, "LET", "*)") + "\n";
    };
    Document doc = doc_from(turn("Kom", "Jan") + turn("Nee", "Piet") + bare_turn("Waarom"));
    auto mentions = detect_mentions(doc, Scheme::sonar, res);
    auto quotes = detect_quotes(doc, mentions, res);
    REQUIRE(quotes.size() == 3);
    CHECK(quotes[0].begin_tok == 1);
    CHECK(quotes[0].end_tok == 2);
    REQUIRE(quotes[0].speaker.has_value());
    CHECK(mentions[*quotes[0].speaker].text == "Jan");
    REQUIRE(quotes[1].speaker.has_value());
    CHECK(mentions[*quotes[1].speaker].text == "Piet");
    // unattributed third turn alternates back to Jan
    REQUIRE(quotes[2].speaker.has_value());
    CHECK(mentions[*quotes[2].speaker].text == "Jan");
    // Piet said the previous turn, so Piet is the addressee
    REQUIRE(quotes[2].addressee.has_value());
    CHECK(mentions[*quotes[2].addressee].text == "Piet");
}

TEST_CASE("german-style low/high quote pairs close cleanly") {
    Resources res = Resources::defaults();
    // „ Kom , “ zei Jan .   (U+201E opens, U+201C closes)
    Document doc = doc_from(tok(0, "„", "LET", "(TOP*") +
                            tok(1, "Kom", "WW(pv,tgw)", "(SV1*") + tok(2, ",", "LET", "*)") +
                            tok(3, "“", "LET", "*") +
                            tok(4, "zei", "WW(pv,verl)", "(S*") +
                            tok(5, "Jan", "N(eigen,ev)", "(NP*)", "(PER)") +
                            tok(6, ".", "LET", "*))") + "\n");
    auto mentions = detect_mentions(doc, Scheme::sonar, res);
    auto quotes = detect_quotes(doc, mentions, res);
    REQUIRE(quotes.size() == 1);
    CHECK(quotes[0].begin_tok == 1);
    CHECK(quotes[0].end_tok == 2);
    REQUIRE(quotes[0].speaker.has_value());
    CHECK(mentions[*quotes[0].speaker].text == "Jan");
}

TEST_CASE("document without quote marks has no quotes") {
    Resources res = Resources::defaults();
    Document doc = doc_from(tok(0, "Jan", "N(eigen,ev)", "(TOP(S(NP*)", "(PER)") +
                            tok(1, "sliep", "WW(pv,verl)", "(VP*)") +
                            tok(2, ".", "LET", "*))") + "\n");
    auto mentions = detect_mentions(doc, Scheme::sonar, res);
    CHECK(detect_quotes(doc, mentions, res).empty());
}

TEST_CASE("first person inside a quote resolves to the speaker") {
    std::string q_open = "„", q_close = "”";
    Document doc = doc_from(
        tok(0, q_open, "LET", "(TOP*") + tok(1, "Ik", "VNW(pers,pron)", "(SV1(NP*)") +
        tok(2, "ga", "WW(pv,tgw)", "*") + tok(3, ",", "LET", "*)") +
        tok(4, q_close, "LET", "*") + tok(5, "zei", "WW(pv,verl)", "(S*") +
        tok(6, "Jan", "N(eigen,ev)", "(NP*)", "(PER)") + tok(7, ".", "LET", "*))") + "\n");
    EntitySet set = run_resolve(doc, SieveConfig::all());
    CHECK(entity_of(set, 0, 1, 1) == entity_of(set, 0, 6, 6));
}

TEST_CASE("resolution is deterministic and merge-only") {
    std::string text = synth::synthetic_conll(2, 25, 99);
    Corpus c1 = parse_conll(text);
    Corpus c2 = parse_conll(text);
    Resources res = Resources::defaults();
    SieveConfig config = SieveConfig::all();
    for (size_t d = 0; d < c1.documents.size(); ++d) {
        ResolveTrace t1, t2;
        EntitySet s1 = resolve(c1.documents[d],
                               detect_mentions(c1.documents[d], config.scheme, res), config,
                               res, &t1);
        EntitySet s2 = resolve(c2.documents[d],
                               detect_mentions(c2.documents[d], config.scheme, res), config,
                               res, &t2);
        CHECK(partition_view(s1) == partition_view(s2));
        // entity count never increases across passes
        int prev = t1.initial_entities;
        for (const auto& [sieve, count] : t1.entity_counts) {
            CHECK(count <= prev);
            prev = count;
        }
        // the mention set is unchanged by resolution
        size_t n = 0;
        for (const auto& e : s1.entities) n += e.mentions.size();
        CHECK(n == detect_mentions(c1.documents[d], config.scheme, res).size());
    }
}

TEST_CASE("disabling all sieves yields all singletons") {
    Corpus c = parse_conll(synth::synthetic_conll(1, 20, 7));
    Resources res = Resources::defaults();
    auto mentions = detect_mentions(c.documents[0], Scheme::riddle, res);
    EntitySet set = resolve(c.documents[0], mentions, SieveConfig::none(), res);
    CHECK(set.entities.size() == mentions.size());
    for (const auto& e : set.entities) CHECK(e.mentions.size() == 1);
}

TEST_CASE("exact-match closure holds on synthetic text") {
    Corpus c = parse_conll(synth::synthetic_conll(3, 20, 5));
    Resources res = Resources::defaults();
    SieveConfig config = SieveConfig::all();
    for (const auto& doc : c.documents) {
        EntitySet set = resolve(doc, detect_mentions(doc, config.scheme, res), config, res);
        std::map<std::string, int> norm_entity;
        for (const auto& e : set.entities)
            for (const auto& m : e.mentions) {
                if (m.type == SurfaceType::pronoun) continue;
                std::string key = normalize_mention_text(m.text, res);
                auto [it, fresh] = norm_entity.emplace(key, e.id);
                CHECK(it->second == e.id);
            }
    }
}

TEST_CASE("sieves 2-6 never merge incompatible features") {
    Corpus c = parse_conll(synth::synthetic_conll(3, 30, 11));
    Resources res = Resources::defaults();
    SieveConfig config = SieveConfig::all();
    for (const auto& doc : c.documents) {
        ResolveTrace trace;
        resolve(doc, detect_mentions(doc, config.scheme, res), config, res, &trace);
        for (const auto& merge : trace.merges) {
            if (merge.sieve == "exact_match") continue;
            CHECK(compatible(merge.from_features, merge.into_features));
        }
    }
}

TEST_CASE("sieve config parsing") {
    std::istringstream in(
        "# comment\n"
        "exact_match\n"
        "pronoun_resolution\n"
        "scheme=sonar\n"
        "window=5\n"
        "addressees=off\n");
    SieveConfig config = parse_sieve_config(in);
    REQUIRE(config.sieves.size() == 2);
    CHECK(config.sieves[0] == "exact_match");
    CHECK(config.sieves[1] == "pronoun_resolution");
    CHECK(config.scheme == Scheme::sonar);
    CHECK(config.pronoun_window == 5);
    CHECK(!config.link_addressees);

    std::istringstream bad("no_such_sieve\n");
    CHECK_THROWS_AS(parse_sieve_config(bad), data_error);
}

TEST_CASE("resolving zero mentions yields an empty entity set") {
    Corpus c = parse_conll(synth::synthetic_conll(1, 3, 1));
    Resources res = Resources::defaults();
    EntitySet set = resolve(c.documents[0], {}, SieveConfig::all(), res);
    CHECK(set.entities.empty());
}

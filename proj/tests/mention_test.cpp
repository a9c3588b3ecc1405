#include "doctest.h"

#include <set>

#include "coref/conll.hpp"
#include "coref/mention.hpp"
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

Document simple_np_doc() {
    // De burgemeester lachte .
    return doc_from(tok(0, "De", "LID(bep)", "(TOP(S(NP*") +
                    tok(1, "burgemeester", "N(soort,ev)", "*)") +
                    tok(2, "lachte", "WW(pv,verl)", "(VP*)") + tok(3, ".", "LET", "*))") +
                    "\n");
}

Document weather_doc() {
    // Het regent .
    return doc_from(tok(0, "Het", "VNW(pers,pron,onz)", "(TOP(S(NP*)") +
                    tok(1, "regent", "WW(pv,tgw)", "(VP*)") + tok(2, ".", "LET", "*))") +
                    "\n");
}

Document nested_np_doc() {
    // De burgemeester van Franeker lachte .
    return doc_from(tok(0, "De", "LID(bep)", "(TOP(S(NP*") +
                    tok(1, "burgemeester", "N(soort,ev)", "*") +
                    tok(2, "van", "VZ(init)", "(PP*") +
                    tok(3, "Franeker", "N(eigen,ev)", "(NP*)))", "(LOC)") +
                    tok(4, "lachte", "WW(pv,verl)", "(VP*)") + tok(5, ".", "LET", "*))") +
                    "\n");
}

Document relative_doc() {
    // De man die lachte sliep .
    return doc_from(tok(0, "De", "LID(bep)", "(TOP(S(NP*") +
                    tok(1, "man", "N(soort,ev)", "*") +
                    tok(2, "die", "VNW(betr,pron)", "(REL*") +
                    tok(3, "lachte", "WW(pv,verl)", "*))") +
                    tok(4, "sliep", "WW(pv,verl)", "(VP*)") + tok(5, ".", "LET", "*))") +
                    "\n");
}

const Mention* find_span(const std::vector<Mention>& ms, int sent, int start, int end) {
    for (const auto& m : ms)
        if (m.sentence == sent && m.start == start && m.end == end) return &m;
    return nullptr;
}

}  // namespace

TEST_CASE("single NP yields one nominal mention with the right head") {
    Resources res = Resources::defaults();
    Document doc = simple_np_doc();
    auto mentions = detect_mentions(doc, Scheme::riddle, res);
    REQUIRE(mentions.size() == 1);
    CHECK(mentions[0].start == 0);
    CHECK(mentions[0].end == 1);
    CHECK(mentions[0].head == 1);
    CHECK(mentions[0].type == SurfaceType::nominal);
    CHECK(mentions[0].text == "De burgemeester");
}

TEST_CASE("pleonastic het dropped under riddle, kept under sonar") {
    Resources res = Resources::defaults();
    Document doc = weather_doc();
    auto riddle = detect_mentions(doc, Scheme::riddle, res);
    CHECK(find_span(riddle, 0, 0, 0) == nullptr);
    auto sonar = detect_mentions(doc, Scheme::sonar, res);
    const Mention* het = find_span(sonar, 0, 0, 0);
    REQUIRE(het != nullptr);
    CHECK(het->type == SurfaceType::pronoun);
}

TEST_CASE("nested NPs produce outer and inner mentions") {
    Resources res = Resources::defaults();
    Document doc = nested_np_doc();
    auto mentions = detect_mentions(doc, Scheme::riddle, res);
    CHECK(find_span(mentions, 0, 0, 3) != nullptr);  // de burgemeester van Franeker
    CHECK(find_span(mentions, 0, 3, 3) != nullptr);  // Franeker
    CHECK(mentions.size() == 2);
    // ordered by (sentence, start, end descending)
    CHECK(mentions[0].end == 3);
    CHECK(mentions[0].start == 0);
}

TEST_CASE("missing parse tree is an error naming the sentence") {
    Resources res = Resources::defaults();
    Document doc = doc_from(tok(0, "Hallo", "N(soort,ev)", "*") + "\n");
    try {
        detect_mentions(doc, Scheme::riddle, res);
        FAIL("expected data_error");
    } catch (const data_error& e) {
        CHECK(std::string(e.what()).find("sentence 0") != std::string::npos);
    }
}

TEST_CASE("head_of picks the rightmost nominal before trailing modifiers") {
    Resources res = Resources::defaults();
    SUBCASE("de oude man") {
        Document doc = doc_from(tok(0, "de", "LID(bep)", "(NP*") +
                                tok(1, "oude", "ADJ(prenom)", "*") +
                                tok(2, "man", "N(soort,ev)", "*)") + "\n");
        HeadResult h = head_of_span(doc.sentences[0], 0, 2, res.policy);
        CHECK(h.index == 2);
        CHECK(!h.fallback);
    }
    SUBCASE("Caspar Barlaeus") {
        Document doc = doc_from(tok(0, "Caspar", "N(eigen,ev)", "(NP*", "(PER") +
                                tok(1, "Barlaeus", "N(eigen,ev)", "*)", "*)") + "\n");
        CHECK(head_of_span(doc.sentences[0], 0, 1, res.policy).index == 1);
    }
    SUBCASE("single pronoun") {
        Document doc = doc_from(tok(0, "hij", "VNW(pers,pron)", "(NP*)") + "\n");
        CHECK(head_of_span(doc.sentences[0], 0, 0, res.policy).index == 0);
    }
    SUBCASE("post-head PP does not supply the head") {
        Document doc = nested_np_doc();
        CHECK(head_of_span(doc.sentences[0], 0, 3, res.policy).index == 1);
    }
    SUBCASE("no nominal token falls back to the last token, flagged") {
        Document doc = doc_from(tok(0, "heel", "BW", "(NP*") +
                                tok(1, "snel", "ADJ(vrij)", "*)") + "\n");
        HeadResult h = head_of_span(doc.sentences[0], 0, 1, res.policy);
        CHECK(h.index == 1);
        CHECK(h.fallback);
    }
}

TEST_CASE("minimal_span strips trailing relative clauses and PPs") {
    Resources res = Resources::defaults();
    SUBCASE("relative clause") {
        Document doc = relative_doc();
        auto mentions = detect_mentions(doc, Scheme::riddle, res);
        const Mention* m = find_span(mentions, 0, 0, 3);
        REQUIRE(m != nullptr);
        CHECK(m->head == 1);
        CHECK(m->minimal_start() == 0);
        CHECK(m->minimal_end() == 1);  // "De man"
    }
    SUBCASE("identity when nothing trails") {
        Document doc = simple_np_doc();
        auto mentions = detect_mentions(doc, Scheme::riddle, res);
        CHECK(mentions[0].minimal_start() == 0);
        CHECK(mentions[0].minimal_end() == 1);
    }
    SUBCASE("post-head PP stripped, span unchanged") {
        Document doc = nested_np_doc();
        auto mentions = detect_mentions(doc, Scheme::riddle, res);
        const Mention* m = find_span(mentions, 0, 0, 3);
        REQUIRE(m != nullptr);
        CHECK(m->minimal_end() == 1);
        CHECK(m->end == 3);  // full span untouched
        CHECK(m->minimal_end() >= m->head);
    }
}

TEST_CASE("is_pleonastic follows the pattern list and the default policy") {
    Resources res = Resources::defaults();
    Document wdoc = weather_doc();
    Mention het;
    het.sentence = 0;
    het.start = het.end = het.head = 0;
    het.type = SurfaceType::pronoun;
    het.type_known = true;
    CHECK(is_pleonastic(het, wdoc.sentences[0], res));

    // anaphoric-looking bare het: pleonastic under the default policy only
    Document adoc = doc_from(tok(0, "Het", "VNW(pers,pron,onz)", "(TOP(S(NP*)") +
                             tok(1, "viel", "WW(pv,verl)", "(VP*)") +
                             tok(2, ".", "LET", "*))") + "\n");
    CHECK(is_pleonastic(het, adoc.sentences[0], res));
    Resources strict = Resources::defaults();
    strict.default_het_pleonastic = false;
    CHECK(!is_pleonastic(het, adoc.sentences[0], strict));
    CHECK(is_pleonastic(het, wdoc.sentences[0], strict));  // weather verb still fires

    Document hdoc = doc_from(tok(0, "hij", "VNW(pers,pron)", "(NP*)") + "\n");
    Mention hij = het;
    CHECK(!is_pleonastic(hij, hdoc.sentences[0], res));
}

TEST_CASE("scheme_filter drops pleonastics under riddle and keeps them under sonar") {
    Resources res = Resources::defaults();
    Document doc = weather_doc();
    auto mentions = detect_mentions(doc, Scheme::sonar, res);
    REQUIRE(mentions.size() == 1);
    EntitySet entities;
    Entity e;
    e.id = 0;
    e.mentions.push_back(mentions[0]);
    entities.entities.push_back(e);

    auto [riddle_m, riddle_e] = scheme_filter(mentions, entities, Scheme::riddle, doc, res);
    CHECK(riddle_m.empty());
    CHECK(riddle_e.entities.empty());  // entity reduced to zero mentions disappears

    auto [sonar_m, sonar_e] = scheme_filter(mentions, entities, Scheme::sonar, doc, res);
    CHECK(sonar_m.size() == 1);
    CHECK(sonar_e.entities.size() == 1);
}

TEST_CASE("riddle narrows spans to corrected boundaries") {
    Resources res = Resources::defaults();
    Document doc = relative_doc();
    auto mentions = detect_mentions(doc, Scheme::riddle, res);
    EntitySet entities;
    Entity e;
    e.id = 0;
    for (const auto& m : mentions) e.mentions.push_back(m);
    entities.entities.push_back(e);
    auto [filtered_m, filtered_e] = scheme_filter(mentions, entities, Scheme::riddle, doc, res);
    const Mention* narrowed = find_span(filtered_m, 0, 0, 1);
    REQUIRE(narrowed != nullptr);
    CHECK(narrowed->text == "De man");
    CHECK(find_span(filtered_m, 0, 0, 3) == nullptr);
}

TEST_CASE("riddle-kept mentions are a subset of sonar-kept mentions") {
    Resources res = Resources::defaults();
    for (const Document& doc : {simple_np_doc(), weather_doc(), nested_np_doc(), relative_doc()}) {
        auto riddle = detect_mentions(doc, Scheme::riddle, res);
        auto sonar = detect_mentions(doc, Scheme::sonar, res);
        std::set<MentionKey> sonar_keys;
        for (const auto& m : sonar) sonar_keys.insert(m.key());
        for (const auto& m : riddle) CHECK(sonar_keys.count(m.key()) == 1);
    }
}

TEST_CASE("detection is deterministic") {
    Resources res = Resources::defaults();
    Document doc = nested_np_doc();
    auto a = detect_mentions(doc, Scheme::sonar, res);
    auto b = detect_mentions(doc, Scheme::sonar, res);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].key() == b[i].key());
        CHECK(a[i].head == b[i].head);
        CHECK(a[i].text == b[i].text);
    }
}

TEST_CASE("head lies in the minimal span which lies in the span") {
    Resources res = Resources::defaults();
    Corpus c = parse_conll(synth::synthetic_conll(3, 25, 77));
    for (const auto& doc : c.documents)
        for (Scheme scheme : {Scheme::riddle, Scheme::sonar})
            for (const auto& m : detect_mentions(doc, scheme, res)) {
                CHECK(m.start <= m.head);
                CHECK(m.head <= m.end);
                CHECK(m.start <= m.minimal_start());
                CHECK(m.minimal_start() <= m.head);
                CHECK(m.head <= m.minimal_end());
                CHECK(m.minimal_end() <= m.end);
            }
}

TEST_CASE("normalization lowercases, strips articles and collapses spaces") {
    Resources res = Resources::defaults();
    CHECK(normalize_mention_text("De Burgemeester", res) == "burgemeester");
    CHECK(normalize_mention_text("het   Boek", res) == "boek");
    CHECK(normalize_mention_text("Een vrouw", res) == "vrouw");
    CHECK(normalize_mention_text("Amsterdam", res) == "amsterdam");
    CHECK(normalize_mention_text("de", res) == "de");  // a bare article survives
}

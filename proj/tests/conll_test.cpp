#include "doctest.h"

#include <sstream>

#include "coref/conll.hpp"
#include "support/synthetic.hpp"

using namespace coref;

namespace {

std::string doc_wrap(const std::string& body, const std::string& id = "d1") {
    return "#begin document (" + id + "); part 000\n" + body + "\n#end document\n";
}

std::string line(const std::string& id, int idx, const std::string& form,
                 const std::string& coref) {
    return id + " 0 " + std::to_string(idx) + " " + form + " X * - - - - * " + coref + "\n";
}

}  // namespace

TEST_CASE("two-token span via open/close brackets") {
    Corpus c = parse_conll(doc_wrap(line("d1", 0, "a", "(0") + line("d1", 1, "b", "0)")));
    REQUIRE(c.documents.size() == 1);
    const EntitySet& set = *c.documents[0].entities;
    REQUIRE(set.entities.size() == 1);
    REQUIRE(set.entities[0].mentions.size() == 1);
    CHECK(set.entities[0].mentions[0].start == 0);
    CHECK(set.entities[0].mentions[0].end == 1);
    CHECK(set.entities[0].mentions[0].text == "a b");
}

TEST_CASE("nested single-token mention inside a longer span") {
    // "(0)|(1" on token 0, "1)" on token 2
    Corpus c = parse_conll(doc_wrap(line("d1", 0, "a", "(0)|(1") + line("d1", 1, "b", "-") +
                                    line("d1", 2, "c", "1)")));
    const EntitySet& set = *c.documents[0].entities;
    REQUIRE(set.entities.size() == 2);
    const Entity& e0 = set.entities[0];
    const Entity& e1 = set.entities[1];
    CHECK(e0.id == 0);
    CHECK(e0.mentions.size() == 1);
    CHECK(e0.mentions[0].start == 0);
    CHECK(e0.mentions[0].end == 0);
    CHECK(e1.id == 1);
    CHECK(e1.mentions[0].start == 0);
    CHECK(e1.mentions[0].end == 2);
}

TEST_CASE("unclosed bracket is a parse error naming the position") {
    try {
        parse_conll(doc_wrap(line("d1", 0, "a", "(0") + line("d1", 1, "b", "-")));
        FAIL("expected data_error");
    } catch (const data_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("d1") != std::string::npos);
        CHECK(msg.find("sentence 0") != std::string::npos);
        CHECK(msg.find("never closed") != std::string::npos);
    }
}

TEST_CASE("close without open is an error") {
    CHECK_THROWS_AS(parse_conll(doc_wrap(line("d1", 0, "a", "0)"))), data_error);
}

TEST_CASE("non-numeric entity id is an error") {
    CHECK_THROWS_AS(parse_conll(doc_wrap(line("d1", 0, "a", "(x)"))), data_error);
}

TEST_CASE("duplicate document id is an error") {
    std::string text = doc_wrap(line("d1", 0, "a", "-")) + doc_wrap(line("d1", 0, "b", "-"));
    CHECK_THROWS_AS(parse_conll(text), data_error);
}

TEST_CASE("same span in two entities is an error") {
    CHECK_THROWS_AS(parse_conll(doc_wrap(line("d1", 0, "a", "(0)|(1)"))), data_error);
}

TEST_CASE("sentence breaks end coreference spans") {
    std::string text = doc_wrap(line("d1", 0, "a", "(0") + "\n" + line("d1", 0, "b", "0)"));
    CHECK_THROWS_AS(parse_conll(text), data_error);
}

TEST_CASE("singletons are retained") {
    Corpus c = parse_conll(doc_wrap(line("d1", 0, "a", "(3)") + line("d1", 1, "b", "-")));
    CHECK(c.documents[0].entities->entities.size() == 1);
    CHECK(c.documents[0].entities->entities[0].id == 3);
}

TEST_CASE("round-trip of a parsed corpus") {
    std::string text = doc_wrap(line("d1", 0, "a", "(0") + line("d1", 1, "b", "0)") +
                                line("d1", 2, "c", "(1)"));
    Corpus c = parse_conll(text);
    Corpus again = parse_conll(write_conll(c));
    CHECK(semantically_equal(c, again));
}

TEST_CASE("empty corpus writes an empty stream") {
    Corpus empty;
    CHECK(write_conll(empty).empty());
}

TEST_CASE("entity with two single-token mentions emits two (k) bits") {
    Document doc = synth::make_plain_document("d", 1, 3);
    EntitySet set;
    Entity e;
    e.id = 7;
    e.mentions.push_back(synth::span_mention(0, 0, 0));
    e.mentions.push_back(synth::span_mention(0, 2, 2));
    set.entities.push_back(e);
    doc.entities = set;
    Corpus c;
    c.documents.push_back(doc);
    std::string text = write_conll(c);
    CHECK(text.find("(7)") != std::string::npos);
    size_t first = text.find("(7)");
    CHECK(text.find("(7)", first + 1) != std::string::npos);
}

TEST_CASE("duplicate identical span in one entity refuses to write") {
    Document doc = synth::make_plain_document("d", 1, 3);
    EntitySet set;
    Entity e;
    e.id = 0;
    e.mentions.push_back(synth::span_mention(0, 0, 1));
    e.mentions.push_back(synth::span_mention(0, 0, 1));
    set.entities.push_back(e);
    doc.entities = set;
    Corpus c;
    c.documents.push_back(doc);
    CHECK_THROWS_AS(write_conll(c), data_error);
}

TEST_CASE("missing #end document is an error") {
    CHECK_THROWS_AS(parse_conll(std::string("#begin document (d1); part 000\n")), data_error);
}

TEST_CASE("adjacent same-id spans round-trip") {
    Document doc = synth::make_plain_document("d", 1, 6);
    EntitySet set;
    Entity e;
    e.id = 2;
    e.mentions.push_back(synth::span_mention(0, 0, 2));
    e.mentions.push_back(synth::span_mention(0, 3, 5));
    set.entities.push_back(e);
    doc.entities = set;
    Corpus c;
    c.documents.push_back(doc);
    Corpus again = parse_conll(write_conll(c));
    CHECK(semantically_equal(c, again));
}

TEST_CASE("nested same-id spans round-trip") {
    Document doc = synth::make_plain_document("d", 1, 6);
    EntitySet set;
    Entity e;
    e.id = 4;
    e.mentions.push_back(synth::span_mention(0, 0, 5));
    e.mentions.push_back(synth::span_mention(0, 0, 3));
    e.mentions.push_back(synth::span_mention(0, 4, 5));
    set.entities.push_back(e);
    doc.entities = set;
    Corpus c;
    c.documents.push_back(doc);
    Corpus again = parse_conll(write_conll(c));
    CHECK(semantically_equal(c, again));
}

TEST_CASE("crossing same-entity spans refuse to write") {
    Document doc = synth::make_plain_document("d", 1, 6);
    EntitySet set;
    Entity e;
    e.id = 0;
    e.mentions.push_back(synth::span_mention(0, 0, 3));
    e.mentions.push_back(synth::span_mention(0, 2, 5));
    set.entities.push_back(e);
    doc.entities = set;
    Corpus c;
    c.documents.push_back(doc);
    CHECK_THROWS_AS(write_conll(c), data_error);
}

TEST_CASE("round-trip property on fuzzed documents") {
    Corpus c;
    for (int i = 0; i < 20; ++i) c.documents.push_back(synth::fuzz_document(7, i));
    std::string t1 = write_conll(c);
    Corpus c1 = parse_conll(t1);
    CHECK(semantically_equal(c, c1));
    CHECK(write_conll(c1) == t1);
}

TEST_CASE("bracket balance per entity id after parsing") {
    Corpus c;
    for (int i = 0; i < 10; ++i) c.documents.push_back(synth::fuzz_document(13, i));
    std::string text = write_conll(c);
    // count opens and closes per id over the whole stream
    Corpus parsed = parse_conll(text);
    for (const auto& doc : parsed.documents) {
        std::map<int, int> opens, closes;
        for (const auto& sent : doc.sentences)
            for (const auto& t : sent.tokens) {
                if (t.coref_bit == "-") continue;
                for (const auto& item : util::split(t.coref_bit, '|')) {
                    std::string id = item;
                    if (id.front() == '(') id.erase(0, 1);
                    if (!id.empty() && id.back() == ')') id.pop_back();
                    if (item.front() == '(') ++opens[std::stoi(id)];
                    if (item.back() == ')') ++closes[std::stoi(id)];
                }
            }
        CHECK(opens == closes);
    }
}

TEST_CASE("documents without part suffix keep working") {
    std::string text = "#begin document (plain)\n" + line("plain", 0, "a", "(0)") +
                       "\n#end document\n";
    Corpus c = parse_conll(text);
    CHECK(c.documents[0].id == "plain");
    CHECK(!c.documents[0].part.has_value());
    Corpus again = parse_conll(write_conll(c));
    CHECK(semantically_equal(c, again));
}

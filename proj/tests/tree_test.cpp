#include "doctest.h"

#include "coref/tree.hpp"

using namespace coref;

TEST_CASE("parse bits build a tree with correct spans") {
    // (TOP (S (NP w0) (VP w1 (NP w2)) w3))
    auto tree = build_parse_tree({"(TOP(S(NP*)", "(VP*", "(NP*))", "*))"});
    REQUIRE(tree.has_value());
    CHECK(tree->label == "TOP");
    CHECK(tree->start == 0);
    CHECK(tree->end == 3);
    REQUIRE(tree->children.size() == 1);
    const TreeNode& s = tree->children[0];
    CHECK(s.label == "S");
    REQUIRE(s.children.size() == 2);
    CHECK(s.children[0].label == "NP");
    CHECK(s.children[0].start == 0);
    CHECK(s.children[0].end == 0);
    CHECK(s.children[1].label == "VP");
    CHECK(s.children[1].end == 2);
    CHECK(s.children[1].children[0].label == "NP");
    CHECK(s.children[1].children[0].start == 2);
}

TEST_CASE("all-star bits mean no parse") {
    CHECK(!build_parse_tree({"*", "*", "*"}).has_value());
    CHECK(!build_parse_tree({}).has_value());
}

TEST_CASE("unbalanced bits are an error") {
    CHECK_THROWS_AS(build_parse_tree({"(TOP(S*", "*"}), data_error);
    CHECK_THROWS_AS(build_parse_tree({"*)", "*"}), data_error);
}

TEST_CASE("direct tokens exclude child coverage") {
    auto tree = build_parse_tree({"(S(NP*)", "*", "(NP*))"});
    REQUIRE(tree.has_value());
    auto direct = tree->direct_tokens();
    REQUIRE(direct.size() == 1);
    CHECK(direct[0] == 1);
}

TEST_CASE("multiple roots get wrapped") {
    auto tree = build_parse_tree({"(NP*)", "(NP*)"});
    REQUIRE(tree.has_value());
    CHECK(tree->label.empty());
    CHECK(tree->children.size() == 2);
}

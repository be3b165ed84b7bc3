#include <cmath>
#include <map>

#include <catch2/catch_amalgamated.hpp>

#include "dismantle/centrality.hpp"
#include "dismantle/graph.hpp"
#include "support.hpp"

using namespace dismantle;
using centrality::Scores;

TEST_CASE("degree centrality on a triangle is 1 everywhere") {
    Scores dc = centrality::degree_centrality(testsup::complete({1, 2, 3}));
    for (auto [v, score] : dc) REQUIRE(score == 1.0);
}

TEST_CASE("degree centrality separates a star's center from its leaves") {
    Scores dc = centrality::degree_centrality(testsup::star(0, {1, 2, 3, 4}));
    REQUIRE(dc.at(0) == 1.0);
    for (NodeId leaf : {1, 2, 3, 4}) REQUIRE(dc.at(leaf) == 0.25);
}

TEST_CASE("degree centrality on a path scales by n minus one") {
    Scores dc = centrality::degree_centrality(testsup::path({1, 2, 3}));
    REQUIRE(dc.at(1) == 0.5);
    REQUIRE(dc.at(2) == 1.0);
    REQUIRE(dc.at(3) == 0.5);
}

TEST_CASE("degree centrality refuses graphs with fewer than two nodes") {
    Network single;
    single.add_node(7);
    REQUIRE_THROWS_AS(centrality::degree_centrality(single), centrality::DegenerateGraphError);
    REQUIRE_THROWS_AS(centrality::degree_centrality(Network{}), centrality::DegenerateGraphError);
}

TEST_CASE("betweenness is zero on a triangle") {
    Scores bc = centrality::betweenness_centrality(testsup::complete({1, 2, 3}));
    for (auto [v, score] : bc) REQUIRE(score == 0.0);
}

TEST_CASE("betweenness of a star center counts all leaf pairs") {
    Scores bc = centrality::betweenness_centrality(testsup::star(0, {1, 2, 3}));
    REQUIRE(bc.at(0) == 3.0);
    REQUIRE(bc.at(1) == 0.0);

    Scores big = centrality::betweenness_centrality(
        testsup::star(0, {1, 2, 3, 4, 5, 6, 7, 8, 9}));
    REQUIRE(big.at(0) == 36.0);
}

TEST_CASE("betweenness of path interior nodes counts pairs they separate") {
    Scores bc = centrality::betweenness_centrality(testsup::path({1, 2, 3, 4}));
    REQUIRE(bc.at(1) == 0.0);
    REQUIRE(bc.at(2) == 2.0);
    REQUIRE(bc.at(3) == 2.0);
    REQUIRE(bc.at(4) == 0.0);
}

TEST_CASE("brute-force betweenness agrees on tiny fixtures") {
    Scores bc = centrality::betweenness_bruteforce(testsup::path({1, 2, 3}));
    REQUIRE(bc.at(2) == 1.0);

    Network two_edges;
    two_edges.add_edge(1, 2);
    two_edges.add_edge(3, 4);
    for (auto [v, score] : centrality::betweenness_bruteforce(two_edges))
        REQUIRE(score == 0.0);
}

TEST_CASE("brute-force betweenness rejects graphs past its size bound") {
    Network g = testsup::gnp(65, 0.1, 3);
    REQUIRE_THROWS_AS(centrality::betweenness_bruteforce(g), centrality::OversizeGraphError);
    REQUIRE_NOTHROW(centrality::betweenness_bruteforce(g, 65));
}

TEST_CASE("fast and brute-force betweenness agree on random graphs") {
    std::uint64_t seed = 100;
    for (std::size_t n : {6u, 10u, 14u, 20u}) {
        for (double p : {0.1, 0.3, 0.6}) {
            Network g = testsup::gnp(n, p, seed++);
            Scores fast = centrality::betweenness_centrality(g);
            Scores brute = centrality::betweenness_bruteforce(g);
            REQUIRE(fast.size() == brute.size());
            for (auto [v, score] : fast)
                REQUIRE_THAT(score, Catch::Matchers::WithinAbs(brute.at(v), 1e-9));
        }
    }
}

TEST_CASE("degree-one nodes carry no betweenness") {
    Network g = testsup::gnp(25, 0.15, 42);
    Scores bc = centrality::betweenness_centrality(g);
    for (NodeId v : g.nodes())
        if (g.degree(v) <= 1) REQUIRE(bc.at(v) == 0.0);
}

TEST_CASE("betweenness is invariant under node relabeling") {
    Network g = testsup::gnp(15, 0.3, 9);
    Network shifted;
    for (NodeId v : g.nodes()) shifted.add_node(v + 100);
    for (auto [u, v] : g.edges()) shifted.add_edge(u + 100, v + 100);
    Scores base = centrality::betweenness_centrality(g);
    Scores moved = centrality::betweenness_centrality(shifted);
    for (auto [v, score] : base)
        REQUIRE_THAT(moved.at(v + 100), Catch::Matchers::WithinAbs(score, 1e-12));
}

TEST_CASE("closeness on a path rewards the middle") {
    Scores cl = centrality::closeness_centrality(testsup::path({1, 2, 3}));
    REQUIRE(cl.at(1) == 1.0);
    REQUIRE(cl.at(2) == 1.5);
    REQUIRE(cl.at(3) == 1.0);
}

TEST_CASE("closeness on a triangle is symmetric") {
    Scores cl = centrality::closeness_centrality(testsup::complete({1, 2, 3}));
    for (auto [v, score] : cl) REQUIRE(score == 1.5);
}

TEST_CASE("isolated nodes score zero closeness without touching the rest") {
    Network g = testsup::complete({1, 2, 3});
    g.add_node(9);
    Scores cl = centrality::closeness_centrality(g);
    REQUIRE(cl.at(9) == 0.0);
    REQUIRE(cl.at(1) == 1.5);
}

TEST_CASE("a star center's closeness exceeds one") {
    Scores cl = centrality::closeness_centrality(testsup::star(0, {1, 2, 3, 4}));
    REQUIRE(cl.at(0) == 5.0 / 4.0);
    REQUIRE(cl.at(1) == 5.0 / 7.0);
}

#include <doctest.h>

#include "qct/digraph.hpp"
#include "qct/errors.hpp"
#include "qct/tournament.hpp"

#include "oracles.hpp"

using namespace qct;

TEST_CASE("make_digraph adds loops under the reflexive flag") {
    Digraph d = make_digraph(2, {{0, 1}}, true);
    CHECK(d.size() == 2);
    CHECK(d.edge(0, 0));
    CHECK(d.edge(0, 1));
    CHECK(d.edge(1, 1));
    CHECK_FALSE(d.edge(1, 0));
    CHECK(d.edge_count() == 3);
}

TEST_CASE("make_digraph single looped vertex") {
    Digraph d = make_digraph(1, {}, true);
    CHECK(d.size() == 1);
    CHECK(d.edge_count() == 1);
    CHECK(d.has_loop(0));
}

TEST_CASE("make_digraph rejects out-of-range endpoints and ignores duplicates") {
    CHECK_THROWS_AS(make_digraph(3, {{0, 3}}), ValidationError);
    Digraph d = make_digraph(2, {{0, 1}, {0, 1}});
    CHECK(d.edge_count() == 1);
}

TEST_CASE("reflexive directed cycles") {
    Digraph c3 = reflexive_directed_cycle(3);
    CHECK(c3.edge_count() == 6);
    CHECK_NOTHROW(Tournament::check(c3));

    Digraph c4 = reflexive_directed_cycle(4);
    CHECK(c4.edge_count() == 8);
    CHECK_THROWS_WITH_AS(Tournament::check(c4), "pair (0, 2) is unrelated", ValidationError);

    Digraph c1 = reflexive_directed_cycle(1);
    CHECK(c1.size() == 1);
    CHECK(c1.edge_count() == 1);

    CHECK_THROWS_AS(reflexive_directed_cycle(0), ValidationError);
}

TEST_CASE("tournament validation names the offending vertex or pair") {
    Digraph no_loop = make_digraph(2, {{0, 1}});
    no_loop.add_edge(0, 0);
    CHECK_THROWS_WITH_AS(Tournament::check(no_loop), "missing loop at vertex 1", ValidationError);

    Digraph doubled = make_digraph(2, {{0, 1}, {1, 0}}, true);
    CHECK_THROWS_WITH_AS(Tournament::check(doubled), "pair (0, 1) has a double edge",
                         ValidationError);
}

TEST_CASE("induced subgraphs") {
    Tournament tt3 = transitive_tournament(3);
    std::vector<int> s = {0, 2};
    InducedSubgraph sub = induced(tt3.graph(), s);
    CHECK(sub.graph == transitive_tournament(2).graph());
    CHECK(sub.vertices == std::vector<int>{0, 2});
    CHECK(sub.index_of(2) == 1);

    std::vector<int> all = {0, 1, 2};
    CHECK(induced(tt3.graph(), all).graph == tt3.graph());

    Digraph dc3 = reflexive_directed_cycle(3);
    std::vector<int> one = {0};
    CHECK(induced(dc3, one).graph.edge_count() == 1);

    std::vector<int> bad = {0, 7};
    CHECK_THROWS_AS(induced(dc3, bad), ValidationError);
}

TEST_CASE("direct products flatten with the left factor most significant") {
    Digraph tt2 = transitive_tournament(2).graph();
    Digraph p = direct_product(tt2, tt2);
    CHECK(p.size() == 4);
    // Edge ((a,b),(c,d)) iff a<=c and b<=d; id = 2a + b.
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    CHECK(p.edge(2 * a + b, 2 * c + d) == (a <= c && b <= d));
}

TEST_CASE("power edge counts match the componentwise oracle") {
    Digraph tt2 = transitive_tournament(2).graph();
    Digraph p2 = power(tt2, 2);
    long total = qct_tests::brute_force_power_edge_count(tt2, 2);
    long loops = qct_tests::brute_force_power_edge_count(tt2, 2, true);
    CHECK(total == 9);
    CHECK(loops == 4);
    CHECK(p2.edge_count() == total);
    long p2_loops = 0;
    for (int v = 0; v < p2.size(); ++v)
        if (p2.has_loop(v)) ++p2_loops;
    CHECK(p2_loops == loops);

    Digraph dc3 = reflexive_directed_cycle(3);
    CHECK(power(dc3, 1) == dc3);
}

TEST_CASE("product cap reports the required size") {
    Digraph dc3 = reflexive_directed_cycle(3);
    CHECK_THROWS_AS(power(dc3, 20), CapExceeded);
    CHECK_THROWS_AS(direct_product(dc3, dc3, 8), CapExceeded);
}

TEST_CASE("product with constants multiplies constants componentwise") {
    LabeledGraph a{transitive_tournament(2).graph(), {0}};
    LabeledGraph b{transitive_tournament(2).graph(), {1}};
    std::vector<LabeledGraph> parts = {a, b};
    LabeledGraph p = product_with_constants(parts);
    CHECK(p.graph.size() == 4);
    CHECK(p.constants == std::vector<int>{1}); // (0,1) -> 0*2 + 1

    std::vector<LabeledGraph> single = {a};
    LabeledGraph same = product_with_constants(single);
    CHECK(same.graph == a.graph);
    CHECK(same.constants == a.constants);

    LabeledGraph mismatched{transitive_tournament(2).graph(), {0, 1}};
    std::vector<LabeledGraph> bad = {a, mismatched};
    CHECK_THROWS_AS(product_with_constants(bad), ValidationError);
}

TEST_CASE("text format round-trips after normalization") {
    Digraph d = make_digraph(3, {{2, 0}, {0, 1}}, true);
    std::string text = d.to_text();
    Digraph back = Digraph::from_text(text);
    CHECK(back == d);
    CHECK(back.to_text() == text);

    Digraph parsed = Digraph::from_text("# a comment\nn 2 reflexive\n0 1\n");
    CHECK(parsed == make_digraph(2, {{0, 1}}, true));

    CHECK_THROWS_AS(Digraph::from_text("2\n0 1\n"), ParseError);
    CHECK_THROWS_AS(Digraph::from_text("n 2\n0 5\n"), ValidationError);
}

TEST_CASE("json mirror carries constants") {
    LabeledGraph g{make_digraph(3, {{0, 1}}, true), {2, 2}};
    LabeledGraph back = LabeledGraph::from_json(g.to_json());
    CHECK(back.graph == g.graph);
    CHECK(back.constants == g.constants);
}

TEST_CASE("strongly connected components of small graphs") {
    CHECK(is_strongly_connected(reflexive_directed_cycle(3)));
    CHECK_FALSE(is_strongly_connected(transitive_tournament(3).graph()));
    auto comps = strongly_connected_components(transitive_tournament(3).graph());
    CHECK(comps.size() == 3);
}

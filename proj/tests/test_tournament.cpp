#include <doctest.h>

#include <algorithm>

#include "qct/errors.hpp"
#include "qct/tournament.hpp"

#include "oracles.hpp"

using namespace qct;

namespace {

Tournament s_dc3_t() {
    std::vector<Digraph> blocks = {reflexive_directed_cycle(1), reflexive_directed_cycle(3),
                                   reflexive_directed_cycle(1)};
    return chain_tournament(blocks);
}

} // namespace

TEST_CASE("transitive tournaments") {
    Tournament tt2 = transitive_tournament(2);
    CHECK(tt2.edge(0, 1));
    CHECK_FALSE(tt2.edge(1, 0));
    CHECK(tt2.graph().edge_count() == 3);

    CHECK(transitive_tournament(1).graph().edge_count() == 1);
    CHECK_THROWS_AS(transitive_tournament(0), ValidationError);

    SccChain chain = scc_chain(transitive_tournament(3));
    CHECK(chain.components ==
          std::vector<std::vector<int>>{{0}, {1}, {2}});
}

TEST_CASE("scc chain of cycles and chains") {
    SccChain one = scc_chain(Tournament::check(reflexive_directed_cycle(3)));
    CHECK(one.components == std::vector<std::vector<int>>{{0, 1, 2}});

    SccChain chain = scc_chain(s_dc3_t());
    REQUIRE(chain.components.size() == 3);
    CHECK(chain.components[0].size() == 1);
    CHECK(chain.components[1].size() == 3);
    CHECK(chain.components[2].size() == 1);
    CHECK(chain.initial_size() == 1);
    CHECK(chain.final_size() == 1);
}

TEST_CASE("hamilton cycle on the directed cycle is the cycle itself") {
    Tournament dc3 = Tournament::check(reflexive_directed_cycle(3));
    CHECK(hamilton_cycle(dc3) == std::vector<int>{0, 1, 2});
    CHECK_THROWS_AS(hamilton_cycle(transitive_tournament(3)), NotStronglyConnected);
    CHECK(hamilton_cycle(transitive_tournament(1)) == std::vector<int>{0});
}

TEST_CASE("hamilton cycles validate against the rooted-order oracle on 5 vertices") {
    for (const Tournament& t : enumerate_tournaments(5)) {
        if (!is_strongly_connected(t.graph())) continue;
        auto oracle = qct_tests::brute_force_hamilton_cycles(t);
        CHECK(!oracle.empty());
        std::vector<int> cycle = hamilton_cycle(t);
        REQUIRE(cycle.size() == 5);
        for (std::size_t i = 0; i < cycle.size(); ++i)
            CHECK(t.edge(cycle[i], cycle[(i + 1) % cycle.size()]));
        CHECK(std::find(oracle.begin(), oracle.end(), cycle) != oracle.end());
    }
}

TEST_CASE("hamilton cycles exist and validate for all strong tournaments up to 7") {
    for (int n = 1; n <= 7; ++n)
        for (const Tournament& t : enumerate_tournaments(n)) {
            if (!is_strongly_connected(t.graph())) continue;
            std::vector<int> cycle = hamilton_cycle(t);
            std::vector<int> sorted(cycle);
            std::sort(sorted.begin(), sorted.end());
            for (int v = 0; v < n; ++v) REQUIRE(sorted[static_cast<std::size_t>(v)] == v);
            for (std::size_t i = 0; i < cycle.size(); ++i)
                REQUIRE(t.edge(cycle[i], cycle[(i + 1) % cycle.size()]));
        }
}

TEST_CASE("enumeration matches the brute-force class counts") {
    static const long expected[] = {0, 1, 1, 2, 4, 12, 56};
    for (int n = 1; n <= 6; ++n)
        CHECK(static_cast<long>(enumerate_tournaments(n).size()) == expected[n]);
    for (int n = 1; n <= 4; ++n)
        CHECK(qct_tests::brute_force_tournament_classes(n) == expected[n]);
    CHECK_THROWS_AS(enumerate_tournaments(0), ValidationError);
    CHECK_THROWS_AS(enumerate_tournaments(8), ValidationError);
}

TEST_CASE("the two classes on three vertices are the chain and the cycle") {
    std::vector<Tournament> classes = enumerate_tournaments(3);
    REQUIRE(classes.size() == 2);
    std::uint64_t chain_code = tournament_canonical_code(transitive_tournament(3));
    std::uint64_t cycle_code =
        tournament_canonical_code(Tournament::check(reflexive_directed_cycle(3)));
    CHECK(tournament_canonical_code(classes[0]) != tournament_canonical_code(classes[1]));
    for (const Tournament& t : classes) {
        std::uint64_t code = tournament_canonical_code(t);
        CHECK((code == chain_code || code == cycle_code));
    }
}

TEST_CASE("scc chains partition and respect order across all small tournaments") {
    for (int n = 1; n <= 6; ++n)
        for (const Tournament& t : enumerate_tournaments(n)) {
            SccChain chain = scc_chain(t); // cross-edge order self-checks
            std::vector<int> all;
            for (const auto& comp : chain.components) {
                REQUIRE(is_strongly_connected(induced(t.graph(), comp).graph));
                all.insert(all.end(), comp.begin(), comp.end());
            }
            std::sort(all.begin(), all.end());
            for (int v = 0; v < n; ++v) REQUIRE(all[static_cast<std::size_t>(v)] == v);
        }
}

TEST_CASE("chain tournament stacks blocks with forward edges") {
    Tournament t = s_dc3_t();
    CHECK(t.size() == 5);
    CHECK(t.edge(0, 1));
    CHECK(t.edge(0, 4));
    CHECK(t.edge(2, 4));
    CHECK_FALSE(t.edge(4, 0));
}

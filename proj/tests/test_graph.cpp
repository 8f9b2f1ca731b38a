#include <cmath>
#include <random>

#include "diffrec/graph.hpp"
#include "diffrec/split.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace diffrec;

TEST_CASE("five-user graph adjacency, degrees and consistency") {
    const auto g = five_user_graph();
    REQUIRE(g.user_count() == 5);
    REQUIRE(g.item_count() == 5);
    CHECK(g.link_count() == 11);

    CHECK(g.user_degree(0) == 3);
    CHECK(g.user_degree(1) == 2);
    CHECK(g.user_degree(2) == 2);
    CHECK(g.user_degree(3) == 3);
    CHECK(g.user_degree(4) == 1);

    CHECK(g.item_degree(0) == 3);
    CHECK(g.item_degree(1) == 3);
    CHECK(g.item_degree(2) == 2);
    CHECK(g.item_degree(3) == 2);
    CHECK(g.item_degree(4) == 1);

    const auto items = g.items_of(3);
    REQUIRE(items.size() == 3);
    CHECK(items[0] == 2);
    CHECK(items[1] == 3);
    CHECK(items[2] == 4);

    const auto users = g.users_of(1);
    REQUIRE(users.size() == 3);
    CHECK(users[0] == 0);
    CHECK(users[1] == 1);
    CHECK(users[2] == 4);

    CHECK(g.has_link(2, 3));
    CHECK_FALSE(g.has_link(2, 1));

    // forward and reverse views describe the same edge set
    std::size_t forward = 0, reverse = 0;
    for (std::uint32_t u = 0; u < g.user_count(); ++u) {
        forward += g.user_degree(u);
        for (auto i : g.items_of(u)) CHECK(g.has_link(u, i));
    }
    for (std::uint32_t i = 0; i < g.item_count(); ++i) reverse += g.item_degree(i);
    CHECK(forward == reverse);
    CHECK(forward == g.link_count());
}

TEST_CASE("from_links collapses duplicates and sorts adjacency") {
    auto links = five_user_links();
    links.push_back({0, 0});
    links.push_back({3, 4});
    links.push_back({0, 2});
    const auto g = BipartiteGraph::from_links(5, 5, links);
    CHECK(g.link_count() == 11);
    CHECK(g.user_degree(0) == 3);
}

TEST_CASE("build from a split matches the training links") {
    InteractionLog log;
    for (int u = 1; u <= 8; ++u)
        for (int i = 0; i < 6; ++i) log.records.push_back({u, (u + i) % 9, 3, 0});
    const auto ds = split(log, 0.7, 2);
    const auto g = BipartiteGraph::build(ds);
    CHECK(g.link_count() == ds.train.size());
    for (const auto& l : ds.train) CHECK(g.has_link(l.user, l.item));
    for (const auto& l : ds.probe) CHECK_FALSE(g.has_link(l.user, l.item));
}

TEST_CASE("single link graph has unit degrees") {
    const auto g = BipartiteGraph::from_links(1, 1, {{0, 0}});
    CHECK(g.user_degree(0) == 1);
    CHECK(g.item_degree(0) == 1);
}

TEST_CASE("item cosine on the five-user graph") {
    const auto g = five_user_graph();
    // i0 and i1 share users {u0, u1}, degrees 3 and 3
    CHECK(g.item_cosine(0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    // i0 and i2 share u0, degrees 3 and 2
    CHECK(g.item_cosine(0, 2) == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-15));
    // i1 and i4 are disjoint
    CHECK(g.item_cosine(1, 4) == 0.0);
    CHECK(g.item_cosine(2, 2) == 1.0);
    CHECK(g.item_cosine(1, 0) == g.item_cosine(0, 1));
}

TEST_CASE("cosine bounds and symmetry on random graphs") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 20; ++t) {
        const auto rg = oracle::random_graph(rng, 20, 20, 0.2);
        const auto g = BipartiteGraph::from_links(rg.users, rg.items, rg.links);
        for (std::uint32_t i = 0; i < g.item_count(); ++i)
            for (std::uint32_t j = 0; j < g.item_count(); ++j) {
                const double s = g.item_cosine(i, j);
                CHECK(s >= 0.0);
                CHECK(s <= 1.0 + 1e-15);
                CHECK(s == g.item_cosine(j, i));
            }
    }
}

TEST_CASE("cosine cache memoizes without changing values") {
    const auto g = five_user_graph();
    CosineCache cache(g);
    CHECK(cache(0, 1) == g.item_cosine(0, 1));
    CHECK(cache(1, 0) == g.item_cosine(0, 1));  // symmetric key
    CHECK(cache(0, 1) == cache(0, 1));
    CHECK(cache(3, 3) == 1.0);
}

// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "graphforge/gen_basic.hpp"
#include "graphforge/stats.hpp"
#include "graphforge/transform.hpp"

using namespace graphforge;

namespace {

Graph complete_graph(NodeId n) {
    Graph g;
    g.n = n;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) g.edges.push_back({u, v});
    return g;
}

}  // namespace

TEST_CASE("simplify") {
    Graph already = complete_graph(4);
    CHECK(simplify(already).edges == already.edges);

    Graph messy;
    messy.n = 3;
    messy.allow_loops = true;
    messy.allow_multi = true;
    messy.edges = {{0, 0}, {1, 2}, {2, 1}};
    const Graph clean = simplify(messy);
    CHECK(clean.edges == std::vector<Edge>{{1, 2}});
    CHECK(clean.m() <= messy.m());

    // Idempotent and order-stable.
    const Graph twice = simplify(clean);
    CHECK(twice.edges == clean.edges);
}

TEST_CASE("rejection_connected") {
    RngStream base(60);
    SUBCASE("complete generator accepted on the first try") {
        const auto res = rejection_connected(
            [](RngStream&) { return complete_graph(5); }, 10, base);
        CHECK(res.tries == 1);
        CHECK(res.graph.m() == 10);
    }
    SUBCASE("empty generator exhausts the budget") {
        CHECK_THROWS_AS(rejection_connected(
                            [](RngStream&) {
                                Graph g;
                                g.n = 3;
                                return g;
                            },
                            5, base),
                        BudgetExceededError);
    }
    SUBCASE("gnp at np = 2 ln n connects within 10 tries") {
        const std::uint64_t n = 1000;
        const double p = 2 * std::log(static_cast<double>(n)) / static_cast<double>(n);
        for (int seed = 0; seed < 20; ++seed) {
            const auto res = rejection_connected(
                [&](RngStream& r) {
                    return gnp({.n = n, .p = p}, r);
                },
                10, RngStream(seed).child("case"));
            CHECK(connected_components(res.graph).count == 1);
        }
    }
}

TEST_CASE("extract_giant") {
    SUBCASE("connected input unchanged in size") {
        const Graph g = complete_graph(4);
        const auto res = extract_giant(g);
        CHECK(res.graph.n == 4);
        CHECK(res.graph.m() == 6);
    }
    SUBCASE("triangle plus isolated node") {
        Graph g;
        g.n = 4;
        g.edges = {{0, 1}, {1, 2}, {0, 2}};
        const auto res = extract_giant(g);
        CHECK(res.graph.n == 3);
        CHECK(res.graph.m() == 3);
        CHECK(res.old_to_new[3] == GiantResult::kNotInGiant);
    }
    SUBCASE("keeps the larger of two components, dense relabeling") {
        Graph g;
        g.n = 8;
        // component {0,2,4,6,7} (size 5) and {1,3,5} (size 3)
        g.edges = {{0, 2}, {2, 4}, {4, 6}, {6, 7}, {1, 3}, {3, 5}};
        const auto res = extract_giant(g);
        CHECK(res.graph.n == 5);
        CHECK(res.graph.m() == 4);
        CHECK(res.old_to_new[0] == 0);
        CHECK(res.old_to_new[2] == 1);
        CHECK(res.old_to_new[1] == GiantResult::kNotInGiant);
        // Idempotence.
        const auto again = extract_giant(res.graph);
        CHECK(again.graph.n == res.graph.n);
        CHECK(again.graph.edges == res.graph.edges);
    }
    SUBCASE("empty graph") {
        const auto res = extract_giant(Graph{});
        CHECK(res.graph.n == 0);
    }
}

TEST_CASE("spanning_tree_augment") {
    RngStream base(61);
    SUBCASE("empty graph on 3 nodes becomes a 2-edge tree") {
        Graph g;
        g.n = 3;
        const Graph t = spanning_tree_augment(g, base);
        CHECK(t.m() == 2);
        CHECK(connected_components(t).count == 1);
    }
    SUBCASE("connected input unchanged") {
        const Graph g = complete_graph(4);
        CHECK(spanning_tree_augment(g, base).edges == g.edges);
    }
    SUBCASE("k components gain exactly k-1 edges, all runs") {
        for (int seed = 0; seed < 100; ++seed) {
            Graph g;
            g.n = 9;
            g.edges = {{0, 1}, {2, 3}, {4, 5}};  // 3 pairs + 3 singletons = 6 comps
            const Graph t = spanning_tree_augment(g, RngStream(seed).child("aug"));
            CHECK(t.m() == g.m() + 5);
            CHECK(connected_components(t).count == 1);
        }
    }
}

TEST_CASE("orient and to_undirected") {
    RngStream base(62);
    SUBCASE("by-id orientation round-trips") {
        const Graph g = complete_graph(5);
        const Graph d = orient(g, OrientRule::kById, base);
        CHECK(d.directed);
        const Graph u = to_undirected(d);
        CHECK(u.edges == g.edges);
    }
    SUBCASE("directed 2-cycle collapses to one edge") {
        Graph d;
        d.n = 2;
        d.directed = true;
        d.edges = {{0, 1}, {1, 0}};
        const Graph u = to_undirected(d);
        CHECK(u.edges == std::vector<Edge>{{0, 1}});
    }
    SUBCASE("random orientation is a fair coin per edge") {
        const Graph g = complete_graph(3);
        int forward = 0;
        const int runs = 10'000;
        for (int t = 0; t < runs; ++t) {
            const Graph d = orient(g, OrientRule::kRandom, RngStream(t).child("o"));
            for (const Edge& e : d.edges) forward += e.u < e.v;
        }
        const double n = runs * 3.0;
        const double sigma = std::sqrt(n * 0.25);
        CHECK(std::abs(forward - n / 2) < 4 * sigma);
    }
}

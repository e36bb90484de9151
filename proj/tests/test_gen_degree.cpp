// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "graphforge/gen_basic.hpp"
#include "graphforge/gen_degree.hpp"
#include "graphforge/stats.hpp"
#include "stat_helpers.hpp"

using namespace graphforge;

namespace {

// Sorted degree multisets of every simple graph on n nodes (n small).
std::set<DegreeSequence> realizable_degree_multisets(std::uint64_t n) {
    std::vector<Edge> pairs;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) pairs.push_back({u, v});
    std::set<DegreeSequence> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
        DegreeSequence d(n, 0);
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (mask >> i & 1) {
                ++d[pairs[i].u];
                ++d[pairs[i].v];
            }
        std::sort(d.begin(), d.end(), std::greater<>());
        out.insert(d);
    }
    return out;
}

std::vector<Edge> canonical_edges(const Graph& g) {
    std::vector<Edge> e;
    for (const Edge& edge : g.edges)
        e.push_back({std::min(edge.u, edge.v), std::max(edge.u, edge.v)});
    std::sort(e.begin(), e.end());
    return e;
}

// Enumerates all (2m-1)!! pairings of the ball sequence for a degree
// sequence, as edge multisets with their pairing counts.
std::map<std::vector<Edge>, std::uint64_t> pairing_outcomes(const DegreeSequence& d) {
    std::vector<NodeId> balls;
    for (NodeId v = 0; v < d.size(); ++v)
        for (std::uint64_t i = 0; i < d[v]; ++i) balls.push_back(v);
    std::sort(balls.begin(), balls.end());
    std::map<std::vector<Edge>, std::uint64_t> out;
    do {
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < balls.size(); i += 2)
            edges.push_back(
                {std::min(balls[i], balls[i + 1]), std::max(balls[i], balls[i + 1])});
        std::sort(edges.begin(), edges.end());
        ++out[edges];
    } while (std::next_permutation(balls.begin(), balls.end()));
    return out;
}

Graph random_simple_graph(std::uint64_t n, double p, std::uint64_t seed) {
    return gnp({.n = n, .p = p}, RngStream(seed).child("fixture"));
}

}  // namespace

TEST_CASE("is_graphical") {
    CHECK(is_graphical({3, 3, 3, 3}));
    CHECK_FALSE(is_graphical({3, 1, 1}));      // odd sum
    // No 4-node graph realizes (3,3,1,1): cross-checked by enumeration.
    CHECK_FALSE(realizable_degree_multisets(4).contains(DegreeSequence{3, 3, 1, 1}));
    CHECK_FALSE(is_graphical({3, 3, 1, 1}));
    CHECK(is_graphical({}));
    CHECK(is_graphical({0, 0}));
    CHECK_FALSE(is_graphical({5, 1, 1, 1}));   // degree >= n

    // Exhaustive cross-check against the set of realizable multisets, n = 6.
    const auto realizable = realizable_degree_multisets(6);
    RngStream rng(200);
    for (int t = 0; t < 300; ++t) {
        DegreeSequence d(6);
        for (auto& x : d) x = rng.uniform_int(0, 6);
        DegreeSequence sorted = d;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        CHECK(is_graphical(d) == realizable.contains(sorted));
    }
}

TEST_CASE("havel_hakimi") {
    CHECK(canonical_edges(havel_hakimi({2, 2, 2})) ==
          std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
    CHECK(canonical_edges(havel_hakimi({1, 1})) == std::vector<Edge>{{0, 1}});
    CHECK(canonical_edges(havel_hakimi({4, 1, 1, 1, 1})) ==
          std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CHECK_THROWS_AS(havel_hakimi({3, 1, 1}), InfeasibleError);

    SUBCASE("realizes random graphical sequences exactly and deterministically") {
        for (int t = 0; t < 50; ++t) {
            const DegreeSequence d =
                degree_sequence_of(random_simple_graph(40, 0.2, 1000 + t));
            const Graph g = havel_hakimi(d);
            g.validate();
            CHECK(degree_sequence_of(g) == d);
            CHECK(havel_hakimi(d).edges == g.edges);
        }
    }
}

TEST_CASE("chung_lu: basics and analytic expectations") {
    SUBCASE("two unit weights connect half the time") {
        int hits = 0;
        const int runs = 10'000;
        for (int t = 0; t < runs; ++t)
            hits += chung_lu(std::vector<double>{1, 1}, RngStream(t).child("cl")).graph.m();
        const double sigma = std::sqrt(runs * 0.25);
        CHECK(std::abs(hits - runs * 0.5) < 3 * sigma);
    }
    SUBCASE("uniform weights reproduce gnp(n, c/n) in law") {
        std::vector<double> mw, mg;
        const std::vector<double> w(50, 4.0);  // p_ij = 16 / 200 = 0.08
        for (int t = 0; t < 400; ++t) {
            mw.push_back(static_cast<double>(
                chung_lu(w, RngStream(t).child("a")).graph.m()));
            mg.push_back(static_cast<double>(
                gnp({.n = 50, .p = 0.08}, RngStream(t).child("b")).m()));
        }
        CHECK(gftest::ks_two_sample_pvalue(mw, mg) > 0.001);
    }
    SUBCASE("per-pair marginal equals min(1, w_i w_j / W)") {
        const std::vector<double> w{2.0, 1.5, 1.25, 1.0, 0.5, 0.25, 0.05, 0.0};
        const double total = std::accumulate(w.begin(), w.end(), 0.0);
        const int runs = 30'000;
        std::map<Edge, int> hits;
        for (int t = 0; t < runs; ++t)
            for (const Edge& e : chung_lu(w, RngStream(t).child("pm")).graph.edges)
                ++hits[e];
        for (NodeId i = 0; i < w.size(); ++i)
            for (NodeId j = i + 1; j < w.size(); ++j) {
                const double p = std::min(1.0, w[i] * w[j] / total);
                const double sigma = std::sqrt(runs * p * (1 - p));
                CHECK(std::abs(hits[{i, j}] - runs * p) <= 4 * std::max(sigma, 1.0));
            }
    }
    SUBCASE("unsorted input keeps original labels") {
        const std::vector<double> w{0.5, 2.0, 1.0, 1.5};
        const double total = 5.0;
        const int runs = 20'000;
        std::vector<double> deg(4, 0);
        for (int t = 0; t < runs; ++t)
            for (const Edge& e : chung_lu(w, RngStream(t).child("lab")).graph.edges) {
                ++deg[e.u];
                ++deg[e.v];
            }
        for (NodeId i = 0; i < 4; ++i) {
            double expect = 0;
            for (NodeId j = 0; j < 4; ++j)
                if (j != i) expect += std::min(1.0, w[i] * w[j] / total);
            CHECK(std::abs(deg[i] / runs - expect) < 0.05);
        }
    }
    SUBCASE("realizability enforcement and clamp mode") {
        const std::vector<double> heavy{5.0, 1.0, 1.0};  // 25 > 7
        CHECK_THROWS_AS(chung_lu(heavy, RngStream(1)), InfeasibleError);
        const auto res = chung_lu(heavy, RngStream(1), {}, {.clamp = true});
        CHECK(res.graph.n == 3);
    }
    SUBCASE("row partitions concatenate byte-identically") {
        std::vector<double> w(120);
        RngStream wr(201);
        for (auto& x : w) x = 1.0 + wr.next_double() * 3;
        const RngStream base = RngStream(202).child("pid");
        const Graph whole = chung_lu(w, base).graph;
        for (std::uint32_t parts : {4u, 13u}) {
            std::vector<Edge> edges;
            for (std::uint32_t i = 0; i < parts; ++i) {
                const Graph piece = chung_lu(w, base, Partition{i, parts}).graph;
                edges.insert(edges.end(), piece.edges.begin(), piece.edges.end());
            }
            CHECK(edges == whole.edges);
        }
    }
}

TEST_CASE("configuration_model") {
    RngStream base(202);
    SUBCASE("forced outcomes") {
        CHECK(configuration_model({1, 1}, base).edges == std::vector<Edge>{{0, 1}});
        CHECK(configuration_model({2}, base).edges == std::vector<Edge>{{0, 0}});
        CHECK_THROWS_AS(configuration_model({1, 1, 1}, base), InfeasibleError);
    }
    SUBCASE("degrees exact, loops counting twice") {
        RngStream rng(203);
        for (int t = 0; t < 100; ++t) {
            DegreeSequence d(20);
            for (auto& x : d) x = rng.uniform_int(0, 5);
            if (degree_sum(d) % 2 == 1) ++d[0];
            const Graph g = configuration_model(d, RngStream(t).child("cm"));
            CHECK(degree_sequence_of(g) == d);
        }
    }
    SUBCASE("outcome frequencies match the pairing enumeration for (2,2,2)") {
        const DegreeSequence d{2, 2, 2};
        const auto oracle = pairing_outcomes(d);
        double total_pairings = 0;  // distinct orderings of the ball multiset
        for (const auto& [edges, weight] : oracle) total_pairings += static_cast<double>(weight);
        std::map<std::vector<Edge>, std::uint64_t> counts;
        const int runs = 120'000;
        for (int t = 0; t < runs; ++t)
            ++counts[canonical_edges(configuration_model(d, RngStream(t).child("p")))];
        std::vector<std::uint64_t> observed;
        std::vector<double> expected;
        for (const auto& [edges, weight] : oracle) {
            observed.push_back(counts[edges]);
            expected.push_back(static_cast<double>(weight) / total_pairings);
        }
        CHECK(gftest::chi2_test(observed, expected, runs) > 0.001);
    }
}

TEST_CASE("erased_cm") {
    RngStream base(204);
    CHECK(erased_cm({1, 1}, base).edges == std::vector<Edge>{{0, 1}});
    CHECK(erased_cm({2}, base).m() == 0);
    for (int t = 0; t < 100; ++t) {
        RngStream rng(500 + t);
        DegreeSequence d(30);
        for (auto& x : d) x = rng.uniform_int(0, 6);
        if (degree_sum(d) % 2 == 1) ++d[0];
        const Graph g = erased_cm(d, RngStream(t).child("ecm"));
        g.validate();
        const DegreeSequence out = degree_sequence_of(g);
        for (std::size_t v = 0; v < d.size(); ++v) CHECK(out[v] <= d[v]);
    }
}

TEST_CASE("cm_simple_rejection") {
    RngStream base(205);
    CHECK(cm_simple_rejection({1, 1}, base).edges == std::vector<Edge>{{0, 1}});
    SUBCASE("triangle is the only simple realization of (2,2,2)") {
        for (int t = 0; t < 20; ++t)
            CHECK(canonical_edges(cm_simple_rejection({2, 2, 2}, RngStream(t).child("r"))) ==
                  std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
    }
    SUBCASE("acceptance rate above 0.1 for bounded degrees at n=50") {
        DegreeSequence d(50, 3);
        if (degree_sum(d) % 2) ++d[0];
        int accepted = 0;
        const int tries = 400;
        for (int t = 0; t < tries; ++t) {
            try {
                cm_simple_rejection(d, RngStream(t).child("acc"), 1);
                ++accepted;
            } catch (const BudgetExceededError&) {
            }
        }
        CHECK(accepted > 0.1 * tries);
    }
    SUBCASE("budget exhausts for hopeless parameters") {
        CHECK_THROWS_AS(cm_simple_rejection({2, 2, 2, 2}, base, 0), BudgetExceededError);
    }
}

TEST_CASE("cm_directed") {
    SUBCASE("forced edge") {
        for (int t = 0; t < 20; ++t) {
            const Graph g = cm_directed({1, 0}, {0, 1}, RngStream(t).child("d"));
            CHECK(g.edges == std::vector<Edge>{{1, 0}});
        }
    }
    SUBCASE("two pairings of (1,1)/(1,1), each half the time") {
        int loops = 0, cycles = 0;
        const int runs = 20'000;
        for (int t = 0; t < runs; ++t) {
            const Graph g = cm_directed({1, 1}, {1, 1}, RngStream(t).child("lc"));
            REQUIRE(g.m() == 2);
            const bool has_loop = g.edges[0].u == g.edges[0].v;
            (has_loop ? loops : cycles) += 1;
        }
        const double sigma = std::sqrt(runs * 0.25);
        CHECK(std::abs(loops - runs / 2.0) < 4 * sigma);
        CHECK(loops + cycles == runs);
    }
    SUBCASE("in and out degrees exact on random sequences") {
        RngStream rng(206);
        for (int t = 0; t < 100; ++t) {
            DegreeSequence din(15), dout(15);
            std::uint64_t s = 0;
            for (auto& x : din) {
                x = rng.uniform_int(0, 4);
                s += x;
            }
            // Spread the same total over out-degrees.
            std::uint64_t left = s;
            for (std::size_t i = 0; i + 1 < dout.size(); ++i) {
                dout[i] = std::min<std::uint64_t>(left, rng.uniform_int(0, 4));
                left -= dout[i];
            }
            dout.back() = left;
            if (dout.back() > 6) continue;  // keep sequences sane
            const Graph g = cm_directed(din, dout, RngStream(t).child("x"));
            DegreeSequence gin(15, 0), gout(15, 0);
            for (const Edge& e : g.edges) {
                ++gout[e.u];
                ++gin[e.v];
            }
            CHECK(gin == din);
            CHECK(gout == dout);
        }
        CHECK_THROWS_AS(cm_directed({1, 0}, {1, 1}, rng), InfeasibleError);
    }
}

TEST_CASE("edge_switch: worked rejection and acceptance example") {
    // Edges {a,b}, {c,d} with {a,d} already present: one orientation is
    // accepted, the other would duplicate {a,d} and is rejected.
    Graph g;
    g.n = 4;
    g.edges = {{0, 1}, {2, 3}, {0, 3}};
    SUBCASE("accepted orientation {a,c},{b,d}") {
        auto s = detail::SwitchState::from(AdjacencyGraph::from_graph(g));
        REQUIRE(s.edges[0] == Edge{0, 1});
        REQUIRE(s.edges[2] == Edge{2, 3});
        CHECK(s.try_switch(0, 2, true, false));  // flip (2,3) -> pairs {0,2},{1,3}
        CHECK(s.has(0, 2));
        CHECK(s.has(1, 3));
        CHECK_FALSE(s.has(0, 1));
    }
    SUBCASE("rejected orientation recreating {a,d}") {
        auto s = detail::SwitchState::from(AdjacencyGraph::from_graph(g));
        CHECK_FALSE(s.try_switch(0, 2, false, false));  // {0,3} exists
        CHECK(s.has(0, 1));
        CHECK(s.has(2, 3));
    }
}

TEST_CASE("edge_switch: degrees invariant, simplicity preserved") {
    for (int t = 0; t < 10; ++t) {
        const Graph g0 = random_simple_graph(60, 0.12, 300 + t);
        AdjacencyGraph g = AdjacencyGraph::from_graph(g0);
        const DegreeSequence before = g.degrees();
        edge_switch(g, 5000, RngStream(t).child("es"));
        CHECK(g.degrees() == before);
        g.to_graph().validate();
    }
}

TEST_CASE("edge_switch: dk2 restriction preserves the joint degree matrix") {
    auto jdm = [](const AdjacencyGraph& g) {
        const DegreeSequence deg = g.degrees();
        std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> m;
        for (NodeId u = 0; u < g.n(); ++u)
            for (NodeId v : g.neighbors(u))
                if (u < v)
                    ++m[{std::min(deg[u], deg[v]), std::max(deg[u], deg[v])}];
        return m;
    };
    const Graph g0 = random_simple_graph(50, 0.15, 207);
    AdjacencyGraph g = AdjacencyGraph::from_graph(g0);
    const auto before = jdm(g);
    edge_switch(g, 20'000, RngStream(208), {.dk2_restricted = true});
    CHECK(jdm(g) == before);
    CHECK(g.degrees() == AdjacencyGraph::from_graph(g0).degrees());
}

TEST_CASE("edge_switch: uniform over the 3 perfect matchings of (1,1,1,1)") {
    std::map<std::vector<Edge>, std::uint64_t> counts;
    const int chains = 6000;
    for (int t = 0; t < chains; ++t) {
        Graph g;
        g.n = 4;
        g.edges = {{0, 1}, {2, 3}};
        AdjacencyGraph a = AdjacencyGraph::from_graph(g);
        edge_switch(a, 50, RngStream(t).child("mix"));
        ++counts[canonical_edges(a.to_graph())];
    }
    REQUIRE(counts.size() == 3);
    std::vector<std::uint64_t> observed;
    for (const auto& [k, v] : counts) observed.push_back(v);
    std::vector<double> pmf(3, 1.0 / 3);
    CHECK(gftest::chi2_test(observed, pmf, chains) > 0.001);
}

TEST_CASE("curveball_trade") {
    SUBCASE("identical neighborhoods leave the graph unchanged") {
        Graph g;
        g.n = 4;
        g.edges = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
        AdjacencyGraph a = AdjacencyGraph::from_graph(g);
        RngStream rng(209);
        curveball_trade(a, 0, 1, rng);
        CHECK(canonical_edges(a.to_graph()) == canonical_edges(g));
    }
    SUBCASE("one private neighbor each: swap or keep, half/half") {
        int swapped = 0;
        const int runs = 10'000;
        for (int t = 0; t < runs; ++t) {
            Graph g;
            g.n = 4;
            g.edges = {{0, 2}, {1, 3}};
            AdjacencyGraph a = AdjacencyGraph::from_graph(g);
            RngStream rng = RngStream(t).child("cb");
            curveball_trade(a, 0, 1, rng);
            swapped += a.has_edge(0, 3) ? 1 : 0;
        }
        const double sigma = std::sqrt(runs * 0.25);
        CHECK(std::abs(swapped - runs / 2.0) < 4 * sigma);
    }
    SUBCASE("degrees invariant on random graphs") {
        for (int t = 0; t < 100; ++t) {
            AdjacencyGraph a =
                AdjacencyGraph::from_graph(random_simple_graph(30, 0.2, 400 + t));
            const DegreeSequence before = a.degrees();
            RngStream rng = RngStream(t).child("deg");
            const NodeId u = rng.uniform_int(0, 30);
            NodeId v = rng.uniform_int(0, 29);
            if (v >= u) ++v;
            curveball_trade(a, u, v, rng);
            CHECK(a.degrees() == before);
            a.to_graph().validate();
        }
    }
    SUBCASE("u == v rejected") {
        AdjacencyGraph a(3);
        RngStream rng(210);
        CHECK_THROWS_AS(curveball_trade(a, 1, 1, rng), InvalidInputError);
    }
}

TEST_CASE("global_curveball") {
    SUBCASE("single node is a no-op") {
        AdjacencyGraph a(1);
        global_curveball(a, 5, RngStream(211));
        CHECK(a.m() == 0);
    }
    SUBCASE("complete graph is a fixed point") {
        Graph k5;
        k5.n = 5;
        for (NodeId u = 0; u < 5; ++u)
            for (NodeId v = u + 1; v < 5; ++v) k5.edges.push_back({u, v});
        AdjacencyGraph a = AdjacencyGraph::from_graph(k5);
        global_curveball(a, 3, RngStream(212));
        CHECK(canonical_edges(a.to_graph()) == canonical_edges(k5));
    }
    SUBCASE("degrees invariant over 20 rounds") {
        AdjacencyGraph a = AdjacencyGraph::from_graph(random_simple_graph(41, 0.15, 213));
        const DegreeSequence before = a.degrees();
        global_curveball(a, 20, RngStream(214));
        CHECK(a.degrees() == before);
        a.to_graph().validate();
    }
    SUBCASE("uniform over the 3 matchings of (1,1,1,1)") {
        std::map<std::vector<Edge>, std::uint64_t> counts;
        const int chains = 6000;
        for (int t = 0; t < chains; ++t) {
            Graph g;
            g.n = 4;
            g.edges = {{0, 1}, {2, 3}};
            AdjacencyGraph a = AdjacencyGraph::from_graph(g);
            global_curveball(a, 25, RngStream(t).child("gmix"));
            ++counts[canonical_edges(a.to_graph())];
        }
        REQUIRE(counts.size() == 3);
        std::vector<std::uint64_t> observed;
        for (const auto& [k, v] : counts) observed.push_back(v);
        std::vector<double> pmf(3, 1.0 / 3);
        CHECK(gftest::chi2_test(observed, pmf, chains) > 0.001);
    }
}

TEST_CASE("fdsm") {
    SUBCASE("zero swaps returns the Havel-Hakimi graph verbatim") {
        const DegreeSequence d{3, 2, 2, 2, 1};
        CHECK(fdsm(d, 0, RngStream(215)).edges == havel_hakimi(d).edges);
    }
    SUBCASE("degrees exactly realized") {
        for (int t = 0; t < 20; ++t) {
            const DegreeSequence d =
                degree_sequence_of(random_simple_graph(35, 0.2, 600 + t));
            const Graph g = fdsm(d, 10, RngStream(t).child("fdsm"));
            CHECK(degree_sequence_of(g) == d);
            g.validate();
        }
    }
    SUBCASE("matching distribution uniform for (1,1,1,1)") {
        std::map<std::vector<Edge>, std::uint64_t> counts;
        const int chains = 6000;
        for (int t = 0; t < chains; ++t)
            ++counts[canonical_edges(fdsm({1, 1, 1, 1}, 10, RngStream(t).child("u")))];
        REQUIRE(counts.size() == 3);
        std::vector<std::uint64_t> observed;
        for (const auto& [k, v] : counts) observed.push_back(v);
        std::vector<double> pmf(3, 1.0 / 3);
        CHECK(gftest::chi2_test(observed, pmf, chains) > 0.001);
    }
}

TEST_CASE("random_regular") {
    SUBCASE("n=2, r=1 forces the single edge") {
        CHECK(random_regular(2, 1, RngStream(216)).edges == std::vector<Edge>{{0, 1}});
    }
    SUBCASE("odd n * r infeasible") {
        CHECK_THROWS_AS(random_regular(3, 1, RngStream(217)), InfeasibleError);
        CHECK_THROWS_AS(random_regular(4, 4, RngStream(218)), InfeasibleError);
    }
    SUBCASE("2-regular graphs are disjoint cycle covers") {
        for (int t = 0; t < 25; ++t) {
            const Graph g = random_regular(8, 2, RngStream(t).child("reg"));
            g.validate();
            const DegreeSequence d = degree_sequence_of(g);
            for (auto x : d) CHECK(x == 2);
            // Every component of a 2-regular simple graph is a cycle of >= 3.
            for (const auto& [label, size] : connected_components(g).sizes)
                CHECK(size >= 3);
        }
    }
}

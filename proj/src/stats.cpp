// SPDX-License-Identifier: Apache-2.0
#include "graphforge/stats.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace graphforge {

double density(const Graph& g) {
    if (g.directed || g.allow_multi)
        throw InvalidInputError("density: defined for undirected simple graphs only");
    if (g.n <= 1) return 0.0;
    const double pairs = 0.5 * static_cast<double>(g.n) * static_cast<double>(g.n - 1);
    return static_cast<double>(g.m()) / pairs;
}

double clustering_local(const AdjacencyGraph& g, NodeId v) {
    if (g.directed()) throw InvalidInputError("clustering_local: undirected graphs only");
    if (v >= g.n()) throw InvalidInputError("clustering_local: node out of range");
    const auto& nb = g.neighbors(v);
    const std::size_t d = nb.size();
    if (d <= 1) return 0.0;
    std::uint64_t links = 0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            if (g.has_edge(nb[i], nb[j])) ++links;
    return static_cast<double>(links) / (0.5 * static_cast<double>(d) * static_cast<double>(d - 1));
}

double clustering_global(const AdjacencyGraph& g) {
    if (g.n() == 0) return 0.0;
    double sum = 0;
    for (NodeId v = 0; v < g.n(); ++v) sum += clustering_local(g, v);
    return sum / static_cast<double>(g.n());
}

namespace {

// Sum of distances from src to all other nodes; npos if not all reachable.
std::uint64_t bfs_distance_sum(const AdjacencyGraph& g, NodeId src,
                               std::vector<std::uint32_t>& dist) {
    constexpr std::uint32_t kUnseen = ~std::uint32_t{0};
    std::fill(dist.begin(), dist.end(), kUnseen);
    std::vector<NodeId> frontier{src}, next;
    dist[src] = 0;
    std::uint64_t reached = 1, sum = 0;
    std::uint32_t level = 0;
    while (!frontier.empty()) {
        ++level;
        next.clear();
        for (NodeId u : frontier) {
            for (NodeId w : g.neighbors(u)) {
                if (dist[w] == kUnseen) {
                    dist[w] = level;
                    sum += level;
                    ++reached;
                    next.push_back(w);
                }
            }
        }
        frontier.swap(next);
    }
    if (reached != g.n()) return ~std::uint64_t{0};
    return sum;
}

}  // namespace

double avg_distance(const AdjacencyGraph& g, RngStream& rng,
                    std::optional<std::uint64_t> sample_size) {
    if (g.directed()) throw InvalidInputError("avg_distance: undirected graphs only");
    const NodeId n = g.n();
    if (n <= 1) return 0.0;
    std::vector<std::uint32_t> dist(n);
    // Exact all-pairs BFS is reserved for desk-scale inputs.
    if (!sample_size && n > 10'000) sample_size = 256;

    if (!sample_size) {
        long double total = 0;
        for (NodeId s = 0; s < n; ++s) {
            const std::uint64_t sum = bfs_distance_sum(g, s, dist);
            if (sum == ~std::uint64_t{0})
                throw InvalidInputError("avg_distance: graph is disconnected");
            total += sum;
        }
        return static_cast<double>(total / (static_cast<long double>(n) * (n - 1)));
    }

    long double total = 0;
    const std::uint64_t k = std::max<std::uint64_t>(1, *sample_size);
    for (std::uint64_t i = 0; i < k; ++i) {
        const NodeId s = rng.uniform_int(0, n);
        const std::uint64_t sum = bfs_distance_sum(g, s, dist);
        if (sum == ~std::uint64_t{0})
            throw InvalidInputError("avg_distance: graph is disconnected");
        total += static_cast<long double>(sum) / static_cast<long double>(n - 1);
    }
    return static_cast<double>(total / k);
}

DegreeSequence degree_sequence_of(const Graph& g) {
    DegreeSequence d(g.n, 0);
    for (const Edge& e : g.edges) {
        ++d.at(e.u);
        ++d.at(e.v);  // a loop contributes 2, matching the urn semantics
    }
    return d;
}

std::uint64_t Components::largest_size() const {
    std::uint64_t best = 0;
    for (const auto& [label, size] : sizes) best = std::max(best, size);
    return best;
}

NodeId Components::largest_label() const {
    std::uint64_t best = 0;
    NodeId label = 0;
    for (const auto& [l, size] : sizes)
        if (size > best) {
            best = size;
            label = l;
        }
    return label;
}

Components connected_components(const Graph& g) {
    if (g.directed)
        throw InvalidInputError("connected_components: undirected graphs only");
    // Union-find with path halving.
    std::vector<NodeId> parent(g.n);
    std::iota(parent.begin(), parent.end(), NodeId{0});
    auto find = [&](NodeId x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const Edge& e : g.edges) {
        NodeId a = find(e.u), b = find(e.v);
        if (a == b) continue;
        if (a > b) std::swap(a, b);  // keep the smallest id as the root
        parent[b] = a;
    }
    Components c;
    c.label.resize(g.n);
    std::map<NodeId, std::uint64_t> size_by_label;
    for (NodeId v = 0; v < g.n; ++v) {
        c.label[v] = find(v);
        ++size_by_label[c.label[v]];
    }
    c.count = size_by_label.size();
    c.sizes.assign(size_by_label.begin(), size_by_label.end());
    return c;
}

GraphStats compute_stats(const Graph& g, const StatsOptions& opt) {
    GraphStats s;
    s.n = g.n;
    s.m = g.m();
    s.density = density(g);
    s.avg_degree = g.n == 0 ? 0.0 : 2.0 * static_cast<double>(s.m) / static_cast<double>(g.n);
    const DegreeSequence deg = degree_sequence_of(g);
    for (std::uint64_t d : deg) ++s.degree_histogram[d];
    const Components comps = connected_components(g);
    s.component_count = comps.count;
    s.largest_component_size = comps.largest_size();
    const AdjacencyGraph a = AdjacencyGraph::from_graph(g);
    s.global_cc = clustering_global(a);
    if (opt.with_distance && comps.count == 1 && g.n > 1) {
        RngStream rng = RngStream(opt.seed).child("stats_distance");
        s.avg_distance = avg_distance(a, rng, opt.distance_sample);
    }
    return s;
}

}  // namespace graphforge

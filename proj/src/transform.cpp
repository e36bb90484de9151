// SPDX-License-Identifier: Apache-2.0
#include "graphforge/transform.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "graphforge/stats.hpp"

namespace graphforge {

namespace {

struct EdgeHash {
    std::size_t operator()(const Edge& e) const {
        return static_cast<std::size_t>(mix64(e.u * 0x9e3779b97f4a7c15ULL ^ e.v));
    }
};

}  // namespace

Graph simplify(const Graph& g) {
    Graph out;
    out.n = g.n;
    out.directed = g.directed;
    std::unordered_set<Edge, EdgeHash> seen;
    seen.reserve(g.edges.size() * 2);
    for (const Edge& e : g.edges) {
        if (e.u == e.v) continue;
        Edge key = e;
        if (!g.directed && key.u > key.v) std::swap(key.u, key.v);
        if (seen.insert(key).second) out.edges.push_back(key);
    }
    return out;
}

ConnectedResult rejection_connected(const std::function<Graph(RngStream&)>& generator,
                                    std::uint64_t max_tries, const RngStream& base) {
    for (std::uint64_t t = 0; t < max_tries; ++t) {
        RngStream attempt = base.child("connect_try", t);
        Graph g = generator(attempt);
        if (g.n <= 1 || connected_components(g).count == 1)
            return {std::move(g), t + 1};
    }
    throw BudgetExceededError("rejection_connected: no connected sample within budget");
}

GiantResult extract_giant(const Graph& g) {
    GiantResult out;
    if (g.n == 0) {
        out.graph = g;
        return out;
    }
    const Components comps = connected_components(g);
    const NodeId giant = comps.largest_label();
    out.old_to_new.assign(g.n, GiantResult::kNotInGiant);
    NodeId next = 0;
    for (NodeId v = 0; v < g.n; ++v)
        if (comps.label[v] == giant) out.old_to_new[v] = next++;
    out.graph.n = next;
    out.graph.directed = g.directed;
    out.graph.allow_loops = g.allow_loops;
    out.graph.allow_multi = g.allow_multi;
    for (const Edge& e : g.edges)
        if (comps.label[e.u] == giant)
            out.graph.edges.push_back({out.old_to_new[e.u], out.old_to_new[e.v]});
    return out;
}

Graph spanning_tree_augment(const Graph& g, const RngStream& base) {
    Graph out = g;
    const Components comps = connected_components(g);
    if (comps.count <= 1) return out;

    // Nodes grouped per component, in label order.
    std::vector<std::vector<NodeId>> members(comps.count);
    std::vector<NodeId> label_index;
    label_index.reserve(comps.count);
    for (const auto& [label, size] : comps.sizes) label_index.push_back(label);
    auto index_of = [&](NodeId label) {
        return std::lower_bound(label_index.begin(), label_index.end(), label) -
               label_index.begin();
    };
    for (NodeId v = 0; v < g.n; ++v) members[index_of(comps.label[v])].push_back(v);

    std::vector<std::uint64_t> order(comps.count);
    std::iota(order.begin(), order.end(), 0);
    RngStream rng = base.child("spanning_tree");
    fisher_yates(rng, order);

    std::vector<NodeId> merged = std::move(members[order[0]]);
    for (std::size_t i = 1; i < order.size(); ++i) {
        auto& comp = members[order[i]];
        const NodeId a = comp[rng.uniform_int(0, comp.size())];
        const NodeId b = merged[rng.uniform_int(0, merged.size())];
        out.add_edge(a, b);
        merged.insert(merged.end(), comp.begin(), comp.end());
    }
    return out;
}

Graph to_undirected(const Graph& g) {
    Graph out;
    out.n = g.n;
    out.directed = false;
    out.allow_loops = g.allow_loops;
    std::unordered_set<Edge, EdgeHash> seen;
    seen.reserve(g.edges.size() * 2);
    for (const Edge& e : g.edges) {
        Edge key = e;
        if (key.u > key.v) std::swap(key.u, key.v);
        if (seen.insert(key).second) out.edges.push_back(key);
    }
    return out;
}

Graph orient(const Graph& g, OrientRule rule, const RngStream& base) {
    if (g.directed) throw InvalidInputError("orient: input already directed");
    Graph out;
    out.n = g.n;
    out.directed = true;
    out.allow_loops = g.allow_loops;
    out.allow_multi = g.allow_multi;
    out.edges.reserve(g.edges.size());
    RngStream rng = base.child("orient");
    for (const Edge& e : g.edges) {
        bool flip = false;
        if (rule == OrientRule::kRandom) flip = rng.next_u64() & 1;
        out.edges.push_back(flip ? Edge{e.v, e.u} : Edge{e.u, e.v});
    }
    return out;
}

}  // namespace graphforge

// SPDX-License-Identifier: Apache-2.0
#include "graphforge/graph.hpp"

#include <algorithm>
#include <unordered_set>

namespace graphforge {

void Graph::validate() const {
    for (const Edge& e : edges) {
        if (e.u >= n || e.v >= n) throw InvalidInputError("graph: endpoint out of range");
        if (!allow_loops && e.u == e.v) throw InvalidInputError("graph: loop not permitted");
        if (!directed && e.u > e.v)
            throw InvalidInputError("graph: undirected edge not in canonical order");
    }
    if (!weights.empty() && weights.size() != edges.size())
        throw InvalidInputError("graph: weight count does not match edge count");
    if (!allow_multi) {
        std::vector<Edge> sorted = edges;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InvalidInputError("graph: duplicate edge not permitted");
    }
}

std::uint64_t degree_sum(const DegreeSequence& d) {
    std::uint64_t s = 0;
    for (std::uint64_t x : d) s += x;
    return s;
}

AdjacencyGraph AdjacencyGraph::from_graph(const Graph& g) {
    AdjacencyGraph a(g.n, g.directed);
    for (const Edge& e : g.edges) {
        if (e.u == e.v) throw InvalidInputError("adjacency: loops not supported");
        a.add_edge(e.u, e.v);
    }
    return a;
}

bool AdjacencyGraph::has_edge(NodeId u, NodeId v) const {
    const auto& nb = adj_.at(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

void AdjacencyGraph::add_edge(NodeId u, NodeId v) {
    if (u >= n_ || v >= n_) throw InvalidInputError("adjacency: endpoint out of range");
    if (u == v) throw InvalidInputError("adjacency: loops not supported");
    auto insert_sorted = [](std::vector<NodeId>& nb, NodeId x) {
        auto it = std::lower_bound(nb.begin(), nb.end(), x);
        if (it != nb.end() && *it == x)
            throw InvalidInputError("adjacency: duplicate edge");
        nb.insert(it, x);
    };
    insert_sorted(adj_[u], v);
    if (!directed_) insert_sorted(adj_[v], u);
    ++m_;
}

void AdjacencyGraph::remove_edge(NodeId u, NodeId v) {
    auto erase_sorted = [](std::vector<NodeId>& nb, NodeId x) {
        auto it = std::lower_bound(nb.begin(), nb.end(), x);
        if (it == nb.end() || *it != x)
            throw InvalidInputError("adjacency: edge not present");
        nb.erase(it);
    };
    erase_sorted(adj_.at(u), v);
    if (!directed_) erase_sorted(adj_.at(v), u);
    --m_;
}

Graph AdjacencyGraph::to_graph() const {
    Graph g;
    g.n = n_;
    g.directed = directed_;
    g.edges.reserve(m_);
    for (NodeId u = 0; u < n_; ++u)
        for (NodeId v : adj_[u])
            if (directed_ || u < v) g.edges.push_back({u, v});
    return g;
}

DegreeSequence AdjacencyGraph::degrees() const {
    DegreeSequence d(n_);
    for (NodeId u = 0; u < n_; ++u) d[u] = adj_[u].size();
    return d;
}

}  // namespace graphforge

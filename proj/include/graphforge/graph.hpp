// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "graphforge/error.hpp"

namespace graphforge {

using NodeId = std::uint64_t;

struct Edge {
    NodeId u = 0;
    NodeId v = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Node count plus edge list; the universal output currency of every
/// generator. Undirected simple edges are stored canonically with u <= v.
struct Graph {
    NodeId n = 0;
    bool directed = false;
    bool allow_loops = false;
    bool allow_multi = false;
    std::vector<Edge> edges;
    std::vector<std::uint64_t> weights;  // parallel to edges; empty if unweighted

    std::uint64_t m() const { return edges.size(); }
    bool weighted() const { return !weights.empty(); }
    bool simple() const { return !allow_loops && !allow_multi; }

    /// Appends an edge; swaps endpoints into canonical order when undirected.
    void add_edge(NodeId u, NodeId v) {
        if (!directed && u > v) std::swap(u, v);
        edges.push_back({u, v});
    }

    /// Checks the declared invariants; throws InvalidInputError on violation.
    void validate() const;
};

using DegreeSequence = std::vector<std::uint64_t>;

std::uint64_t degree_sum(const DegreeSequence& d);

/// Neighbor-set view of a simple graph. Neighbor lists are kept sorted, so
/// adjacency tests are binary searches and set operations are merges.
class AdjacencyGraph {
public:
    AdjacencyGraph() = default;
    explicit AdjacencyGraph(NodeId n, bool directed = false)
        : n_(n), directed_(directed), adj_(n) {}

    /// Builds from a simple graph. Throws on loops or duplicate edges.
    static AdjacencyGraph from_graph(const Graph& g);

    NodeId n() const { return n_; }
    bool directed() const { return directed_; }
    std::uint64_t m() const { return m_; }

    const std::vector<NodeId>& neighbors(NodeId v) const { return adj_.at(v); }
    std::uint64_t degree(NodeId v) const { return adj_.at(v).size(); }
    bool has_edge(NodeId u, NodeId v) const;

    /// Inserts {u, v}; no-op guards are the caller's job (throws on loops,
    /// duplicates, or out-of-range ids).
    void add_edge(NodeId u, NodeId v);
    void remove_edge(NodeId u, NodeId v);

    /// Edge list with u < v, ascending.
    Graph to_graph() const;

    DegreeSequence degrees() const;

private:
    NodeId n_ = 0;
    bool directed_ = false;
    std::uint64_t m_ = 0;
    std::vector<std::vector<NodeId>> adj_;
};

}  // namespace graphforge

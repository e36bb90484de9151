// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "graphforge/graph.hpp"
#include "graphforge/rng.hpp"

namespace graphforge {

/// Drops loops and duplicate edges, keeping the first occurrence in order.
Graph simplify(const Graph& g);

struct ConnectedResult {
    Graph graph;
    std::uint64_t tries = 0;
};

/// Draws graphs from `generator` (fed a fresh substream per attempt) until a
/// connected one appears. Throws BudgetExceededError past max_tries.
ConnectedResult rejection_connected(const std::function<Graph(RngStream&)>& generator,
                                    std::uint64_t max_tries, const RngStream& base);

struct GiantResult {
    Graph graph;                        // densely relabeled, order-preserving
    std::vector<NodeId> old_to_new;     // kNotInGiant for dropped nodes
    static constexpr NodeId kNotInGiant = ~NodeId{0};
};

/// Induced subgraph of the largest component (ties: smallest contained id).
GiantResult extract_giant(const Graph& g);

/// Connects the graph by adding exactly (#components - 1) bridge edges:
/// components are merged in random order, each joined by an edge between a
/// uniform node of the component and a uniform node of the merged part.
Graph spanning_tree_augment(const Graph& g, const RngStream& base);

/// Collapses (u,v) and (v,u) into one undirected edge (first occurrence kept).
Graph to_undirected(const Graph& g);

enum class OrientRule { kById, kRandom };

/// Assigns a direction to every undirected edge.
Graph orient(const Graph& g, OrientRule rule, const RngStream& base);

}  // namespace graphforge

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "graphforge/graph.hpp"
#include "graphforge/rng.hpp"

namespace graphforge {

/// m / C(n,2) for undirected simple graphs; 0 for n <= 1.
double density(const Graph& g);

/// Density of the subgraph induced by v's neighborhood; 0 when deg(v) <= 1.
double clustering_local(const AdjacencyGraph& g, NodeId v);

/// Mean of clustering_local over all nodes (degree <= 1 nodes count as 0).
double clustering_global(const AdjacencyGraph& g);

/// Mean shortest-path length over ordered node pairs. Exact with all-source
/// BFS when sample_size is absent and n <= 10^4; otherwise estimated from
/// BFS out of `sample_size` (default 256) uniformly drawn sources.
/// Throws on disconnected input.
double avg_distance(const AdjacencyGraph& g, RngStream& rng,
                    std::optional<std::uint64_t> sample_size = {});

/// Per-node degrees; loops add 2 (undirected) resp. 1 in + 1 out (directed).
DegreeSequence degree_sequence_of(const Graph& g);

struct Components {
    std::vector<NodeId> label;  // per node: smallest node id in its component
    std::uint64_t count = 0;
    std::vector<std::pair<NodeId, std::uint64_t>> sizes;  // (label, size), label-ascending
    std::uint64_t largest_size() const;
    NodeId largest_label() const;  // smallest label among maximum-size components
};

/// Undirected connected components; labeling is deterministic (smallest
/// contained node id) and invariant under edge reordering.
Components connected_components(const Graph& g);

struct GraphStats {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    double density = 0;
    double avg_degree = 0;
    double global_cc = 0;
    std::map<std::uint64_t, std::uint64_t> degree_histogram;  // sparse: degree -> count
    std::optional<double> avg_distance;
    std::uint64_t component_count = 0;
    std::uint64_t largest_component_size = 0;
};

struct StatsOptions {
    bool with_distance = false;
    std::optional<std::uint64_t> distance_sample;  // default policy if unset
    std::uint64_t seed = 0;
};

/// Computes the full statistics block for an undirected simple graph.
GraphStats compute_stats(const Graph& g, const StatsOptions& opt = {});

}  // namespace graphforge

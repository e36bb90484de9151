// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "graphforge/graph.hpp"
#include "graphforge/partition.hpp"
#include "graphforge/rng.hpp"

namespace graphforge {

/// True iff some simple undirected graph realizes D (Erdos-Gallai).
bool is_graphical(const DegreeSequence& d);

/// Deterministic realization of a graphical sequence; highest residual degree
/// first, ties by node id. Throws InfeasibleError on non-graphical input.
Graph havel_hakimi(const DegreeSequence& d);

struct ChungLuOptions {
    bool clamp = false;  // clamp p_ij at 1 instead of rejecting the weights
};

struct ChungLuResult {
    Graph graph;
    std::uint64_t clamped_pairs = 0;  // pairs whose probability hit the cap
};

/// Each pair {i, j} independently with probability min(1, w_i w_j / W);
/// skip-and-reject over rows of the weight-sorted adjacency matrix.
/// Atoms are row chunks of the sorted order.
ChungLuResult chung_lu(std::span<const double> weights, const RngStream& base,
                       std::optional<Partition> part = {},
                       const ChungLuOptions& opt = {});

/// Ball-pairing multigraph realizing D exactly (loops count twice).
Graph configuration_model(const DegreeSequence& d, const RngStream& base);

/// Configuration model with loops and duplicate edges erased.
Graph erased_cm(const DegreeSequence& d, const RngStream& base);

/// Repeats the configuration model until a simple graph appears.
Graph cm_simple_rejection(const DegreeSequence& d, const RngStream& base,
                          std::uint64_t max_tries = 1000);

/// Directed configuration model from two independent urns; in/out degrees
/// realized exactly.
Graph cm_directed(const DegreeSequence& in, const DegreeSequence& out,
                  const RngStream& base);

struct EdgeSwitchOptions {
    bool dk2_restricted = false;  // additionally preserve the joint degree matrix
};

/// Runs `num_swaps` Markov steps: draw two distinct edges and an orientation,
/// reject (without replacement) anything creating a loop, a duplicate edge,
/// or, in dk2 mode, changing a degree-pair count. Degrees are invariant.
void edge_switch(AdjacencyGraph& g, std::uint64_t num_swaps, const RngStream& base,
                 const EdgeSwitchOptions& opt = {});

/// One curveball trade: uniformly redistributes the disjoint neighbors of
/// u and v, keeping per-node counts; the graph stays simple.
void curveball_trade(AdjacencyGraph& g, NodeId u, NodeId v, RngStream& rng);

/// Each round trades along a uniform random near-perfect matching of the
/// nodes (one node sits out when n is odd).
void global_curveball(AdjacencyGraph& g, std::uint64_t rounds, const RngStream& base);

/// Fixed degree sequence model: Havel-Hakimi then
/// ceil(swaps_per_edge * m) edge switches.
Graph fdsm(const DegreeSequence& d, double swaps_per_edge, const RngStream& base);

/// Uniform pairing conditioned on simplicity. Whole pairings are rejected,
/// so keep the degree small: acceptance stays practical up to about
/// degree 7 at n >= 100 and shrinks quickly beyond that.
Graph random_regular(std::uint64_t n, std::uint64_t degree, const RngStream& base,
                     std::uint64_t max_tries = 1000);

namespace detail {

/// Edge-array view with hashed neighborhoods used by edge_switch: O(1) edge
/// pick, O(1) expected existence check, slot rewrite on update.
struct SwitchState {
    std::vector<Edge> edges;
    std::vector<std::unordered_set<NodeId>> adj;
    DegreeSequence degree;

    static SwitchState from(const AdjacencyGraph& g);
    bool has(NodeId u, NodeId v) const;
    /// Attempts one switch of edge slots e1, e2 with the given orientation;
    /// returns whether it was applied.
    bool try_switch(std::size_t e1, std::size_t e2, bool orientation, bool dk2);
};

}  // namespace detail

}  // namespace graphforge

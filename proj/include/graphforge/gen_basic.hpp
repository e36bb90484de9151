// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "graphforge/graph.hpp"
#include "graphforge/partition.hpp"
#include "graphforge/rng.hpp"

namespace graphforge {

enum class ErVariant {
    kUndirected,        // upper triangle, simple
    kDirectedNoLoops,   // full matrix minus diagonal
    kDirectedLoops,     // full matrix
    kBipartite,         // n1 x n2 block; edges (left, n1 + right)
};

struct GnpParams {
    std::uint64_t n = 0;
    double p = 0;
    ErVariant variant = ErVariant::kUndirected;
    std::uint64_t n1 = 0, n2 = 0;  // bipartite only; n = n1 + n2
};

struct GnmParams {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    ErVariant variant = ErVariant::kUndirected;
    std::uint64_t n1 = 0, n2 = 0;
};

/// Number of matrix cells the variant samples from.
std::uint64_t er_capacity(ErVariant variant, std::uint64_t n, std::uint64_t n1,
                          std::uint64_t n2);

/// Gilbert model: every cell of the variant's matrix region independently
/// with probability p, by Bernoulli skip sampling over the linearized region.
Graph gnp(const GnpParams& params, const RngStream& base,
          std::optional<Partition> part = {});

/// Uniform m-subset of the region via sample_k_of_n with hypergeometric
/// count splitting across atoms.
Graph gnm(const GnmParams& params, const RngStream& base,
          std::optional<Partition> part = {});

struct BaParams {
    std::uint64_t n = 0;
    std::uint64_t d = 1;           // edges per new node
    std::uint64_t seed_nodes = 0;  // clique seed; 0 = empty seed
    bool simple = false;           // resample until d distinct neighbors
    std::optional<Graph> seed_graph;  // overrides seed_nodes when set
};

/// Preferential attachment via uniform sampling from the growing edge array.
Graph ba_sequential(const BaParams& params, const RngStream& base);

/// Retrace variant: every array position is an independent pure function of
/// the seed, so any edge range can be produced in isolation and in parallel.
/// Emits loops and multi-edges (use simplify() for a simple graph).
Graph ba_hash(const BaParams& params, const RngStream& base,
              std::optional<Partition> part = {});

struct CopyParams {
    std::uint64_t n = 0;
    std::uint64_t d = 1;
    double p = 0.5;      // direct-edge probability
    Graph seed;          // nonempty node set required
    bool simple = true;
};

/// Node-copy model: each new node picks a random host and either links to it
/// or copies one of its links.
Graph node_copy(const CopyParams& params, const RngStream& base);

/// Split graph from per-node dominating/isolated coin flips; the coin of
/// node v is a pure function of (seed, v), so any node range regenerates
/// without communication.
Graph threshold_graph(std::uint64_t n, double p_dominating, const RngStream& base,
                      std::optional<Partition> part = {});

/// Weighted random graph: every potential edge carries a geometric
/// multiplicity; only positive-weight edges are emitted. Topologically a
/// G(n, p) with p = 1 - p_prime.
Graph wrg(std::uint64_t n, double p_prime, const RngStream& base,
          std::optional<Partition> part = {});

namespace detail {

/// Inverse of the row-major upper-triangle linearization: cell index -> (u,v).
Edge triangle_unrank(std::uint64_t cell, std::uint64_t n);

/// Decodes a linear cell index of the given variant into an edge.
Edge er_unrank(std::uint64_t cell, ErVariant variant, std::uint64_t n,
               std::uint64_t n1, std::uint64_t n2);

/// Resolves one 1-based position of the preferential-attachment edge array
/// using the prior-position map `h` (h(x) in [1, x)).
/// Returns a zero-based node id.
template <typename Hash>
NodeId ba_resolve_position(std::uint64_t pos, std::uint64_t d, std::uint64_t seed_nodes,
                           std::span<const Edge> seed_edges, Hash&& h) {
    const std::uint64_t seed_slots = 2 * seed_edges.size();
    while (pos > seed_slots && pos % 2 == 0) pos = h(pos);
    if (pos <= seed_slots) {
        const Edge e = seed_edges[(pos - 1) / 2];
        return pos % 2 == 1 ? e.u : e.v;
    }
    const std::uint64_t j = (pos - seed_slots - 1) / 2;  // new-edge index
    return seed_nodes + j / d;
}

bool threshold_coin(const RngStream& base, std::uint64_t node, double p_dominating);

}  // namespace detail

}  // namespace graphforge

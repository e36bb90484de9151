// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "graphforge/alias.hpp"
#include "graphforge/graph.hpp"
#include "graphforge/partition.hpp"
#include "graphforge/rng.hpp"

namespace graphforge {

struct SbmParams {
    std::uint64_t n = 0;
    std::uint32_t k = 0;
    std::vector<double> community_prob;  // length k, sums to 1
    std::vector<double> p_matrix;        // k x k row-major, symmetric, in [0,1]
};

struct SbmResult {
    Graph graph;                          // nodes contiguous by community
    std::vector<std::uint32_t> community; // per (new) node id
    std::vector<NodeId> original_id;      // new id -> id before reordering
};

/// Stochastic block model: communities drawn by alias sampling, nodes
/// reordered contiguously, and each of the k(k+1)/2 blocks generated as a
/// Bernoulli-skip region. Atoms are blocks.
SbmResult sbm(const SbmParams& params, const RngStream& base,
              std::optional<Partition> part = {});

/// The assignment phase alone (identical to what sbm() embeds): community
/// per reordered node plus the original ids.
SbmResult sbm_communities(const SbmParams& params, const RngStream& base);

struct RmatParams {
    std::uint32_t scale = 0;  // n = 2^scale
    std::uint64_t m = 0;
    double a = 0.25, b = 0.25, c = 0.25, d = 0.25;
    double noise = 0;         // per-level perturbation amplitude, [0, 0.5)
    bool dedup = false;       // drop loops + duplicates afterwards
    bool undirected = false;  // requires b == c; mirrors onto min/max order
    bool accelerate = true;   // alias table over decision blocks (noise-free only)
};

/// R-MAT: each edge picks one quadrant per level. The accelerated path
/// samples 8 levels at a time from a precomputed alias table and is
/// distribution-identical to the per-level recursion. Atoms are edge chunks.
Graph rmat(const RmatParams& params, const RngStream& base,
           std::optional<Partition> part = {});

struct BterParams {
    std::map<std::uint64_t, std::uint64_t> degree_counts;  // degree -> #nodes
    std::map<std::uint64_t, double> cc_by_degree;          // degree -> target cc
    double beta = 1.0;  // degree-1 node-count inflation, >= 1
};

struct BterResult {
    Graph graph;
    std::vector<std::uint64_t> target_degree;  // per node
};

/// BTER: affinity blocks of d+1 same-degree nodes realized as dense G(n,p)
/// blocks (connectivity rho_d = c_d^(1/3)), then a Chung-Lu pass on the
/// per-node excess degrees. Output is simplified.
BterResult bter(const BterParams& params, const RngStream& base);

namespace detail {

/// One R-MAT edge via per-level quadrant draws (optionally noise-perturbed).
Edge rmat_edge_naive(RngStream& rng, std::uint32_t scale, const double* abcd,
                     double noise);

/// Alias table over all 4^levels packed quadrant-decision sequences; the
/// sampled bucket id *is* the decision block (2 bits per level, level 0 in
/// the low bits).
AliasTable make_rmat_block_table(const double* abcd, std::uint32_t levels);

Edge rmat_edge_block(RngStream& rng, std::uint32_t scale, std::uint32_t levels,
                     const AliasTable& table);

}  // namespace detail

}  // namespace graphforge

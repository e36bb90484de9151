// SPDX-License-Identifier: Apache-2.0
#include "graphforge/gen_basic.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace graphforge {

namespace detail {

Edge triangle_unrank(std::uint64_t cell, std::uint64_t n) {
    // Row-major upper triangle: row u starts at offset(u) = u*(2n-1-u)/2.
    auto offset = [n](std::uint64_t u) { return u * (2 * n - 1 - u) / 2; };
    const double nn = static_cast<double>(n);
    double guess = std::floor(
        (2 * nn - 1 - std::sqrt((2 * nn - 1) * (2 * nn - 1) - 8 * static_cast<double>(cell))) / 2);
    std::uint64_t u = guess <= 0 ? 0 : std::min<std::uint64_t>(static_cast<std::uint64_t>(guess), n - 2);
    while (u + 1 <= n - 2 && offset(u + 1) <= cell) ++u;
    while (u > 0 && offset(u) > cell) --u;
    return {u, u + 1 + (cell - offset(u))};
}

Edge er_unrank(std::uint64_t cell, ErVariant variant, std::uint64_t n, std::uint64_t n1,
               std::uint64_t n2) {
    switch (variant) {
        case ErVariant::kUndirected:
            return triangle_unrank(cell, n);
        case ErVariant::kDirectedNoLoops: {
            const std::uint64_t u = cell / (n - 1);
            const std::uint64_t r = cell % (n - 1);
            return {u, r + (r >= u ? 1 : 0)};
        }
        case ErVariant::kDirectedLoops:
            return {cell / n, cell % n};
        case ErVariant::kBipartite:
            return {cell / n2, n1 + cell % n2};
    }
    throw InvalidInputError("er_unrank: unknown variant");
}

bool threshold_coin(const RngStream& base, std::uint64_t node, double p_dominating) {
    RngStream coin = base.child("threshold_coin", node);
    return coin.next_double() < p_dominating;
}

}  // namespace detail

std::uint64_t er_capacity(ErVariant variant, std::uint64_t n, std::uint64_t n1,
                          std::uint64_t n2) {
    switch (variant) {
        case ErVariant::kUndirected: return n < 2 ? 0 : n * (n - 1) / 2;
        case ErVariant::kDirectedNoLoops: return n < 2 ? 0 : n * (n - 1);
        case ErVariant::kDirectedLoops: return n * n;
        case ErVariant::kBipartite: return n1 * n2;
    }
    throw InvalidInputError("er_capacity: unknown variant");
}

namespace {

constexpr std::uint64_t kGnpAtomTag = fnv1a64("gnp_atom");
constexpr std::uint64_t kGnmAtomTag = fnv1a64("gnm_atom");
constexpr std::uint64_t kWrgWeightTag = fnv1a64("wrg_weight");
constexpr std::uint64_t kBaHashTag = fnv1a64("ba_hash_h");

void init_er_graph(Graph& g, ErVariant variant, std::uint64_t n, std::uint64_t n1,
                   std::uint64_t n2) {
    if (variant == ErVariant::kBipartite) {
        if (n1 == 0 || n2 == 0) throw InfeasibleError("bipartite sizes must be positive");
        g.n = n1 + n2;
    } else {
        g.n = n;
    }
    g.directed = variant == ErVariant::kDirectedNoLoops || variant == ErVariant::kDirectedLoops;
    g.allow_loops = variant == ErVariant::kDirectedLoops;
}

std::vector<std::uint64_t> atom_boundaries(std::uint64_t capacity, std::uint64_t atoms) {
    std::vector<std::uint64_t> b(atoms + 1);
    for (std::uint64_t i = 0; i <= atoms; ++i) b[i] = capacity * i / atoms;
    return b;
}

}  // namespace

Graph gnp(const GnpParams& params, const RngStream& base, std::optional<Partition> part) {
    if (!(params.p >= 0.0) || params.p > 1.0)
        throw InfeasibleError("gnp: p must be in [0, 1]");
    Graph g;
    init_er_graph(g, params.variant, params.n, params.n1, params.n2);
    const std::uint64_t capacity = er_capacity(params.variant, params.n, params.n1, params.n2);
    const auto bounds = atom_boundaries(capacity, kDefaultAtoms);
    const IndexRange atoms = partition_atoms(part, kDefaultAtoms);
    for (std::uint64_t a = atoms.lo; a < atoms.hi; ++a) {
        RngStream rng = base.child(kGnpAtomTag, a);
        for (std::uint64_t cell : bernoulli_skip({bounds[a], bounds[a + 1]}, params.p, rng)) {
            const Edge e = detail::er_unrank(cell, params.variant, params.n, params.n1, params.n2);
            g.edges.push_back(e);
        }
    }
    return g;
}

Graph gnm(const GnmParams& params, const RngStream& base, std::optional<Partition> part) {
    Graph g;
    init_er_graph(g, params.variant, params.n, params.n1, params.n2);
    const std::uint64_t capacity = er_capacity(params.variant, params.n, params.n1, params.n2);
    if (params.m > capacity)
        throw InfeasibleError("gnm: m exceeds capacity " + std::to_string(capacity));
    const auto bounds = atom_boundaries(capacity, kDefaultAtoms);
    const auto counts = split_sample_counts(params.m, bounds, base);
    const IndexRange atoms = partition_atoms(part, kDefaultAtoms);
    for (std::uint64_t a = atoms.lo; a < atoms.hi; ++a) {
        if (counts[a] == 0) continue;
        RngStream rng = base.child(kGnmAtomTag, a);
        for (std::uint64_t cell : sample_k_of_n(counts[a], {bounds[a], bounds[a + 1]}, rng)) {
            const Edge e = detail::er_unrank(cell, params.variant, params.n, params.n1, params.n2);
            g.edges.push_back(e);
        }
    }
    return g;
}

namespace {

// Seed edge list: the supplied graph, or a clique on seed_nodes ids.
std::vector<Edge> ba_seed_edges(const BaParams& p, std::uint64_t* n0_out) {
    std::vector<Edge> seed;
    std::uint64_t n0 = p.seed_nodes;
    if (p.seed_graph) {
        if (p.seed_graph->directed)
            throw InvalidInputError("ba: seed graph must be undirected");
        n0 = p.seed_graph->n;
        seed = p.seed_graph->edges;
    } else {
        for (std::uint64_t u = 0; u < n0; ++u)
            for (std::uint64_t v = u + 1; v < n0; ++v) seed.push_back({u, v});
    }
    if (p.d < 1) throw InfeasibleError("ba: d must be >= 1");
    if (p.n < n0) throw InfeasibleError("ba: n smaller than seed");
    if (p.simple && n0 < p.d + 1)
        throw InfeasibleError("ba: simple mode needs a seed with >= d+1 nodes");
    if (p.simple && seed.empty() && p.n > n0)
        throw InfeasibleError("ba: simple mode needs a seed with at least one edge");
    *n0_out = n0;
    return seed;
}

}  // namespace

Graph ba_sequential(const BaParams& params, const RngStream& base) {
    std::uint64_t n0 = 0;
    const std::vector<Edge> seed = ba_seed_edges(params, &n0);
    const std::uint64_t m0 = seed.size();
    const std::uint64_t new_edges = params.d * (params.n - n0);

    Graph g;
    g.n = params.n;
    g.allow_loops = !params.simple;
    g.allow_multi = !params.simple;
    g.edges = seed;

    // Edge array; slot 2i holds the tail of edge i, slot 2i+1 its head.
    std::vector<NodeId> slots;
    slots.reserve(2 * (m0 + new_edges));
    for (const Edge& e : g.edges) {
        slots.push_back(e.u);
        slots.push_back(e.v);
    }

    RngStream rng = base.child("ba_sequential");
    std::vector<NodeId> picked;  // distinct-neighbor tracking in simple mode
    for (std::uint64_t j = 0; j < new_edges; ++j) {
        const NodeId node = n0 + j / params.d;
        if (params.simple && j % params.d == 0) picked.clear();
        slots.push_back(node);
        NodeId head;
        if (!params.simple) {
            // Sampling over everything below the head slot (including the
            // just-written tail) allows loops and multi-edges.
            head = slots[rng.uniform_int(0, slots.size())];
        } else {
            const std::uint64_t limit = 2 * (m0 + params.d * (j / params.d));
            std::uint64_t guard = 0;
            do {
                head = slots[rng.uniform_int(0, limit)];
                if (++guard > 100'000'000)
                    throw BudgetExceededError("ba: distinct-neighbor resampling stalled");
            } while (std::find(picked.begin(), picked.end(), head) != picked.end());
            picked.push_back(head);
        }
        slots.push_back(head);
        g.add_edge(node, head);
    }
    return g;
}

Graph ba_hash(const BaParams& params, const RngStream& base, std::optional<Partition> part) {
    if (params.simple)
        throw InfeasibleError("ba_hash: simple mode unsupported; simplify() afterwards");
    std::uint64_t n0 = 0;
    const std::vector<Edge> seed = ba_seed_edges(params, &n0);
    const std::uint64_t m0 = seed.size();
    const std::uint64_t m = m0 + params.d * (params.n - n0);

    auto h = [&base](std::uint64_t x) {
        RngStream s = base.child(kBaHashTag, x);
        return 1 + s.uniform_int(0, x - 1);
    };

    Graph g;
    g.n = params.n;
    g.allow_loops = true;
    g.allow_multi = true;
    const auto bounds = atom_boundaries(m, kDefaultAtoms);
    const IndexRange atoms = partition_atoms(part, kDefaultAtoms);
    for (std::uint64_t a = atoms.lo; a < atoms.hi; ++a) {
        for (std::uint64_t e = bounds[a]; e < bounds[a + 1]; ++e) {
            const NodeId tail =
                detail::ba_resolve_position(2 * e + 1, params.d, n0, seed, h);
            const NodeId head =
                detail::ba_resolve_position(2 * e + 2, params.d, n0, seed, h);
            g.add_edge(tail, head);
        }
    }
    return g;
}

Graph node_copy(const CopyParams& params, const RngStream& base) {
    if (params.seed.n == 0) throw InfeasibleError("node_copy: seed graph must be nonempty");
    if (params.seed.directed) throw InvalidInputError("node_copy: undirected seeds only");
    if (!(params.p >= 0.0) || params.p > 1.0)
        throw InfeasibleError("node_copy: p must be in [0, 1]");
    if (params.n < params.seed.n) throw InfeasibleError("node_copy: n smaller than seed");
    if (params.simple && params.seed.n < params.d)
        throw InfeasibleError("node_copy: simple mode needs >= d seed nodes");

    Graph g = params.seed;
    g.n = params.n;
    g.allow_loops = false;
    g.allow_multi = !params.simple;

    // Copy edges sample from the links a host chose when it joined (its seed
    // neighbors for seed nodes). With every node owning exactly d such links
    // the attachment probability becomes proportional to the degree, which is
    // what makes p = 1/2 coincide with preferential attachment.
    std::vector<std::vector<NodeId>> own_links(params.n);
    for (const Edge& e : params.seed.edges) {
        own_links[e.u].push_back(e.v);
        own_links[e.v].push_back(e.u);
    }

    RngStream rng = base.child("node_copy");
    for (NodeId i = params.seed.n; i < params.n; ++i) {
        std::vector<NodeId> picked;
        for (std::uint64_t t = 0; t < params.d; ++t) {
            NodeId target;
            std::uint64_t guard = 0;
            for (;;) {
                if (++guard > 100'000'000)
                    throw BudgetExceededError("node_copy: resampling stalled");
                const NodeId host = rng.uniform_int(0, i);
                if (rng.next_double() < params.p) {
                    target = host;
                } else if (!own_links[host].empty()) {
                    target = own_links[host][rng.uniform_int(0, own_links[host].size())];
                } else {
                    continue;  // host has no link to copy: redraw the host
                }
                if (params.simple &&
                    (target == i ||
                     std::find(picked.begin(), picked.end(), target) != picked.end()))
                    continue;
                break;
            }
            picked.push_back(target);
            g.add_edge(i, target);
            own_links[i].push_back(target);
        }
    }
    return g;
}

Graph threshold_graph(std::uint64_t n, double p_dominating, const RngStream& base,
                      std::optional<Partition> part) {
    if (!(p_dominating >= 0.0) || p_dominating > 1.0)
        throw InfeasibleError("threshold_graph: probability must be in [0, 1]");
    Graph g;
    g.n = n;
    const auto bounds = atom_boundaries(n, kDefaultAtoms);
    const IndexRange atoms = partition_atoms(part, kDefaultAtoms);
    for (std::uint64_t a = atoms.lo; a < atoms.hi; ++a) {
        for (std::uint64_t v = bounds[a]; v < bounds[a + 1]; ++v) {
            if (!detail::threshold_coin(base, v, p_dominating)) continue;
            for (std::uint64_t u = 0; u < v; ++u) g.edges.push_back({u, v});
        }
    }
    return g;
}

Graph wrg(std::uint64_t n, double p_prime, const RngStream& base,
          std::optional<Partition> part) {
    if (!(p_prime > 0.0) || p_prime > 1.0)
        throw InfeasibleError("wrg: p' must be in (0, 1]");
    Graph g;
    g.n = n;
    const double p_edge = 1.0 - p_prime;
    const std::uint64_t capacity = er_capacity(ErVariant::kUndirected, n, 0, 0);
    const auto bounds = atom_boundaries(capacity, kDefaultAtoms);
    const IndexRange atoms = partition_atoms(part, kDefaultAtoms);
    for (std::uint64_t a = atoms.lo; a < atoms.hi; ++a) {
        RngStream rng = base.child(kGnpAtomTag, a);
        RngStream wrng = base.child(kWrgWeightTag, a);
        for (std::uint64_t cell : bernoulli_skip({bounds[a], bounds[a + 1]}, p_edge, rng)) {
            g.edges.push_back(detail::triangle_unrank(cell, n));
            g.weights.push_back(1 + wrng.geometric(p_prime));
        }
    }
    return g;
}

}  // namespace graphforge

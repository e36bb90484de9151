// SPDX-License-Identifier: Apache-2.0
#include "graphforge/gen_block.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "graphforge/alias.hpp"
#include "graphforge/gen_basic.hpp"
#include "graphforge/gen_degree.hpp"
#include "graphforge/sampling.hpp"
#include "graphforge/transform.hpp"

namespace graphforge {

namespace {

constexpr std::uint64_t kSbmBlockTag = fnv1a64("sbm_block");
constexpr std::uint64_t kRmatChunkTag = fnv1a64("rmat_chunk");
constexpr std::uint64_t kBterBlockTag = fnv1a64("bter_block");
constexpr double kSimplexTol = 1e-12;

}  // namespace

namespace {

void check_sbm_params(const SbmParams& params) {
    const std::uint32_t k = params.k;
    if (k == 0) throw InfeasibleError("sbm: need at least one community");
    if (params.community_prob.size() != k || params.p_matrix.size() != std::size_t{k} * k)
        throw InfeasibleError("sbm: parameter shapes do not match k");
    double sum = 0;
    for (double p : params.community_prob) {
        if (!(p >= 0)) throw InfeasibleError("sbm: community probabilities must be >= 0");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kSimplexTol)
        throw InfeasibleError("sbm: community probabilities must sum to 1");
    for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = 0; j < k; ++j) {
            const double p = params.p_matrix[i * k + j];
            if (!(p >= 0) || p > 1) throw InfeasibleError("sbm: matrix entries must be in [0,1]");
            if (std::abs(p - params.p_matrix[j * k + i]) > kSimplexTol)
                throw InfeasibleError("sbm: matrix must be symmetric");
        }
}

}  // namespace

SbmResult sbm_communities(const SbmParams& params, const RngStream& base) {
    check_sbm_params(params);
    const AliasTable table = AliasTable::build(params.community_prob);
    RngStream assign_rng = base.child("sbm_assign");
    std::vector<std::uint32_t> raw(params.n);
    for (auto& c : raw) c = static_cast<std::uint32_t>(table.sample(assign_rng));

    SbmResult out;
    out.original_id.resize(params.n);
    std::iota(out.original_id.begin(), out.original_id.end(), NodeId{0});
    std::stable_sort(out.original_id.begin(), out.original_id.end(),
                     [&](NodeId a, NodeId b) { return raw[a] < raw[b]; });
    out.community.resize(params.n);
    for (std::uint64_t v = 0; v < params.n; ++v)
        out.community[v] = raw[out.original_id[v]];
    out.graph.n = params.n;
    return out;
}

SbmResult sbm(const SbmParams& params, const RngStream& base,
              std::optional<Partition> part) {
    const std::uint32_t k = params.k;
    SbmResult out = sbm_communities(params, base);
    std::vector<std::uint64_t> offset(k + 1, 0);
    for (std::uint64_t v = 0; v < params.n; ++v) ++offset[out.community[v] + 1];
    for (std::uint32_t c = 0; c < k; ++c) offset[c + 1] += offset[c];
    const std::uint64_t blocks = std::uint64_t{k} * (k + 1) / 2;
    const IndexRange atoms = partition_atoms(part, blocks);
    std::uint64_t t = 0;
    for (std::uint32_t a = 0; a < k; ++a) {
        for (std::uint32_t b = a; b < k; ++b, ++t) {
            if (t < atoms.lo || t >= atoms.hi) continue;
            const std::uint64_t sa = offset[a + 1] - offset[a];
            const std::uint64_t sb = offset[b + 1] - offset[b];
            const std::uint64_t region = a == b ? (sa < 2 ? 0 : sa * (sa - 1) / 2) : sa * sb;
            if (region == 0) continue;
            RngStream rng = base.child(kSbmBlockTag, t);
            for (std::uint64_t cell :
                 bernoulli_skip({0, region}, params.p_matrix[a * k + b], rng)) {
                if (a == b) {
                    const Edge e = detail::triangle_unrank(cell, sa);
                    out.graph.edges.push_back({offset[a] + e.u, offset[a] + e.v});
                } else {
                    out.graph.edges.push_back(
                        {offset[a] + cell / sb, offset[b] + cell % sb});
                }
            }
        }
    }
    return out;
}

namespace detail {

namespace {

// Level-specific noise: scale a and d by (1+u), shift the difference onto
// b and c so the four weights stay normalized, clamping at zero.
void perturb_abcd(const double* in, double u, double* out) {
    const double ad = in[0] + in[3];
    const double bc = in[1] + in[2];
    double shift = bc > 0 ? 1.0 - u * ad / bc : 1.0;
    if (shift < 0) shift = 0;
    out[0] = in[0] * (1.0 + u);
    out[1] = in[1] * shift;
    out[2] = in[2] * shift;
    out[3] = in[3] * (1.0 + u);
    const double total = out[0] + out[1] + out[2] + out[3];
    for (int i = 0; i < 4; ++i) out[i] /= total;
}

std::uint32_t draw_quadrant(RngStream& rng, const double* abcd) {
    const double x = rng.next_double();
    if (x < abcd[0]) return 0;
    if (x < abcd[0] + abcd[1]) return 1;
    if (x < abcd[0] + abcd[1] + abcd[2]) return 2;
    return 3;
}

}  // namespace

Edge rmat_edge_naive(RngStream& rng, std::uint32_t scale, const double* abcd,
                     double noise) {
    NodeId u = 0, v = 0;
    double level_abcd[4];
    for (std::uint32_t level = 0; level < scale; ++level) {
        const double* w = abcd;
        if (noise > 0) {
            const double shock = (2 * rng.next_double() - 1) * noise;
            perturb_abcd(abcd, shock, level_abcd);
            w = level_abcd;
        }
        const std::uint32_t q = draw_quadrant(rng, w);
        u = (u << 1) | (q >> 1);
        v = (v << 1) | (q & 1);
    }
    return {u, v};
}

AliasTable make_rmat_block_table(const double* abcd, std::uint32_t levels) {
    std::vector<double> weights(std::size_t{1} << (2 * levels));
    for (std::size_t id = 0; id < weights.size(); ++id) {
        double w = 1;
        for (std::uint32_t l = 0; l < levels; ++l) w *= abcd[(id >> (2 * l)) & 3];
        weights[id] = w;
    }
    return AliasTable::build(weights);
}

Edge rmat_edge_block(RngStream& rng, std::uint32_t scale, std::uint32_t levels,
                     const AliasTable& table) {
    NodeId u = 0, v = 0;
    std::uint32_t done = 0;
    while (done < scale) {
        const std::uint64_t id = table.sample(rng);
        const std::uint32_t take = std::min(levels, scale - done);
        for (std::uint32_t l = 0; l < take; ++l) {
            const std::uint32_t q = (id >> (2 * l)) & 3;
            u = (u << 1) | (q >> 1);
            v = (v << 1) | (q & 1);
        }
        done += take;
    }
    return {u, v};
}

}  // namespace detail

Graph rmat(const RmatParams& params, const RngStream& base, std::optional<Partition> part) {
    const double s = params.a + params.b + params.c + params.d;
    if (params.a < 0 || params.b < 0 || params.c < 0 || params.d < 0 ||
        std::abs(s - 1.0) > kSimplexTol)
        throw InfeasibleError("rmat: quadrant weights must be >= 0 and sum to 1");
    if (!(params.noise >= 0) || params.noise >= 0.5)
        throw InfeasibleError("rmat: noise must be in [0, 0.5)");
    if (params.undirected && std::abs(params.b - params.c) > kSimplexTol)
        throw InfeasibleError("rmat: undirected mode requires b == c");
    if (params.scale >= 63) throw InfeasibleError("rmat: scale too large");

    double abcd[4] = {params.a, params.b, params.c, params.d};
    if (params.undirected) abcd[1] = abcd[2] = (params.b + params.c) / 2;

    constexpr std::uint32_t kBlockLevels = 8;
    const bool fast = params.accelerate && params.noise == 0 && params.scale > 0;
    AliasTable table;
    if (fast)
        table = detail::make_rmat_block_table(
            abcd, std::min(kBlockLevels, params.scale));

    Graph g;
    g.n = std::uint64_t{1} << params.scale;
    g.directed = !params.undirected;
    g.allow_loops = true;
    g.allow_multi = true;

    const auto bounds = [&] {
        std::vector<std::uint64_t> b(kDefaultAtoms + 1);
        for (std::uint64_t i = 0; i <= kDefaultAtoms; ++i) b[i] = params.m * i / kDefaultAtoms;
        return b;
    }();
    const IndexRange atoms = partition_atoms(part, kDefaultAtoms);
    for (std::uint64_t atom = atoms.lo; atom < atoms.hi; ++atom) {
        RngStream rng = base.child(kRmatChunkTag, atom);
        for (std::uint64_t e = bounds[atom]; e < bounds[atom + 1]; ++e) {
            Edge edge = fast ? detail::rmat_edge_block(
                                   rng, params.scale,
                                   std::min(kBlockLevels, params.scale), table)
                             : detail::rmat_edge_naive(rng, params.scale, abcd,
                                                       params.noise);
            if (params.undirected && edge.u > edge.v) std::swap(edge.u, edge.v);
            g.edges.push_back(edge);
        }
    }
    if (params.dedup) {
        Graph simple = simplify(g);
        simple.allow_loops = false;
        simple.allow_multi = false;
        return simple;
    }
    return g;
}

BterResult bter(const BterParams& params, const RngStream& base) {
    if (!(params.beta >= 1.0)) throw InfeasibleError("bter: beta must be >= 1");
    for (const auto& [d, c] : params.cc_by_degree)
        if (!(c >= 0) || c > 1)
            throw InfeasibleError("bter: clustering targets must be in [0, 1]");

    // Node targets ascending by degree; degree-1 count inflated by beta.
    BterResult out;
    for (const auto& [degree, count] : params.degree_counts) {
        std::uint64_t c = count;
        if (degree == 1)
            c = static_cast<std::uint64_t>(std::llround(params.beta * static_cast<double>(count)));
        for (std::uint64_t i = 0; i < c; ++i) out.target_degree.push_back(degree);
    }
    const std::uint64_t n = out.target_degree.size();
    if (n == 0) throw InfeasibleError("bter: empty degree specification");

    auto cc_target = [&](std::uint64_t degree) {
        const auto it = params.cc_by_degree.find(degree);
        return it == params.cc_by_degree.end() ? 0.0 : it->second;
    };

    Graph phase1;
    phase1.n = n;
    std::vector<double> excess(n, 0);
    std::uint64_t pos = 0, block_id = 0;
    while (pos < n) {
        const std::uint64_t d = out.target_degree[pos];
        const std::uint64_t size = std::min<std::uint64_t>(d + 1, n - pos);
        const double rho = std::cbrt(cc_target(d));
        if (size >= 2 && rho > 0) {
            RngStream rng = base.child(kBterBlockTag, block_id);
            const std::uint64_t region = size * (size - 1) / 2;
            for (std::uint64_t cell : bernoulli_skip({0, region}, rho, rng)) {
                const Edge e = detail::triangle_unrank(cell, size);
                phase1.edges.push_back({pos + e.u, pos + e.v});
            }
        }
        for (std::uint64_t i = 0; i < size; ++i) {
            const double expected = rho * static_cast<double>(size - 1);
            excess[pos + i] =
                std::max(0.0, static_cast<double>(out.target_degree[pos + i]) - expected);
        }
        pos += size;
        ++block_id;
    }

    ChungLuResult phase2 =
        chung_lu(excess, base.child("bter_cl"), std::nullopt, ChungLuOptions{.clamp = true});

    Graph merged = phase1;
    merged.allow_multi = true;
    merged.edges.insert(merged.edges.end(), phase2.graph.edges.begin(),
                        phase2.graph.edges.end());
    out.graph = simplify(merged);
    return out;
}

}  // namespace graphforge

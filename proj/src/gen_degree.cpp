// SPDX-License-Identifier: Apache-2.0
#include "graphforge/gen_degree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "graphforge/transform.hpp"

namespace graphforge {

bool is_graphical(const DegreeSequence& d) {
    const std::uint64_t n = d.size();
    if (n == 0) return true;
    DegreeSequence s = d;
    std::sort(s.begin(), s.end(), std::greater<>());
    if (s.front() >= n) return false;
    if (degree_sum(s) % 2 != 0) return false;

    // Erdos-Gallai: sum_{i<=k} d_i <= k(k-1) + sum_{i>k} min(d_i, k).
    std::vector<std::uint64_t> prefix(n + 1, 0);
    for (std::uint64_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + s[i];
    for (std::uint64_t k = 1; k <= n; ++k) {
        const std::uint64_t lhs = prefix[k];
        // First index beyond k with degree <= k (s is non-increasing).
        const auto it = std::upper_bound(s.begin() + k, s.end(), k, std::greater<>());
        const std::uint64_t big = it - (s.begin() + k);  // entries > k
        const std::uint64_t rhs =
            k * (k - 1) + big * k + (prefix[n] - prefix[k + big]);
        if (lhs > rhs) return false;
    }
    return true;
}

Graph havel_hakimi(const DegreeSequence& d) {
    if (!is_graphical(d)) throw InfeasibleError("havel_hakimi: sequence not graphical");
    const std::uint64_t n = d.size();
    Graph g;
    g.n = n;

    // Max-heap on (residual degree, then smaller id first).
    using Entry = std::pair<std::uint64_t, NodeId>;
    auto cmp = [](const Entry& a, const Entry& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second > b.second;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
    std::vector<std::uint64_t> residual(d.begin(), d.end());
    for (NodeId v = 0; v < n; ++v)
        if (residual[v] > 0) heap.push({residual[v], v});

    std::vector<Entry> staged;
    while (!heap.empty()) {
        auto [deg, v] = heap.top();
        heap.pop();
        if (deg != residual[v]) continue;  // stale entry
        residual[v] = 0;
        staged.clear();
        for (std::uint64_t i = 0; i < deg; ++i) {
            while (!heap.empty() && heap.top().first != residual[heap.top().second])
                heap.pop();
            if (heap.empty())
                throw InfeasibleError("havel_hakimi: ran out of partners");
            auto [pd, p] = heap.top();
            heap.pop();
            g.add_edge(v, p);
            staged.push_back({pd - 1, p});
        }
        for (auto [pd, p] : staged) {
            residual[p] = pd;
            if (pd > 0) heap.push({pd, p});
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

namespace {

constexpr std::uint64_t kClRowTag = fnv1a64("chung_lu_row");

}  // namespace

ChungLuResult chung_lu(std::span<const double> weights, const RngStream& base,
                       std::optional<Partition> part, const ChungLuOptions& opt) {
    const std::uint64_t n = weights.size();
    if (n == 0) throw InfeasibleError("chung_lu: empty weight vector");
    double total = 0;
    double max_w = 0;
    for (double w : weights) {
        if (!(w >= 0) || !std::isfinite(w))
            throw InfeasibleError("chung_lu: weights must be finite and >= 0");
        total += w;
        max_w = std::max(max_w, w);
    }
    if (!opt.clamp && max_w * max_w > total)
        throw InfeasibleError("chung_lu: max weight violates max_i w_i^2 <= W");

    // Sort non-increasing, remember original labels.
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return weights[a] > weights[b];
    });
    std::vector<double> w(n);
    for (std::uint64_t i = 0; i < n; ++i) w[i] = weights[order[i]];

    ChungLuResult out;
    out.graph.n = n;
    const std::uint64_t atoms = std::min<std::uint64_t>(kDefaultAtoms, n);
    const IndexRange span = partition_atoms(part, atoms);
    for (std::uint64_t a = span.lo; a < span.hi; ++a) {
        const std::uint64_t row_lo = n * a / atoms;
        const std::uint64_t row_hi = n * (a + 1) / atoms;
        for (std::uint64_t i = row_lo; i < row_hi; ++i) {
            if (w[i] <= 0) continue;  // all later weights are zero too
            RngStream rng = base.child(kClRowTag, i);
            std::uint64_t j = i + 1;
            double p = std::min(1.0, w[i] * (j < n ? w[j] : 0.0) / total);
            while (j < n && p > 0) {
                if (p < 1.0) {
                    const std::uint64_t skip = rng.geometric(p);
                    if (skip >= n - j) break;
                    j += skip;
                }
                double q = w[i] * w[j] / total;
                if (q > 1.0) {
                    q = 1.0;
                    ++out.clamped_pairs;
                }
                if (rng.next_double() < q / p)
                    out.graph.add_edge(std::min(order[i], order[j]),
                                       std::max(order[i], order[j]));
                p = q;
                ++j;
            }
        }
    }
    return out;
}

Graph configuration_model(const DegreeSequence& d, const RngStream& base) {
    const std::uint64_t total = degree_sum(d);
    if (total % 2 != 0) throw InfeasibleError("configuration_model: degree sum must be even");
    std::vector<NodeId> balls;
    balls.reserve(total);
    for (NodeId v = 0; v < d.size(); ++v)
        for (std::uint64_t i = 0; i < d[v]; ++i) balls.push_back(v);
    RngStream rng = base.child("cm_shuffle");
    fisher_yates(rng, balls);
    Graph g;
    g.n = d.size();
    g.allow_loops = true;
    g.allow_multi = true;
    g.edges.reserve(total / 2);
    for (std::uint64_t i = 0; i < total; i += 2) g.add_edge(balls[i], balls[i + 1]);
    return g;
}

Graph erased_cm(const DegreeSequence& d, const RngStream& base) {
    Graph g = simplify(configuration_model(d, base));
    return g;
}

namespace {

bool is_simple_realization(const Graph& g) {
    std::vector<Edge> edges = g.edges;
    for (const Edge& e : edges)
        if (e.u == e.v) return false;
    std::sort(edges.begin(), edges.end());
    return std::adjacent_find(edges.begin(), edges.end()) == edges.end();
}

}  // namespace

Graph cm_simple_rejection(const DegreeSequence& d, const RngStream& base,
                          std::uint64_t max_tries) {
    if (!is_graphical(d))
        throw InfeasibleError("cm_simple_rejection: sequence not graphical");
    for (std::uint64_t t = 0; t < max_tries; ++t) {
        Graph g = configuration_model(d, base.child("cm_try", t));
        if (is_simple_realization(g)) {
            g.allow_loops = false;
            g.allow_multi = false;
            return g;
        }
    }
    throw BudgetExceededError("cm_simple_rejection: no simple pairing within budget");
}

Graph cm_directed(const DegreeSequence& in, const DegreeSequence& out,
                  const RngStream& base) {
    if (in.size() != out.size())
        throw InfeasibleError("cm_directed: sequences must have equal length");
    if (degree_sum(in) != degree_sum(out))
        throw InfeasibleError("cm_directed: in and out degree sums must match");
    std::vector<NodeId> heads, tails;
    heads.reserve(degree_sum(in));
    tails.reserve(degree_sum(out));
    for (NodeId v = 0; v < in.size(); ++v) {
        for (std::uint64_t i = 0; i < in[v]; ++i) heads.push_back(v);
        for (std::uint64_t i = 0; i < out[v]; ++i) tails.push_back(v);
    }
    // Two independent urns.
    RngStream rng_in = base.child("cm_in");
    RngStream rng_out = base.child("cm_out");
    fisher_yates(rng_in, heads);
    fisher_yates(rng_out, tails);
    Graph g;
    g.n = in.size();
    g.directed = true;
    g.allow_loops = true;
    g.allow_multi = true;
    g.edges.reserve(tails.size());
    for (std::size_t i = 0; i < tails.size(); ++i) g.edges.push_back({tails[i], heads[i]});
    return g;
}

namespace detail {

SwitchState SwitchState::from(const AdjacencyGraph& g) {
    SwitchState s;
    s.degree = g.degrees();
    s.adj.resize(g.n());
    for (NodeId u = 0; u < g.n(); ++u) {
        s.adj[u].insert(g.neighbors(u).begin(), g.neighbors(u).end());
        for (NodeId v : g.neighbors(u))
            if (u < v) s.edges.push_back({u, v});
    }
    return s;
}

bool SwitchState::has(NodeId u, NodeId v) const { return adj[u].contains(v); }

bool SwitchState::try_switch(std::size_t e1, std::size_t e2, bool orientation, bool dk2) {
    const Edge a = edges[e1];
    Edge b = edges[e2];
    if (orientation) std::swap(b.u, b.v);
    // Replacement candidates {a.u, b.v} and {b.u, a.v}.
    const NodeId u = a.u, v = a.v, x = b.u, y = b.v;
    if (u == y || x == v) return false;                    // loop
    if (has(u, y) || has(x, v)) return false;              // duplicate
    if (dk2 && degree[v] != degree[y] && degree[u] != degree[x])
        return false;                                      // joint degree change
    adj[u].erase(v);
    adj[v].erase(u);
    adj[x].erase(y);
    adj[y].erase(x);
    adj[u].insert(y);
    adj[y].insert(u);
    adj[x].insert(v);
    adj[v].insert(x);
    edges[e1] = {std::min(u, y), std::max(u, y)};
    edges[e2] = {std::min(x, v), std::max(x, v)};
    return true;
}

}  // namespace detail

void edge_switch(AdjacencyGraph& g, std::uint64_t num_swaps, const RngStream& base,
                 const EdgeSwitchOptions& opt) {
    if (g.directed()) throw InvalidInputError("edge_switch: undirected graphs only");
    if (g.m() < 2) return;  // nothing to swap
    auto state = detail::SwitchState::from(g);
    RngStream rng = base.child("edge_switch");
    const std::size_t m = state.edges.size();
    for (std::uint64_t step = 0; step < num_swaps; ++step) {
        const std::size_t e1 = rng.uniform_int(0, m);
        std::size_t e2 = rng.uniform_int(0, m - 1);
        if (e2 >= e1) ++e2;
        const bool orientation = rng.next_u64() & 1;
        state.try_switch(e1, e2, orientation, opt.dk2_restricted);
    }
    AdjacencyGraph out(g.n());
    for (const Edge& e : state.edges) out.add_edge(e.u, e.v);
    g = std::move(out);
}

void curveball_trade(AdjacencyGraph& g, NodeId u, NodeId v, RngStream& rng) {
    if (u == v) throw InvalidInputError("curveball_trade: nodes must differ");
    if (u >= g.n() || v >= g.n())
        throw InvalidInputError("curveball_trade: node out of range");
    const auto& nu = g.neighbors(u);
    const auto& nv = g.neighbors(v);

    // Disjoint neighbors: (N(u) u N(v)) \ (N(u) n N(v)) \ {u, v}.
    std::vector<NodeId> only_u, only_v;
    std::set_difference(nu.begin(), nu.end(), nv.begin(), nv.end(),
                        std::back_inserter(only_u));
    std::set_difference(nv.begin(), nv.end(), nu.begin(), nu.end(),
                        std::back_inserter(only_v));
    std::erase(only_u, v);
    std::erase(only_v, u);
    if (only_u.empty() && only_v.empty()) return;

    const std::size_t quota_u = only_u.size();
    std::vector<NodeId> pool = only_u;
    pool.insert(pool.end(), only_v.begin(), only_v.end());
    std::sort(pool.begin(), pool.end());
    fisher_yates(rng, pool);

    for (NodeId w : only_u) g.remove_edge(u, w);
    for (NodeId w : only_v) g.remove_edge(v, w);
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (i < quota_u)
            g.add_edge(u, pool[i]);
        else
            g.add_edge(v, pool[i]);
    }
}

void global_curveball(AdjacencyGraph& g, std::uint64_t rounds, const RngStream& base) {
    if (g.directed()) throw InvalidInputError("global_curveball: undirected graphs only");
    if (g.n() < 2) return;
    std::vector<NodeId> order(g.n());
    for (std::uint64_t round = 0; round < rounds; ++round) {
        RngStream rng = base.child("gcb_round", round);
        std::iota(order.begin(), order.end(), NodeId{0});
        fisher_yates(rng, order);
        for (std::size_t i = 0; i + 1 < order.size(); i += 2)
            curveball_trade(g, order[i], order[i + 1], rng);
    }
}

Graph fdsm(const DegreeSequence& d, double swaps_per_edge, const RngStream& base) {
    if (swaps_per_edge < 0) throw InfeasibleError("fdsm: swaps_per_edge must be >= 0");
    Graph start = havel_hakimi(d);
    const auto swaps =
        static_cast<std::uint64_t>(std::ceil(swaps_per_edge * static_cast<double>(start.m())));
    if (swaps == 0) return start;
    AdjacencyGraph a = AdjacencyGraph::from_graph(start);
    edge_switch(a, swaps, base);
    return a.to_graph();
}

Graph random_regular(std::uint64_t n, std::uint64_t degree, const RngStream& base,
                     std::uint64_t max_tries) {
    if (degree >= n) throw InfeasibleError("random_regular: need degree < n");
    if ((n * degree) % 2 != 0)
        throw InfeasibleError("random_regular: n * degree must be even");
    const DegreeSequence d(n, degree);
    return cm_simple_rejection(d, base.child("regular"), max_tries);
}

}  // namespace graphforge

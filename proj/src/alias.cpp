// SPDX-License-Identifier: Apache-2.0
#include "graphforge/alias.hpp"

#include <cmath>
#include <deque>

#include "graphforge/error.hpp"

namespace graphforge {

AliasTable AliasTable::build(std::span<const double> weights) {
    const std::size_t n = weights.size();
    if (n == 0) throw InfeasibleError("alias_build: no weights");
    double total = 0;
    for (double w : weights) {
        if (!(w >= 0) || !std::isfinite(w))
            throw InfeasibleError("alias_build: weights must be finite and >= 0");
        total += w;
    }
    if (total <= 0) throw InfeasibleError("alias_build: all weights are zero");

    // Scale so a bucket holds mass 1; split into donors (<1) and donees (>=1).
    std::vector<double> scaled(n);
    for (std::size_t i = 0; i < n; ++i)
        scaled[i] = weights[i] * static_cast<double>(n) / total;

    std::deque<std::uint64_t> small, large;
    for (std::size_t i = 0; i < n; ++i)
        (scaled[i] < 1.0 ? small : large).push_back(i);

    AliasTable t;
    t.buckets_.resize(n);
    while (!small.empty() && !large.empty()) {
        const std::uint64_t s = small.front();
        const std::uint64_t l = large.front();
        small.pop_front();
        large.pop_front();
        t.buckets_[s] = Bucket{scaled[s], s, l};
        scaled[l] -= 1.0 - scaled[s];
        (scaled[l] < 1.0 ? small : large).push_back(l);
    }
    // Leftovers carry (numerically) full buckets.
    for (auto& q : {&small, &large})
        for (std::uint64_t i : *q) t.buckets_[i] = Bucket{1.0, i, i};
    return t;
}

}  // namespace graphforge

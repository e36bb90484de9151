// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "graphforge/rng.hpp"

namespace graphforge {

/// Walker/Vose alias table: O(n) construction, O(1) weighted sampling.
/// Each of the n buckets covers probability mass 1/n and holds the partial
/// mass of at most two elements.
class AliasTable {
public:
    struct Bucket {
        double threshold;      // mass share of `primary` within the bucket
        std::uint64_t primary;
        std::uint64_t alias;
    };

    /// Builds from non-negative weights; at least one must be positive.
    static AliasTable build(std::span<const double> weights);

    std::uint64_t sample(RngStream& rng) const {
        const std::uint64_t b = rng.uniform_int(0, buckets_.size());
        return rng.next_double() < buckets_[b].threshold ? buckets_[b].primary
                                                         : buckets_[b].alias;
    }

    std::size_t size() const { return buckets_.size(); }
    const std::vector<Bucket>& buckets() const { return buckets_; }

private:
    std::vector<Bucket> buckets_;
};

inline std::uint64_t alias_sample(const AliasTable& t, RngStream& rng) {
    return t.sample(rng);
}

}  // namespace graphforge

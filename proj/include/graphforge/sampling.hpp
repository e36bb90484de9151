// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "graphforge/error.hpp"
#include "graphforge/rng.hpp"

namespace graphforge {

/// Half-open index interval [lo, hi).
struct IndexRange {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::uint64_t size() const { return hi - lo; }
    bool empty() const { return lo >= hi; }
};

/// Includes each index of `range` independently with probability p.
/// Work is proportional to the output: gaps between kept indices are drawn
/// from the geometric distribution. Returns ascending indices.
std::vector<std::uint64_t> bernoulli_skip(IndexRange range, double p, RngStream& rng);

/// Uniform sample of k distinct indices from `range`, ascending.
/// Expected O(k): skip distances for sparse k, Floyd's algorithm otherwise.
std::vector<std::uint64_t> sample_k_of_n(std::uint64_t k, IndexRange range, RngStream& rng);

/// Splits a without-replacement sample of size k over the parts delimited by
/// `boundaries` (P+1 monotone cut points). Left counts are drawn
/// hypergeometrically by recursive halving; every tree node uses a substream
/// keyed by its part interval, so the result is a pure function of
/// (base, k, boundaries). Concatenating per-part sample_k_of_n outputs drawn
/// from per-part substreams is distributed like one global sample.
std::vector<std::uint64_t> split_sample_counts(std::uint64_t k,
                                               std::span<const std::uint64_t> boundaries,
                                               const RngStream& base);

/// With-replacement analogue: left counts are binomial in the size share.
std::vector<std::uint64_t> sample_with_replacement_split(
    std::uint64_t k, std::span<const std::uint64_t> boundaries, const RngStream& base);

/// Draws from the proposal until one is accepted. The result follows the
/// proposal law conditioned on acceptance.
template <typename Propose, typename AcceptProb>
auto rejection_sample(Propose&& propose, AcceptProb&& accept_prob, RngStream& rng,
                      std::uint64_t max_attempts = 1'000'000) {
    for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
        auto candidate = propose(rng);
        const double a = accept_prob(candidate);
        if (!(a >= 0.0) || a > 1.0)
            throw InfeasibleError("rejection_sample: acceptance probability outside [0, 1]");
        if (rng.next_double() < a) return candidate;
    }
    throw BudgetExceededError("rejection_sample: attempt budget exhausted");
}

/// Indices partitioned into groups whose probabilities differ by at most 2x.
struct ProbabilityGroups {
    std::vector<std::vector<std::uint64_t>> groups;
};

/// Buckets indices by floor(log2(p_i)); zero-probability indices are dropped.
ProbabilityGroups log2_groups(std::span<const double> probabilities);

/// Includes index i independently with exactly probability p_i. Within each
/// group, Bernoulli sampling at the group's maximum probability is thinned by
/// rejection. Expected work O(sum p_i + #groups). Returns ascending indices.
std::vector<std::uint64_t> weighted_subset_sample(std::span<const double> probabilities,
                                                  const ProbabilityGroups& groups,
                                                  RngStream& rng);

namespace detail {

/// Skip-distance sampler (Vitter's Method D with Method A tail) producing
/// the gaps of a uniform k-subset of [0, N) in ascending order.
class SkipSampler {
public:
    SkipSampler(std::uint64_t k, std::uint64_t n, RngStream& rng);
    /// Number of unsampled indices before the next sampled one.
    std::uint64_t next_skip();
    bool done() const { return remaining_ == 0; }

private:
    std::uint64_t skip_method_a();
    std::uint64_t skip_method_d();

    RngStream& rng_;
    std::uint64_t remaining_;
    std::uint64_t population_;
    double vprime_ = 0;
    bool use_a_ = false;
};

std::vector<std::uint64_t> sample_sparse(std::uint64_t k, IndexRange range, RngStream& rng);
std::vector<std::uint64_t> sample_dense(std::uint64_t k, IndexRange range, RngStream& rng);

}  // namespace detail

}  // namespace graphforge

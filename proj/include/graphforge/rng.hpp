// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "graphforge/error.hpp"

namespace graphforge {

// All randomness in this library flows through RngStream, a counter-based
// keyed generator. A stream is identified by a 64-bit key derived from
// (seed, path), where the path is the sequence of child(purpose, index)
// derivations taken from the root. Equal (seed, path) always yields the
// identical output sequence, no matter which thread or process evaluates it
// and in which order; this is what makes partitioned generation reproduce
// single-stream output exactly.
//
// Exact construction (pinned for cross-implementation compatibility):
//   mix(x): x ^= x>>30; x *= 0xbf58476d1ce4e5b9; x ^= x>>27;
//           x *= 0x94d049bb133111eb; x ^= x>>31        (SplitMix64 finalizer)
//   gamma = 0x9e3779b97f4a7c15
//   root key      = mix(seed + gamma)
//   child key     = mix( mix(key ^ mix(tag + gamma)) ^ mix(index + gamma) )
//     with tag = FNV-1a 64 of the purpose string
//   i-th output   = mix(key + i * gamma), i starting at 1

inline constexpr std::uint64_t kRngGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : key_(mix64(seed + kRngGamma)) {}

    /// Derives an independent substream. Pure in (this->key, purpose, index):
    /// the parent's draw position does not enter the derivation.
    [[nodiscard]] RngStream child(std::string_view purpose, std::uint64_t index = 0) const {
        return child(fnv1a64(purpose), index);
    }

    [[nodiscard]] RngStream child(std::uint64_t tag, std::uint64_t index = 0) const {
        std::uint64_t k = mix64(key_ ^ mix64(tag + kRngGamma));
        k = mix64(k ^ mix64(index + kRngGamma));
        return RngStream(k, RawKey{});
    }

    std::uint64_t next_u64() {
        ++counter_;
        return mix64(key_ + counter_ * kRngGamma);
    }

    /// Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1]; safe as a log() argument.
    double next_double_oc() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Unbiased uniform integer in [lo, hi). Bitmask rejection, no modulo bias.
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

    /// Number of failures before the first success, P[S=k] = (1-p)^k p.
    std::uint64_t geometric(double p);

    /// Exact Binomial(trials, p) deviate.
    std::uint64_t binomial(std::uint64_t trials, double p);

    /// Exact Hypergeometric(population, successes, draws) deviate: the number
    /// of successes among `draws` taken without replacement.
    std::uint64_t hypergeometric(std::uint64_t draws, std::uint64_t successes,
                                 std::uint64_t population);

    /// Number of u64 draws consumed so far (for output-sensitivity checks).
    std::uint64_t draw_count() const { return counter_; }

private:
    struct RawKey {};
    RngStream(std::uint64_t raw_key, RawKey) : key_(raw_key) {}

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Uniformly permutes `items` in place (Fisher-Yates).
template <typename T>
void fisher_yates(RngStream& rng, std::span<T> items) {
    if (items.size() < 2) return;
    for (std::size_t i = items.size() - 1; i > 0; --i) {
        std::size_t j = rng.uniform_int(0, i + 1);
        std::swap(items[i], items[j]);
    }
}

template <typename T>
void fisher_yates(RngStream& rng, std::vector<T>& items) {
    fisher_yates(rng, std::span<T>(items));
}

/// Pure function of (seed, i): a pseudorandom position uniform on [1, i).
/// Identical across threads, processes and call order. Requires i >= 2.
std::uint64_t hash_prior_index(std::uint64_t seed, std::uint64_t i);

/// Bucket-then-shuffle permutation: each element lands in a uniform bucket,
/// buckets are shuffled independently from their own substreams and
/// concatenated. Uniform over all |items|! orders, like fisher_yates, but the
/// per-bucket work is independent. The sequential shuffle stays the semantic
/// reference.
template <typename T>
void bucket_shuffle(const RngStream& base, std::vector<T>& items, std::uint32_t buckets) {
    if (buckets < 2 || items.size() < 2) {
        RngStream rng = base.child("bucket_shuffle_seq");
        fisher_yates(rng, items);
        return;
    }
    RngStream assign = base.child("bucket_assign");
    std::vector<std::vector<T>> bins(buckets);
    for (const T& x : items) bins[assign.uniform_int(0, buckets)].push_back(x);
    items.clear();
    for (std::uint32_t b = 0; b < buckets; ++b) {
        RngStream rng = base.child("bucket_shuffle", b);
        fisher_yates(rng, bins[b]);
        items.insert(items.end(), bins[b].begin(), bins[b].end());
    }
}

}  // namespace graphforge

// SPDX-License-Identifier: Apache-2.0
#include "graphforge/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace graphforge {

std::vector<std::uint64_t> bernoulli_skip(IndexRange range, double p, RngStream& rng) {
    if (!(p >= 0.0) || p > 1.0)
        throw InfeasibleError("bernoulli_skip: p must be in [0, 1]");
    std::vector<std::uint64_t> out;
    if (range.empty() || p == 0.0) return out;
    if (p == 1.0) {
        out.reserve(range.size());
        for (std::uint64_t i = range.lo; i < range.hi; ++i) out.push_back(i);
        return out;
    }
    out.reserve(static_cast<std::size_t>(p * static_cast<double>(range.size())) + 4);
    std::uint64_t pos = range.lo;
    for (;;) {
        const std::uint64_t skip = rng.geometric(p);
        if (skip >= range.hi - pos) break;
        pos += skip;
        out.push_back(pos);
        ++pos;
        if (pos >= range.hi) break;
    }
    return out;
}

namespace detail {

SkipSampler::SkipSampler(std::uint64_t k, std::uint64_t n, RngStream& rng)
    : rng_(rng), remaining_(k), population_(n) {
    if (remaining_ > 0) {
        use_a_ = 13 * remaining_ >= population_;
        if (!use_a_)
            vprime_ = std::exp(std::log(rng_.next_double_oc()) / static_cast<double>(remaining_));
    }
}

std::uint64_t SkipSampler::skip_method_a() {
    // Sequential search over P[S >= s] = prod (N-k-i)/(N-i).
    const double v = rng_.next_double();
    std::uint64_t s = 0;
    double top = static_cast<double>(population_ - remaining_);
    double bottom = static_cast<double>(population_);
    double quot = top / bottom;
    while (quot > v) {
        ++s;
        top -= 1.0;
        bottom -= 1.0;
        quot *= top / bottom;
    }
    return s;
}

std::uint64_t SkipSampler::skip_method_d() {
    const double n = static_cast<double>(remaining_);
    const double big_n = static_cast<double>(population_);
    const double qu1 = big_n - n + 1.0;
    const double nmin1inv = 1.0 / (n - 1.0);
    for (;;) {
        double x, s;
        for (;;) {
            x = big_n * (1.0 - vprime_);
            s = std::floor(x);
            if (s < qu1) break;
            vprime_ = std::exp(std::log(rng_.next_double_oc()) / n);
        }
        const double u = rng_.next_double_oc();
        const double y1 = std::exp(std::log(u * big_n / qu1) * nmin1inv);
        vprime_ = y1 * (1.0 - x / big_n) * (qu1 / (qu1 - s));
        if (vprime_ <= 1.0) return static_cast<std::uint64_t>(s);  // squeeze accept
        // Full acceptance test.
        double y2 = 1.0;
        double top = big_n - 1.0;
        double bottom, limit;
        if (n - 1.0 > s) {
            bottom = big_n - n;
            limit = big_n - s;
        } else {
            bottom = big_n - s - 1.0;
            limit = qu1;
        }
        for (double t = big_n - 1.0; t >= limit; t -= 1.0) {
            y2 *= top / bottom;
            top -= 1.0;
            bottom -= 1.0;
        }
        if (big_n / (big_n - x) >= y1 * std::exp(std::log(y2) * nmin1inv)) {
            vprime_ = std::exp(std::log(rng_.next_double_oc()) * nmin1inv);
            return static_cast<std::uint64_t>(s);
        }
        vprime_ = std::exp(std::log(rng_.next_double_oc()) / n);
    }
}

std::uint64_t SkipSampler::next_skip() {
    std::uint64_t s;
    if (!use_a_ && 13 * remaining_ >= population_) {
        use_a_ = true;  // dense tail: switch methods for the rest of the walk
    }
    if (remaining_ == 1) {
        s = use_a_ ? static_cast<std::uint64_t>(
                         std::floor(static_cast<double>(population_) * rng_.next_double()))
                   : static_cast<std::uint64_t>(
                         std::floor(static_cast<double>(population_) * vprime_));
        if (s >= population_) s = population_ - 1;  // guard the fp boundary
    } else if (use_a_) {
        s = skip_method_a();
    } else {
        s = skip_method_d();
    }
    population_ -= s + 1;
    --remaining_;
    return s;
}

std::vector<std::uint64_t> sample_sparse(std::uint64_t k, IndexRange range, RngStream& rng) {
    std::vector<std::uint64_t> out;
    out.reserve(k);
    SkipSampler skips(k, range.size(), rng);
    std::uint64_t pos = range.lo;
    while (!skips.done()) {
        pos += skips.next_skip();
        out.push_back(pos);
        ++pos;
    }
    return out;
}

std::vector<std::uint64_t> sample_dense(std::uint64_t k, IndexRange range, RngStream& rng) {
    const std::uint64_t n = range.size();
    // Floyd's algorithm on whichever of the sample / complement is smaller.
    const bool complement = k > n / 2;
    const std::uint64_t pick = complement ? n - k : k;
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(pick * 2);
    for (std::uint64_t j = n - pick; j < n; ++j) {
        const std::uint64_t t = rng.uniform_int(0, j + 1);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<std::uint64_t> out;
    out.reserve(k);
    if (complement) {
        for (std::uint64_t i = 0; i < n; ++i)
            if (!chosen.contains(i)) out.push_back(range.lo + i);
    } else {
        for (std::uint64_t i : chosen) out.push_back(range.lo + i);
        std::sort(out.begin(), out.end());
    }
    return out;
}

}  // namespace detail

std::vector<std::uint64_t> sample_k_of_n(std::uint64_t k, IndexRange range, RngStream& rng) {
    const std::uint64_t n = range.size();
    if (k > n) throw InfeasibleError("sample_k_of_n: k exceeds range size");
    if (k == 0) return {};
    if (k == n) {
        std::vector<std::uint64_t> out;
        out.reserve(k);
        for (std::uint64_t i = range.lo; i < range.hi; ++i) out.push_back(i);
        return out;
    }
    // Skips win while the sample is sparse; above n/8 fall back to Floyd.
    if (8 * k > n) return detail::sample_dense(k, range, rng);
    return detail::sample_sparse(k, range, rng);
}

namespace {

constexpr std::uint64_t kSplitTag = fnv1a64("split_sample_counts");

template <typename DrawLeft>
void split_recurse(std::uint64_t k, std::span<const std::uint64_t> boundaries,
                   std::size_t a, std::size_t b, const RngStream& base,
                   DrawLeft&& draw_left, std::vector<std::uint64_t>& counts) {
    if (b - a == 1) {
        counts[a] = k;
        return;
    }
    if (k == 0) {
        for (std::size_t i = a; i < b; ++i) counts[i] = 0;
        return;
    }
    const std::size_t mid = a + (b - a) / 2;
    const std::uint64_t left_n = boundaries[mid] - boundaries[a];
    const std::uint64_t total_n = boundaries[b] - boundaries[a];
    // Substream keyed by the node's interval: evaluation order independent.
    RngStream node = base.child(kSplitTag, a * (boundaries.size() + 1) + b);
    const std::uint64_t left_k = draw_left(node, k, left_n, total_n);
    split_recurse(left_k, boundaries, a, mid, base, draw_left, counts);
    split_recurse(k - left_k, boundaries, mid, b, base, draw_left, counts);
}

void check_boundaries(std::uint64_t k, std::span<const std::uint64_t> boundaries) {
    if (boundaries.size() < 2)
        throw InfeasibleError("split_sample_counts: need at least one part");
    for (std::size_t i = 1; i < boundaries.size(); ++i)
        if (boundaries[i] < boundaries[i - 1])
            throw InfeasibleError("split_sample_counts: boundaries must be monotone");
    if (k > boundaries.back() - boundaries.front())
        throw InfeasibleError("split_sample_counts: k exceeds universe size");
}

}  // namespace

std::vector<std::uint64_t> split_sample_counts(std::uint64_t k,
                                               std::span<const std::uint64_t> boundaries,
                                               const RngStream& base) {
    check_boundaries(k, boundaries);
    std::vector<std::uint64_t> counts(boundaries.size() - 1);
    split_recurse(k, boundaries, 0, counts.size(), base,
                  [](RngStream& r, std::uint64_t kk, std::uint64_t left, std::uint64_t total) {
                      return r.hypergeometric(kk, left, total);
                  },
                  counts);
    return counts;
}

std::vector<std::uint64_t> sample_with_replacement_split(
    std::uint64_t k, std::span<const std::uint64_t> boundaries, const RngStream& base) {
    if (boundaries.size() < 2)
        throw InfeasibleError("sample_with_replacement_split: need at least one part");
    for (std::size_t i = 1; i < boundaries.size(); ++i)
        if (boundaries[i] < boundaries[i - 1])
            throw InfeasibleError("sample_with_replacement_split: boundaries must be monotone");
    std::vector<std::uint64_t> counts(boundaries.size() - 1);
    split_recurse(k, boundaries, 0, counts.size(), base,
                  [](RngStream& r, std::uint64_t kk, std::uint64_t left, std::uint64_t total) {
                      return r.binomial(kk, static_cast<double>(left) / static_cast<double>(total));
                  },
                  counts);
    return counts;
}

ProbabilityGroups log2_groups(std::span<const double> probabilities) {
    ProbabilityGroups out;
    std::vector<std::pair<int, std::uint64_t>> keyed;
    for (std::uint64_t i = 0; i < probabilities.size(); ++i) {
        const double p = probabilities[i];
        if (!(p >= 0.0) || p > 1.0)
            throw InfeasibleError("log2_groups: probabilities must be in [0, 1]");
        if (p == 0.0) continue;
        keyed.emplace_back(std::ilogb(p), i);
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 0; i < keyed.size();) {
        std::size_t j = i;
        out.groups.emplace_back();
        while (j < keyed.size() && keyed[j].first == keyed[i].first)
            out.groups.back().push_back(keyed[j++].second);
        i = j;
    }
    return out;
}

std::vector<std::uint64_t> weighted_subset_sample(std::span<const double> probabilities,
                                                  const ProbabilityGroups& groups,
                                                  RngStream& rng) {
    std::vector<std::uint64_t> out;
    for (const auto& group : groups.groups) {
        if (group.empty()) continue;
        double lo = 1.0, hi = 0.0;
        for (std::uint64_t i : group) {
            if (i >= probabilities.size())
                throw InfeasibleError("weighted_subset_sample: group index out of range");
            lo = std::min(lo, probabilities[i]);
            hi = std::max(hi, probabilities[i]);
        }
        if (!(lo > 0.0) || hi > 2.0 * lo || hi > 1.0)
            throw InfeasibleError("weighted_subset_sample: group violates the factor-2 bound");
        const auto hits = bernoulli_skip({0, group.size()}, hi, rng);
        for (std::uint64_t pos : hits) {
            const std::uint64_t idx = group[pos];
            if (rng.next_double() < probabilities[idx] / hi) out.push_back(idx);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace graphforge

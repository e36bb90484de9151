// SPDX-License-Identifier: Apache-2.0
#include "graphforge/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace graphforge {
namespace {

// Tail of the Stirling series: log(k!) - [k log k - k + 0.5 log(2 pi k)].
double stirling_tail(double k) {
    static const double kTable[] = {
        0.08106146679532726, 0.04134069595540929, 0.02767792568499834,
        0.02079067210376509, 0.01664469118982119, 0.01387612882307075,
        0.01189670994589177, 0.01041126526197209, 0.00925546218271273,
        0.00833056343336287};
    if (k <= 9) return kTable[static_cast<int>(k)];
    double kp1sq = (k + 1) * (k + 1);
    return (1.0 / 12 - (1.0 / 360 - 1.0 / 1260 / kp1sq) / kp1sq) / (k + 1);
}

// Inverse-transform binomial; valid while trials * p stays small.
std::uint64_t binomial_inverse(RngStream& rng, std::uint64_t trials, double p) {
    const double q = 1.0 - p;
    const double ratio = p / q;
    double pmf = std::pow(q, static_cast<double>(trials));
    double cdf = pmf;
    double u = rng.next_double();
    std::uint64_t x = 0;
    while (u > cdf && x < trials) {
        ++x;
        pmf *= ratio * (static_cast<double>(trials - x + 1) / static_cast<double>(x));
        cdf += pmf;
    }
    return x;
}

// Hormann's BTRS transformed-rejection sampler; requires trials*p >= 10, p <= 0.5.
std::uint64_t binomial_btrs(RngStream& rng, std::uint64_t trials, double p) {
    const double n = static_cast<double>(trials);
    const double stddev = std::sqrt(n * p * (1 - p));
    const double b = 1.15 + 2.53 * stddev;
    const double a = -0.0873 + 0.0248 * b + 0.01 * p;
    const double c = n * p + 0.5;
    const double v_r = 0.92 - 4.2 / b;
    const double r = p / (1 - p);
    const double alpha = (2.83 + 5.1 / b) * stddev;
    const double m = std::floor((n + 1) * p);

    for (;;) {
        double u = rng.next_double() - 0.5;
        double v = rng.next_double();
        double us = 0.5 - std::abs(u);
        double kf = std::floor((2 * a / us + b) * u + c);
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
        if (kf < 0 || kf > n) continue;
        double k = kf;
        v = std::log(v * alpha / (a / (us * us) + b));
        double upper =
            (m + 0.5) * std::log((m + 1) / (r * (n - m + 1))) +
            (n + 1) * std::log((n - m + 1) / (n - k + 1)) +
            (k + 0.5) * std::log(r * (n - k + 1) / (k + 1)) +
            stirling_tail(m) + stirling_tail(n - m) -
            stirling_tail(k) - stirling_tail(n - k);
        if (v <= upper) return static_cast<std::uint64_t>(kf);
    }
}

// lgamma(a) - lgamma(b) without cancellation when both arguments are large
// and close. Plain lgamma loses all precision once the values reach ~1e15.
double lgamma_diff(double a, double b) {
    if (std::min(a, b) < 1e7) return std::lgamma(a) - std::lgamma(b);
    const double d = a - b;
    return (b - 0.5) * std::log1p(d / b) + d * (std::log(a) - 1.0) +
           (1.0 / 12.0) * (1.0 / a - 1.0 / b) -
           (1.0 / 360.0) * (1.0 / (a * a * a) - 1.0 / (b * b * b));
}

// Inverse transform over the (at most draws+1 wide) support; used for small
// draw counts where the full pmf fits comfortably in doubles.
std::uint64_t hypergeometric_small(RngStream& rng, std::uint64_t draws,
                                   std::uint64_t good, std::uint64_t bad) {
    const std::uint64_t lo = draws > bad ? draws - bad : 0;
    const std::uint64_t hi = std::min(draws, good);
    double pmf[12];
    // pmf(lo) up to a constant, then the standard ratio recurrence.
    pmf[0] = 1.0;
    double total = 1.0;
    for (std::uint64_t x = lo + 1; x <= hi; ++x) {
        const double num = static_cast<double>(good - x + 1) * static_cast<double>(draws - x + 1);
        const double den = static_cast<double>(x) * static_cast<double>(bad - draws + x);
        pmf[x - lo] = pmf[x - lo - 1] * (num / den);
        total += pmf[x - lo];
    }
    double u = rng.next_double() * total;
    for (std::uint64_t x = lo; x < hi; ++x) {
        if (u < pmf[x - lo]) return x;
        u -= pmf[x - lo];
    }
    return hi;
}

// Stadlober's HRUA ratio-of-uniforms sampler. The log-pmf terms are computed
// as pairwise lgamma differences so the sampler stays exact for populations
// far beyond 2^32.
std::uint64_t hypergeometric_hrua(RngStream& rng, std::uint64_t draws,
                                  std::uint64_t good, std::uint64_t bad) {
    static constexpr double kD1 = 1.7155277699214135;  // 2 sqrt(2/e)
    static constexpr double kD2 = 0.8989161620588988;  // 3 - 2 sqrt(3/e)

    const double popsize = static_cast<double>(good) + static_cast<double>(bad);
    const double mingoodbad = static_cast<double>(std::min(good, bad));
    const double maxgoodbad = static_cast<double>(std::max(good, bad));
    const double sample = static_cast<double>(draws);
    const double m = std::min(sample, popsize - sample);
    const double d4 = mingoodbad / popsize;
    const double d5 = 1.0 - d4;
    const double d6 = m * d4 + 0.5;
    const double d7 = std::sqrt((popsize - m) * sample * d4 * d5 / (popsize - 1) + 0.5);
    const double d8 = kD1 * d7 + kD2;
    const double d9 = std::floor((m + 1) * (mingoodbad + 1) / (popsize + 2));
    const double d11 = std::min(std::min(m, mingoodbad) + 1.0, std::floor(d6 + 16 * d7));

    double z = 0;
    for (;;) {
        const double x = rng.next_double();
        const double y = rng.next_double();
        const double w = d6 + d8 * (y - 0.5) / x;
        if (w < 0.0 || w >= d11) continue;
        z = std::floor(w);
        // log( pmf(z) / pmf(d9) )
        const double t = lgamma_diff(d9 + 1, z + 1) +
                         lgamma_diff(mingoodbad - d9 + 1, mingoodbad - z + 1) +
                         lgamma_diff(m - d9 + 1, m - z + 1) +
                         lgamma_diff(maxgoodbad - m + d9 + 1, maxgoodbad - m + z + 1);
        if (x * (4.0 - x) - 3.0 <= t) break;
        if (x * (x - t) >= 1) continue;
        if (2.0 * std::log(x) <= t) break;
    }
    if (good > bad) z = m - z;
    if (m < sample) z = static_cast<double>(good) - z;
    return static_cast<std::uint64_t>(z);
}

}  // namespace

std::uint64_t RngStream::uniform_int(std::uint64_t lo, std::uint64_t hi) {
    if (lo >= hi) throw InfeasibleError("uniform_int: empty range");
    const std::uint64_t range = hi - lo;
    if (range == 1) return lo;
    const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(range - 1);
    for (;;) {
        const std::uint64_t x = next_u64() & mask;
        if (x < range) return lo + x;
    }
}

std::uint64_t RngStream::geometric(double p) {
    if (!(p > 0.0) || p > 1.0) throw InfeasibleError("geometric: p must be in (0, 1]");
    if (p == 1.0) return 0;
    // Inversion; log1p keeps the denominator away from zero for tiny p.
    const double denom = std::log1p(-p);
    const double s = std::floor(std::log(next_double_oc()) / denom);
    if (s >= 9.2e18) return std::uint64_t{1} << 63;  // beyond any range we sample
    return static_cast<std::uint64_t>(s);
}

std::uint64_t RngStream::binomial(std::uint64_t trials, double p) {
    if (!(p >= 0.0) || p > 1.0) throw InfeasibleError("binomial: p must be in [0, 1]");
    if (trials == 0 || p == 0.0) return 0;
    if (p == 1.0) return trials;
    if (p > 0.5) return trials - binomial(trials, 1.0 - p);
    if (static_cast<double>(trials) * p < 10.0) return binomial_inverse(*this, trials, p);
    return binomial_btrs(*this, trials, p);
}

std::uint64_t RngStream::hypergeometric(std::uint64_t draws, std::uint64_t successes,
                                        std::uint64_t population) {
    if (draws > population || successes > population)
        throw InfeasibleError("hypergeometric: need draws <= N and successes <= N");
    if (draws == 0 || successes == 0) return 0;
    if (draws == population) return successes;
    if (successes == population) return draws;
    const std::uint64_t bad = population - successes;
    if (draws <= 10) return hypergeometric_small(*this, draws, successes, bad);
    if (population - draws <= 10) {
        // Sample the complement: the undrawn part is also a uniform subset.
        return successes - hypergeometric_small(*this, population - draws, successes, bad);
    }
    return hypergeometric_hrua(*this, draws, successes, bad);
}

std::uint64_t hash_prior_index(std::uint64_t seed, std::uint64_t i) {
    if (i < 2) throw InfeasibleError("hash_prior_index: position must be >= 2");
    RngStream s = RngStream(seed).child("hash_prior_index", i);
    return 1 + s.uniform_int(0, i - 1);
}

}  // namespace graphforge

// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "graphforge/alias.hpp"
#include "graphforge/rng.hpp"
#include "stat_helpers.hpp"

using namespace graphforge;

namespace {

// Exact binomial pmf for the chi-square oracle.
std::vector<double> binomial_pmf(std::uint64_t n, double p) {
    std::vector<double> pmf(n + 1);
    for (std::uint64_t k = 0; k <= n; ++k)
        pmf[k] = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                          std::lgamma(n - k + 1.0) + k * std::log(p) +
                          (n - k) * std::log1p(-p));
    return pmf;
}

// Exact hypergeometric pmf via log-gamma (long double for wide populations).
std::vector<double> hypergeometric_pmf(std::uint64_t draws, std::uint64_t good,
                                       std::uint64_t population) {
    auto lc = [](std::uint64_t n, std::uint64_t k) -> long double {
        return std::lgammal(static_cast<long double>(n) + 1) -
               std::lgammal(static_cast<long double>(k) + 1) -
               std::lgammal(static_cast<long double>(n - k) + 1);
    };
    const std::uint64_t bad = population - good;
    const std::uint64_t lo = draws > bad ? draws - bad : 0;
    const std::uint64_t hi = std::min(draws, good);
    std::vector<double> pmf(hi + 1, 0.0);
    for (std::uint64_t x = lo; x <= hi; ++x)
        pmf[x] = static_cast<double>(
            expl(lc(good, x) + lc(bad, draws - x) - lc(population, draws)));
    return pmf;
}

}  // namespace

TEST_CASE("rng determinism: equal (seed, path) replays byte-identically") {
    RngStream a = RngStream(42).child("model", 7).child("atom", 3);
    RngStream b = RngStream(42).child("model", 7).child("atom", 3);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
    RngStream c = RngStream(42).child("model", 7).child("atom", 4);
    bool differs = false;
    for (int i = 0; i < 64 && !differs; ++i) differs = a.next_u64() != c.next_u64();
    CHECK(differs);
}

TEST_CASE("rng substream independence: pairwise correlation smoke test") {
    RngStream a = RngStream(9).child("lane", 0);
    RngStream b = RngStream(9).child("lane", 1);
    const int n = 100'000;
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const double x = a.next_double(), y = b.next_double();
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    const double cov = sxy / n - (sx / n) * (sy / n);
    const double vx = sxx / n - (sx / n) * (sx / n);
    const double vy = syy / n - (sy / n) * (sy / n);
    CHECK(std::abs(cov / std::sqrt(vx * vy)) < 0.01);
}

TEST_CASE("uniform_int basics") {
    RngStream r(1);
    for (int i = 0; i < 100; ++i) CHECK(r.uniform_int(0, 1) == 0);
    CHECK_THROWS_AS(r.uniform_int(5, 5), InfeasibleError);

    // 60000 draws over [0,6): each frequency within 4 sigma of 10000.
    std::vector<std::uint64_t> counts(6, 0);
    for (int i = 0; i < 60'000; ++i) ++counts[r.uniform_int(0, 6)];
    const double sigma = std::sqrt(60'000 * (1.0 / 6) * (5.0 / 6));
    for (auto c : counts) CHECK(std::abs(static_cast<double>(c) - 10'000.0) < 4 * sigma);
}

TEST_CASE("geometric law") {
    RngStream r(2);
    CHECK_THROWS_AS(r.geometric(0.0), InfeasibleError);
    CHECK_THROWS_AS(r.geometric(1.5), InfeasibleError);
    for (int i = 0; i < 50; ++i) CHECK(r.geometric(1.0) == 0);

    SUBCASE("mean at p=0.5 within 3 sigma") {
        const int n = 100'000;
        double sum = 0;
        for (int i = 0; i < n; ++i) sum += static_cast<double>(r.geometric(0.5));
        // mean (1-p)/p = 1, var (1-p)/p^2 = 2
        CHECK(std::abs(sum / n - 1.0) < 3 * std::sqrt(2.0 / n));
    }
    SUBCASE("P[S=0] at p=0.25") {
        const int n = 100'000;
        int zeros = 0;
        for (int i = 0; i < n; ++i) zeros += r.geometric(0.25) == 0;
        const double sigma = std::sqrt(n * 0.25 * 0.75);
        CHECK(std::abs(zeros - n * 0.25) < 3 * sigma);
    }
    SUBCASE("chi-square against the exact pmf") {
        const double p = 0.3;
        const int n = 100'000;
        std::vector<std::uint64_t> counts(30, 0);
        for (int i = 0; i < n; ++i) counts[std::min<std::uint64_t>(r.geometric(p), 29)]++;
        std::vector<double> pmf(30);
        for (int k = 0; k < 29; ++k) pmf[k] = std::pow(1 - p, k) * p;
        pmf[29] = std::pow(1 - p, 29);  // tail bucket
        CHECK(gftest::chi2_test(counts, pmf, n) > 0.001);
    }
}

TEST_CASE("binomial law") {
    RngStream r(3);
    CHECK(r.binomial(0, 0.4) == 0);
    CHECK(r.binomial(17, 1.0) == 17);
    CHECK(r.binomial(17, 0.0) == 0);
    CHECK_THROWS_AS(r.binomial(5, -0.1), InfeasibleError);

    SUBCASE("inverse-transform path: Binomial(10, 0.3)") {
        const int n = 100'000;
        std::vector<std::uint64_t> counts(11, 0);
        for (int i = 0; i < n; ++i) ++counts[r.binomial(10, 0.3)];
        CHECK(gftest::chi2_test(counts, binomial_pmf(10, 0.3), n) > 0.001);
    }
    SUBCASE("rejection path: Binomial(100, 0.35)") {
        const int n = 100'000;
        std::vector<std::uint64_t> counts(101, 0);
        for (int i = 0; i < n; ++i) ++counts[r.binomial(100, 0.35)];
        CHECK(gftest::chi2_test_binned(counts, binomial_pmf(100, 0.35), n) > 0.001);
    }
    SUBCASE("flipped path: Binomial(100, 0.8)") {
        const int n = 100'000;
        std::vector<std::uint64_t> counts(101, 0);
        for (int i = 0; i < n; ++i) ++counts[r.binomial(100, 0.8)];
        CHECK(gftest::chi2_test_binned(counts, binomial_pmf(100, 0.8), n) > 0.001);
    }
}

TEST_CASE("hypergeometric law") {
    RngStream r(4);
    CHECK(r.hypergeometric(10, 4, 10) == 4);   // all drawn
    CHECK(r.hypergeometric(0, 4, 10) == 0);
    CHECK_THROWS_AS(r.hypergeometric(11, 4, 10), InfeasibleError);

    SUBCASE("small path: N=10, N'=4, k=5") {
        const int n = 100'000;
        std::vector<std::uint64_t> counts(5, 0);
        for (int i = 0; i < n; ++i) ++counts[r.hypergeometric(5, 4, 10)];
        CHECK(gftest::chi2_test(counts, hypergeometric_pmf(5, 4, 10), n) > 0.001);
    }
    SUBCASE("ratio-of-uniforms path: N=60, N'=25, k=30") {
        const int n = 100'000;
        std::vector<std::uint64_t> counts(26, 0);
        for (int i = 0; i < n; ++i) ++counts[r.hypergeometric(30, 25, 60)];
        CHECK(gftest::chi2_test_binned(counts, hypergeometric_pmf(30, 25, 60), n) > 0.001);
    }
    SUBCASE("huge-population path: N=3e7, N'=1e7, k=40") {
        const int n = 100'000;
        std::vector<std::uint64_t> counts(41, 0);
        for (int i = 0; i < n; ++i) ++counts[r.hypergeometric(40, 10'000'000, 30'000'000)];
        CHECK(gftest::chi2_test_binned(counts, hypergeometric_pmf(40, 10'000'000, 30'000'000),
                                       n) > 0.001);
    }
    SUBCASE("complement path: N=30, N'=12, k=25") {
        const int n = 100'000;
        std::vector<std::uint64_t> counts(13, 0);
        for (int i = 0; i < n; ++i) ++counts[r.hypergeometric(25, 12, 30)];
        CHECK(gftest::chi2_test_binned(counts, hypergeometric_pmf(25, 12, 30), n) > 0.001);
    }
}

TEST_CASE("fisher_yates uniformity over 3! permutations") {
    RngStream r(5);
    std::vector<int> base{0, 1, 2};
    std::vector<std::uint64_t> counts(6, 0);
    auto code = [](const std::vector<int>& v) { return v[0] * 9 + v[1] * 3 + v[2]; };
    std::vector<int> codes;
    {
        std::vector<int> p{0, 1, 2};
        do codes.push_back(code(p));
        while (std::next_permutation(p.begin(), p.end()));
    }
    const int n = 60'000;
    for (int i = 0; i < n; ++i) {
        std::vector<int> v = base;
        fisher_yates(r, v);
        const auto it = std::find(codes.begin(), codes.end(), code(v));
        REQUIRE(it != codes.end());
        ++counts[it - codes.begin()];
    }
    const double sigma = std::sqrt(n * (1.0 / 6) * (5.0 / 6));
    for (auto c : counts) CHECK(std::abs(static_cast<double>(c) - n / 6.0) < 4 * sigma);

    std::vector<int> empty;
    fisher_yates(r, empty);
    CHECK(empty.empty());
    std::vector<int> one{7};
    fisher_yates(r, one);
    CHECK(one == std::vector<int>{7});
}

TEST_CASE("bucket_shuffle: uniform like the sequential reference") {
    std::vector<std::uint64_t> counts(6, 0);
    auto code = [](const std::vector<int>& v) {
        int c = 0;
        for (int x : v) c = c * 3 + x;
        return c;
    };
    std::map<int, int> code_to_cell;
    {
        std::vector<int> p{0, 1, 2};
        int cell = 0;
        do code_to_cell[code(p)] = cell++;
        while (std::next_permutation(p.begin(), p.end()));
    }
    const int n = 60'000;
    for (int t = 0; t < n; ++t) {
        std::vector<int> v{0, 1, 2};
        bucket_shuffle(RngStream(t).child("bs"), v, 2);
        ++counts[code_to_cell.at(code(v))];
    }
    std::vector<double> pmf(6, 1.0 / 6);
    CHECK(gftest::chi2_test(counts, pmf, n) > 0.001);

    // Permutation property: same multiset back.
    std::vector<int> big(100);
    std::iota(big.begin(), big.end(), 0);
    bucket_shuffle(RngStream(7).child("big"), big, 8);
    std::vector<int> sorted = big;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 100; ++i) CHECK(sorted[i] == i);
}

TEST_CASE("hash_prior_index is pure and uniform") {
    CHECK(hash_prior_index(123, 2) == 1);
    CHECK_THROWS_AS(hash_prior_index(123, 1), InfeasibleError);
    const std::uint64_t first = hash_prior_index(99, 16);
    for (int i = 0; i < 100; ++i) CHECK(hash_prior_index(99, 16) == first);

    // Distribution over [1, 100) across seeds.
    const int n = 200'000;
    std::vector<std::uint64_t> counts(99, 0);
    for (int s = 0; s < n; ++s) ++counts[hash_prior_index(s, 100) - 1];
    std::vector<double> pmf(99, 1.0 / 99);
    CHECK(gftest::chi2_test(counts, pmf, n) > 0.001);
}

TEST_CASE("alias table: Walker/Vose structure and sampling law") {
    const std::vector<double> weights{1, 2, 3, 4};
    const AliasTable t = AliasTable::build(weights);
    REQUIRE(t.size() == 4);

    SUBCASE("mass conservation per element") {
        std::vector<double> mass(4, 0);
        for (const auto& b : t.buckets()) {
            mass[b.primary] += b.threshold / 4.0;
            mass[b.alias] += (1.0 - b.threshold) / 4.0;
        }
        for (int i = 0; i < 4; ++i)
            CHECK(mass[i] == doctest::Approx(weights[i] / 10.0).epsilon(1e-12));
    }
    SUBCASE("sampling frequencies within 3 sigma") {
        RngStream r(6);
        const int n = 1'000'000;
        std::vector<std::uint64_t> counts(4, 0);
        for (int i = 0; i < n; ++i) ++counts[t.sample(r)];
        for (int i = 0; i < 4; ++i) {
            const double p = weights[i] / 10.0;
            CHECK(std::abs(static_cast<double>(counts[i]) - n * p) <
                  3 * std::sqrt(n * p * (1 - p)));
        }
    }
    SUBCASE("degenerate tables") {
        const AliasTable single = AliasTable::build(std::vector<double>{3.5});
        RngStream r(7);
        for (int i = 0; i < 50; ++i) CHECK(single.sample(r) == 0);

        const AliasTable uniform = AliasTable::build(std::vector<double>{2, 2, 2});
        for (const auto& b : uniform.buckets()) CHECK(b.threshold == doctest::Approx(1.0));

        CHECK_THROWS_AS(AliasTable::build(std::vector<double>{0, 0}), InfeasibleError);
        CHECK_THROWS_AS(AliasTable::build(std::vector<double>{-1, 2}), InfeasibleError);
    }
}

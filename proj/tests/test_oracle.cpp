#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "lisdist/oracle.hpp"
#include "oracle_values.hpp"

using namespace lisdist;

TEST_CASE("patience sorting") {
    CHECK(longest_increasing_length(Permutation({3, 1, 2, 5, 4})) == 3);
    CHECK(longest_increasing_length(Permutation::identity(7)) == 7);
    CHECK(longest_increasing_length(Permutation({5, 4, 3, 2, 1})) == 1);
    CHECK_THROWS(Permutation({1, 1, 2}));
}

namespace {

mpq_class exact_ratio(long long a, long b) {
    mpq_class q(static_cast<long>(a), b);
    q.canonicalize();
    return q;
}

}  // namespace

TEST_CASE("brute force and hook length against enumeration") {
    auto b5 = brute_force_distribution(5);
    auto b8 = brute_force_distribution(8);
    auto h8 = hook_length_distribution(8);
    for (int l = 1; l <= 5; ++l) CHECK(b5.pdf(5, l) == exact_ratio(oracle::kBrute5[l], 120));
    for (int l = 1; l <= 8; ++l) {
        CHECK(b8.pdf(8, l) == exact_ratio(oracle::kBrute8[l], 40320));
        CHECK(h8.pdf(8, l) == b8.pdf(8, l));
    }
    CHECK(h8.row_sums_to_one(8));
}

TEST_CASE("hook length: counts with L <= 2 are Catalan numbers") {
    for (int n = 1; n <= 16; ++n) {
        auto h = hook_length_distribution(n);
        mpz_class f = 1;
        for (int i = 2; i <= n; ++i) f *= i;
        CHECK(h.cdf(n, 2) * f == mpq_class(mpz_class(oracle::kCountsL2[n])));
        CHECK(h.cdf(n, 3) * f == mpq_class(mpz_class(oracle::kCountsL3[n])));
    }
}

TEST_CASE("count_tableaux") {
    CHECK(count_tableaux({3, 2}) == 5);
    CHECK(count_tableaux({4, 3, 1}) == 70);
    CHECK(count_tableaux({1, 1, 1, 1}) == 1);
}

TEST_CASE("goulden agrees with hook length for l >= (n-1)/2") {
    for (int n = 1; n <= 20; ++n) {
        auto h = hook_length_distribution(n);
        for (int l = std::max(1, n / 2); l <= n; ++l)
            if (2 * l >= n - 1) CHECK(goulden_pdf(n, l) == h.pdf(n, l));
    }
    CHECK_THROWS(goulden_pdf(10, 3));
}

TEST_CASE("bounded_uniform stays in range") {
    std::mt19937_64 g(7);
    for (int i = 0; i < 1000; ++i) CHECK(bounded_uniform(g, 13) < 13);
}

TEST_CASE("monte carlo is deterministic and independent of threads") {
    auto a = monte_carlo_cdf(12, 20000, 99, 1);
    auto b = monte_carlo_cdf(12, 20000, 99, 4);
    auto c = monte_carlo_cdf(12, 20000, 100, 1);
    CHECK(a.counts == b.counts);
    CHECK(a.counts != c.counts);
    CHECK(a.cdf(12) == doctest::Approx(1.0));
    auto h = hook_length_distribution(12);
    for (int l = 1; l <= 12; ++l) {
        double p = h.cdf(12, l).get_d();
        double se = std::sqrt(p * (1 - p) / 20000);
        CHECK(std::abs(a.cdf(l) - p) <= 5 * se);
    }
}

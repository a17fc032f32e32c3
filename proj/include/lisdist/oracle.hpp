#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "lisdist/table.hpp"

namespace lisdist {

inline constexpr int kBruteForceMaxN = 11;
inline constexpr int kHookLengthMaxN = 40;

class Permutation {
public:
    // entries must be a bijection of {1..n}, n >= 1
    explicit Permutation(std::vector<int> entries);
    static Permutation identity(int n);

    int size() const { return static_cast<int>(entries_.size()); }
    const std::vector<int>& entries() const { return entries_; }

private:
    std::vector<int> entries_;
};

// Patience sorting; O(n log n).
int longest_increasing_length(const Permutation& perm);
int longest_increasing_length(const int* a, int n);

ExactDistributionTable brute_force_distribution(int n);
ExactDistributionTable hook_length_distribution(int n);

// Number of standard Young tableaux of shape lambda (weakly decreasing parts).
mpz_class count_tableaux(const std::vector<int>& lambda);

// Exact P(L_n = l); requires l >= (n-1)/2.
mpq_class goulden_pdf(int n, int l);

// Uniform integer in [0, bound) from a 64-bit generator without modulo bias.
template <class Gen>
std::uint64_t bounded_uniform(Gen& g, std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(g()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        std::uint64_t threshold = -bound % bound;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(g()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

struct MonteCarloResult {
    int n = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> counts;  // counts[l] = #{trials with L = l}, l = 0..n

    double cdf(int l) const;
    // binomial standard error of cdf(l)
    double std_error(int l) const;
    double error_scale() const;
};

// mt19937_64, Fisher-Yates; trials split into a fixed number of chunks with
// derived seeds, so the result does not depend on the thread count.
MonteCarloResult monte_carlo_cdf(int n, std::uint64_t trials, std::uint64_t seed, int threads = 1);

}  // namespace lisdist

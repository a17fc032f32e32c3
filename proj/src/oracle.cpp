#include "lisdist/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "lisdist/error.hpp"

namespace lisdist {

Permutation::Permutation(std::vector<int> entries) : entries_(std::move(entries)) {
    const int n = size();
    if (n < 1) throw PreconditionError("Permutation: empty");
    std::vector<char> seen(n + 1, 0);
    for (int v : entries_) {
        if (v < 1 || v > n || seen[v]) throw PreconditionError("Permutation: entries must be a bijection of 1..n");
        seen[v] = 1;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> e(n);
    std::iota(e.begin(), e.end(), 1);
    return Permutation(std::move(e));
}

int longest_increasing_length(const int* a, int n) {
    // tails[k] = smallest tail of an increasing run of length k+1
    int tails[64];
    std::vector<int> big;
    int* t = tails;
    if (n > 64) {
        big.resize(n);
        t = big.data();
    }
    int len = 0;
    for (int i = 0; i < n; ++i) {
        int* pos = std::lower_bound(t, t + len, a[i]);
        *pos = a[i];
        if (pos == t + len) ++len;
    }
    return len;
}

int longest_increasing_length(const Permutation& perm) {
    return longest_increasing_length(perm.entries().data(), perm.size());
}

namespace {

mpz_class factorial(int n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

}  // namespace

ExactDistributionTable brute_force_distribution(int n) {
    if (n < 1) throw PreconditionError("brute_force_distribution: n >= 1 required");
    if (n > kBruteForceMaxN) throw SizeError("brute_force_distribution: n > " + std::to_string(kBruteForceMaxN));
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 1);
    std::vector<unsigned long> count(n + 1, 0);
    do {
        ++count[longest_increasing_length(p.data(), n)];
    } while (std::next_permutation(p.begin(), p.end()));
    mpz_class total = factorial(n);
    std::vector<mpq_class> row(n);
    for (int l = 1; l <= n; ++l) {
        row[l - 1] = mpq_class(mpz_class(count[l]), total);
        row[l - 1].canonicalize();
    }
    ExactDistributionTable t(TableSource::brute_force);
    t.set_row(n, std::move(row));
    return t;
}

mpz_class count_tableaux(const std::vector<int>& lambda) {
    int n = std::accumulate(lambda.begin(), lambda.end(), 0);
    std::vector<int> conj(lambda.empty() ? 0 : lambda[0], 0);
    for (int r : lambda)
        for (int c = 0; c < r; ++c) ++conj[c];
    mpz_class hooks = 1;
    for (std::size_t i = 0; i < lambda.size(); ++i)
        for (int j = 0; j < lambda[i]; ++j) hooks *= (lambda[i] - j - 1) + (conj[j] - static_cast<int>(i) - 1) + 1;
    return factorial(n) / hooks;
}

ExactDistributionTable hook_length_distribution(int n) {
    if (n < 1) throw PreconditionError("hook_length_distribution: n >= 1 required");
    if (n > kHookLengthMaxN) throw SizeError("hook_length_distribution: n > " + std::to_string(kHookLengthMaxN));
    // L_n(sigma) is the first row length of the RSK shape
    std::vector<mpz_class> sum(n + 1, 0);
    std::vector<int> lambda{n};
    for (;;) {
        mpz_class d = count_tableaux(lambda);
        sum[lambda[0]] += d * d;
        // next partition in reverse lexicographic order
        int ones = 0;
        while (!lambda.empty() && lambda.back() == 1) {
            lambda.pop_back();
            ++ones;
        }
        if (lambda.empty()) break;
        int v = --lambda.back();
        int rest = ones + 1;
        while (rest > 0) {
            int part = std::min(v, rest);
            lambda.push_back(part);
            rest -= part;
        }
    }
    mpz_class total = factorial(n);
    std::vector<mpq_class> row(n);
    for (int l = 1; l <= n; ++l) {
        row[l - 1] = mpq_class(sum[l], total);
        row[l - 1].canonicalize();
    }
    ExactDistributionTable t(TableSource::hook_length);
    t.set_row(n, std::move(row));
    return t;
}

mpq_class goulden_pdf(int n, int l) {
    if (n < 1 || l < 1 || l > n) throw PreconditionError("goulden_pdf: need 1 <= l <= n");
    if (2 * l < n - 1) throw PreconditionError("goulden_pdf: requires l >= (n-1)/2");
    const int M = n - l;
    std::vector<mpz_class> fac(n + 1);
    fac[0] = 1;
    for (int i = 1; i <= n; ++i) fac[i] = fac[i - 1] * i;
    // sum over k of n!/k! * sum_{i+j <= M-k} a_i a_j,  a_i = (-1)^i / (i! (n-i-k)!)
    mpq_class total = 0;
    std::vector<mpq_class> a(M + 1), prefix(M + 2);
    for (int k = 0; k <= M; ++k) {
        const int R = M - k;
        for (int i = 0; i <= R; ++i) {
            a[i] = mpq_class(i % 2 ? -1 : 1, 1) / mpq_class(fac[i] * fac[n - i - k]);
        }
        prefix[0] = 0;
        for (int j = 0; j <= R; ++j) prefix[j + 1] = prefix[j] + a[j];
        mpq_class s = 0;
        for (int i = 0; i <= R; ++i) s += a[i] * prefix[R - i + 1];
        total += s * mpq_class(fac[n], fac[k]);
    }
    total.canonicalize();
    return total;
}

double MonteCarloResult::cdf(int l) const {
    if (l < 0) return 0;
    std::uint64_t c = 0;
    for (int k = 0; k <= std::min(l, n); ++k) c += counts[k];
    return static_cast<double>(c) / static_cast<double>(trials);
}

double MonteCarloResult::std_error(int l) const {
    double p = cdf(l);
    return std::sqrt(p * (1 - p) / static_cast<double>(trials));
}

double MonteCarloResult::error_scale() const { return 1 / std::sqrt(static_cast<double>(trials)); }

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr int kChunks = 64;

}  // namespace

MonteCarloResult monte_carlo_cdf(int n, std::uint64_t trials, std::uint64_t seed, int threads) {
    if (n < 1) throw PreconditionError("monte_carlo_cdf: n >= 1 required");
    if (trials < 1) throw PreconditionError("monte_carlo_cdf: trials >= 1 required");
    std::vector<std::vector<std::uint64_t>> chunk_counts(kChunks, std::vector<std::uint64_t>(n + 1, 0));
    std::atomic<int> next{0};
    auto worker = [&] {
        std::vector<int> p(n);
        for (int c; (c = next.fetch_add(1)) < kChunks;) {
            std::uint64_t todo = trials / kChunks + (static_cast<std::uint64_t>(c) < trials % kChunks ? 1 : 0);
            std::mt19937_64 gen(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(c))));
            auto& cnt = chunk_counts[c];
            for (std::uint64_t t = 0; t < todo; ++t) {
                std::iota(p.begin(), p.end(), 1);
                for (int i = n - 1; i > 0; --i) std::swap(p[i], p[bounded_uniform(gen, i + 1)]);
                ++cnt[longest_increasing_length(p.data(), n)];
            }
        }
    };
    threads = std::max(1, std::min(threads, kChunks));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    MonteCarloResult r;
    r.n = n;
    r.trials = trials;
    r.seed = seed;
    r.counts.assign(n + 1, 0);
    for (const auto& cc : chunk_counts)
        for (int l = 0; l <= n; ++l) r.counts[l] += cc[l];
    return r;
}

}  // namespace lisdist

#include "lisdist/series.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "lisdist/cache.hpp"
#include "lisdist/detail/mpfr_real.hpp"
#include "lisdist/error.hpp"
#include "lisdist/version.hpp"

namespace lisdist {

using detail::MpReal;

namespace {

mpz_class factorial(long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

// b_k = 4^k a_k through k = K, from the Chazy-I recursion
std::vector<mpq_class> scaled_coefficients(int l, int K) {
    std::vector<mpq_class> b(K + 1, mpq_class(0));
    if (K < l + 1) return b;
    b[l + 1] = mpq_class(1, 1) / mpq_class(factorial(l) * factorial(l + 1));
    mpq_class acc;
    for (int n = l + 1; n < K; ++n) {
        acc = 0;
        for (int m = l + 1; m <= n - l; ++m) acc += (m * (3 * (n - m) + 1)) * (b[m] * b[n + 1 - m]);
        acc *= 2;
        acc -= (4 * n - 2) * b[n];
        mpz_class den = mpz_class(n + 1) * (mpz_class(n) * n - mpz_class(l) * l);
        b[n + 1] = acc / mpq_class(den);
    }
    return b;
}

// c_k from k c_k = c_{k-1} - sum_{j>l} b_j c_{k-j}
std::vector<mpq_class> series_from_scaled(int l, const std::vector<mpq_class>& b, int K) {
    std::vector<mpq_class> c(K + 1);
    c[0] = 1;
    mpq_class acc;
    for (int k = 1; k <= K; ++k) {
        acc = c[k - 1];
        for (int j = l + 1; j <= k; ++j) acc -= b[j] * c[k - j];
        c[k] = acc / k;
    }
    return c;
}

}  // namespace

mpq_class ChazySeries::scaled(int k) const {
    if (k < 0 || k > K) return 0;
    mpz_class p4 = 1;
    p4 <<= 2 * k;
    return a[k] * p4;
}

ChazySeries chazy_coefficients(int l, int K) {
    if (l < 1) throw PreconditionError("chazy_coefficients: l >= 1 required");
    if (K < l + 1) throw PreconditionError("chazy_coefficients: K >= l+1 required");
    auto b = scaled_coefficients(l, K);
    ChazySeries s;
    s.l = l;
    s.K = K;
    s.a.resize(K + 1);
    for (int k = 0; k <= K; ++k) {
        mpz_class p4 = 1;
        p4 <<= 2 * k;
        s.a[k] = b[k] / mpq_class(p4);
    }
    return s;
}

int chazy_residual_order(const ChazySeries& s) {
    const int l = s.l, K = s.K;
    const auto& a = s.a;
    auto at = [&](int m) -> mpq_class { return (m >= 0 && m <= K) ? a[m] : mpq_class(0); };
    for (int n = 0; n <= K - 1; ++n) {
        mpq_class r = mpq_class((n + 1) * (mpz_class(n) * n - mpz_class(l) * l)) * at(n + 1);
        r += mpq_class(2 * n - 1, 2) * at(n);
        for (int i = 1; i <= n; ++i) {
            int j = n + 1 - i;
            r += (-6 * i * j + 4 * j) * (at(i) * at(j));
        }
        if (r != 0) return n;
    }
    return -1;
}

int sigma_piii_residual_order(const ChazySeries& s) {
    const int l = s.l, K = s.K;
    const int D = K + 1;
    using Poly = std::vector<mpq_class>;
    auto mul = [D](const Poly& x, const Poly& y) {
        Poly z(D + 1, mpq_class(0));
        for (int i = 0; i <= D; ++i) {
            if (x[i] == 0) continue;
            for (int j = 0; i + j <= D; ++j)
                if (y[j] != 0) z[i + j] += x[i] * y[j];
        }
        return z;
    };
    Poly xv2(D + 1, mpq_class(0)), v1(D + 1, mpq_class(0)), w(D + 1, mpq_class(0)), p4(D + 1, mpq_class(0));
    for (int m = 1; m <= K; ++m) {
        if (m - 1 <= D) {
            xv2[m - 1] = mpq_class(m * (m - 1)) * s.a[m];
            v1[m - 1] = mpq_class(m) * s.a[m];
            p4[m - 1] = mpq_class(4 * m) * s.a[m];
        }
        if (m <= D) w[m] = mpq_class(1 - m) * s.a[m];
    }
    p4[0] -= 1;
    Poly r1 = mul(xv2, xv2), r2 = mul(v1, v1), r3 = mul(mul(v1, w), p4);
    for (int n = 0; n <= K; ++n) {
        mpq_class r = r1[n] - mpq_class(l * l) * r2[n] + r3[n];
        if (r != 0) return n;
    }
    return -1;
}

mpq_class GeneratingSeries::cdf(int k) const {
    if (k < 0 || k > K) throw RangeError("GeneratingSeries::cdf: order out of range");
    return c[k] * mpq_class(factorial(k));
}

GeneratingSeries generating_function_series(const ChazySeries& s) {
    std::vector<mpq_class> b(s.K + 1);
    for (int k = 0; k <= s.K; ++k) b[k] = s.scaled(k);
    GeneratingSeries g;
    g.l = s.l;
    g.K = s.K;
    g.c = series_from_scaled(s.l, b, s.K);
    return g;
}

GeneratingSeries generating_function_series(int l, int K) {
    if (l < 1) throw PreconditionError("generating_function_series: l >= 1 required");
    if (K < 0) throw PreconditionError("generating_function_series: K >= 0 required");
    auto b = scaled_coefficients(l, std::max(K, l + 1));
    GeneratingSeries g;
    g.l = l;
    g.K = K;
    g.c = series_from_scaled(l, b, K);
    return g;
}

std::string chazy_to_text(const ChazySeries& s) {
    std::ostringstream os;
    os << s.l << ' ' << s.K << '\n';
    for (int k = 0; k <= s.K; ++k) os << s.a[k].get_str() << '\n';
    return os.str();
}

ChazySeries chazy_from_text(const std::string& text) {
    std::istringstream in(text);
    ChazySeries s;
    if (!(in >> s.l >> s.K) || s.K < 0) throw PreconditionError("chazy_from_text: bad header");
    s.a.resize(s.K + 1);
    std::string tok;
    for (int k = 0; k <= s.K; ++k) {
        if (!(in >> tok)) throw PreconditionError("chazy_from_text: truncated");
        s.a[k] = mpq_class(tok);
        s.a[k].canonicalize();
    }
    return s;
}

ChazySeries chazy_coefficients_cached(int l, int K, const DiskCache& cache) {
    std::string key = "chazy-series l=" + std::to_string(l) + " K=" + std::to_string(K) + " exact v" + kVersion;
    if (auto hit = cache.get(key)) return chazy_from_text(*hit);
    auto s = chazy_coefficients(l, K);
    cache.put(key, chazy_to_text(s));
    return s;
}

mpq_class rational_reconstruct(const mpq_class& x, const mpz_class& bound, const mpq_class& tol) {
    // convergents h/k of the continued fraction of x
    mpz_class num = x.get_num(), den = x.get_den();
    mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    mpq_class best;
    bool have = false;
    while (den != 0) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        mpz_class h2 = a * h1 + h0, k2 = a * k1 + k0;
        if (k2 > bound) break;
        best = mpq_class(h2, k2);
        have = true;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        mpz_class r = num - a * den;
        num = den;
        den = r;
    }
    if (!have) throw ReconstructionError("rational_reconstruct: no convergent within the denominator bound");
    best.canonicalize();
    mpq_class err = abs(x - best);
    if (err > tol) throw ReconstructionError("rational_reconstruct: residual exceeds tolerance (insufficient precision)");
    return best;
}

namespace {

// cdf[l-1][n-1] = P(L_n <= l) for l < N
using CdfGrid = std::vector<std::vector<mpq_class>>;

void rational_cdf_column(int l, int N, std::vector<mpq_class>& out) {
    auto b = scaled_coefficients(l, N);
    auto c = series_from_scaled(l, b, N);
    out.assign(N, mpq_class(1));
    mpz_class f = 1;
    for (int n = 1; n <= N; ++n) {
        f *= n;
        if (n > l) out[n - 1] = c[n] * mpq_class(f);
    }
}

void floating_cdf_column(int l, int N, long digits, std::vector<mpq_class>& out) {
    const mpfr_prec_t prec = detail::digits_to_bits(digits);
    std::vector<MpReal> b(N + 1, MpReal(prec)), c(N + 1, MpReal(prec));
    MpReal acc(prec), t(prec);
    if (l + 1 <= N) {
        mpz_class d = factorial(l) * factorial(l + 1);
        mpfr_set_ui(b[l + 1].get(), 1, MPFR_RNDN);
        mpfr_div_z(b[l + 1].get(), b[l + 1].get(), d.get_mpz_t(), MPFR_RNDN);
    }
    for (int n = l + 1; n < N; ++n) {
        mpfr_set_zero(acc.get(), 1);
        for (int m = l + 1; m <= n - l; ++m) {
            mpfr_mul(t.get(), b[m].get(), b[n + 1 - m].get(), MPFR_RNDN);
            mpfr_mul_si(t.get(), t.get(), static_cast<long>(m) * (3 * (n - m) + 1), MPFR_RNDN);
            mpfr_add(acc.get(), acc.get(), t.get(), MPFR_RNDN);
        }
        mpfr_mul_ui(acc.get(), acc.get(), 2, MPFR_RNDN);
        mpfr_mul_si(t.get(), b[n].get(), 4L * n - 2, MPFR_RNDN);
        mpfr_sub(acc.get(), acc.get(), t.get(), MPFR_RNDN);
        mpfr_div_si(acc.get(), acc.get(), static_cast<long>(n + 1) * (static_cast<long>(n) * n - static_cast<long>(l) * l),
                    MPFR_RNDN);
        mpfr_set(b[n + 1].get(), acc.get(), MPFR_RNDN);
    }
    mpfr_set_ui(c[0].get(), 1, MPFR_RNDN);
    for (int k = 1; k <= N; ++k) {
        mpfr_set(acc.get(), c[k - 1].get(), MPFR_RNDN);
        for (int j = l + 1; j <= k; ++j) {
            mpfr_mul(t.get(), b[j].get(), c[k - j].get(), MPFR_RNDN);
            mpfr_sub(acc.get(), acc.get(), t.get(), MPFR_RNDN);
        }
        mpfr_div_ui(c[k].get(), acc.get(), static_cast<unsigned long>(k), MPFR_RNDN);
    }
    out.assign(N, mpq_class(1));
    mpz_class f = 1;
    mpq_t q;
    mpq_init(q);
    for (int n = 1; n <= N; ++n) {
        f *= n;
        if (n <= l) continue;
        mpfr_mul_z(t.get(), c[n].get(), f.get_mpz_t(), MPFR_RNDN);
        mpfr_get_q(q, t.get());
        mpq_class x(q);
        mpq_class tol(1, 1);
        tol /= mpq_class(2 * f * f);
        mpq_class p = rational_reconstruct(x, f, tol);
        mpz_class rem;
        mpz_mod(rem.get_mpz_t(), f.get_mpz_t(), p.get_den().get_mpz_t());
        if (rem != 0 || p < 0 || p > 1) {
            mpq_clear(q);
            throw ReconstructionError("exact_distribution_table: reconstruction inconsistent at n=" + std::to_string(n) +
                                      ", l=" + std::to_string(l) + " (increase precision)");
        }
        out[n - 1] = p;
    }
    mpq_clear(q);
}

// With automatic precision a failed column is retried at 1.5x the digits;
// the cancellation of the recursion is worst for small l.
void floating_column_escalating(int l, int N, long digits, bool escalate, std::vector<mpq_class>& out) {
    for (int attempt = 0;; ++attempt) {
        try {
            floating_cdf_column(l, N, digits, out);
            return;
        } catch (const ReconstructionError&) {
            if (!escalate || attempt >= 4) throw;
            digits += digits / 2;
        }
    }
}

}  // namespace

ExactDistributionTable exact_distribution_table(int N, const ExactTableOptions& opt) {
    if (N < 1) throw PreconditionError("exact_distribution_table: N >= 1 required");
    TableMethod method = opt.method;
    if (method == TableMethod::automatic) method = N <= kRationalTableMaxN ? TableMethod::rational : TableMethod::floating;
    long digits = opt.precision_digits;
    const bool escalate = digits <= 0;
    if (method == TableMethod::floating && digits <= 0)
        digits = static_cast<long>(std::ceil(2.5 * std::lgamma(N + 1.0) / std::log(10.0))) + 1;

    CdfGrid grid(N);
    std::atomic<int> next{1};
    std::exception_ptr failure;
    std::mutex fail_mu;
    auto worker = [&] {
        for (int l; (l = next.fetch_add(1)) < N;) {
            try {
                if (method == TableMethod::rational)
                    rational_cdf_column(l, N, grid[l - 1]);
                else
                    floating_column_escalating(l, N, digits, escalate, grid[l - 1]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(fail_mu);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    int threads = std::max(1, opt.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    ExactDistributionTable t(TableSource::chazy_series);
    for (int n = 1; n <= N; ++n) {
        std::vector<mpq_class> row(n);
        mpq_class prev = 0;
        for (int l = 1; l <= n; ++l) {
            mpq_class cur = l < n ? grid[l - 1][n - 1] : mpq_class(1);
            row[l - 1] = cur - prev;
            prev = cur;
        }
        t.set_row(n, std::move(row));
    }
    return t;
}

ExactDistributionTable exact_distribution_table_cached(int N, const ExactTableOptions& opt, const DiskCache& cache) {
    // the table is exact whichever path produced it, so the key ignores the method
    std::string key = "exact-table N=" + std::to_string(N) + " exact v" + kVersion;
    if (auto hit = cache.get(key)) return table_from_json(*hit);
    auto t = exact_distribution_table(N, opt);
    cache.put(key, table_to_json(t, Provenance{"chazy_series", 0, kVersion}));
    return t;
}

namespace {

std::shared_ptr<LogSeries> log_series_at(int l, int K, long digits) {
    const mpfr_prec_t prec = detail::digits_to_bits(digits);
    std::vector<MpReal> b(std::max(K, l + 1) + 1, MpReal(prec)), c(K + 1, MpReal(prec));
    MpReal acc(prec), t(prec);
    {
        mpz_class d = factorial(l) * factorial(l + 1);
        mpfr_set_ui(b[l + 1].get(), 1, MPFR_RNDN);
        mpfr_div_z(b[l + 1].get(), b[l + 1].get(), d.get_mpz_t(), MPFR_RNDN);
    }
    for (int n = l + 1; n < K; ++n) {
        mpfr_set_zero(acc.get(), 1);
        for (int m = l + 1; m <= n - l; ++m) {
            mpfr_mul(t.get(), b[m].get(), b[n + 1 - m].get(), MPFR_RNDN);
            mpfr_mul_si(t.get(), t.get(), static_cast<long>(m) * (3 * (n - m) + 1), MPFR_RNDN);
            mpfr_add(acc.get(), acc.get(), t.get(), MPFR_RNDN);
        }
        mpfr_mul_ui(acc.get(), acc.get(), 2, MPFR_RNDN);
        mpfr_mul_si(t.get(), b[n].get(), 4L * n - 2, MPFR_RNDN);
        mpfr_sub(acc.get(), acc.get(), t.get(), MPFR_RNDN);
        mpfr_div_d(acc.get(), acc.get(), static_cast<double>(n + 1) * (static_cast<double>(n) * n - static_cast<double>(l) * l),
                   MPFR_RNDN);
        mpfr_set(b[n + 1].get(), acc.get(), MPFR_RNDN);
    }
    auto out = std::make_shared<LogSeries>();
    out->l = l;
    out->K = K;
    out->log_c.resize(K + 1);
    mpfr_set_ui(c[0].get(), 1, MPFR_RNDN);
    out->log_c[0] = 0;
    for (int k = 1; k <= K; ++k) {
        mpfr_set(acc.get(), c[k - 1].get(), MPFR_RNDN);
        for (int j = l + 1; j <= k; ++j) {
            mpfr_mul(t.get(), b[j].get(), c[k - j].get(), MPFR_RNDN);
            mpfr_sub(acc.get(), acc.get(), t.get(), MPFR_RNDN);
        }
        mpfr_div_ui(c[k].get(), acc.get(), static_cast<unsigned long>(k), MPFR_RNDN);
        if (mpfr_sgn(c[k].get()) <= 0) return nullptr;
        mpfr_log(t.get(), c[k].get(), MPFR_RNDN);
        out->log_c[k] = t.to_double();
    }
    return out;
}

}  // namespace

std::shared_ptr<const LogSeries> log_generating_series(int l, int K) {
    if (l < 1 || K < 0) throw PreconditionError("log_generating_series: l >= 1, K >= 0 required");
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const LogSeries>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(l);
        if (it != cache.end() && it->second->K >= K) return it->second;
    }
    double log10_kf = std::lgamma(K + 1.0) / std::log(10.0);
    long digits = static_cast<long>(2 * log10_kf) + 40;
    std::shared_ptr<LogSeries> out;
    for (int attempt = 0; !out; ++attempt) {
        if (attempt == 5) throw PrecisionError("log_generating_series: lost all digits");
        auto lo = log_series_at(l, K, digits);
        auto hi = lo ? log_series_at(l, K, digits + 30) : nullptr;
        if (lo && hi) {
            bool same = true;
            for (int k = 0; k <= K && same; ++k)
                same = std::abs(lo->log_c[k] - hi->log_c[k]) <= 1e-13 * std::max(1.0, std::abs(hi->log_c[k]));
            if (same) out = hi;
        }
        digits = digits * 3 / 2;
    }
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[l];
    if (!slot || slot->K < K) slot = out;
    return slot;
}

namespace {

// log D_l(z) and its first two z-derivatives, d/dz I_m(2z) = I_(m-1) + I_(m+1)
std::array<double, 3> toeplitz_at(int l, double z, long digits, bool derivatives) {
    const mpfr_prec_t prec = detail::digits_to_bits(digits);
    MpReal zz(prec, z), z2(prec), term(prec), sum(prec), eps(prec);
    mpfr_mul(z2.get(), zz.get(), zz.get(), MPFR_RNDN);
    // I_m(2z) = sum_k z^(2k+m) / (k! (k+m)!)
    const int mmax = derivatives ? l + 2 : l;
    std::vector<MpReal> I(mmax, MpReal(prec));
    for (int m = 0; m < mmax; ++m) {
        mpfr_pow_ui(term.get(), zz.get(), static_cast<unsigned long>(m), MPFR_RNDN);
        mpz_class mf = factorial(m);
        mpfr_div_z(term.get(), term.get(), mf.get_mpz_t(), MPFR_RNDN);
        mpfr_set(sum.get(), term.get(), MPFR_RNDN);
        for (long k = 1;; ++k) {
            mpfr_mul(term.get(), term.get(), z2.get(), MPFR_RNDN);
            mpfr_div_si(term.get(), term.get(), k * (k + m), MPFR_RNDN);
            mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
            if (k > z && mpfr_cmp_ui(term.get(), 0) >= 0) {
                mpfr_mul_2si(eps.get(), sum.get(), -static_cast<long>(prec) - 8, MPFR_RNDN);
                if (mpfr_cmp(term.get(), eps.get()) < 0) break;
            }
        }
        mpfr_set(I[m].get(), sum.get(), MPFR_RNDN);
    }
    auto Iat = [&](int m) -> const MpReal& { return I[std::abs(m)]; };
    std::vector<MpReal> a(l * l, MpReal(prec));
    for (int j = 0; j < l; ++j)
        for (int k = 0; k < l; ++k) mpfr_set(a[j * l + k].get(), Iat(j - k).get(), MPFR_RNDN);
    // right-hand sides A' and A'' carried through the elimination
    const int nr = derivatives ? 2 * l : 0;
    std::vector<MpReal> rhs(l * std::max(nr, 1), MpReal(prec));
    if (derivatives)
        for (int j = 0; j < l; ++j)
            for (int k = 0; k < l; ++k) {
                int m = j - k;
                mpfr_add(rhs[j * nr + k].get(), Iat(m - 1).get(), Iat(m + 1).get(), MPFR_RNDN);
                mpfr_add(rhs[j * nr + l + k].get(), Iat(m - 2).get(), Iat(m + 2).get(), MPFR_RNDN);
                mpfr_mul_2ui(eps.get(), Iat(m).get(), 1, MPFR_RNDN);
                mpfr_add(rhs[j * nr + l + k].get(), rhs[j * nr + l + k].get(), eps.get(), MPFR_RNDN);
            }
    MpReal logdet(prec), tmp(prec), f(prec);
    mpfr_set_zero(logdet.get(), 1);
    for (int k = 0; k < l; ++k) {
        int p = k;
        for (int i = k + 1; i < l; ++i)
            if (mpfr_cmpabs(a[i * l + k].get(), a[p * l + k].get()) > 0) p = i;
        if (p != k) {
            for (int j = 0; j < l; ++j) mpfr_swap(a[k * l + j].get(), a[p * l + j].get());
            for (int j = 0; j < nr; ++j) mpfr_swap(rhs[k * nr + j].get(), rhs[p * nr + j].get());
        }
        if (mpfr_zero_p(a[k * l + k].get())) throw PrecisionError("toeplitz_determinant: singular");
        mpfr_abs(tmp.get(), a[k * l + k].get(), MPFR_RNDN);
        mpfr_log(tmp.get(), tmp.get(), MPFR_RNDN);
        mpfr_add(logdet.get(), logdet.get(), tmp.get(), MPFR_RNDN);
        for (int i = k + 1; i < l; ++i) {
            mpfr_div(f.get(), a[i * l + k].get(), a[k * l + k].get(), MPFR_RNDN);
            for (int j = k + 1; j < l; ++j) {
                mpfr_mul(tmp.get(), f.get(), a[k * l + j].get(), MPFR_RNDN);
                mpfr_sub(a[i * l + j].get(), a[i * l + j].get(), tmp.get(), MPFR_RNDN);
            }
            for (int j = 0; j < nr; ++j) {
                mpfr_mul(tmp.get(), f.get(), rhs[k * nr + j].get(), MPFR_RNDN);
                mpfr_sub(rhs[i * nr + j].get(), rhs[i * nr + j].get(), tmp.get(), MPFR_RNDN);
            }
        }
    }
    std::array<double, 3> out{logdet.to_double(), 0, 0};
    if (!derivatives) return out;
    // back substitution: rhs <- A^-1 [A' | A'']
    for (int i = l - 1; i >= 0; --i)
        for (int j = 0; j < nr; ++j) {
            for (int k = i + 1; k < l; ++k) {
                mpfr_mul(tmp.get(), a[i * l + k].get(), rhs[k * nr + j].get(), MPFR_RNDN);
                mpfr_sub(rhs[i * nr + j].get(), rhs[i * nr + j].get(), tmp.get(), MPFR_RNDN);
            }
            mpfr_div(rhs[i * nr + j].get(), rhs[i * nr + j].get(), a[i * l + i].get(), MPFR_RNDN);
        }
    // (log D)' = tr X, (log D)'' = tr Y - tr X^2
    MpReal d1(prec), d2(prec);
    mpfr_set_zero(d1.get(), 1);
    mpfr_set_zero(d2.get(), 1);
    for (int i = 0; i < l; ++i) {
        mpfr_add(d1.get(), d1.get(), rhs[i * nr + i].get(), MPFR_RNDN);
        mpfr_add(d2.get(), d2.get(), rhs[i * nr + l + i].get(), MPFR_RNDN);
        for (int j = 0; j < l; ++j) {
            mpfr_mul(tmp.get(), rhs[i * nr + j].get(), rhs[j * nr + i].get(), MPFR_RNDN);
            mpfr_sub(d2.get(), d2.get(), tmp.get(), MPFR_RNDN);
        }
    }
    out[1] = d1.to_double();
    out[2] = d2.to_double();
    return out;
}

long toeplitz_default_digits(int l, double z) {
    return 40 + static_cast<long>(0.5 * l * l * std::log10(2 * z + 2) + 2 * l);
}

}  // namespace

ToeplitzResult toeplitz_determinant(int l, double z, long digits) {
    if (l < 1) throw PreconditionError("toeplitz_determinant: l >= 1 required");
    if (!(z >= 0)) throw PreconditionError("toeplitz_determinant: z >= 0 required");
    ToeplitzResult r;
    if (z == 0) {
        r.log_value = 0;
        return r;
    }
    if (digits <= 0) digits = toeplitz_default_digits(l, z);
    double lo = toeplitz_at(l, z, digits, false)[0];
    double hi = toeplitz_at(l, z, digits + 30, false)[0];
    r.log_value = hi;
    r.rel_error = std::abs(std::expm1(lo - hi));
    r.digits = digits + 30;
    if (r.rel_error > 1e-10) throw PrecisionError("toeplitz_determinant: result not stable under extra precision");
    return r;
}

ToeplitzDerivatives toeplitz_log_derivatives(int l, double z, long digits) {
    if (l < 1) throw PreconditionError("toeplitz_log_derivatives: l >= 1 required");
    if (!(z > 0)) throw PreconditionError("toeplitz_log_derivatives: z > 0 required");
    if (digits <= 0) digits = toeplitz_default_digits(l, z);
    auto lo = toeplitz_at(l, z, digits, true);
    auto hi = toeplitz_at(l, z, digits + 30, true);
    ToeplitzDerivatives r;
    r.log_value = hi[0];
    r.d1 = hi[1];
    r.d2 = hi[2];
    r.digits = digits + 30;
    for (int i = 0; i < 3; ++i)
        r.rel_error = std::max(r.rel_error, std::abs(lo[i] - hi[i]) / std::max(1.0, std::abs(hi[i])));
    if (r.rel_error > 1e-10) throw PrecisionError("toeplitz_log_derivatives: result not stable under extra precision");
    return r;
}

mpz_class asymptotic_constant(int l) {
    mpz_class c = 1;
    for (int j = 1; j < l; ++j) c *= factorial(j);
    return c;
}

AsymptoticCheck validate_asymptotic_constant(int l, std::vector<double> z_ladder) {
    if (l < 1 || l > 8) throw PreconditionError("validate_asymptotic_constant: 1 <= l <= 8 required");
    if (z_ladder.empty()) z_ladder = {10, 20, 40, 80, 160};
    AsymptoticCheck chk;
    chk.l = l;
    double logc = std::log(asymptotic_constant(l).get_d());
    for (double z : z_ladder) {
        auto d = toeplitz_determinant(l, z);
        double loga = logc + 2 * l * z - 0.5 * l * std::log(2 * M_PI) - 0.5 * l * l * std::log(2 * z);
        double ratio = std::exp(d.log_value - loga);
        chk.z.push_back(z);
        chk.ratio.push_back(ratio);
        chk.max_scaled_deviation = std::max(chk.max_scaled_deviation, std::abs(ratio - 1) * z);
    }
    return chk;
}

}  // namespace lisdist

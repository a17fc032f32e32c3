#pragma once

#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "lisdist/table.hpp"

namespace lisdist {

class DiskCache;

// v_l(x) = sum_k a_k x^k, exact coefficients for k = 0..K (zero for k <= l).
struct ChazySeries {
    int l = 0;
    int K = 0;
    std::vector<mpq_class> a;

    // 4^k a_k, the coefficient of r^k in v_l(4r)
    mpq_class scaled(int k) const;
};

ChazySeries chazy_coefficients(int l, int K);

// Coefficientwise check that the truncated series solves the Chazy-I equation
// (multiplied by x^2) through order K-1, and the sigma-PIII equation through
// order K, in exact arithmetic. Returns the first order with a nonzero
// coefficient, or -1.
int chazy_residual_order(const ChazySeries& s);
int sigma_piii_residual_order(const ChazySeries& s);

// f_l(r) = sum_k c_k r^k with c_k = P(L_k <= l)/k!, k = 0..K.
struct GeneratingSeries {
    int l = 0;
    int K = 0;
    std::vector<mpq_class> c;

    // k! c_k
    mpq_class cdf(int k) const;
};

GeneratingSeries generating_function_series(const ChazySeries& s);
GeneratingSeries generating_function_series(int l, int K);

// Serialized exact series, for the disk cache.
std::string chazy_to_text(const ChazySeries& s);
ChazySeries chazy_from_text(const std::string& text);
ChazySeries chazy_coefficients_cached(int l, int K, const DiskCache& cache);

enum class TableMethod { automatic, rational, floating };

struct ExactTableOptions {
    TableMethod method = TableMethod::automatic;
    // floating path working precision; 0 means ceil(2.5 log10(N!)), raised
    // per column when reconstruction fails
    long precision_digits = 0;
    int threads = 1;
};

inline constexpr int kRationalTableMaxN = 200;

// P(L_n = l) for 1 <= l <= n <= N. The floating path reconstructs every
// P(L_n <= l) from its continued fraction with denominator bound n! and
// throws ReconstructionError when the precision does not support it.
ExactDistributionTable exact_distribution_table(int N, const ExactTableOptions& opt = {});
ExactDistributionTable exact_distribution_table_cached(int N, const ExactTableOptions& opt, const DiskCache& cache);

// Best rational approximation with denominator <= bound, accepted only when
// |x - p/q| <= tol; throws ReconstructionError otherwise.
mpq_class rational_reconstruct(const mpq_class& x, const mpz_class& bound, const mpq_class& tol);

// log c_k in double for k = 0..K, computed in MPFR with enough digits to
// absorb the cancellation of the recursion. Shared and cached per (l, K).
struct LogSeries {
    int l = 0;
    int K = 0;
    std::vector<double> log_c;
};

std::shared_ptr<const LogSeries> log_generating_series(int l, int K);

struct ToeplitzResult {
    double log_value = 0;   // log D_l(z)
    double rel_error = 0;   // estimate from two working precisions
    long digits = 0;
};

// D_l(z) = det_{j,k=1..l} I_{j-k}(2z), evaluated in MPFR.
ToeplitzResult toeplitz_determinant(int l, double z, long digits = 0);

// log D_l(z) with (log D_l)' and (log D_l)'' in z, by Jacobi's formula.
struct ToeplitzDerivatives {
    double log_value = 0;
    double d1 = 0;
    double d2 = 0;
    double rel_error = 0;
    long digits = 0;
};

ToeplitzDerivatives toeplitz_log_derivatives(int l, double z, long digits = 0);

// superfactorial 0! 1! ... (l-1)!
mpz_class asymptotic_constant(int l);

struct AsymptoticCheck {
    int l = 0;
    std::vector<double> z;
    std::vector<double> ratio;  // D_l(z) / leading asymptotic
    double max_scaled_deviation = 0;  // max_z |ratio - 1| * z
};

AsymptoticCheck validate_asymptotic_constant(int l, std::vector<double> z_ladder = {});

}  // namespace lisdist

#pragma once

#include <string>
#include <vector>

#include "lisdist/kernel.hpp"

namespace lisdist {

// f_l(r) = e^r g_l(4r), a_l(r) = r - v_l(4r), b_l(r) = r - u_l(4r)
struct AuxiliaryEval {
    int l = 0;
    double r = 0;
    double f_log = 0;
    double a = 0;
    double b = 0;
    double log_g = 0;     // log g_l(4r), v_l(4r), u_l(4r), kept unrounded by r
    double v = 0;
    double u = 0;
    HardEdgeBackend backend = HardEdgeBackend::fredholm;
    double err_estimate = 0;
    bool within_tol = true;
};

struct StirlingOptions {
    double radius_tol = 1e-9;     // |a(r) - n| <= radius_tol * n
    int max_iterations = 200;
    KernelOptions kernel{.tol = 0};  // tol 0 picks 1e-12 (n <= 1e6) or 1e-10
};

AuxiliaryEval auxiliary(int l, double r, const KernelOptions& opt = {});

struct RadiusSolve {
    double r = 0;
    int iterations = 0;
    AuxiliaryEval aux;
};

// Safeguarded Newton on log r for a_l(r) = n.
RadiusSolve solve_radius(int l, double n, const StirlingOptions& opt = {});

struct StirlingResult {
    double n = 0;
    int l = 0;
    double cdf_approx = 0;
    double log_cdf = 0;          // before clamping
    double r = 0;
    double h = 0;                // v_l(4r) / n
    double log_g = 0;
    double v = 0;
    double u = 0;
    double log_tau = 0;
    HardEdgeBackend backend = HardEdgeBackend::fredholm;
    double err_estimate = 0;
    bool err_flag = false;       // backend outside tolerance, or clamped
};

StirlingResult stirling_cdf(double n, int l, const StirlingOptions& opt = {});

double tau_n(double n);
double log_tau_n(double n);

// stirling_cdf(n, l) - stirling_cdf(n, l - 1), clamped at 0
double stirling_pdf(double n, int l, const StirlingOptions& opt = {});

struct StirlingSweep {
    double n = 0;
    std::vector<StirlingResult> rows;   // l = l_lo .. l_hi
    std::vector<int> monotonicity_violations;  // l with cdf(l) < cdf(l-1)
    std::vector<double> pdf;            // clamped differences; pdf[0] uses l_lo - 1
};

// CDF over a contiguous l range; an optional l_lo - 1 anchor gives the first
// PDF difference. Deterministic for any thread count.
StirlingSweep stirling_sweep(double n, int l_lo, int l_hi, const StirlingOptions& opt = {}, int threads = 1);

// log10 of n! * P(L_n <= l)
double stirling_count_log10(double n, int l, const StirlingOptions& opt = {});

// log10 of Regev's asymptotic count of permutations with L_n <= l
double regev_log10(double n, int l);
double regev_corrected_log10(double n, int l);   // times e^(-l^4 / 16n)

struct BoltzmannPoint {
    int k = 0;
    double probability = 0;   // P(L_k <= l) r^k / k! / f_l(r)
    double normal = 0;        // N(a(r), b(r)) density at k
};

struct BoltzmannProfile {
    int l = 0;
    double r = 0;
    double mean = 0;          // a_l(r)
    double variance = 0;      // b_l(r)
    std::vector<BoltzmannPoint> points;
    double total_variation = 0;
};

BoltzmannProfile boltzmann_profile(int l, double r, double width_sd = 8);

}  // namespace lisdist

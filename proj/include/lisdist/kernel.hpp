#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "lisdist/quadrature.hpp"

namespace lisdist {

enum class HardEdgeBackend { automatic, fredholm, toeplitz, chazy_series, connection_asymptotic, soft_edge };

const char* to_string(HardEdgeBackend b);

// g(s) = E2hard(0; [0,s], alpha), v = -s (log g)', u = s v'
struct HardEdgeEval {
    double alpha = 0;
    double s = 0;
    double g = 1;
    double log_g = 0;
    double v = 0;
    double u = 0;
    double err_estimate = 0;
    HardEdgeBackend backend = HardEdgeBackend::fredholm;
    std::size_t nodes = 0;       // quadrature nodes, or series length
    bool within_tol = true;      // err_estimate <= requested tol
};

struct KernelOptions {
    double tol = 1e-12;
    std::size_t m_start = 16;
    int max_doublings = 8;
    HardEdgeBackend backend = HardEdgeBackend::automatic;
    // the chazy backend is used when its series length stays below this
    int chazy_max_terms = 1200;
    // the toeplitz backend is used when its working precision stays below this
    long toeplitz_max_digits = 20000;
    // the router skips toeplitz above this cost estimate (about 1 s)
    double toeplitz_max_work = 2e5;
};

// Symmetrized Nystrom discretization W^(1/2) K W^(1/2) of the Bessel kernel
// on (0, s). Gauss-Legendre nodes are placed in z = sqrt(x) on
// [max(0, alpha - 12 alpha^(1/3)), sqrt(s)], below which J_alpha is negligible.
struct BesselDiscretization {
    QuadratureRule rule;          // z nodes and weights in x (= 2 z dz)
    std::vector<double> matrix;   // m x m, row-major
    std::vector<double> phi;      // sqrt(w) J_alpha(z) / 2
    std::vector<double> chi;      // sqrt(w) z J_alpha'(z) / 2
};

BesselDiscretization bessel_kernel_matrix(double alpha, double s, std::size_t m);

// K(x, y) at x = z1^2, y = z2^2, with the analytic diagonal.
double bessel_kernel(double alpha, double z1, double z2);

HardEdgeEval hard_edge_fredholm(double alpha, double s, const KernelOptions& opt = {});
HardEdgeEval hard_edge_chazy(int l, double s, const KernelOptions& opt = {});
// e^(-s/4) D_l(sqrt(s)/2) in MPFR; v and u from (log D_l)' and (log D_l)''
HardEdgeEval hard_edge_toeplitz(int l, double s, const KernelOptions& opt = {});
HardEdgeEval connection_asymptotic(double alpha, double s);
// alpha -> infinity: g(s) ~ F2((alpha^2 - s) / (2^(2/3) alpha^(4/3))), error O(alpha^(-2/3))
HardEdgeEval soft_edge_approximation(double alpha, double s);

// Router: the Fredholm determinant when it converges to tol; for integer
// alpha then toeplitz, then chazy_series, while affordable; else the best
// flagged result: Fredholm, the soft-edge limit for large alpha near the
// edge, then the connection formula.
HardEdgeEval hard_edge_eval(double alpha, double s, const KernelOptions& opt = {});

double log_barnes_g1p(double z);  // log G(1 + z), z > -1

struct TracyWidomEval {
    double s = 0;
    double F2 = 0;
    double log_F2 = 0;
    std::array<double, 6> d{};   // d[k] = k-th derivative of F2, k <= max_deriv
    int max_deriv = 0;
    double q = 0;                // Hastings-McLeod q(s) = ((I-K)^-1 Ai)(s)
    double qp = 0;
    double U = 0;                // <(I-K)^-1 Ai, Ai>
    double V = 0;                // <(I-K)^-1 Ai, Ai'>
    double err_estimate = 0;
    std::size_t nodes = 0;
    std::string method;
    bool within_tol = true;
};

// F2 and up to five derivatives. F2' and F2'' come from the resolvent inner
// products; higher ones from (log F2)'' = -q^2 and q'' = s q + 2 q^3.
TracyWidomEval airy_f2(double s, double tol = 1e-12, int max_deriv = 2);

double f2_cdf(double s);

// -(1/10)(6 F2'' + t^2 F2' / 6) and its first three derivatives
struct F21Eval {
    double value = 0;
    double d1 = 0;
    double d2 = 0;
    double d3 = 0;
};

F21Eval f21_conjectured_eval(double t, double tol = 1e-12);
double f21_conjectured(double t);

}  // namespace lisdist

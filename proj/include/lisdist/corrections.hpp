#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "lisdist/stirling.hpp"
#include "lisdist/table.hpp"

namespace lisdist {

enum class Observable { cdf, pdf };
enum class ResidualSource { exact, stirling };

const char* to_string(Observable o);
const char* to_string(ResidualSource s);

// Least-squares polynomial in the Chebyshev basis of [t_min, t_max].
struct CorrectionFit {
    int degree = 0;
    double t_min = 0;
    double t_max = 0;
    std::vector<double> coefficients;   // T_0 .. T_degree of the mapped variable
    std::size_t points = 0;
    double rms_residual = 0;
    double max_residual = 0;
    double condition = 0;               // |R_00| / |R_kk|, column pivoted

    bool contains(double t) const { return t >= t_min && t <= t_max; }
    // k-th derivative, k <= 3; outside the interval the polynomial is
    // extrapolated and *outside is set
    double eval(double t, int k = 0, bool* outside = nullptr) const;
};

struct FitPoint {
    double t = 0;
    double value = 0;
};

// Solved by column-pivoted Householder QR in `digits` decimal digits.
CorrectionFit fit_correction(const std::vector<FitPoint>& points, int degree, double t_min, double t_max,
                             int digits = 60);

// {"basis": "chebyshev", "degree", "t_min", "t_max", "coefficients", "points",
//  "rms_residual", "max_residual", "condition"}
std::string correction_fit_to_json(const CorrectionFit& f);
CorrectionFit correction_fit_from_json(const std::string& text);

// A correction function F_{2,j}: absent, the conjectured closed form of
// F_{2,1}, or a fitted polynomial.
struct CorrectionTerm {
    enum class Kind { none, conjectured, fit };
    Kind kind = Kind::none;
    CorrectionFit fit;

    static CorrectionTerm conjectured() { return {Kind::conjectured, {}}; }
    static CorrectionTerm fitted(CorrectionFit f) { return {Kind::fit, std::move(f)}; }
    bool present() const { return kind != Kind::none; }
    // value and first three derivatives
    std::array<double, 4> eval(double t) const;
};

struct ResidualPoint {
    int l = 0;
    double t = 0;        // t_l for the CDF, t_l - n^(-1/6)/2 for the PDF
    double value = 0;    // scaled residual
    double raw = 0;      // unscaled residual
};

struct ScaledResidualSet {
    double n = 0;
    int order = 0;
    Observable observable = Observable::cdf;
    ResidualSource source = ResidualSource::exact;
    double exponent = 0;        // residual scaled by n^exponent
    std::vector<ResidualPoint> points;
    double max_raw = 0;         // max_l |raw residual| over the window
};

struct ResidualOptions {
    Observable observable = Observable::cdf;
    ResidualSource source = ResidualSource::exact;
    const ExactDistributionTable* table = nullptr;
    double t_min = -std::numeric_limits<double>::infinity();
    double t_max = std::numeric_limits<double>::infinity();
    CorrectionTerm f21;          // needed for order >= 1
    CorrectionTerm f22;          // needed for order 2
    StirlingOptions stirling;
    int threads = 1;
};

// order 0: n^(1/3) (CDF - F2(t_l)); order 1: n^(2/3) (CDF - F2 - n^(-1/3) F21);
// order 2 adds n^(-2/3) F22 and scales by n. The PDF variants use the
// central-difference expansion at t^_l with scalings n^(1/2), n^(5/6), n^(7/6).
ScaledResidualSet scaled_residuals(double n, int order, const ResidualOptions& opt);

std::vector<FitPoint> fit_points(const ScaledResidualSet& set);
std::vector<FitPoint> fit_points(const std::vector<ScaledResidualSet>& sets, double t_min, double t_max);

// Truncated PDF expansion with 1..3 terms at t^_l.
double pdf_expansion(double n, int l, int num_terms, const CorrectionTerm& f21 = CorrectionTerm::conjectured(),
                     const CorrectionTerm& f22 = {});

enum class MomentIntegrand {
    f2_density,         // F2'
    f2_third,           // F2'''
    f21_density,        // F21' from the conjectured form
    g1,                 // F21' + F2''' / 24
};

const char* to_string(MomentIntegrand m);

enum class MomentMethod { quadrature, trapezoid };

struct MomentOptions {
    MomentMethod method = MomentMethod::quadrature;
    int n = 0;                  // trapezoid: nodes t^_l, l = 1..n, h = n^(-1/6)
    double t_lo = -14;          // quadrature support
    double t_hi = 16;
};

struct MomentValue {
    MomentIntegrand integrand = MomentIntegrand::f2_density;
    int power = 0;
    MomentMethod method = MomentMethod::quadrature;
    int n = 0;
    double value = 0;
    double err_estimate = 0;
};

// integral of t^power G(t) dt, or its trapezoid sum n^(-1/6) sum_l t^_l^power G(t^_l)
MomentValue moment_integral(MomentIntegrand which, int power, const MomentOptions& opt = {});

struct MomentRow {
    int n = 0;                  // 0 for the integral
    double mu1 = 0;
    double mu2 = 0;
    double variance = 0;        // mu2 - mu1^2
};

MomentRow tracy_widom_moments(int n);   // trapezoid at n, or quadrature for n = 0

// mu0, nu0 from F2'; mu1, nu1 from the conjectured F21
struct ExpansionConstants {
    double mu0 = 0;
    double nu0 = 0;
    double mu1 = 0;
    double nu1 = 0;
};

ExpansionConstants expansion_constants();

enum class MomentKind { mean, variance };

const char* to_string(MomentKind k);

// mean: E(L_n) - 2 sqrt(n) - 1/2 = sum_k c_k n^((1-2k)/6), k < num_terms
// variance: Var(L_n) = sum_k c_k n^((1-k)/3), k < num_terms
struct MeanVarianceFit {
    MomentKind kind = MomentKind::mean;
    int n_min = 0;
    int n_max = 0;
    int digits = 0;
    std::vector<double> exponents;
    std::vector<double> coefficients;
    std::vector<std::string> coefficient_text;   // 25 significant digits
    double rms_residual = 0;
    double condition = 0;
};

MeanVarianceFit fit_mean_variance(const ExactDistributionTable& table, MomentKind kind, int n_min, int n_max,
                                  int num_terms = 0, int digits = 60);

// significant digits on which two fits agree, per coefficient
std::vector<int> matching_digits(const MeanVarianceFit& a, const MeanVarianceFit& b);
int matching_digits(double a, double b);

// The same fit on [n_min1, n_max] and [n_min2, n_max]. num_terms 0 picks the
// count in [2, max_terms] with the most matching digits over c0, c1, c2.
struct MeanVarianceStudy {
    MomentKind kind = MomentKind::mean;
    int num_terms = 0;
    MeanVarianceFit first;
    MeanVarianceFit second;
    std::vector<int> matching;
};

MeanVarianceStudy mean_variance_study(const ExactDistributionTable& table, MomentKind kind, int n_min1, int n_min2,
                                      int n_max, int num_terms = 0, int digits = 60, int max_terms = 12);

// max_l |reference - exact| and the power law c n^(-alpha) through it
enum class ErrorReference { stirling, tracy_widom };

struct ErrorScaling {
    ErrorReference reference = ErrorReference::stirling;
    std::vector<double> n;
    std::vector<double> error;
    double c = 0;
    double alpha = 0;
};

ErrorScaling error_scaling(const ExactDistributionTable& table, const std::vector<int>& ns, ErrorReference ref,
                           const StirlingOptions& opt = {}, int threads = 1);

}  // namespace lisdist

#include <doctest.h>

#include <cmath>

#include "lisdist/corrections.hpp"
#include "lisdist/error.hpp"
#include "lisdist/kernel.hpp"
#include "lisdist/oracle.hpp"
#include "lisdist/series.hpp"

using namespace lisdist;

namespace {

double poly(double t) { return 0.3 - 1.2 * t + 0.05 * t * t * t - 0.001 * std::pow(t, 5); }
double dpoly(double t) { return -1.2 + 0.15 * t * t - 0.005 * std::pow(t, 4); }

std::vector<FitPoint> sample(double lo, double hi, int m) {
    std::vector<FitPoint> pts;
    for (int i = 0; i < m; ++i) {
        double t = lo + (hi - lo) * i / (m - 1);
        pts.push_back({t, poly(t)});
    }
    return pts;
}

}  // namespace

TEST_CASE("chebyshev fit reproduces a polynomial and its derivatives") {
    CorrectionFit f = fit_correction(sample(-4, 6, 60), 7, -4, 6);
    CHECK(f.points == 60);
    CHECK(f.max_residual < 1e-12);
    for (double t : {-3.5, 0.0, 1.7, 5.9}) {
        CHECK(f.eval(t) == doctest::Approx(poly(t)).epsilon(1e-12));
        CHECK(f.eval(t, 1) == doctest::Approx(dpoly(t)).epsilon(1e-10));
        CHECK(f.eval(t, 2) == doctest::Approx(0.3 * t - 0.02 * t * t * t).epsilon(1e-9));
        CHECK(f.eval(t, 3) == doctest::Approx(0.3 - 0.06 * t * t).epsilon(1e-8));
    }
    bool outside = false;
    f.eval(7, 0, &outside);
    CHECK(outside);
    f.eval(0, 0, &outside);
    CHECK_FALSE(outside);
}

TEST_CASE("refitting a fit's own samples is idempotent") {
    std::vector<FitPoint> pts;
    for (int i = 0; i < 41; ++i) pts.push_back({-2 + 0.1 * i, std::sin(-2 + 0.1 * i)});
    CorrectionFit a = fit_correction(pts, 9, -2, 2);
    std::vector<FitPoint> again;
    for (auto p : pts) again.push_back({p.t, a.eval(p.t)});
    CorrectionFit b = fit_correction(again, 9, -2, 2);
    for (int k = 0; k <= 9; ++k) CHECK(std::abs(a.coefficients[k] - b.coefficients[k]) < 1e-13);
}

TEST_CASE("correction fit JSON round trip") {
    CorrectionFit a = fit_correction(sample(-4, 6, 30), 5, -4, 6);
    CorrectionFit b = correction_fit_from_json(correction_fit_to_json(a));
    CHECK(b.degree == a.degree);
    CHECK(b.t_min == a.t_min);
    CHECK(b.coefficients == a.coefficients);
    CHECK(b.eval(1.25) == a.eval(1.25));
    CHECK_THROWS(correction_fit_from_json("{\"basis\":\"monomial\"}"));
}

TEST_CASE("fit preconditions") {
    CHECK_THROWS_AS(fit_correction(sample(-1, 1, 5), 8, -1, 1), PreconditionError);
    CHECK_THROWS_AS(fit_correction(sample(-1, 1, 20), 3, 1, -1), PreconditionError);
}

TEST_CASE("sharply ill-conditioned fits report a precision error") {
    CHECK_THROWS_AS(fit_correction(sample(-4, 6, 130), 120, -4, 6, 16), PrecisionError);
}

TEST_CASE("conjectured correction term") {
    CorrectionTerm c = CorrectionTerm::conjectured();
    CHECK(c.present());
    CHECK_FALSE(CorrectionTerm{}.present());
    auto v = c.eval(-1);
    F21Eval e = f21_conjectured_eval(-1);
    CHECK(v[0] == doctest::Approx(e.value).epsilon(1e-14));
    CHECK(v[3] == doctest::Approx(e.d3).epsilon(1e-14));
}

TEST_CASE("Tracy-Widom moments by quadrature and trapezoid sums") {
    MomentRow q = tracy_widom_moments(0);
    CHECK(q.mu1 == doctest::Approx(-1.7710868074).epsilon(1e-10));
    CHECK(q.variance == doctest::Approx(0.8131947928).epsilon(1e-10));
    CHECK(moment_integral(MomentIntegrand::f2_density, 0).value == doctest::Approx(1).epsilon(1e-12));
    MomentRow t = tracy_widom_moments(48);
    CHECK(std::abs(t.mu1 - q.mu1) < 1e-13 * 100);
    MomentRow t6 = tracy_widom_moments(6);
    CHECK(std::abs(t6.mu1 - (-1.7319596234)) < 1e-10);
}

TEST_CASE("moments of the derivative terms") {
    CHECK(std::abs(moment_integral(MomentIntegrand::f2_third, 1).value) < 1e-12);
    CHECK(moment_integral(MomentIntegrand::f2_third, 2).value == doctest::Approx(2.0).epsilon(1e-11));
    ExpansionConstants c = expansion_constants();
    CHECK(c.mu1 == doctest::Approx(0.06583238).epsilon(1e-7));
    CHECK(c.nu1 == doctest::Approx(-1.20720507).epsilon(1e-8));
}

TEST_CASE("residual sets from the exact table") {
    auto table = hook_length_distribution(36);
    ResidualOptions opt;
    opt.table = &table;
    ScaledResidualSet s = scaled_residuals(36, 0, opt);
    CHECK(s.exponent == doctest::Approx(1.0 / 3));
    CHECK(s.points.size() == 36);
    for (auto& p : s.points) CHECK(p.value == doctest::Approx(p.raw * std::cbrt(36.0)).epsilon(1e-12));
    opt.f21 = CorrectionTerm::conjectured();
    ScaledResidualSet s1 = scaled_residuals(36, 1, opt);
    CHECK(s1.max_raw < s.max_raw);
    opt.f21 = {};
    CHECK_THROWS_AS(scaled_residuals(36, 1, opt), PreconditionError);
    ResidualOptions none;
    CHECK_THROWS_AS(scaled_residuals(36, 0, none), PreconditionError);
}

TEST_CASE("PDF expansion sums to one") {
    double sum = 0;
    for (int l = 1; l <= 200; ++l) sum += pdf_expansion(200, l, 2);
    CHECK(sum == doctest::Approx(1).epsilon(1e-6));
}

TEST_CASE("mean and variance fits on a small table") {
    auto table = exact_distribution_table(80);
    MeanVarianceFit m = fit_mean_variance(table, MomentKind::mean, 40, 80, 4);
    CHECK(m.coefficients.size() == 4);
    CHECK(m.exponents[1] == doctest::Approx(-1.0 / 6));
    CHECK(std::abs(m.coefficients[0] - (-1.7710868074)) < 0.02);
    MeanVarianceFit v = fit_mean_variance(table, MomentKind::variance, 40, 80, 4);
    CHECK(v.exponents[0] == doctest::Approx(1.0 / 3));
    CHECK(std::abs(v.coefficients[0] - 0.8131947928) < 0.05);
    CHECK(matching_digits(1.234567, 1.234587) == 4);
    CHECK(matching_digits(1.2345671, 1.2345672) == 7);
    CHECK(matching_digits(2.0, 2.0) == 17);
}

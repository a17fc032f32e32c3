#include <doctest.h>

#include <cmath>

#include "lisdist/error.hpp"
#include "lisdist/kernel.hpp"
#include "lisdist/quadrature.hpp"
#include "lisdist/special.hpp"
#include "oracle_values.hpp"

using namespace lisdist;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    auto r = gauss_legendre(10, -1.0, 3.0);
    double s = 0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 19);
    CHECK(s == doctest::Approx((std::pow(3.0, 20) - 1) / 20).epsilon(1e-13));
}

TEST_CASE("bessel J against mpmath") {
    for (const auto& o : oracle::kBessel) {
        BesselPair b = bessel_j(o.nu, o.x);
        double scale = std::max(std::abs(o.j), 1e-300);
        CHECK(std::abs(b.j - o.j) / scale < 1e-12);
        CHECK(std::abs(b.jp - o.jp) / std::max(std::abs(o.jp), 1e-300) < 1e-11);
    }
}

TEST_CASE("uniform expansion overlaps the direct evaluation") {
    for (double x : {50.0, 70.0, 90.0}) {
        BesselPair u = bessel_j_uniform(70, x), d = bessel_j_direct(70, x);
        CHECK(u.j == doctest::Approx(d.j).epsilon(1e-12));
    }
}

TEST_CASE("airy and x - log1p against mpmath") {
    for (const auto& o : oracle::kAiry) {
        AiryPair a = airy(o.x);
        CHECK(a.ai == doctest::Approx(o.ai).epsilon(1e-13));
        CHECK(a.aip == doctest::Approx(o.aip).epsilon(1e-13));
    }
    for (const auto& o : oracle::kXMinusLog1p) CHECK(x_minus_log1p(o.x) == doctest::Approx(o.value).epsilon(1e-14));
}

TEST_CASE("log barnes G against mpmath") {
    for (const auto& o : oracle::kLogBarnesG1p)
        CHECK(std::abs(log_barnes_g1p(o.x) - o.value) <= 1e-13 * std::max(1.0, std::abs(o.value)));
}

TEST_CASE("hard edge backends against mpmath") {
    for (const auto& o : oracle::kHardEdge) {
        HardEdgeEval e = hard_edge_eval(o.alpha, o.s);
        CAPTURE(o.alpha);
        CAPTURE(o.s);
        CHECK(e.within_tol);
        CHECK(std::abs(e.log_g - o.log_g) < 1e-11);
        CHECK(e.v == doctest::Approx(o.v).epsilon(1e-9));
        CHECK(e.u == doctest::Approx(o.u).epsilon(1e-9));
    }
}

TEST_CASE("forced backends agree") {
    for (auto [l, s] : {std::pair{1, 10.0}, {4, 60.0}, {7, 120.0}}) {
        KernelOptions f, t, c;
        f.backend = HardEdgeBackend::fredholm;
        t.backend = HardEdgeBackend::toeplitz;
        c.backend = HardEdgeBackend::chazy_series;
        auto ef = hard_edge_eval(l, s, f), et = hard_edge_eval(l, s, t), ec = hard_edge_eval(l, s, c);
        CHECK(ef.backend == HardEdgeBackend::fredholm);
        CHECK(et.backend == HardEdgeBackend::toeplitz);
        CHECK(ec.backend == HardEdgeBackend::chazy_series);
        CHECK(std::abs(ef.log_g - et.log_g) < 1e-11);
        CHECK(std::abs(ec.log_g - et.log_g) < 1e-11);
        CHECK(ef.u == doctest::Approx(et.u).epsilon(1e-9));
    }
}

TEST_CASE("hard edge trivial and invalid inputs") {
    HardEdgeEval e = hard_edge_eval(3, 0);
    CHECK(e.g == 1);
    CHECK(e.v == 0);
    CHECK_THROWS(hard_edge_eval(-1, 2));
}

TEST_CASE("soft edge limit approaches the hard edge for large alpha") {
    double alpha = 400, t = -1;
    double s = alpha * alpha - t * std::pow(2.0, 2.0 / 3) * std::pow(alpha, 4.0 / 3);
    KernelOptions f;
    f.backend = HardEdgeBackend::fredholm;
    double g = hard_edge_eval(alpha, s, f).g;
    CHECK(std::abs(soft_edge_approximation(alpha, s).g - g) < 0.05);
    CHECK(std::abs(f2_cdf(t) - g) < 0.05);
}

TEST_CASE("tracy-widom F2 against an mpmath Nystrom determinant") {
    for (const auto& o : oracle::kF2) {
        TracyWidomEval e = airy_f2(o.s, 1e-13, 1);
        CHECK(e.F2 == doctest::Approx(o.F2).epsilon(1e-13));
        CHECK(e.d[1] == doctest::Approx(o.dF2).epsilon(1e-11));
    }
}

TEST_CASE("F2 derivatives are consistent with finite differences") {
    for (double s : {-6.0, -3.0, -1.0, 0.5, 2.0}) {
        TracyWidomEval e = airy_f2(s, 1e-13, 5);
        double h = 1e-3;
        for (int k = 1; k <= 5; ++k) {
            double fd = (airy_f2(s + h, 1e-13, k - 1).d[k - 1] - airy_f2(s - h, 1e-13, k - 1).d[k - 1]) / (2 * h);
            CAPTURE(s);
            CAPTURE(k);
            CHECK(std::abs(e.d[k] - fd) < 1e-5 * std::max(1.0, std::abs(fd)));
        }
    }
}

TEST_CASE("F2 left tail: expansion and continuation agree across the switch") {
    TracyWidomEval a = airy_f2(-6.9, 1e-12, 2), b = airy_f2(-7.1, 1e-12, 2);
    CHECK(a.method != b.method);
    double slope = (a.log_F2 - b.log_F2) / 0.2;
    CHECK(slope == doctest::Approx(0.5 * (a.d[1] / a.F2 + b.d[1] / b.F2)).epsilon(1e-3));
}

TEST_CASE("conjectured F21 derivative chain") {
    F21Eval e = f21_conjectured_eval(-1.5);
    double h = 1e-4;
    CHECK(e.d1 == doctest::Approx((f21_conjectured(-1.5 + h) - f21_conjectured(-1.5 - h)) / (2 * h)).epsilon(1e-6));
    CHECK(std::abs(f21_conjectured(12)) < 1e-20);
}

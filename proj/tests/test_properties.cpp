#include <doctest.h>

#include <cmath>
#include <random>

#include "lisdist/kernel.hpp"
#include "lisdist/series.hpp"

using namespace lisdist;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// five-point central difference
template <class F>
double derivative(F f, double x, double h) {
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

}  // namespace

TEST_CASE("v = -s (log g)' and u = s v' at random points") {
    std::mt19937_64 gen(20240611);
    std::uniform_real_distribution<double> ua(0.3, 15.0), uf(0.05, 1.0);
    for (int i = 0; i < 20; ++i) {
        double alpha = ua(gen);
        double s = uf(gen) * (alpha * alpha + 4 * alpha + 10);
        HardEdgeEval e = hard_edge_eval(alpha, s);
        double h = 1e-3 * s;
        double dlog = derivative([&](double x) { return hard_edge_eval(alpha, x).log_g; }, s, h);
        double dv = derivative([&](double x) { return hard_edge_eval(alpha, x).v; }, s, h);
        CAPTURE(alpha);
        CAPTURE(s);
        CHECK(rel(e.v, -s * dlog) < 1e-6);
        CHECK(rel(e.u, s * dv) < 1e-6);
    }
}

TEST_CASE("Poissonization: e^-r f_l(r) = g_l(4r)") {
    const std::pair<int, double> pts[] = {{1, 0.5}, {1, 6},   {2, 3},   {3, 10}, {4, 9},
                                          {5, 18.23}, {6, 20}, {7, 4}, {9, 30}, {12, 25}};
    for (auto [l, r] : pts) {
        int K = 600;
        auto ls = log_generating_series(l, K);
        double acc = 0;
        for (int k = 0; k <= K; ++k) acc += std::exp(ls->log_c[k] + k * std::log(r) - r);
        KernelOptions kf;
        kf.backend = HardEdgeBackend::fredholm;
        HardEdgeEval f = hard_edge_eval(l, 4 * r, kf);
        CAPTURE(l);
        CAPTURE(r);
        CHECK(std::abs(acc / f.g - 1) < 1e-10);
    }
}

TEST_CASE("Chazy residual vanishes exactly in rationals") {
    for (int l = 1; l <= 6; ++l) {
        ChazySeries s = chazy_coefficients(l, 40);
        CHECK(chazy_residual_order(s) == -1);
        CHECK(sigma_piii_residual_order(s) == -1);
    }
}

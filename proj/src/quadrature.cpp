#include "lisdist/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "lisdist/error.hpp"

namespace lisdist {

namespace {

QuadratureRule build(std::size_t m) {
    QuadratureRule r;
    r.nodes.resize(m);
    r.weights.resize(m);
    r.map = "gauss-legendre[-1,1]";
    for (std::size_t i = 0; i < (m + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (std::size_t k = 2; k <= m; ++k) {
                double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                // refresh derivative at the converged node
                p0 = 1, p1 = x;
                for (std::size_t k = 2; k <= m; ++k) {
                    double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = m * (x * p1 - p0) / (x * x - 1);
                break;
            }
        }
        double w = 2 / ((1 - x * x) * dp * dp);
        r.nodes[m - 1 - i] = x;
        r.nodes[i] = -x;
        r.weights[i] = r.weights[m - 1 - i] = w;
    }
    if (m % 2 == 1) r.nodes[m / 2] = 0;
    return r;
}

}  // namespace

std::shared_ptr<const QuadratureRule> gauss_legendre(std::size_t m) {
    if (m == 0) throw PreconditionError("gauss_legendre: m must be positive");
    static std::mutex mu;
    static std::map<std::size_t, std::shared_ptr<const QuadratureRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[m];
    if (!slot) slot = std::make_shared<const QuadratureRule>(build(m));
    return slot;
}

QuadratureRule gauss_legendre(std::size_t m, double a, double b) {
    auto ref = gauss_legendre(m);
    QuadratureRule r;
    r.nodes.resize(m);
    r.weights.resize(m);
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (std::size_t i = 0; i < m; ++i) {
        r.nodes[i] = c + h * ref->nodes[i];
        r.weights[i] = h * ref->weights[i];
    }
    r.map = "gauss-legendre affine";
    return r;
}

}  // namespace lisdist

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "lisdist/simd.hpp"

using namespace lisdist;

TEST_CASE("dot and axpy: dispatched kernels agree with the scalar reference") {
    std::mt19937_64 gen(7);
    std::normal_distribution<double> nd;
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 33u, 250u}) {
        std::vector<double> x(n), y(n);
        for (auto& v : x) v = nd(gen);
        for (auto& v : y) v = nd(gen);
        double ref = simd::scalar::dot(x.data(), y.data(), n);
        double scale = 0;
        for (std::size_t i = 0; i < n; ++i) scale += std::abs(x[i] * y[i]);
        CHECK(std::abs(simd::dot(x.data(), y.data(), n) - ref) <= 1e-15 * (scale + 1));
        std::vector<double> a = y, b = y;
        simd::scalar::axpy(0.75, x.data(), a.data(), n);
        simd::axpy(0.75, x.data(), b.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-15 * (std::abs(a[i]) + 1));
        if (simd::avx2::available()) {
            CHECK(std::abs(simd::avx2::dot(x.data(), y.data(), n) - ref) <= 1e-15 * (scale + 1));
        }
    }
    std::string backend = simd::active_backend();
    CHECK((backend == "avx2" || backend == "scalar"));
}

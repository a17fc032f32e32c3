#include "lisdist/simd.hpp"

#include <cstdlib>
#include <cstring>

namespace lisdist::simd {

namespace scalar {

double dot(const double* x, const double* y, std::size_t n) {
    // four partial sums, same association as the vector kernel
    double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += x[i] * y[i];
        s1 += x[i + 1] * y[i + 1];
        s2 += x[i + 2] * y[i + 2];
        s3 += x[i + 3] * y[i + 3];
    }
    double s = (s0 + s1) + (s2 + s3);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

}  // namespace scalar

namespace {

using DotFn = double (*)(const double*, const double*, std::size_t);
using AxpyFn = void (*)(double, const double*, double*, std::size_t);

struct Dispatch {
    DotFn dot = scalar::dot;
    AxpyFn axpy = scalar::axpy;
    const char* name = "scalar";

    Dispatch() {
        const char* force = std::getenv("LISDIST_FORCE_SCALAR");
        bool forced = force && *force && std::strcmp(force, "0") != 0;
        if (!forced && avx2::available()) {
            dot = avx2::dot;
            axpy = avx2::axpy;
            name = "avx2";
        }
    }
};

const Dispatch& dispatch() {
    static const Dispatch d;
    return d;
}

}  // namespace

double dot(const double* x, const double* y, std::size_t n) { return dispatch().dot(x, y, n); }

void axpy(double a, const double* x, double* y, std::size_t n) { dispatch().axpy(a, x, y, n); }

const char* active_backend() { return dispatch().name; }

}  // namespace lisdist::simd

#pragma once

#include <cstddef>

// Dense kernels used by the Nystrom factorizations. The scalar versions are
// the reference; the AVX2 versions are picked at runtime when the CPU has
// AVX2+FMA unless LISDIST_FORCE_SCALAR is set in the environment.
namespace lisdist::simd {

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
}  // namespace scalar

namespace avx2 {
bool available();
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
}  // namespace avx2

double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);

// "avx2" or "scalar"
const char* active_backend();

}  // namespace lisdist::simd

#pragma once

namespace lisdist {

struct BesselPair {
    double j;   // J_nu(x)
    double jp;  // J_nu'(x)
};

struct AiryPair {
    double ai;
    double aip;
};

// Orders at or above this use the uniform large-order expansion.
inline constexpr double kUniformBesselOrder = 100.0;

// J_nu and J_nu' for nu >= 0, x >= 0.
BesselPair bessel_j(double nu, double x);

// Uniform Airy-type expansion (three terms in 1/nu^2); accurate to about
// 1e-15 relative for nu >= 60.
BesselPair bessel_j_uniform(double nu, double x);

// Library evaluation of moderate orders.
BesselPair bessel_j_direct(double nu, double x);

AiryPair airy(double x);

// x - log(1 + x), accurate for small |x|.
double x_minus_log1p(double x);

}  // namespace lisdist

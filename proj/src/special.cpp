#include "lisdist/special.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <span>

#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>

#include "lisdist/error.hpp"

namespace lisdist {

namespace {

#include "lisdist/detail/olver_tables.inc"

using cplx = std::complex<double>;

double clenshaw(std::span<const double> c, double x) {
    double b1 = 0, b2 = 0;
    for (std::size_t k = c.size(); k-- > 1;) {
        double b0 = 2 * x * b1 - b2 + c[k];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + c[0];
}

cplx debye(const double (&poly)[16], cplx p) {
    cplx acc = 0;
    for (int i = 15; i >= 0; --i) acc = acc * p + poly[i];
    return acc;
}

struct Coeffs {
    std::array<double, 3> a, b, c, d;
};

Coeffs coeffs_table(double zeta) {
    double x = zeta / kOlverZetaMax;
    Coeffs r;
    r.a = {1.0, clenshaw(kOlverA1, x), clenshaw(kOlverA2, x)};
    r.b = {clenshaw(kOlverB0, x), clenshaw(kOlverB1, x), clenshaw(kOlverB2, x)};
    r.c = {clenshaw(kOlverC0, x), clenshaw(kOlverC1, x), clenshaw(kOlverC2, x)};
    r.d = {1.0, clenshaw(kOlverD1, x), clenshaw(kOlverD2, x)};
    return r;
}

// Closed forms through the Debye polynomials; used away from zeta = 0.
Coeffs coeffs_closed(double zeta, cplx p) {
    cplx s = std::sqrt(cplx(zeta, 0.0));
    cplx s3inv = 1.0 / (s * s * s);
    std::array<cplx, 6> pw;
    pw[0] = 1;
    for (int j = 1; j < 6; ++j) pw[j] = pw[j - 1] * 1.5 * s3inv;
    Coeffs r;
    for (int k = 0; k < 3; ++k) {
        cplx A = 0, B = 0, C = 0, D = 0;
        for (int j = 0; j <= 2 * k; ++j) {
            A += pw[j] * kAiryV[j] * debye(kDebyeU[2 * k - j], p);
            D += pw[j] * kAiryU[j] * debye(kDebyeV[2 * k - j], p);
        }
        for (int j = 0; j <= 2 * k + 1; ++j) {
            B += pw[j] * kAiryU[j] * debye(kDebyeU[2 * k - j + 1], p);
            C += pw[j] * kAiryV[j] * debye(kDebyeV[2 * k - j + 1], p);
        }
        r.a[k] = A.real();
        r.b[k] = (-B / s).real();
        r.c[k] = (-s * C).real();
        r.d[k] = D.real();
    }
    return r;
}

// 3 (atanh w - w) / w^3 and 3 (w - atan w) / w^3
double atanh_ratio(double w) {
    if (w < 0.1) {
        double w2 = w * w, t = 1, s = 0;
        for (int k = 0; k < 12; ++k, t *= w2) s += 3 * t / (2 * k + 3);
        return s;
    }
    return 3 * (std::atanh(w) - w) / (w * w * w);
}

double atan_ratio(double w) {
    if (w < 0.1) {
        double w2 = w * w, t = 1, s = 0;
        for (int k = 0; k < 12; ++k, t *= -w2) s += 3 * t / (2 * k + 3);
        return s;
    }
    return 3 * (w - std::atan(w)) / (w * w * w);
}

}  // namespace

BesselPair bessel_j_uniform(double nu, double x) {
    if (!(nu > 0)) throw PreconditionError("bessel_j_uniform: order must be positive");
    if (x <= 0) return {0.0, 0.0};
    const double z = x / nu;
    const double omz = (nu - x) / nu;
    double zeta, ratio;
    cplx p;
    if (omz > 0) {
        double w = std::sqrt(std::min(omz * (1 + z), 1 - 1e-16));
        double q = std::cbrt(atanh_ratio(w) / 2);
        zeta = w * w * q * q;
        ratio = 4 * q * q;
        p = 1.0 / w;
    } else {
        double w = std::sqrt(-omz * (1 + z));
        double q = std::cbrt(atan_ratio(w) / 2);
        zeta = -w * w * q * q;
        ratio = 4 * q * q;
        p = w > 0 ? cplx(0.0, -1.0 / w) : cplx(0.0);
    }
    Coeffs c = std::abs(zeta) <= kOlverZetaMax ? coeffs_table(zeta) : coeffs_closed(zeta, p);
    const double nu13 = std::cbrt(nu), nu23 = nu13 * nu13;
    const double arg = nu23 * zeta;
    if (arg > 105) return {0.0, 0.0};
    AiryPair ai = airy(arg);
    const double e = 1 / (nu * nu);
    auto sum = [e](const std::array<double, 3>& v) { return v[0] + e * (v[1] + e * v[2]); };
    double pref = std::sqrt(std::sqrt(ratio));
    double j = pref * (ai.ai / nu13 * sum(c.a) + ai.aip / (nu13 * nu23 * nu23) * sum(c.b));
    double jp = -(2 / z) / pref * (ai.ai / (nu * nu13) * sum(c.c) + ai.aip / nu23 * sum(c.d));
    return {j, jp};
}

BesselPair bessel_j_direct(double nu, double x) {
    if (x <= 0) {
        if (nu == 0) return {1.0, 0.0};
        return {0.0, nu == 1 ? 0.5 : 0.0};
    }
    return {boost::math::cyl_bessel_j(nu, x), boost::math::cyl_bessel_j_prime(nu, x)};
}

BesselPair bessel_j(double nu, double x) {
    if (nu < 0) throw PreconditionError("bessel_j: negative order");
    if (nu >= kUniformBesselOrder) return bessel_j_uniform(nu, x);
    return bessel_j_direct(nu, x);
}

AiryPair airy(double x) { return {boost::math::airy_ai(x), boost::math::airy_ai_prime(x)}; }

double x_minus_log1p(double x) {
    if (std::abs(x) < 1e-4) {
        // x^2/2 - x^3/3 + x^4/4 - x^5/5 + x^6/6
        return x * x * (0.5 + x * (-1.0 / 3 + x * (0.25 + x * (-0.2 + x / 6))));
    }
    return x - std::log1p(x);
}

}  // namespace lisdist

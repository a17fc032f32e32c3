#include "lisdist/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include <boost/math/special_functions/zeta.hpp>
#include <boost/numeric/odeint.hpp>

#include "lisdist/error.hpp"
#include "lisdist/linalg.hpp"
#include "lisdist/series.hpp"
#include "lisdist/simd.hpp"
#include "lisdist/special.hpp"

namespace lisdist {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

int chazy_length_estimate(int l, double r) {
    double a = std::min(r, l * std::sqrt(r));
    double k = a + 14 * std::sqrt(a + 1) + 40;
    return k > 1e8 ? 100000000 : static_cast<int>(k);
}

// MPFR determinant cost in units of about 6 microseconds
double toeplitz_work_estimate(int l, double s) {
    double digits = 40 + 0.5 * l * l * std::log10(std::sqrt(s) + 2) + 2 * l;
    return std::pow(double(l), 3) * std::pow(digits / 1000, 1.6);
}

struct FredholmLevel {
    double log_g = 0;
    int sign = 1;
    double v = 0;
    double u = 0;
    double cond = 1;
};

FredholmLevel bessel_level(double alpha, double s, std::size_t m) {
    BesselDiscretization d = bessel_kernel_matrix(alpha, s, m);
    std::vector<double> ia(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) ia[i * m + j] = (i == j ? 1.0 : 0.0) - d.matrix[i * m + j];
    DenseFactor f(std::move(ia), m);
    FredholmLevel out;
    out.log_g = f.log_abs_det();
    out.sign = f.det_sign();
    std::vector<double> y = f.solve(d.phi);
    double pp = simd::dot(d.phi.data(), d.phi.data(), m), yy = simd::dot(y.data(), y.data(), m);
    out.cond = std::max(f.condition_estimate(), pp > 0 ? std::sqrt(yy / pp) : 1.0);
    out.v = simd::dot(d.phi.data(), y.data(), m);
    out.u = out.v + out.v * out.v + simd::dot(d.chi.data(), y.data(), m);
    return out;
}

}  // namespace

const char* to_string(HardEdgeBackend b) {
    switch (b) {
        case HardEdgeBackend::automatic: return "automatic";
        case HardEdgeBackend::fredholm: return "fredholm";
        case HardEdgeBackend::toeplitz: return "toeplitz";
        case HardEdgeBackend::chazy_series: return "chazy_series";
        case HardEdgeBackend::connection_asymptotic: return "connection_asymptotic";
        case HardEdgeBackend::soft_edge: return "soft_edge";
    }
    return "unknown";
}

double bessel_kernel(double alpha, double z1, double z2) {
    BesselPair a = bessel_j(alpha, z1);
    if (std::abs(z1 - z2) <= 1e-10 * std::max(1.0, z1)) {
        double z = 0.5 * (z1 + z2);
        if (z == 0) return alpha == 0 ? 0.25 : 0.0;
        BesselPair c = bessel_j(alpha, z);
        return 0.25 * (c.jp * c.jp + (1 - alpha * alpha / (z * z)) * c.j * c.j);
    }
    BesselPair b = bessel_j(alpha, z2);
    return (a.j * z2 * b.jp - z1 * a.jp * b.j) / (2 * (z1 - z2) * (z1 + z2));
}

BesselDiscretization bessel_kernel_matrix(double alpha, double s, std::size_t m) {
    if (!(s > 0)) throw PreconditionError("bessel_kernel_matrix: s must be positive");
    if (alpha < 0) throw PreconditionError("bessel_kernel_matrix: alpha must be >= 0");
    double zhi = std::sqrt(s);
    double zlo = alpha > 0 ? std::max(0.0, alpha - 12 * std::cbrt(alpha)) : 0.0;
    if (zlo >= zhi) zlo = 0;

    BesselDiscretization d;
    d.rule = gauss_legendre(m, zlo, zhi);
    d.rule.map = "z=sqrt(x)";
    std::vector<double> jv(m), jpv(m), rw(m);
    for (std::size_t i = 0; i < m; ++i) {
        double z = d.rule.nodes[i];
        d.rule.weights[i] *= 2 * z;
        BesselPair b = bessel_j(alpha, z);
        jv[i] = b.j;
        jpv[i] = b.jp;
        rw[i] = std::sqrt(d.rule.weights[i]);
    }
    d.matrix.assign(m * m, 0.0);
    d.phi.resize(m);
    d.chi.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        double zi = d.rule.nodes[i];
        d.phi[i] = rw[i] * jv[i] / 2;
        d.chi[i] = rw[i] * zi * jpv[i] / 2;
        for (std::size_t j = 0; j < i; ++j) {
            double zj = d.rule.nodes[j];
            double k = (jv[i] * zj * jpv[j] - zi * jpv[i] * jv[j]) / (2 * (zi - zj) * (zi + zj));
            d.matrix[i * m + j] = d.matrix[j * m + i] = rw[i] * rw[j] * k;
        }
        double kd = 0.25 * (jpv[i] * jpv[i] + (1 - alpha * alpha / (zi * zi)) * jv[i] * jv[i]);
        d.matrix[i * m + i] = d.rule.weights[i] * kd;
    }
    return d;
}

HardEdgeEval hard_edge_fredholm(double alpha, double s, const KernelOptions& opt) {
    HardEdgeEval e;
    e.alpha = alpha;
    e.s = s;
    e.backend = HardEdgeBackend::fredholm;
    if (s <= 0) return e;

    std::size_t m = std::max<std::size_t>(opt.m_start, 4);
    FredholmLevel prev = bessel_level(alpha, s, m);
    double last_err = HUGE_VAL;
    for (int k = 0; k < opt.max_doublings; ++k) {
        std::size_t m2 = 2 * m;
        FredholmLevel cur = bessel_level(alpha, s, m2);
        double err = std::max({std::abs(cur.log_g - prev.log_g), rel_diff(cur.v, prev.v), rel_diff(cur.u, prev.u)});
        double noise = 100 * kEps * std::max(1.0, cur.cond);
        m = m2;
        prev = cur;
        if (cur.sign <= 0 || 100 * kEps * cur.cond > 1e-6) break;
        // stagnation at the rounding floor ends the refinement as well
        bool stalled = k >= 1 && m >= 128 && err > 0.25 * last_err;
        if (err <= std::max(opt.tol, noise) || stalled) {
            e.log_g = cur.log_g;
            e.g = std::exp(cur.log_g);
            e.v = cur.v;
            e.u = cur.u;
            e.err_estimate = stalled ? std::max(err, last_err) : err;
            e.nodes = m;
            e.within_tol = e.err_estimate <= opt.tol;
            return e;
        }
        last_err = err;
    }
    if (prev.sign <= 0 || !std::isfinite(prev.log_g))
        throw ConvergenceError("hard_edge_fredholm: determinant not positive");
    throw ConvergenceError("hard_edge_fredholm: no convergence at alpha=" + std::to_string(alpha) +
                           " s=" + std::to_string(s));
}

HardEdgeEval hard_edge_chazy(int l, double s, const KernelOptions& opt) {
    if (l < 1) throw PreconditionError("hard_edge_chazy: l must be >= 1");
    HardEdgeEval e;
    e.alpha = l;
    e.s = s;
    e.backend = HardEdgeBackend::chazy_series;
    if (s <= 0) return e;
    double r = s / 4, logr = std::log(r);
    int K = std::max(chazy_length_estimate(l, r), l + 8);
    for (;;) {
        if (K > 2 * opt.chazy_max_terms)
            throw ConvergenceError("hard_edge_chazy: series longer than " + std::to_string(2 * opt.chazy_max_terms));
        auto ls = log_generating_series(l, K);
        const int n = static_cast<int>(ls->log_c.size());
        std::vector<double> t(n);
        double mx = -HUGE_VAL;
        int kmax = 0;
        for (int k = 0; k < n; ++k) {
            t[k] = ls->log_c[k] + k * logr;
            if (t[k] > mx) mx = t[k], kmax = k;
        }
        if (n - 1 <= kmax + 2 || t[n - 1] > mx - 60 || t[n - 1] > t[n - 2]) {
            K *= 2;
            continue;
        }
        double sw = 0, sk = 0;
        for (int k = 0; k < n; ++k) {
            double w = std::exp(t[k] - mx);
            sw += w;
            sk += k * w;
        }
        double a = sk / sw, sv = 0;
        for (int k = 0; k < n; ++k) sv += (k - a) * (k - a) * std::exp(t[k] - mx);
        double b = sv / sw;
        e.log_g = mx + std::log(sw) - r;
        e.g = std::exp(e.log_g);
        e.v = r - a;
        e.u = r - b;
        e.nodes = static_cast<std::size_t>(n - 1);
        e.err_estimate = std::exp(t[n - 1] - mx) + 1e3 * kEps * std::max(1.0, r);
        e.within_tol = e.err_estimate <= std::max(opt.tol, 1e3 * kEps * std::max(1.0, r));
        return e;
    }
}

HardEdgeEval hard_edge_toeplitz(int l, double s, const KernelOptions& opt) {
    if (l < 1) throw PreconditionError("hard_edge_toeplitz: l must be >= 1");
    HardEdgeEval e;
    e.alpha = l;
    e.s = s;
    e.backend = HardEdgeBackend::toeplitz;
    if (s <= 0) return e;
    const double r = s / 4, z = std::sqrt(r);
    long digits = 40 + static_cast<long>(0.5 * l * l * std::log10(2 * z + 2) + 2 * l);
    if (digits > opt.toeplitz_max_digits) throw ConvergenceError("hard_edge_toeplitz: precision above limit");
    ToeplitzDerivatives t = toeplitz_log_derivatives(l, z, digits);
    // r d/dr = (z/2) d/dz
    double a = 0.5 * z * t.d1;
    double b = 0.25 * z * t.d1 + 0.25 * z * z * t.d2;
    e.log_g = t.log_value - r;
    e.g = std::exp(e.log_g);
    e.v = r - a;
    e.u = r - b;
    e.nodes = static_cast<std::size_t>(t.digits);
    e.err_estimate = t.rel_error + 1e2 * kEps * std::max(1.0, r);
    e.within_tol = e.err_estimate <= std::max(opt.tol, 1e2 * kEps * std::max(1.0, r));
    return e;
}

double log_barnes_g1p(double z) {
    if (!(z > -1)) throw RangeError("log_barnes_g1p: z must exceed -1");
    if (z == std::floor(z) && z < 170) {
        double acc = 0;
        for (int k = 1; k < static_cast<int>(z); ++k) acc += std::lgamma(k + 1.0);
        return acc;
    }
    if (z >= 12) {
        double y = 1 / (z * z);
        return (z * z / 2 - 1.0 / 12) * std::log(z) - 0.75 * z * z + 0.5 * z * std::log(2 * std::numbers::pi) -
               0.16542114370045092 + y * (-1.0 / 240 + y * (1.0 / 1008 + y * (-1.0 / 1440 + y / 1056)));
    }
    if (z > 0.5) return std::lgamma(z) + log_barnes_g1p(z - 1);
    if (z < -0.5) return log_barnes_g1p(z + 1) - std::lgamma(1 + z);
    constexpr double gamma_e = std::numbers::egamma;
    double acc = 0.5 * z * std::log(2 * std::numbers::pi) - 0.5 * (z + (1 + gamma_e) * z * z);
    double zp = z * z * z;
    for (int k = 2; k < 80; ++k) {
        double term = (k % 2 ? -1.0 : 1.0) * boost::math::zeta(static_cast<double>(k)) * zp / (k + 1);
        acc += term;
        if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(acc))) break;
        zp *= z;
    }
    return acc;
}

HardEdgeEval connection_asymptotic(double alpha, double s) {
    if (!(s > 0)) throw PreconditionError("connection_asymptotic: s must be positive");
    HardEdgeEval e;
    e.alpha = alpha;
    e.s = s;
    e.backend = HardEdgeBackend::connection_asymptotic;
    double rs = std::sqrt(s), a2 = alpha * alpha;
    e.v = s / 4 - alpha / 2 * rs + a2 / 4 + alpha / 16 / rs + a2 / 16 / s;
    e.u = s / 4 - alpha / 4 * rs - alpha / 32 / rs - a2 / 16 / s;
    e.log_g = -s / 4 + alpha * rs - a2 / 4 * std::log(s) + log_barnes_g1p(alpha) -
              alpha / 2 * std::log(2 * std::numbers::pi) + alpha / 8 / rs + a2 / 16 / s;
    e.g = std::exp(e.log_g);
    // log g error, calibrated against the toeplitz backend: a function of s / alpha^2 alone
    const double rho = s / std::max(a2, 1.0), delta = rho - 1;
    e.err_estimate = delta > 0 ? std::max(0.05 / (delta * std::sqrt(rho)), 1 / (s * rs)) : 1.0;
    e.within_tol = false;
    return e;
}

HardEdgeEval soft_edge_approximation(double alpha, double s) {
    if (!(alpha > 0) || !(s > 0)) throw PreconditionError("soft_edge_approximation: alpha, s > 0 required");
    HardEdgeEval e;
    e.alpha = alpha;
    e.s = s;
    e.backend = HardEdgeBackend::soft_edge;
    const double c = 1 / (std::cbrt(4.0) * std::pow(alpha, 4.0 / 3));
    const double t = (alpha * alpha - s) * c;
    TracyWidomEval f = airy_f2(t, 1e-12, 1);
    e.log_g = f.log_F2;
    e.g = f.F2;
    // dt/ds = -c, U = (log F2)', U' = -q^2
    e.v = s * c * f.U;
    e.u = e.v + s * s * c * c * f.q * f.q;
    // log g error, calibrated against the toeplitz backend for alpha = 20, 40
    e.err_estimate = std::pow(alpha / 20, -2.0 / 3) * std::max(0.02, 0.433 * std::pow(std::abs(t) / 2.32, 3.46));
    e.within_tol = false;
    return e;
}

HardEdgeEval hard_edge_eval(double alpha, double s, const KernelOptions& opt) {
    switch (opt.backend) {
        case HardEdgeBackend::fredholm: return hard_edge_fredholm(alpha, s, opt);
        case HardEdgeBackend::toeplitz:
            if (alpha != std::floor(alpha)) throw PreconditionError("toeplitz needs integer alpha");
            return hard_edge_toeplitz(static_cast<int>(alpha), s, opt);
        case HardEdgeBackend::chazy_series:
            if (alpha != std::floor(alpha)) throw PreconditionError("chazy_series needs integer alpha");
            return hard_edge_chazy(static_cast<int>(alpha), s, opt);
        case HardEdgeBackend::connection_asymptotic: {
            HardEdgeEval e = connection_asymptotic(alpha, s);
            e.within_tol = e.err_estimate <= opt.tol;
            return e;
        }
        case HardEdgeBackend::soft_edge: return soft_edge_approximation(alpha, s);
        case HardEdgeBackend::automatic: break;
    }
    if (s <= 0) {
        HardEdgeEval e;
        e.alpha = alpha;
        e.s = s;
        return e;
    }
    std::optional<HardEdgeEval> fred;
    try {
        fred = hard_edge_fredholm(alpha, s, opt);
        if (fred->within_tol) return *fred;
    } catch (const ConvergenceError&) {
    }
    if (alpha >= 1 && alpha == std::floor(alpha) && alpha < 1e4 &&
        toeplitz_work_estimate(static_cast<int>(alpha), s) <= opt.toeplitz_max_work) {
        try {
            return hard_edge_toeplitz(static_cast<int>(alpha), s, opt);
        } catch (const Error&) {
        }
    }
    if (alpha >= 1 && alpha == std::floor(alpha) && alpha < 1e6 &&
        chazy_length_estimate(static_cast<int>(alpha), s / 4) <= opt.chazy_max_terms) {
        try {
            return hard_edge_chazy(static_cast<int>(alpha), s, opt);
        } catch (const Error&) {
        }
    }
    // deep soft-edge tail for large alpha: blended over t in [-8, -6] so that
    // neighbouring l never jump between backends
    const double t_edge = (alpha * alpha - s) / (std::cbrt(4.0) * std::pow(alpha, 4.0 / 3));
    HardEdgeEval conn = connection_asymptotic(alpha, s);
    HardEdgeEval soft;
    if (alpha >= 20 && (soft = soft_edge_approximation(alpha, s)).err_estimate < conn.err_estimate) {
        bool usable = fred && fred->err_estimate <= 1e-4;
        if (usable && t_edge >= -6) return *fred;
        if (!usable || t_edge <= -8) return soft;
        double w = (t_edge + 8) / 2;
        HardEdgeEval e = *fred;
        e.log_g = w * fred->log_g + (1 - w) * soft.log_g;
        e.g = std::exp(e.log_g);
        e.v = w * fred->v + (1 - w) * soft.v;
        e.u = w * fred->u + (1 - w) * soft.u;
        e.err_estimate = std::max(fred->err_estimate, (1 - w) * soft.err_estimate);
        e.within_tol = false;
        if (w < 0.5) e.backend = HardEdgeBackend::soft_edge;
        return e;
    }
    if (fred && fred->err_estimate < conn.err_estimate) return *fred;
    return conn;
}

// Airy kernel ------------------------------------------------------------

namespace {

constexpr double kAiryLeftSwitch = -5.0;
constexpr double kAiryTailSwitch = -7.0;

// s -> -infinity expansion around the Hastings-McLeod solution
struct AiryTail {
    double log_F, U, q, qp, err;
};

AiryTail airy_left_tail(double s) {
    const double x = -s, x3 = x * x * x;
    const double chi = -0.16542114370045092 + std::log(2.0) / 24;  // zeta'(-1) + log(2)/24
    double y = 1 / x3;
    AiryTail t;
    t.log_F = -x3 / 12 - std::log(x) / 8 + chi + y * (3.0 / 64 + y * (63.0 / 256 + y * (2407.0 / 512 + y * 1608657.0 / 8192)));
    t.U = x * x / 4 + 1 / (8 * x) +
          y / x * (9.0 / 64 + y * (378.0 / 256 + y * (21663.0 / 512 + y * 12 * 1608657.0 / 8192)));
    double S = 1 - y * (1.0 / 8 + y * (73.0 / 128 + y * (10657.0 / 1024 + y * 13912277.0 / 32768)));
    double dS = y / x * (3.0 / 8 + y * (6 * 73.0 / 128 + y * (9 * 10657.0 / 1024 + y * 12 * 13912277.0 / 32768)));
    double r = std::sqrt(x / 2);
    t.q = r * S;
    t.qp = -(S / (2 * std::sqrt(2 * x)) + r * dS);
    t.err = 0.1 * 1608657.0 / 8192 * y * y * y * y;
    return t;
}

struct AiryLevel {
    double log_F = 0;
    int sign = 1;
    double U = 0, V = 0, q = 0, p = 0;
    double cond = 1;
};

AiryLevel airy_level(double s, std::size_t m) {
    double b = std::max(s, 0.0) + 16;
    QuadratureRule rule = gauss_legendre(m, s, b);
    std::vector<double> ai(m), aip(m), rw(m);
    for (std::size_t i = 0; i < m; ++i) {
        AiryPair a = airy(rule.nodes[i]);
        ai[i] = a.ai;
        aip[i] = a.aip;
        rw[i] = std::sqrt(rule.weights[i]);
    }
    std::vector<double> ia(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        double xi = rule.nodes[i];
        for (std::size_t j = 0; j < i; ++j) {
            double xj = rule.nodes[j];
            double k = (ai[i] * aip[j] - aip[i] * ai[j]) / (xi - xj);
            ia[i * m + j] = ia[j * m + i] = -rw[i] * rw[j] * k;
        }
        ia[i * m + i] = 1 - rule.weights[i] * (aip[i] * aip[i] - xi * ai[i] * ai[i]);
    }
    DenseFactor f(std::move(ia), m);
    AiryLevel out;
    out.log_F = f.log_abs_det();
    out.sign = f.det_sign();
    out.cond = f.condition_estimate();
    std::vector<double> phi(m), psi(m);
    for (std::size_t i = 0; i < m; ++i) phi[i] = rw[i] * ai[i], psi[i] = rw[i] * aip[i];
    std::vector<double> y = f.solve(phi);
    std::vector<double> z = f.solve(psi);
    out.U = simd::dot(phi.data(), y.data(), m);
    out.V = simd::dot(psi.data(), y.data(), m);
    AiryPair as = airy(s);
    double q = as.ai, p = as.aip;
    for (std::size_t j = 0; j < m; ++j) {
        double k = (as.ai * aip[j] - as.aip * ai[j]) / (s - rule.nodes[j]);
        q += k * rw[j] * y[j];
        p += k * rw[j] * z[j];
    }
    out.q = q;
    out.p = p;
    return out;
}

TracyWidomEval finish_airy(TracyWidomEval e, double s, double logF, double U, double q, double q1, int max_deriv) {
    e.log_F2 = logF;
    e.F2 = std::exp(logF);
    e.U = U;
    e.V = (U * U - q * q) / 2;
    e.q = q;
    e.qp = q1;
    double q2 = s * q + 2 * q * q * q;
    double q3 = q + s * q1 + 6 * q * q * q1;
    double L1 = U, L2 = -q * q, L3 = -2 * q * q1, L4 = -2 * (q1 * q1 + q * q2), L5 = -2 * (3 * q1 * q2 + q * q3);
    double F = e.F2;
    e.d[0] = F;
    e.d[1] = F * L1;
    e.d[2] = F * (L1 * L1 + L2);
    e.d[3] = F * (L1 * L1 * L1 + 3 * L1 * L2 + L3);
    e.d[4] = F * (std::pow(L1, 4) + 6 * L1 * L1 * L2 + 4 * L1 * L3 + 3 * L2 * L2 + L4);
    e.d[5] = F * (std::pow(L1, 5) + 10 * std::pow(L1, 3) * L2 + 10 * L1 * L1 * L3 + 15 * L1 * L2 * L2 + 5 * L1 * L4 +
                  10 * L2 * L3 + L5);
    for (int k = max_deriv + 1; k < 6; ++k) e.d[k] = 0;
    return e;
}


}  // namespace

TracyWidomEval airy_f2(double s, double tol, int max_deriv) {
    if (max_deriv < 0 || max_deriv > 5) throw PreconditionError("airy_f2: max_deriv must be in 0..5");
    if (!std::isfinite(s)) throw RangeError("airy_f2: s must be finite");
    TracyWidomEval e;
    e.s = s;
    e.max_deriv = max_deriv;
    e.method = "nystrom-gauss-legendre";

    if (s <= kAiryTailSwitch) {
        AiryTail t = airy_left_tail(s);
        e.method = "left-tail-expansion";
        e.err_estimate = t.err;
        e.within_tol = t.err <= tol;
        return finish_airy(e, s, t.log_F, t.U, t.q, t.qp, max_deriv);
    }
    const double s_fred = std::max(s, kAiryLeftSwitch);
    std::size_t m = 16;
    AiryLevel prev = airy_level(s_fred, m), cur;
    double err = HUGE_VAL, last_err = HUGE_VAL;
    bool done = false;
    for (int k = 0; k < 7 && !done; ++k) {
        m *= 2;
        cur = airy_level(s_fred, m);
        double df = std::abs(std::exp(cur.log_F) - std::exp(prev.log_F));
        err = std::max({df, rel_diff(cur.U, prev.U), rel_diff(cur.V, prev.V), rel_diff(cur.q, prev.q),
                        rel_diff(cur.p, prev.p)});
        double noise = 100 * kEps * std::max(1.0, cur.cond);
        done = err <= std::max(tol, noise) || (k >= 1 && m >= 128 && err > 0.25 * last_err);
        if (done && err > 0.25 * last_err) err = std::max(err, last_err);
        last_err = err;
        prev = cur;
    }
    e.nodes = m;
    e.err_estimate = err;
    e.within_tol = done && err <= tol;
    if (cur.sign <= 0) throw ConvergenceError("airy_f2: determinant not positive");

    double q = cur.q, q1 = cur.p - cur.q * cur.U, U = cur.U, logF = cur.log_F;
    if (s < s_fred) {
        // (log F2)' = U, U' = -q^2, q'' = s q + 2 q^3
        using State = std::array<double, 4>;
        State y{q, q1, U, logF};
        auto rhs = [](const State& x, State& dx, double t) {
            dx[0] = x[1];
            dx[1] = t * x[0] + 2 * x[0] * x[0] * x[0];
            dx[2] = -x[0] * x[0];
            dx[3] = x[2];
        };
        namespace ode = boost::numeric::odeint;
        ode::integrate_adaptive(ode::make_controlled<ode::runge_kutta_dopri5<State>>(1e-14, 1e-14), rhs, y, s_fred, s,
                                -1e-3);
        q = y[0], q1 = y[1], U = y[2], logF = y[3];
        e.method = "nystrom-gauss-legendre+painleve-ii";
        e.err_estimate = std::max(err, 1e-12 * std::abs(logF));
        e.within_tol = e.err_estimate <= std::max(tol, 1e-12 * std::abs(logF));
    }
    return finish_airy(e, s, logF, U, q, q1, max_deriv);
}

double f2_cdf(double s) { return airy_f2(s, 1e-12, 0).F2; }

F21Eval f21_conjectured_eval(double t, double tol) {
    TracyWidomEval e = airy_f2(t, tol, 5);
    const auto& d = e.d;
    double t2 = t * t;
    F21Eval r;
    r.value = -0.1 * (6 * d[2] + t2 * d[1] / 6);
    r.d1 = -0.1 * (6 * d[3] + t / 3 * d[1] + t2 / 6 * d[2]);
    r.d2 = -0.1 * (6 * d[4] + d[1] / 3 + 2 * t / 3 * d[2] + t2 / 6 * d[3]);
    r.d3 = -0.1 * (6 * d[5] + d[2] + t * d[3] + t2 / 6 * d[4]);
    return r;
}

double f21_conjectured(double t) { return f21_conjectured_eval(t).value; }

}  // namespace lisdist

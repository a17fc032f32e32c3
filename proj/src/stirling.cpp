#include "lisdist/stirling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "lisdist/error.hpp"
#include "lisdist/series.hpp"
#include "lisdist/special.hpp"

namespace lisdist {

namespace {

KernelOptions kernel_for(double n, KernelOptions k) {
    if (k.tol <= 0) k.tol = n <= 1e6 ? 1e-12 : 1e-10;
    return k;
}

}  // namespace

AuxiliaryEval auxiliary(int l, double r, const KernelOptions& opt) {
    if (!(r > 0)) throw PreconditionError("auxiliary: r must be positive");
    HardEdgeEval e = hard_edge_eval(l, 4 * r, opt);
    AuxiliaryEval a;
    a.l = l;
    a.r = r;
    a.f_log = e.log_g + r;
    a.a = r - e.v;
    a.b = r - e.u;
    a.log_g = e.log_g;
    a.v = e.v;
    a.u = e.u;
    a.backend = e.backend;
    a.err_estimate = e.err_estimate;
    a.within_tol = e.within_tol;
    return a;
}

RadiusSolve solve_radius(int l, double n, const StirlingOptions& opt) {
    if (l < 1 || n < l) throw PreconditionError("solve_radius: 1 <= l <= n required");
    KernelOptions kopt = kernel_for(n, opt.kernel);
    const double target = opt.radius_tol * n;
    double x = std::log(std::max(n, (n / l) * (n / l) + n / 2));
    double lo = -HUGE_VAL, hi = HUGE_VAL;
    RadiusSolve out;
    for (int it = 1; it <= opt.max_iterations; ++it) {
        AuxiliaryEval a = auxiliary(l, std::exp(x), kopt);
        out.r = a.r;
        out.iterations = it;
        out.aux = a;
        double f = a.a - n;
        if (std::abs(f) <= target) return out;
        if (f < 0) lo = std::max(lo, x);
        else hi = std::min(hi, x);
        // d a / d log r = b
        double nx = x - f / std::max(a.b, 1e-300);
        if (!(nx > lo && nx < hi) || !std::isfinite(nx)) {
            if (std::isfinite(lo) && std::isfinite(hi)) nx = 0.5 * (lo + hi);
            else if (std::isfinite(lo)) nx = lo + 1;
            else nx = hi - 1;
        }
        x = nx;
    }
    throw ConvergenceError("solve_radius: no convergence for l=" + std::to_string(l) + " n=" + std::to_string(n) +
                           ", bracket log r in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

double log_tau_n(double n) {
    if (!(n >= 1)) throw PreconditionError("tau_n: n >= 1 required");
    if (n <= 100) return std::lgamma(n + 1) - 0.5 * std::log(2 * std::numbers::pi * n) - n * std::log(n) + n;
    return std::log(tau_n(n));
}

double tau_n(double n) {
    if (!(n >= 1)) throw PreconditionError("tau_n: n >= 1 required");
    if (n <= 100) return std::exp(log_tau_n(n));
    double y = 1 / n;
    return 1 + y * (1.0 / 12 + y * (1.0 / 288 + y * (-139.0 / 51840 + y * (-571.0 / 2488320 + y * 163879.0 / 209018880))));
}

StirlingResult stirling_cdf(double n, int l, const StirlingOptions& opt) {
    if (l < 1 || n < l) throw PreconditionError("stirling_cdf: 1 <= l <= n required");
    RadiusSolve rs = solve_radius(l, n, opt);
    const AuxiliaryEval& a = rs.aux;
    StirlingResult s;
    s.n = n;
    s.l = l;
    s.r = rs.r;
    s.log_g = a.log_g;
    s.v = a.v;
    s.u = a.u;
    s.h = s.v / n;
    s.log_tau = log_tau_n(n);
    s.backend = a.backend;
    s.err_estimate = a.err_estimate;
    // n! f(r) / (r^n sqrt(2 pi b)) with r = n (1 + d); reduces to the h form at a(r) = n
    double d = (a.r - n) / n;
    double log_bn = std::log1p((a.r - n - s.u) / n);
    s.log_cdf = s.log_tau + s.log_g + n * x_minus_log1p(d) - 0.5 * log_bn;
    s.cdf_approx = std::exp(std::min(0.0, s.log_cdf));
    s.err_flag = !a.within_tol || s.log_cdf > 0 || !std::isfinite(s.log_cdf);
    if (!std::isfinite(s.log_cdf)) s.cdf_approx = 0;
    return s;
}

double stirling_pdf(double n, int l, const StirlingOptions& opt) {
    if (l < 1) return 0;
    double hi = stirling_cdf(n, l, opt).cdf_approx;
    double lo = l >= 2 ? stirling_cdf(n, l - 1, opt).cdf_approx : 0.0;
    return std::max(0.0, hi - lo);
}

StirlingSweep stirling_sweep(double n, int l_lo, int l_hi, const StirlingOptions& opt, int threads) {
    if (l_lo < 1 || l_hi < l_lo || l_hi > n) throw PreconditionError("stirling_sweep: 1 <= l_lo <= l_hi <= n required");
    StirlingSweep sw;
    sw.n = n;
    const int first = std::max(1, l_lo - 1);
    const int count = l_hi - first + 1;
    std::vector<StirlingResult> all(count);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto work = [&] {
        for (int i; (i = next++) < count && !failed;) {
            try {
                all[i] = stirling_cdf(n, first + i, opt);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    };
    int nt = std::max(1, std::min(threads, count));
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    double prev = first < l_lo ? all[0].cdf_approx : 0.0;
    for (int i = first < l_lo ? 1 : 0; i < count; ++i) {
        const StirlingResult& r = all[i];
        if (r.l > 1 && i > 0 && r.cdf_approx < all[i - 1].cdf_approx) sw.monotonicity_violations.push_back(r.l);
        sw.pdf.push_back(std::max(0.0, r.cdf_approx - prev));
        prev = r.cdf_approx;
        sw.rows.push_back(r);
    }
    return sw;
}

double stirling_count_log10(double n, int l, const StirlingOptions& opt) {
    StirlingResult s = stirling_cdf(n, l, opt);
    return (std::lgamma(n + 1) + s.log_cdf) / std::numbers::ln10;
}

double regev_log10(double n, int l) {
    if (l < 1 || n < 1) throw PreconditionError("regev: n, l >= 1 required");
    double ll = l;
    double lg = log_barnes_g1p(ll) + (2 * n + ll * ll / 2) * std::log(ll) -
                (ll - 1) / 2 * std::log(2 * std::numbers::pi) - (ll * ll - 1) / 2 * std::log(2 * n);
    return lg / std::numbers::ln10;
}

double regev_corrected_log10(double n, int l) {
    double l4 = std::pow(static_cast<double>(l), 4);
    return regev_log10(n, l) - l4 / (16 * n) / std::numbers::ln10;
}

BoltzmannProfile boltzmann_profile(int l, double r, double width_sd) {
    if (!(r > 0)) throw PreconditionError("boltzmann_profile: r must be positive");
    AuxiliaryEval a = auxiliary(l, r);
    BoltzmannProfile p;
    p.l = l;
    p.r = r;
    p.mean = a.a;
    p.variance = a.b;
    double sd = std::sqrt(a.b);
    int k0 = std::max(0, static_cast<int>(std::floor(a.a - width_sd * sd)));
    int k1 = static_cast<int>(std::ceil(a.a + width_sd * sd));
    auto ls = log_generating_series(l, k1 + 1);
    double logr = std::log(r);
    for (int k = k0; k <= k1; ++k) {
        BoltzmannPoint pt;
        pt.k = k;
        pt.probability = std::exp(ls->log_c[k] + k * logr - r - a.log_g);
        double z = (k - a.a) / sd;
        pt.normal = std::exp(-0.5 * z * z) / (sd * std::sqrt(2 * std::numbers::pi));
        p.total_variation += 0.5 * std::abs(pt.probability - pt.normal);
        p.points.push_back(pt);
    }
    return p;
}

}  // namespace lisdist

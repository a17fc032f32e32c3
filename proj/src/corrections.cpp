#include "lisdist/corrections.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <json.hpp>

#include "lisdist/error.hpp"
#include "lisdist/kernel.hpp"

namespace lisdist {

namespace {

using Mp = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                         boost::multiprecision::et_off>;
using MpMatrix = Eigen::Matrix<Mp, Eigen::Dynamic, Eigen::Dynamic>;
using MpVector = Eigen::Matrix<Mp, Eigen::Dynamic, 1>;

class PrecisionScope {
public:
    explicit PrecisionScope(int digits) : saved_(Mp::default_precision()) { Mp::default_precision(digits); }
    ~PrecisionScope() { Mp::default_precision(saved_); }

private:
    unsigned saved_;
};

Mp to_mp(const mpq_class& q) {
    Mp x;
    mpfr_set_q(x.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return x;
}

template <class Fn>
void parallel_for(int count, int threads, Fn fn) {
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr failure;
    auto work = [&] {
        for (int i; (i = next++) < count && !failed;) {
            try {
                fn(i);
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
}

// QR least squares with columns scaled to unit max norm. Returns the
// unscaled solution; cond gets |R_00| / |R_kk|.
MpVector solve_least_squares(MpMatrix A, const MpVector& y, int digits, double& cond) {
    const Eigen::Index k = A.cols();
    std::vector<Mp> scale(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        Mp s = 0;
        for (Eigen::Index i = 0; i < A.rows(); ++i) s = std::max(s, Mp(abs(A(i, j))));
        if (s == 0) throw PrecisionError("least squares: zero column");
        scale[j] = s;
        A.col(j) /= s;
    }
    Eigen::ColPivHouseholderQR<MpMatrix> qr(A);
    MpMatrix R = qr.matrixR().template triangularView<Eigen::Upper>();
    Mp r0 = abs(R(0, 0)), rk = abs(R(k - 1, k - 1));
    if (rk == 0 || r0 / rk > pow(Mp(10), digits - 10))
        throw PrecisionError("least squares: ill-conditioned at " + std::to_string(digits) +
                             " digits (degree too high for the data)");
    cond = static_cast<double>(r0 / rk);
    MpVector c = qr.solve(y);
    for (Eigen::Index j = 0; j < k; ++j) c(j) /= scale[j];
    return c;
}

double airy_deriv(double t, int k) { return airy_f2(t, 1e-13, k).d[k]; }

}  // namespace

const char* to_string(Observable o) { return o == Observable::cdf ? "cdf" : "pdf"; }

const char* to_string(ResidualSource s) { return s == ResidualSource::exact ? "exact" : "stirling"; }

const char* to_string(MomentIntegrand m) {
    switch (m) {
        case MomentIntegrand::f2_density: return "f2_density";
        case MomentIntegrand::f2_third: return "f2_third";
        case MomentIntegrand::f21_density: return "f21_density";
        case MomentIntegrand::g1: return "g1";
    }
    return "?";
}

const char* to_string(MomentKind k) { return k == MomentKind::mean ? "mean" : "variance"; }

double CorrectionFit::eval(double t, int k, bool* outside) const {
    if (k < 0 || k > 3) throw PreconditionError("CorrectionFit::eval: derivative order must be in 0..3");
    if (outside) *outside = !contains(t);
    std::vector<double> c = coefficients;
    const double dx = 2 / (t_max - t_min);
    for (int d = 0; d < k; ++d) {
        const int m = static_cast<int>(c.size()) - 1;
        if (m <= 0) return 0;
        std::vector<double> b(m + 1, 0.0);
        for (int j = m - 1; j >= 0; --j) b[j] = (j + 2 <= m ? b[j + 2] : 0.0) + 2 * (j + 1) * c[j + 1];
        b[0] /= 2;
        b.pop_back();
        for (double& x : b) x *= dx;
        c = std::move(b);
    }
    const double x = (2 * t - t_min - t_max) / (t_max - t_min);
    double b1 = 0, b2 = 0;
    for (int j = static_cast<int>(c.size()) - 1; j >= 1; --j) {
        double b0 = 2 * x * b1 - b2 + c[j];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + c[0];
}

CorrectionFit fit_correction(const std::vector<FitPoint>& points, int degree, double t_min, double t_max,
                             int digits) {
    if (degree < 0) throw PreconditionError("fit_correction: degree must be >= 0");
    if (!(t_max > t_min)) throw PreconditionError("fit_correction: empty interval");
    std::vector<FitPoint> pts;
    for (const auto& p : points)
        if (p.t >= t_min && p.t <= t_max) pts.push_back(p);
    if (static_cast<int>(pts.size()) < degree + 1)
        throw PreconditionError("fit_correction: " + std::to_string(pts.size()) + " points in the interval, degree " +
                                std::to_string(degree) + " needs at least " + std::to_string(degree + 1));
    PrecisionScope scope(digits);
    const Eigen::Index m = static_cast<Eigen::Index>(pts.size());
    MpMatrix A(m, degree + 1);
    MpVector y(m);
    const Mp a = t_min, b = t_max;
    for (Eigen::Index i = 0; i < m; ++i) {
        Mp x = (2 * Mp(pts[i].t) - a - b) / (b - a);
        A(i, 0) = 1;
        if (degree >= 1) A(i, 1) = x;
        for (int j = 2; j <= degree; ++j) A(i, j) = 2 * x * A(i, j - 1) - A(i, j - 2);
        y(i) = pts[i].value;
    }
    CorrectionFit f;
    f.degree = degree;
    f.t_min = t_min;
    f.t_max = t_max;
    f.points = pts.size();
    MpVector c = solve_least_squares(A, y, digits, f.condition);
    for (int j = 0; j <= degree; ++j) f.coefficients.push_back(static_cast<double>(c(j)));
    double ss = 0;
    for (const auto& p : pts) {
        double r = std::abs(f.eval(p.t) - p.value);
        ss += r * r;
        f.max_residual = std::max(f.max_residual, r);
    }
    f.rms_residual = std::sqrt(ss / pts.size());
    return f;
}

std::string correction_fit_to_json(const CorrectionFit& f) {
    nlohmann::ordered_json j;
    j["basis"] = "chebyshev";
    j["degree"] = f.degree;
    j["t_min"] = f.t_min;
    j["t_max"] = f.t_max;
    j["coefficients"] = f.coefficients;
    j["points"] = f.points;
    j["rms_residual"] = f.rms_residual;
    j["max_residual"] = f.max_residual;
    j["condition"] = f.condition;
    return j.dump();
}

CorrectionFit correction_fit_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw PreconditionError(std::string("correction fit: bad JSON: ") + e.what());
    }
    if (j.value("basis", "") != "chebyshev") throw PreconditionError("correction fit: basis must be chebyshev");
    CorrectionFit f;
    try {
        f.degree = j.at("degree").get<int>();
        f.t_min = j.at("t_min").get<double>();
        f.t_max = j.at("t_max").get<double>();
        f.coefficients = j.at("coefficients").get<std::vector<double>>();
        f.points = j.value("points", std::size_t{0});
        f.rms_residual = j.value("rms_residual", 0.0);
        f.max_residual = j.value("max_residual", 0.0);
        f.condition = j.value("condition", 0.0);
    } catch (const nlohmann::json::exception& e) {
        throw PreconditionError(std::string("correction fit: ") + e.what());
    }
    if (static_cast<int>(f.coefficients.size()) != f.degree + 1 || !(f.t_max > f.t_min))
        throw PreconditionError("correction fit: inconsistent degree or interval");
    return f;
}

std::array<double, 4> CorrectionTerm::eval(double t) const {
    switch (kind) {
        case Kind::none: throw PreconditionError("correction term: no F2,j supplied");
        case Kind::conjectured: {
            F21Eval e = f21_conjectured_eval(t);
            return {e.value, e.d1, e.d2, e.d3};
        }
        case Kind::fit: return {fit.eval(t, 0), fit.eval(t, 1), fit.eval(t, 2), fit.eval(t, 3)};
    }
    return {};
}

double pdf_expansion(double n, int l, int num_terms, const CorrectionTerm& f21, const CorrectionTerm& f22) {
    if (num_terms < 1 || num_terms > 3) throw PreconditionError("pdf_expansion: num_terms must be in 1..3");
    if (num_terms >= 2 && !f21.present()) throw PreconditionError("pdf_expansion: F2,1 required for 2 terms");
    if (num_terms >= 3 && !f22.present()) throw PreconditionError("pdf_expansion: F2,2 required for 3 terms");
    const double h = std::pow(n, -1.0 / 6);
    const double th = (l - 0.5 - 2 * std::sqrt(n)) * h;
    TracyWidomEval e = airy_f2(th, 1e-13, num_terms >= 3 ? 5 : num_terms >= 2 ? 3 : 1);
    double p = h * e.d[1];
    if (num_terms >= 2) {
        auto g = f21.eval(th);
        p += h * h * h * (g[1] + e.d[3] / 24);
        if (num_terms >= 3) {
            auto g2 = f22.eval(th);
            p += std::pow(h, 5) * (g2[1] + g[3] / 24 + e.d[5] / 1920);
        }
    }
    return p;
}

ScaledResidualSet scaled_residuals(double n, int order, const ResidualOptions& opt) {
    if (order < 0 || order > 2) throw PreconditionError("scaled_residuals: order must be 0, 1 or 2");
    if (!(n >= 1)) throw PreconditionError("scaled_residuals: n >= 1 required");
    if (order >= 1 && !opt.f21.present()) throw PreconditionError("scaled_residuals: order >= 1 needs an F2,1 fit");
    if (order >= 2 && !opt.f22.present()) throw PreconditionError("scaled_residuals: order 2 needs an F2,2 fit");
    const bool pdf = opt.observable == Observable::pdf;
    if (opt.source == ResidualSource::exact) {
        if (!opt.table) throw PreconditionError("scaled_residuals: the exact source needs a table");
        if (n != std::floor(n) || !opt.table->has_row(static_cast<int>(n)))
            throw PreconditionError("scaled_residuals: table has no row n=" + std::to_string(n));
    }
    double t_min = opt.t_min, t_max = opt.t_max;
    if (opt.source == ResidualSource::stirling) {
        if (!std::isfinite(t_min)) t_min = -12;
        if (!std::isfinite(t_max)) t_max = 14;
    }
    const double c = 2 * std::sqrt(n), h = std::pow(n, -1.0 / 6), shift = pdf ? 0.5 : 0.0;
    const double nmax = std::min(n, 2147483000.0);
    double lo = std::isfinite(t_min) ? std::ceil(t_min / h + c + shift) : 1;
    double hi = std::isfinite(t_max) ? std::floor(t_max / h + c + shift) : nmax;
    const int l_lo = static_cast<int>(std::clamp(lo, 1.0, nmax));
    const int l_hi = static_cast<int>(std::clamp(hi, 1.0, nmax));

    ScaledResidualSet set;
    set.n = n;
    set.order = order;
    set.observable = opt.observable;
    set.source = opt.source;
    set.exponent = pdf ? 0.5 + order / 3.0 : (order + 1) / 3.0;
    if (lo > hi || l_lo > l_hi) return set;
    const int count = l_hi - l_lo + 1;

    std::vector<double> data(count);
    if (opt.source == ResidualSource::exact) {
        const int ni = static_cast<int>(n);
        mpq_class acc = opt.table->cdf(ni, l_lo - 1);
        for (int i = 0; i < count; ++i) {
            mpq_class p = opt.table->pdf(ni, l_lo + i);
            acc += p;
            data[i] = pdf ? p.get_d() : acc.get_d();
        }
    } else {
        StirlingSweep sw = stirling_sweep(n, l_lo, l_hi, opt.stirling, opt.threads);
        for (int i = 0; i < count; ++i) data[i] = pdf ? sw.pdf[i] : sw.rows[i].cdf_approx;
    }

    set.points.resize(count);
    parallel_for(count, opt.threads, [&](int i) {
        int l = l_lo + i;
        ResidualPoint& pt = set.points[i];
        pt.l = l;
        pt.t = (l - shift - c) * h;
        double model;
        if (pdf) {
            model = pdf_expansion(n, l, order + 1, opt.f21, opt.f22);
        } else {
            model = airy_f2(pt.t, 1e-13, 0).F2;
            if (order >= 1) model += h * h * opt.f21.eval(pt.t)[0];
            if (order >= 2) model += std::pow(h, 4) * opt.f22.eval(pt.t)[0];
        }
        pt.raw = data[i] - model;
        pt.value = std::pow(n, set.exponent) * pt.raw;
    });
    for (const auto& p : set.points) set.max_raw = std::max(set.max_raw, std::abs(p.raw));
    return set;
}

std::vector<FitPoint> fit_points(const ScaledResidualSet& set) {
    std::vector<FitPoint> out;
    for (const auto& p : set.points) out.push_back({p.t, p.value});
    return out;
}

std::vector<FitPoint> fit_points(const std::vector<ScaledResidualSet>& sets, double t_min, double t_max) {
    std::vector<FitPoint> out;
    for (const auto& s : sets)
        for (const auto& p : s.points)
            if (p.t >= t_min && p.t <= t_max) out.push_back({p.t, p.value});
    std::stable_sort(out.begin(), out.end(), [](const FitPoint& a, const FitPoint& b) { return a.t < b.t; });
    return out;
}

namespace {

double integrand(MomentIntegrand which, double t) {
    switch (which) {
        case MomentIntegrand::f2_density: return airy_deriv(t, 1);
        case MomentIntegrand::f2_third: return airy_deriv(t, 3);
        case MomentIntegrand::f21_density: return f21_conjectured_eval(t, 1e-13).d1;
        case MomentIntegrand::g1: return f21_conjectured_eval(t, 1e-13).d1 + airy_deriv(t, 3) / 24;
    }
    return 0;
}

}  // namespace

MomentValue moment_integral(MomentIntegrand which, int power, const MomentOptions& opt) {
    if (power < 0) throw PreconditionError("moment_integral: power must be >= 0");
    MomentValue mv;
    mv.integrand = which;
    mv.power = power;
    mv.method = opt.method;
    mv.n = opt.n;
    auto f = [&](double t) { return std::pow(t, power) * integrand(which, t); };
    if (opt.method == MomentMethod::trapezoid) {
        if (opt.n < 1) throw PreconditionError("moment_integral: trapezoid needs n >= 1");
        const double h = std::pow(static_cast<double>(opt.n), -1.0 / 6), c = 2 * std::sqrt(static_cast<double>(opt.n));
        double sum = 0;
        for (int l = 1; l <= opt.n; ++l) {
            double t = (l - 0.5 - c) * h;
            // G is below double range outside
            if (t < -16 || t > 24) continue;
            sum += f(t);
        }
        mv.value = h * sum;
        mv.err_estimate = 1e-13 * opt.n * h;
        return mv;
    }
    double err = 0;
    mv.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, opt.t_lo, opt.t_hi, 12, 1e-13, &err);
    mv.err_estimate = err;
    return mv;
}

MomentRow tracy_widom_moments(int n) {
    MomentOptions o;
    if (n > 0) {
        o.method = MomentMethod::trapezoid;
        o.n = n;
    }
    MomentRow r;
    r.n = n;
    r.mu1 = moment_integral(MomentIntegrand::f2_density, 1, o).value;
    r.mu2 = moment_integral(MomentIntegrand::f2_density, 2, o).value;
    r.variance = r.mu2 - r.mu1 * r.mu1;
    return r;
}

ExpansionConstants expansion_constants() {
    ExpansionConstants k;
    MomentRow r = tracy_widom_moments(0);
    k.mu0 = r.mu1;
    k.nu0 = r.variance;
    k.mu1 = moment_integral(MomentIntegrand::f21_density, 1).value;
    k.nu1 = moment_integral(MomentIntegrand::f21_density, 2).value + 1.0 / 12 - 2 * k.mu0 * k.mu1;
    return k;
}

MeanVarianceFit fit_mean_variance(const ExactDistributionTable& table, MomentKind kind, int n_min, int n_max,
                                  int num_terms, int digits) {
    if (num_terms == 0) num_terms = kind == MomentKind::mean ? 10 : 9;
    if (num_terms < 1) throw PreconditionError("fit_mean_variance: num_terms must be >= 1");
    if (n_min < 1 || n_max < n_min) throw PreconditionError("fit_mean_variance: 1 <= n_min <= n_max required");
    if (n_max - n_min + 1 < num_terms)
        throw PreconditionError("fit_mean_variance: window has fewer points than terms");
    for (int n = n_min; n <= n_max; ++n)
        if (!table.has_row(n)) throw PreconditionError("fit_mean_variance: table has no row n=" + std::to_string(n));
    PrecisionScope scope(digits);
    MeanVarianceFit fit;
    fit.kind = kind;
    fit.n_min = n_min;
    fit.n_max = n_max;
    fit.digits = digits;
    std::vector<Mp> ex;
    for (int k = 0; k < num_terms; ++k) {
        Mp e = kind == MomentKind::mean ? Mp(1 - 2 * k) / 6 : Mp(1 - k) / 3;
        ex.push_back(e);
        fit.exponents.push_back(static_cast<double>(e));
    }
    const Eigen::Index m = n_max - n_min + 1;
    MpMatrix A(m, num_terms);
    MpVector y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        int n = n_min + static_cast<int>(i);
        Mp nn = n;
        for (int k = 0; k < num_terms; ++k) A(i, k) = pow(nn, ex[k]);
        y(i) = kind == MomentKind::mean ? to_mp(table.mean(n)) - 2 * sqrt(nn) - Mp(1) / 2 : to_mp(table.variance(n));
    }
    MpVector c = solve_least_squares(A, y, digits, fit.condition);
    MpVector r = A * c - y;
    Mp ss = 0;
    for (Eigen::Index i = 0; i < m; ++i) ss += r(i) * r(i);
    fit.rms_residual = static_cast<double>(sqrt(ss / m));
    for (int k = 0; k < num_terms; ++k) {
        fit.coefficients.push_back(static_cast<double>(c(k)));
        fit.coefficient_text.push_back(c(k).str(25, std::ios_base::scientific));
    }
    return fit;
}

int matching_digits(double a, double b) {
    if (a == b) return 17;
    double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0) return 17;
    double d = -std::log10(std::abs(a - b) / scale);
    return std::clamp(static_cast<int>(std::floor(d)), 0, 17);
}

std::vector<int> matching_digits(const MeanVarianceFit& a, const MeanVarianceFit& b) {
    std::vector<int> out;
    std::size_t k = std::min(a.coefficients.size(), b.coefficients.size());
    for (std::size_t i = 0; i < k; ++i) out.push_back(matching_digits(a.coefficients[i], b.coefficients[i]));
    return out;
}

MeanVarianceStudy mean_variance_study(const ExactDistributionTable& table, MomentKind kind, int n_min1, int n_min2,
                                      int n_max, int num_terms, int digits, int max_terms) {
    auto run = [&](int k) {
        MeanVarianceStudy s;
        s.kind = kind;
        s.num_terms = k;
        s.first = fit_mean_variance(table, kind, n_min1, n_max, k, digits);
        s.second = fit_mean_variance(table, kind, n_min2, n_max, k, digits);
        s.matching = matching_digits(s.first, s.second);
        return s;
    };
    if (num_terms > 0) return run(num_terms);
    MeanVarianceStudy best;
    int best_score = -1;
    for (int k = 2; k <= max_terms; ++k) {
        MeanVarianceStudy s;
        try {
            s = run(k);
        } catch (const PrecisionError&) {
            break;
        }
        int score = 0;
        for (std::size_t i = 0; i < std::min<std::size_t>(3, s.matching.size()); ++i) score += s.matching[i];
        if (score > best_score) {
            best_score = score;
            best = std::move(s);
        }
    }
    if (best_score < 0) throw PrecisionError("mean_variance_study: no well-conditioned fit");
    return best;
}

ErrorScaling error_scaling(const ExactDistributionTable& table, const std::vector<int>& ns, ErrorReference ref,
                           const StirlingOptions& opt, int threads) {
    if (ns.size() < 2) throw PreconditionError("error_scaling: at least two n required");
    ErrorScaling es;
    es.reference = ref;
    for (int n : ns) {
        if (!table.has_row(n)) throw PreconditionError("error_scaling: table has no row n=" + std::to_string(n));
        std::vector<double> exact(n + 1);
        mpq_class acc = 0;
        for (int l = 1; l <= n; ++l) {
            acc += table.pdf(n, l);
            exact[l] = acc.get_d();
        }
        std::vector<double> approx(n + 1);
        if (ref == ErrorReference::stirling) {
            StirlingSweep sw = stirling_sweep(n, 1, n, opt, threads);
            for (int l = 1; l <= n; ++l) approx[l] = sw.rows[l - 1].cdf_approx;
        } else {
            const double c = 2 * std::sqrt(n), h = std::pow(n, -1.0 / 6);
            parallel_for(n, threads, [&](int i) { approx[i + 1] = airy_f2((i + 1 - c) * h, 1e-13, 0).F2; });
        }
        double err = 0;
        for (int l = 1; l <= n; ++l) err = std::max(err, std::abs(approx[l] - exact[l]));
        es.n.push_back(n);
        es.error.push_back(err);
    }
    // log err = log c - alpha log n
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(es.n.size());
    for (std::size_t i = 0; i < es.n.size(); ++i) {
        double x = std::log(es.n[i]), y = std::log(es.error[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    es.alpha = -slope;
    es.c = std::exp((sy - slope * sx) / k);
    return es;
}

}  // namespace lisdist

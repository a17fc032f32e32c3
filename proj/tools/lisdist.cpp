#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lisdist/cache.hpp"
#include "lisdist/corrections.hpp"
#include "lisdist/error.hpp"
#include "lisdist/format.hpp"
#include "lisdist/kernel.hpp"
#include "lisdist/oracle.hpp"
#include "lisdist/series.hpp"
#include "lisdist/stirling.hpp"
#include "lisdist/version.hpp"
#include "output.hpp"

namespace lisdist::cli {

struct RunConfig {
    std::string subcommand;
    double tol = 0;               // 0: module default
    int precision = 60;
    bool precision_set = false;
    Format format = Format::csv;
    std::string cache_dir;        // empty: $LISDIST_CACHE_DIR
    int threads = 1;
    bool paper_scale = false;
    bool fixed15 = false;
};

namespace {

constexpr double kDeskMaxStirlingN = 1e12;
constexpr double kDeskMaxResidualN = 1e8;
constexpr int kPaperMaxTableN = 1000;

double parse_real(const std::string& s, const char* what) {
    char* end = nullptr;
    double x = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0' || !std::isfinite(x))
        throw PreconditionError(std::string(what) + ": not a number: '" + s + "'");
    return x;
}

long long parse_integer(const std::string& s, const char* what) {
    double x = parse_real(s, what);
    if (x != std::floor(x) || std::abs(x) > 9e15) throw PreconditionError(std::string(what) + ": not an integer: '" + s + "'");
    return static_cast<long long>(x);
}

// "a..b", "a", or "auto" (2 sqrt(n) +- 10 n^(1/6))
std::pair<int, int> parse_l_range(const std::string& s, double n) {
    long long lo, hi;
    if (s == "auto") {
        double c = 2 * std::sqrt(n), w = 10 * std::pow(n, 1.0 / 6);
        lo = static_cast<long long>(std::ceil(c - w));
        hi = static_cast<long long>(std::floor(c + w));
        lo = std::max(1LL, lo);
        hi = std::min(static_cast<long long>(n), hi);
    } else if (auto p = s.find(".."); p != std::string::npos) {
        lo = parse_integer(s.substr(0, p), "l range");
        hi = parse_integer(s.substr(p + 2), "l range");
    } else {
        lo = hi = parse_integer(s, "l");
    }
    if (lo < 1 || hi < lo || hi > n) throw PreconditionError("l range must satisfy 1 <= l <= l' <= n");
    if (hi > 2147483000LL) throw SizeError("l range beyond int range");
    return {static_cast<int>(lo), static_cast<int>(hi)};
}

void require_paper_scale(const RunConfig& cfg, bool beyond, const std::string& what) {
    if (beyond && !cfg.paper_scale) throw SizeError(what + " is beyond the desk-scale limits; pass --paper-scale");
}

StirlingOptions stirling_options(const RunConfig& cfg) {
    StirlingOptions o;
    o.kernel.tol = cfg.tol;
    return o;
}

double kernel_tol_for(const RunConfig& cfg, double n) {
    if (cfg.tol > 0) return cfg.tol;
    return n <= 1e6 ? 1e-12 : 1e-10;
}

std::string digits_text(const mpq_class& q, const RunConfig& cfg) { return format_rational(q, cfg.fixed15 ? 15 : 17); }

ExactDistributionTable load_table(int N, const RunConfig& cfg) {
    require_paper_scale(cfg, N > kRationalTableMaxN, "exact table N=" + std::to_string(N));
    if (N > kPaperMaxTableN) throw SizeError("exact table: N > " + std::to_string(kPaperMaxTableN));
    ExactTableOptions o;
    o.threads = cfg.threads;
    if (cfg.precision_set) o.precision_digits = cfg.precision;
    return exact_distribution_table_cached(N, o, DiskCache(cfg.cache_dir));
}

CorrectionTerm read_fit_term(const std::string& spec, const char* key) {
    if (spec == "conjectured") return CorrectionTerm::conjectured();
    std::ifstream in(spec);
    if (!in) throw PreconditionError(std::string("cannot read fit file ") + spec);
    std::stringstream ss;
    ss << in.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(ss.str());
    } catch (const nlohmann::json::exception& e) {
        throw PreconditionError(spec + ": bad JSON: " + e.what());
    }
    if (j.contains(key)) j = j[key];
    return CorrectionTerm::fitted(correction_fit_from_json(j.dump()));
}

void emit(const Output& out) { std::cout << out.render(); }

// ---- subcommands ----

int cmd_exact_table(const RunConfig& cfg, int N, std::optional<int> only) {
    if (N < 1) throw PreconditionError("exact-table: N >= 1 required");
    ExactDistributionTable t = load_table(N, cfg);
    Output out("exact-table", {"n", "l", "numerator", "denominator", "pdf", "cdf"}, cfg.format, cfg.fixed15);
    for (int n : t.row_indices()) {
        if (only && n != *only) continue;
        mpq_class acc = 0;
        for (int l = 1; l <= n; ++l) {
            mpq_class p = t.pdf(n, l);
            acc += p;
            out.add({static_cast<long long>(n), static_cast<long long>(l), p.get_num().get_str(),
                     p.get_den().get_str(), digits_text(p, cfg), digits_text(acc, cfg)},
                    to_string(t.source()), 0);
        }
    }
    emit(out);
    return 0;
}

int cmd_cdf(const RunConfig& cfg, const std::string& n_text, const std::string& range, bool with_exact) {
    double n = parse_real(n_text, "n");
    if (n < 1) throw PreconditionError("cdf: n >= 1 required");
    require_paper_scale(cfg, n > kDeskMaxStirlingN, "n");
    auto [lo, hi] = parse_l_range(range, n);
    std::optional<ExactDistributionTable> table;
    if (with_exact) {
        if (n != std::floor(n)) throw PreconditionError("cdf --exact: n must be an integer");
        table = load_table(static_cast<int>(n), cfg);
    }
    StirlingSweep sw = stirling_sweep(n, lo, hi, stirling_options(cfg), cfg.threads);
    Output out("cdf", {"n", "l", "cdf", "log_cdf", "r", "h", "err_estimate", "err_flag", "exact", "rel_error"},
               cfg.format, cfg.fixed15);
    for (const auto& r : sw.rows) {
        Cell exact = Null{}, rel = Null{};
        if (table) {
            mpq_class q = table->cdf(static_cast<int>(n), r.l);
            exact = digits_text(q, cfg);
            double e = q.get_d();
            rel = e > 0 ? std::abs(r.cdf_approx - e) / e : HUGE_VAL;
        }
        out.add({n, static_cast<long long>(r.l), r.cdf_approx, r.log_cdf, r.r, r.h, r.err_estimate, r.err_flag, exact,
                 rel},
                to_string(r.backend), kernel_tol_for(cfg, n));
    }
    emit(out);
    return 0;
}

int cmd_pdf(const RunConfig& cfg, const std::string& n_text, const std::string& range) {
    double n = parse_real(n_text, "n");
    if (n < 1) throw PreconditionError("pdf: n >= 1 required");
    require_paper_scale(cfg, n > kDeskMaxStirlingN, "n");
    auto [lo, hi] = parse_l_range(range, n);
    StirlingSweep sw = stirling_sweep(n, lo, hi, stirling_options(cfg), cfg.threads);
    Output out("pdf", {"n", "l", "t_hat", "pdf", "cdf", "err_flag"}, cfg.format, cfg.fixed15);
    const double c = 2 * std::sqrt(n), h = std::pow(n, -1.0 / 6);
    for (std::size_t i = 0; i < sw.rows.size(); ++i) {
        const auto& r = sw.rows[i];
        out.add({n, static_cast<long long>(r.l), (r.l - 0.5 - c) * h, sw.pdf[i], r.cdf_approx, r.err_flag},
                to_string(r.backend), kernel_tol_for(cfg, n));
    }
    emit(out);
    return 0;
}

int cmd_montecarlo(const RunConfig& cfg, long long n, long long trials, long long seed) {
    if (n < 1 || trials < 1 || seed < 0) throw PreconditionError("montecarlo: n >= 1, T >= 1, seed >= 0 required");
    require_paper_scale(cfg, n > 1000 || trials > 100000000LL, "montecarlo size");
    MonteCarloResult mc = monte_carlo_cdf(static_cast<int>(n), static_cast<std::uint64_t>(trials),
                                          static_cast<std::uint64_t>(seed), cfg.threads);
    std::optional<ExactDistributionTable> exact;
    if (n <= kHookLengthMaxN) exact = hook_length_distribution(static_cast<int>(n));
    Output out("montecarlo", {"n", "l", "trials", "seed", "count", "cdf", "std_error", "exact", "z"}, cfg.format,
               cfg.fixed15);
    for (int l = 1; l <= n; ++l) {
        Cell ex = Null{}, z = Null{};
        if (exact) {
            double e = exact->cdf(static_cast<int>(n), l).get_d();
            ex = e;
            double se = mc.std_error(l);
            z = se > 0 ? (mc.cdf(l) - e) / se : 0.0;
        }
        out.add({n, static_cast<long long>(l), trials, seed, static_cast<long long>(mc.counts[l]), mc.cdf(l),
                 mc.std_error(l), ex, z},
                "mt19937_64+patience", 0);
    }
    emit(out);
    return 0;
}

int cmd_f2(const RunConfig& cfg, const std::vector<std::string>& values) {
    const double tol = cfg.tol > 0 ? cfg.tol : 1e-12;
    Output out("f2", {"s", "F2", "log_F2", "d1", "d2", "d3", "d4", "d5", "q", "qp", "err_estimate", "within_tol"},
               cfg.format, cfg.fixed15);
    for (const auto& v : values) {
        double s = parse_real(v, "s");
        TracyWidomEval e = airy_f2(s, tol, 5);
        out.add({s, e.F2, e.log_F2, e.d[1], e.d[2], e.d[3], e.d[4], e.d[5], e.q, e.qp, e.err_estimate, e.within_tol},
                e.method, tol);
    }
    emit(out);
    return 0;
}

int cmd_hard_edge(const RunConfig& cfg, const std::string& a_text, const std::vector<std::string>& s_values) {
    double alpha = parse_real(a_text, "alpha");
    if (alpha < 0) throw PreconditionError("hard-edge: alpha >= 0 required");
    KernelOptions ko;
    if (cfg.tol > 0) ko.tol = cfg.tol;
    Output out("hard-edge", {"alpha", "s", "g", "log_g", "v", "u", "err_estimate", "nodes", "within_tol"}, cfg.format,
               cfg.fixed15);
    for (const auto& sv : s_values) {
        double s = parse_real(sv, "s");
        HardEdgeEval e = hard_edge_eval(alpha, s, ko);
        out.add({alpha, s, e.g, e.log_g, e.v, e.u, e.err_estimate, static_cast<long long>(e.nodes), e.within_tol},
                to_string(e.backend), ko.tol);
    }
    emit(out);
    return 0;
}

struct ResidualArgs {
    std::string observable = "cdf";
    std::string source;
    double t_min = -HUGE_VAL;
    double t_max = HUGE_VAL;
    std::string f21 = "conjectured";
    std::string f22;
};

int cmd_residuals(const RunConfig& cfg, const std::string& n_text, int order, const ResidualArgs& a) {
    double n = parse_real(n_text, "n");
    ResidualOptions ro;
    if (a.observable == "cdf") ro.observable = Observable::cdf;
    else if (a.observable == "pdf") ro.observable = Observable::pdf;
    else throw PreconditionError("residuals: --observable must be cdf or pdf");
    std::string source = a.source;
    if (source.empty()) source = (n == std::floor(n) && n <= kRationalTableMaxN) ? "exact" : "stirling";
    std::optional<ExactDistributionTable> table;
    if (source == "exact") {
        if (n != std::floor(n) || n < 1) throw PreconditionError("residuals: the exact source needs integer n");
        table = load_table(static_cast<int>(n), cfg);
        ro.source = ResidualSource::exact;
        ro.table = &*table;
    } else if (source == "stirling") {
        require_paper_scale(cfg, n > kDeskMaxResidualN, "residuals n");
        ro.source = ResidualSource::stirling;
    } else {
        throw PreconditionError("residuals: --source must be exact or stirling");
    }
    ro.t_min = a.t_min;
    ro.t_max = a.t_max;
    if (order >= 1) ro.f21 = read_fit_term(a.f21, "f21");
    if (order >= 2) {
        if (a.f22.empty()) throw PreconditionError("residuals: order 2 needs --f22 FILE from fit-corrections");
        ro.f22 = read_fit_term(a.f22, "f22");
    }
    ro.stirling = stirling_options(cfg);
    ro.threads = cfg.threads;
    ScaledResidualSet set = scaled_residuals(n, order, ro);
    Output out("residuals", {"n", "order", "observable", "source", "exponent", "l", "t", "value", "raw"}, cfg.format,
               cfg.fixed15);
    std::string backend = source == "exact" ? std::string(to_string(table->source())) : "stirling";
    double tol = source == "exact" ? 0 : kernel_tol_for(cfg, n);
    for (const auto& p : set.points)
        out.add({n, static_cast<long long>(order), std::string(to_string(set.observable)), source, set.exponent,
                 static_cast<long long>(p.l), p.t, p.value, p.raw},
                backend, tol);
    emit(out);
    return 0;
}

struct FitArgs {
    double n21 = 0;
    int deg21 = 0;
    std::vector<int> n22;
    int deg22 = 0;
    std::string out_file;
};

double max_deviation_conjectured(const CorrectionFit& f, const std::vector<FitPoint>& pts) {
    double dev = 0;
    if (pts.empty()) return 0;
    double lo = pts.front().t, hi = pts.back().t, step = (hi - lo) / 2000;
    for (int i = 0; i <= 2000; ++i) {
        double t = lo + i * step;
        dev = std::max(dev, std::abs(f.eval(t) - f21_conjectured(t)));
    }
    return dev;
}

int cmd_fit_corrections(const RunConfig& cfg, FitArgs a) {
    if (a.n21 <= 0) a.n21 = cfg.paper_scale ? 1e10 : 1e6;
    if (a.deg21 <= 0) a.deg21 = cfg.paper_scale ? 64 : 40;
    if (a.n22.empty()) a.n22 = cfg.paper_scale ? std::vector<int>{250, 500, 1000} : std::vector<int>{100, 150, 200};
    if (a.deg22 <= 0) a.deg22 = cfg.paper_scale ? 48 : 16;
    require_paper_scale(cfg, a.n21 > kDeskMaxResidualN, "fit-corrections n");

    ResidualOptions r1;
    r1.source = ResidualSource::stirling;
    r1.t_min = -8;
    r1.t_max = 10;
    r1.stirling = stirling_options(cfg);
    r1.threads = cfg.threads;
    ScaledResidualSet s1 = scaled_residuals(a.n21, 0, r1);
    std::vector<FitPoint> p1 = fit_points(s1);
    CorrectionFit f21 = fit_correction(p1, a.deg21, -8, 10, cfg.precision);
    double dev21 = max_deviation_conjectured(f21, p1);

    int nmax = *std::max_element(a.n22.begin(), a.n22.end());
    ExactDistributionTable table = load_table(nmax, cfg);
    std::vector<ScaledResidualSet> sets;
    for (int n : a.n22) {
        ResidualOptions r2;
        r2.table = &table;
        r2.t_min = -7.5;
        r2.t_max = 9.5;
        r2.f21 = CorrectionTerm::fitted(f21);
        r2.threads = cfg.threads;
        sets.push_back(scaled_residuals(n, 1, r2));
    }
    std::vector<FitPoint> p2 = fit_points(sets, -7.5, 9.5);
    CorrectionFit f22 = fit_correction(p2, a.deg22, -7.5, 9.5, cfg.precision);

    if (!a.out_file.empty()) {
        std::ofstream o(a.out_file);
        if (!o) throw PreconditionError("cannot write " + a.out_file);
        o << "{\"f21\":" << correction_fit_to_json(f21) << ",\n\"f22\":" << correction_fit_to_json(f22) << "}\n";
    }
    Output out("fit-corrections",
               {"fit", "source_n", "degree", "t_min", "t_max", "points", "rms_residual", "max_residual", "condition",
                "deviation_vs_conjectured", "k", "coefficient"},
               cfg.format, cfg.fixed15);
    std::string n22s;
    for (int n : a.n22) n22s += (n22s.empty() ? "" : ";") + std::to_string(n);
    auto rows = [&](const char* name, const Cell& src, const CorrectionFit& f, Cell dev, const std::string& backend,
                    double tol) {
        for (int k = 0; k <= f.degree; ++k)
            out.add({std::string(name), src, static_cast<long long>(f.degree), f.t_min, f.t_max,
                     static_cast<long long>(f.points), f.rms_residual, f.max_residual, f.condition, dev,
                     static_cast<long long>(k), f.coefficients[k]},
                    backend, tol);
    };
    rows("f21", a.n21, f21, dev21, "stirling+chebyshev_qr", kernel_tol_for(cfg, a.n21));
    rows("f22", n22s, f22, Null{}, std::string(to_string(table.source())) + "+chebyshev_qr", 0);
    emit(out);
    return 0;
}

int cmd_moments(const RunConfig& cfg, std::vector<int> ns) {
    if (ns.empty()) ns = {6, 12, 24, 48};
    Output out("moments", {"name", "n", "method", "value", "err_estimate"}, cfg.format, cfg.fixed15);
    const double tol = 1e-13;
    for (int n : ns) {
        if (n < 1) throw PreconditionError("moments: n >= 1 required");
        MomentRow r = tracy_widom_moments(n);
        out.add({std::string("mu_0_1"), static_cast<long long>(n), std::string("trapezoid"), r.mu1, Null{}},
                "f2_density", tol);
        out.add({std::string("mu_0_2"), static_cast<long long>(n), std::string("trapezoid"), r.mu2, Null{}},
                "f2_density", tol);
        out.add({std::string("variance"), static_cast<long long>(n), std::string("trapezoid"), r.variance, Null{}},
                "f2_density", tol);
    }
    MomentValue m1 = moment_integral(MomentIntegrand::f2_density, 1);
    MomentValue m2 = moment_integral(MomentIntegrand::f2_density, 2);
    ExpansionConstants k = expansion_constants();
    out.add({std::string("mu_0_1"), Null{}, std::string("quadrature"), m1.value, m1.err_estimate}, "f2_density", tol);
    out.add({std::string("mu_0_2"), Null{}, std::string("quadrature"), m2.value, m2.err_estimate}, "f2_density", tol);
    out.add({std::string("mu0"), Null{}, std::string("quadrature"), k.mu0, Null{}}, "f2_density", tol);
    out.add({std::string("nu0"), Null{}, std::string("quadrature"), k.nu0, Null{}}, "f2_density", tol);
    out.add({std::string("mu1"), Null{}, std::string("quadrature"), k.mu1, Null{}}, "f21_conjectured", tol);
    out.add({std::string("nu1"), Null{}, std::string("quadrature"), k.nu1, Null{}}, "f21_conjectured", tol);
    emit(out);
    return 0;
}

struct MeanVarArgs {
    int nmin1 = 0;
    int nmin2 = 0;
    int nmax = 0;
    int terms = 0;
};

int cmd_fit_mean_var(const RunConfig& cfg, MeanVarArgs a) {
    if (a.nmax <= 0) a.nmax = cfg.paper_scale ? 1000 : 200;
    if (a.nmin1 <= 0) a.nmin1 = cfg.paper_scale ? 500 : 100;
    if (a.nmin2 <= 0) a.nmin2 = cfg.paper_scale ? 600 : 120;
    ExactDistributionTable table = load_table(a.nmax, cfg);
    Output out("fit-mean-var",
               {"kind", "num_terms", "k", "exponent", "c_first", "c_second", "matching_digits", "window_first",
                "window_second", "rms_first", "condition_first"},
               cfg.format, cfg.fixed15);
    for (MomentKind kind : {MomentKind::mean, MomentKind::variance}) {
        MeanVarianceStudy s = mean_variance_study(table, kind, a.nmin1, a.nmin2, a.nmax, a.terms, cfg.precision);
        std::string w1 = std::to_string(a.nmin1) + ".." + std::to_string(a.nmax);
        std::string w2 = std::to_string(a.nmin2) + ".." + std::to_string(a.nmax);
        for (int k = 0; k < s.num_terms; ++k)
            out.add({std::string(to_string(kind)), static_cast<long long>(s.num_terms), static_cast<long long>(k),
                     s.first.exponents[k], s.first.coefficients[k], s.second.coefficients[k],
                     static_cast<long long>(s.matching[k]), w1, w2, s.first.rms_residual, s.first.condition},
                    std::string(to_string(table.source())) + "+mpfr_qr", std::pow(10.0, -cfg.precision));
    }
    emit(out);
    return 0;
}

int cmd_regev(const RunConfig& cfg, const std::string& n_text, int l) {
    double n = parse_real(n_text, "n");
    if (n < 1 || l < 1 || l > n) throw PreconditionError("regev: 1 <= l <= n required");
    const int digits = cfg.fixed15 ? 15 : 10;
    double rg = regev_log10(n, l), rc = regev_corrected_log10(n, l);
    Cell st = Null{}, st_text = Null{}, ex = Null{};
    std::string backend = "barnes_g";
    if (n <= 1e7) {
        double s = stirling_count_log10(n, l, stirling_options(cfg));
        st = s;
        st_text = format_from_log10(s, digits);
        backend += "+stirling";
    }
    if (n == std::floor(n) && n <= kRationalTableMaxN) {
        ExactDistributionTable t = load_table(static_cast<int>(n), cfg);
        mpz_class f = 1;
        for (int i = 2; i <= static_cast<int>(n); ++i) f *= i;
        mpq_class count = t.cdf(static_cast<int>(n), l) * f;
        ex = format_rational(count, digits);
        backend += "+" + std::string(to_string(t.source()));
    }
    Output out("regev",
               {"n", "l", "log10_regev", "regev", "log10_corrected", "corrected", "log10_stirling", "stirling", "exact"},
               cfg.format, cfg.fixed15);
    out.add({n, static_cast<long long>(l), rg, format_from_log10(rg, digits), rc, format_from_log10(rc, digits), st,
             st_text, ex},
            backend, kernel_tol_for(cfg, n));
    emit(out);
    return 0;
}

// ---- validate ----

struct Check {
    std::string name;
    double value = 0;
    double threshold = 0;
    bool pass = false;
    std::string backend;
};

double max_rel(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

std::vector<Check> run_validation(const RunConfig& cfg) {
    std::vector<Check> checks;
    auto add = [&](std::string name, double value, double threshold, std::string backend) {
        checks.push_back({std::move(name), value, threshold, value <= threshold, std::move(backend)});
    };

    {
        double bad = 0;
        for (int n = 1; n <= 8; ++n) {
            auto b = brute_force_distribution(n), h = hook_length_distribution(n);
            for (int l = 1; l <= n; ++l) bad += b.pdf(n, l) != h.pdf(n, l);
        }
        add("brute_force == hook_length, n <= 8", bad, 0, "brute_force,hook_length");
    }
    ExactDistributionTable chazy = exact_distribution_table(30);
    {
        double bad = 0;
        for (int n = 1; n <= 30; ++n) {
            auto h = hook_length_distribution(n);
            for (int l = 1; l <= n; ++l) bad += h.pdf(n, l) != chazy.pdf(n, l);
        }
        add("hook_length == chazy table, n <= 30", bad, 0, "hook_length,chazy_series");
    }
    {
        double bad = 0;
        for (int n = 1; n <= 30; ++n) {
            bad += !chazy.row_sums_to_one(n) || !chazy.row_in_unit_interval(n);
            for (int l = (n + 1) / 2; l <= n; ++l) bad += goulden_pdf(n, l) != chazy.pdf(n, l);
        }
        add("goulden == chazy table, rows sum to 1, n <= 30", bad, 0, "goulden,chazy_series");
    }
    {
        double bad = 0;
        for (int l = 1; l <= 6; ++l) {
            ChazySeries s = chazy_coefficients(l, 60);
            bad += chazy_residual_order(s) != -1;
            bad += sigma_piii_residual_order(s) != -1;
        }
        add("chazy and sigma-PIII residuals exactly zero, l <= 6", bad, 0, "chazy_series");
    }
    {
        double worst = 0;
        const std::pair<int, double> pts[] = {{1, 10}, {3, 40}, {5, 72.92}, {8, 150}};
        for (auto [l, s] : pts) {
            KernelOptions kf, kt, kc;
            kf.backend = HardEdgeBackend::fredholm;
            kt.backend = HardEdgeBackend::toeplitz;
            kc.backend = HardEdgeBackend::chazy_series;
            auto f = hard_edge_eval(l, s, kf), t = hard_edge_eval(l, s, kt), c = hard_edge_eval(l, s, kc);
            for (const auto* o : {&t, &c}) {
                worst = std::max(worst, std::abs(f.log_g - o->log_g));
                worst = std::max(worst, max_rel(f.v, o->v));
                worst = std::max(worst, max_rel(f.u, o->u));
            }
        }
        add("hard edge: fredholm vs toeplitz vs chazy", worst, 1e-9, "fredholm,toeplitz,chazy_series");
    }
    {
        double worst = 0;
        const std::pair<int, double> pts[] = {{2, 3}, {4, 9}, {6, 20}};
        for (auto [l, r] : pts) {
            auto ls = log_generating_series(l, 400);
            double acc = 0;
            for (int k = 0; k <= 400; ++k) acc += std::exp(ls->log_c[k] + k * std::log(r) - r);
            KernelOptions kf;
            kf.backend = HardEdgeBackend::fredholm;
            auto f = hard_edge_eval(l, 4 * r, kf);
            worst = std::max(worst, max_rel(acc, f.g));
        }
        add("poissonization e^-r f_l(r) == g_l(4r)", worst, 1e-10, "generating_series,fredholm");
    }
    {
        double worst = 0;
        StirlingOptions so = stirling_options(cfg);
        for (int l = 1; l <= 9; ++l) {
            double e = chazy.cdf(20, l).get_d();
            worst = std::max(worst, std::abs(stirling_cdf(20, l, so).cdf_approx - e) / e);
        }
        add("stirling vs exact, n = 20, relative", worst, 1e-2, "stirling,chazy_series");
    }
    {
        MomentRow r = tracy_widom_moments(0);
        double err = std::max(std::abs(r.mu1 + 1.7710868074), std::abs(r.variance - 0.8131947928));
        add("tracy-widom mean and variance", err, 1e-9, "f2_density");
        ExpansionConstants k = expansion_constants();
        add("conjectured F21: mu1, nu1", std::max(std::abs(k.mu1 - 0.06583238), std::abs(k.nu1 + 1.20720507)), 1e-7,
            "f21_conjectured");
    }
    {
        auto h = hook_length_distribution(10);
        MonteCarloResult mc = monte_carlo_cdf(10, 200000, 1, cfg.threads);
        double worst = 0;
        for (int l = 1; l < 10; ++l) {
            double p = h.cdf(10, l).get_d();
            worst = std::max(worst, std::abs(mc.cdf(l) - p) / std::sqrt(p * (1 - p) / 200000));
        }
        add("monte carlo n = 10, standard errors", worst, 5, "mt19937_64+patience,hook_length");
    }
    return checks;
}

int cmd_validate(const RunConfig& cfg) {
    std::vector<Check> checks = run_validation(cfg);
    Output out("validate", {"check", "value", "threshold", "pass"}, cfg.format, cfg.fixed15);
    bool ok = true;
    for (const auto& c : checks) {
        out.add({c.name, c.value, c.threshold, c.pass}, c.backend, c.threshold);
        ok = ok && c.pass;
    }
    emit(out);
    return ok ? 0 : 1;
}

void report_error(const std::string& cmd, const char* kind, const std::string& message) {
    nlohmann::ordered_json j;
    j["error"] = {{"command", cmd}, {"kind", kind}, {"message", message}, {"version", kVersion}};
    std::cerr << j.dump() << "\n";
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Distribution of the longest increasing subsequence length"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string format = "csv";
    if (const char* env = std::getenv("LISDIST_CACHE_DIR")) cfg.cache_dir = env;
    app.add_option("--tol", cfg.tol, "kernel tolerance (default: per module)")->check(CLI::PositiveNumber);
    auto* prec = app.add_option("--precision", cfg.precision, "working precision in decimal digits")
                     ->check(CLI::Range(20, 100000));
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--cache-dir", cfg.cache_dir, "disk cache directory (env LISDIST_CACHE_DIR)");
    app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1, 1024));
    app.add_flag("--paper-scale", cfg.paper_scale, "unlock sizes beyond the desk-scale defaults");
    app.add_flag("--fixed15", cfg.fixed15, "render numbers with 15 significant digits");

    int N = 0;
    std::optional<int> only_row;
    auto* c_exact = app.add_subcommand("exact-table", "exact P(L_n = l), 1 <= l <= n <= N");
    c_exact->add_option("N", N)->required();
    c_exact->add_option("--row", only_row, "print only row n");

    std::string n_text, range;
    bool with_exact = false;
    auto* c_cdf = app.add_subcommand("cdf", "Stirling-type approximation of P(L_n <= l)");
    c_cdf->add_option("n", n_text)->required();
    c_cdf->add_option("range", range, "l, l..l' or auto")->required();
    c_cdf->add_flag("--exact", with_exact, "add the exact value from the table");

    auto* c_pdf = app.add_subcommand("pdf", "Stirling-type approximation of P(L_n = l)");
    c_pdf->add_option("n", n_text)->required();
    c_pdf->add_option("range", range, "l, l..l' or auto")->required();

    long long mc_n = 0, mc_t = 0, mc_seed = 0;
    auto* c_mc = app.add_subcommand("montecarlo", "empirical CDF of L_n from T random permutations");
    c_mc->add_option("n", mc_n)->required();
    c_mc->add_option("T", mc_t)->required();
    c_mc->add_option("seed", mc_seed)->required();

    std::vector<std::string> values;
    auto* c_f2 = app.add_subcommand("f2", "Tracy-Widom F2 and its derivatives");
    c_f2->add_option("s", values)->required();

    std::string alpha_text;
    auto* c_he = app.add_subcommand("hard-edge", "hard-edge gap probability and auxiliaries v, u");
    c_he->add_option("alpha", alpha_text)->required();
    c_he->add_option("s", values)->required();

    int order = 0;
    ResidualArgs ra;
    auto* c_res = app.add_subcommand("residuals", "scaled residuals against the Tracy-Widom expansion");
    c_res->add_option("n", n_text)->required();
    c_res->add_option("order", order)->required()->check(CLI::Range(0, 2));
    c_res->add_option("--observable", ra.observable, "cdf or pdf");
    c_res->add_option("--source", ra.source, "exact or stirling");
    c_res->add_option("--tmin", ra.t_min);
    c_res->add_option("--tmax", ra.t_max);
    c_res->add_option("--f21", ra.f21, "conjectured or a fit file");
    c_res->add_option("--f22", ra.f22, "fit file");

    FitArgs fa;
    auto* c_fit = app.add_subcommand("fit-corrections", "polynomial fits of F21 and F22");
    c_fit->add_option("--n21", fa.n21, "n of the Stirling data for F21");
    c_fit->add_option("--deg21", fa.deg21);
    c_fit->add_option("--n22", fa.n22, "exact-table n values for F22");
    c_fit->add_option("--deg22", fa.deg22);
    c_fit->add_option("--out", fa.out_file, "write both fits as JSON");

    std::vector<int> moment_ns;
    auto* c_mom = app.add_subcommand("moments", "trapezoid and quadrature moments of F2'");
    c_mom->add_option("--n", moment_ns, "trapezoid n values");

    MeanVarArgs mv;
    auto* c_mv = app.add_subcommand("fit-mean-var", "least-squares fits of E(L_n) and Var(L_n)");
    c_mv->add_option("--nmin1", mv.nmin1);
    c_mv->add_option("--nmin2", mv.nmin2);
    c_mv->add_option("--nmax", mv.nmax);
    c_mv->add_option("--terms", mv.terms, "0 selects by matching digits");

    int regev_l = 0;
    auto* c_regev = app.add_subcommand("regev", "fixed-l counts: Regev, corrected Regev, Stirling, exact");
    c_regev->add_option("n", n_text)->required();
    c_regev->add_option("l", regev_l)->required();

    auto* c_val = app.add_subcommand("validate", "cross-oracle checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    cfg.format = format == "json" ? Format::json : Format::csv;
    cfg.precision_set = prec->count() > 0;
    CLI::App* sub = app.get_subcommands().front();
    cfg.subcommand = sub->get_name();

    try {
        if (sub == c_exact) return cmd_exact_table(cfg, N, only_row);
        if (sub == c_cdf) return cmd_cdf(cfg, n_text, range, with_exact);
        if (sub == c_pdf) return cmd_pdf(cfg, n_text, range);
        if (sub == c_mc) return cmd_montecarlo(cfg, mc_n, mc_t, mc_seed);
        if (sub == c_f2) return cmd_f2(cfg, values);
        if (sub == c_he) return cmd_hard_edge(cfg, alpha_text, values);
        if (sub == c_res) return cmd_residuals(cfg, n_text, order, ra);
        if (sub == c_fit) return cmd_fit_corrections(cfg, fa);
        if (sub == c_mom) return cmd_moments(cfg, moment_ns);
        if (sub == c_mv) return cmd_fit_mean_var(cfg, mv);
        if (sub == c_regev) return cmd_regev(cfg, n_text, regev_l);
        if (sub == c_val) return cmd_validate(cfg);
    } catch (const Error& e) {
        report_error(cfg.subcommand, e.kind(), e.what());
        return 2;
    } catch (const std::exception& e) {
        report_error(cfg.subcommand, "internal", e.what());
        return 3;
    }
    return 1;
}

}  // namespace lisdist::cli

int main(int argc, char** argv) { return lisdist::cli::run(argc, argv); }

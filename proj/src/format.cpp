#include "lisdist/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <memory>

#include <mpfr.h>

namespace lisdist {

std::string format_double(double x) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

std::string format_double15(double x) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific, 14);
    return std::string(buf, r.ptr);
}

std::string format_double(double x, bool fixed15) { return fixed15 ? format_double15(x) : format_double(x); }

std::string format_rational(const mpq_class& q, int digits) {
    if (digits < 1) digits = 1;
    if (q == 0) return "0";
    mpfr_t v;
    mpfr_init2(v, static_cast<mpfr_prec_t>(digits * 3.33 + 32));
    mpfr_set_q(v, q.get_mpq_t(), MPFR_RNDN);
    // mpfr_asprintf renders in scientific notation with the requested digits
    char* out = nullptr;
    std::string fmt = "%." + std::to_string(digits - 1) + "Re";
    mpfr_asprintf(&out, fmt.c_str(), v);
    std::string s(out);
    mpfr_free_str(out);
    mpfr_clear(v);
    return s;
}

std::string format_from_log10(double log10_value, int digits) {
    double e = std::floor(log10_value);
    double m = std::pow(10.0, log10_value - e);
    double scale = std::pow(10.0, digits - 1);
    m = std::round(m * scale) / scale;
    if (m >= 10) {
        m /= 10;
        e += 1;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*fe%+.0f", digits - 1, m, e);
    return buf;
}

}  // namespace lisdist

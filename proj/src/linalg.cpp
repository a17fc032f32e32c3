#include "lisdist/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "lisdist/error.hpp"
#include "lisdist/simd.hpp"

namespace lisdist {

DenseFactor::DenseFactor(std::vector<double> a, std::size_t m) : m_(m) {
    if (a.size() != m * m) throw PreconditionError("DenseFactor: matrix size mismatch");
    if (!try_cholesky(a)) lu(std::move(a));
}

bool DenseFactor::try_cholesky(const std::vector<double>& a) {
    const std::size_t m = m_;
    f_.assign(m * m, 0.0);
    double logdet = 0, dmin = HUGE_VAL, dmax = 0;
    for (std::size_t j = 0; j < m; ++j) {
        double* lj = &f_[j * m];
        double d = a[j * m + j] - simd::dot(lj, lj, j);
        if (!(d > 0)) return false;
        double ljj = std::sqrt(d);
        lj[j] = ljj;
        dmin = std::min(dmin, ljj);
        dmax = std::max(dmax, ljj);
        logdet += std::log(ljj);
        for (std::size_t i = j + 1; i < m; ++i) {
            double* li = &f_[i * m];
            li[j] = (a[i * m + j] - simd::dot(li, lj, j)) / ljj;
        }
    }
    cholesky_ = true;
    cond_ = m ? (dmax / dmin) * (dmax / dmin) : 1;
    logdet_ = 2 * logdet;
    sign_ = 1;
    return true;
}

void DenseFactor::lu(std::vector<double> a) {
    const std::size_t m = m_;
    piv_.resize(m);
    double logdet = 0, dmin = HUGE_VAL, dmax = 0;
    int sign = 1;
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t p = k;
        double best = std::abs(a[k * m + k]);
        for (std::size_t i = k + 1; i < m; ++i) {
            double v = std::abs(a[i * m + k]);
            if (v > best) {
                best = v;
                p = i;
            }
        }
        piv_[k] = p;
        if (best == 0) throw PrecisionError("DenseFactor: singular matrix");
        if (p != k) {
            for (std::size_t j = 0; j < m; ++j) std::swap(a[k * m + j], a[p * m + j]);
            sign = -sign;
        }
        double pivot = a[k * m + k];
        if (pivot < 0) sign = -sign;
        logdet += std::log(std::abs(pivot));
        dmin = std::min(dmin, std::abs(pivot));
        dmax = std::max(dmax, std::abs(pivot));
        const double* rk = &a[k * m + k + 1];
        for (std::size_t i = k + 1; i < m; ++i) {
            double l = a[i * m + k] / pivot;
            a[i * m + k] = l;
            simd::axpy(-l, rk, &a[i * m + k + 1], m - k - 1);
        }
    }
    f_ = std::move(a);
    cholesky_ = false;
    cond_ = m ? dmax / dmin : 1;
    logdet_ = logdet;
    sign_ = sign;
}

std::vector<double> DenseFactor::solve(std::vector<double> b) const {
    const std::size_t m = m_;
    if (b.size() != m) throw PreconditionError("DenseFactor::solve: size mismatch");
    if (cholesky_) {
        for (std::size_t i = 0; i < m; ++i)
            b[i] = (b[i] - simd::dot(&f_[i * m], b.data(), i)) / f_[i * m + i];
        for (std::size_t i = m; i-- > 0;) {
            double s = b[i];
            for (std::size_t k = i + 1; k < m; ++k) s -= f_[k * m + i] * b[k];
            b[i] = s / f_[i * m + i];
        }
        return b;
    }
    for (std::size_t k = 0; k < m; ++k)
        if (piv_[k] != k) std::swap(b[k], b[piv_[k]]);
    for (std::size_t i = 0; i < m; ++i) b[i] -= simd::dot(&f_[i * m], b.data(), i);
    for (std::size_t i = m; i-- > 0;) {
        double s = b[i] - simd::dot(&f_[i * m + i + 1], &b[i + 1], m - i - 1);
        b[i] = s / f_[i * m + i];
    }
    return b;
}

}  // namespace lisdist

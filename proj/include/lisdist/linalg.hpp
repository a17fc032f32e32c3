#pragma once

#include <cstddef>
#include <vector>

namespace lisdist {

// Factorization of a dense row-major m x m matrix. Cholesky is tried first;
// when the matrix is not numerically positive definite, LU with partial
// pivoting is used instead.
class DenseFactor {
public:
    DenseFactor(std::vector<double> a, std::size_t m);

    std::size_t size() const { return m_; }
    bool is_cholesky() const { return cholesky_; }
    // log |det|, and the sign of det
    double log_abs_det() const { return logdet_; }
    int det_sign() const { return sign_; }
    // (max pivot / min pivot), squared for Cholesky; a cheap condition proxy
    double condition_estimate() const { return cond_; }

    std::vector<double> solve(std::vector<double> b) const;

private:
    bool try_cholesky(const std::vector<double>& a);
    void lu(std::vector<double> a);

    std::size_t m_;
    std::vector<double> f_;
    std::vector<std::size_t> piv_;
    bool cholesky_ = false;
    double logdet_ = 0;
    int sign_ = 1;
    double cond_ = 1;
};

}  // namespace lisdist

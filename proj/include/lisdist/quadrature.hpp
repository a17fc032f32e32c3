#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace lisdist {

// Nodes strictly increasing, weights positive. An m-point Gauss-Legendre rule
// integrates polynomials of degree <= 2m-1 exactly on its interval.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::string map;
};

// Reference rule on [-1, 1]; built once per m and shared (thread safe).
std::shared_ptr<const QuadratureRule> gauss_legendre(std::size_t m);

// Affine image of the m-point rule on [a, b].
QuadratureRule gauss_legendre(std::size_t m, double a, double b);

}  // namespace lisdist

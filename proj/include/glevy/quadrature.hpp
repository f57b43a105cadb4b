#pragma once

#include <functional>
#include <vector>

namespace glevy {

struct QuadratureRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;
};

// Gauss-Legendre rule with n points; nodes by Newton iteration on P_n.
const QuadratureRule& gauss_legendre(int n);

// Integrates f over [a, b] with an n-point Gauss-Legendre rule.
double fixed_quadrature(const std::function<double(double)>& f, double a, double b, int n);

// Adaptive Simpson with absolute tolerance tol.
double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double tol);

}  // namespace glevy

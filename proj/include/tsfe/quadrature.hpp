#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "tsfe/errors.hpp"

namespace tsfe {

/// Double-exponential quadrature on (0, inf) (exp-sinh rule).
/// Suited to integrands with an algebraic endpoint singularity at 0 and
/// exponential decay at infinity. Converges geometrically in the node count
/// for analytic integrands.
double integrate_exp_sinh(const std::function<double(double)>& f,
                          double abs_tol = 1e-12, double rel_tol = 1e-12,
                          int max_levels = 10);

/// Double-exponential quadrature on a finite interval (a, b) (tanh-sinh rule).
double integrate_tanh_sinh(const std::function<double(double)>& f, double a,
                           double b, double abs_tol = 1e-12,
                           double rel_tol = 1e-12, int max_levels = 10);

/// Gauss-Laguerre nodes and weights for the weight e^{-x} on (0, inf),
/// via Golub-Welsch on the Laguerre Jacobi matrix.
struct GaussLaguerre {
    std::vector<double> nodes;
    std::vector<double> weights;
    /// weights[i] * exp(nodes[i]), assembled in log space so that nodes far
    /// into the tail do not produce 0 * inf. Use for plain integrals
    /// int_0^inf f(t) dt = sum scaled_weights[i] * f(nodes[i]).
    std::vector<double> scaled_weights;
    explicit GaussLaguerre(int n);
};

}  // namespace tsfe

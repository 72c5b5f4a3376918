#pragma once

#include <functional>
#include <vector>

#include "tsfe/errors.hpp"

namespace tsfe {

enum class BernsteinKind { Power, PowerLog, Linear, Custom };

/// Quadrature specification for a user-supplied Levy density w(t) plus drift.
struct CustomLevy {
    std::function<double(double)> density;
    double drift = 0.0;
    int nodes = 256;
};

/// A Bernstein function phi(x) = a x + int_(0,inf) (1 - e^{-t x}) w(t) dt,
/// with cached lower-scaling data (delta0, c1). Construction validates
/// phi(0+) = 0, monotonicity, and concavity on a sampled log-grid.
class BernsteinFunction {
  public:
    static BernsteinFunction power(double beta);      // phi(x) = x^{beta/2}
    static BernsteinFunction power_log(double beta);  // x / log(1 + x^{beta/2})
    static BernsteinFunction linear();                // phi(x) = x
    static BernsteinFunction custom(CustomLevy spec);

    double operator()(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;

    BernsteinKind kind() const { return kind_; }
    double beta() const { return beta_; }
    double drift() const { return drift_; }
    double delta0() const { return delta0_; }
    double c1() const { return c1_; }

    bool has_levy_density() const;
    /// w(t); Unsupported unless Power or Custom.
    double levy_density(double t) const;

  private:
    BernsteinFunction() = default;
    void validate_and_cache_scaling();

    BernsteinKind kind_ = BernsteinKind::Linear;
    double beta_ = 0.0;
    double drift_ = 0.0;
    double delta0_ = 1.0;
    double c1_ = 1.0;
    CustomLevy custom_;
    std::vector<double> nodes_, weights_;  // Gauss-Laguerre table for Custom
};

struct ScalingReport {
    double delta0_hat;
    double c1_hat;
    int pairs_checked;
    double worst_m, worst_M, worst_ratio;
};

/// Brute-force infimum of log(phi(M)/phi(m)) / log(M/m) over log-spaced
/// pairs; also asserts the concavity side phi(M)/phi(m) <= M/m on each pair.
ScalingReport estimate_delta0(const BernsteinFunction& phi, double x_min,
                              double x_max, int n);

/// Monotone bisection solve of phi(x) = y to 1e-12 relative.
double phi_inverse(const BernsteinFunction& phi, double y);

/// lambda(rho) = (phi(rho^{-2}))^{-1/alpha}.
double lambda_of_rho(const BernsteinFunction& phi, double alpha, double rho);

/// Jump kernel j(r) = int (4 pi t)^{-d/2} exp(-r^2/4t) w(t) dt.
double jump_kernel(const BernsteinFunction& phi, double r, int d = 1);

struct DerivativeBoundReport {
    double worst_n1;  // sup |x phi'(x)| / phi(x)
    double worst_n2;  // sup |x^2 phi''(x)| / phi(x); 0 when n_max < 2
};

DerivativeBoundReport verify_derivative_bound(const BernsteinFunction& phi,
                                              int n_max,
                                              const std::vector<double>& samples);

}  // namespace tsfe

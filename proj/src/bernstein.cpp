#include "tsfe/bernstein.hpp"

#include <algorithm>
#include <cmath>

#include "tsfe/quadrature.hpp"

namespace tsfe {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double power_levy_constant(double beta) {
    // w(t) = c t^{-1-beta/2} reproduces phi(x) = x^{beta/2}.
    double p = 0.5 * beta;
    return p / std::tgamma(1.0 - p);
}

}  // namespace

BernsteinFunction BernsteinFunction::power(double beta) {
    if (!(beta > 0.0 && beta < 2.0))
        throw DomainError("BernsteinFunction::power: beta must be in (0,2)");
    BernsteinFunction f;
    f.kind_ = BernsteinKind::Power;
    f.beta_ = beta;
    f.validate_and_cache_scaling();
    return f;
}

BernsteinFunction BernsteinFunction::power_log(double beta) {
    if (!(beta > 0.0 && beta < 2.0))
        throw DomainError("BernsteinFunction::power_log: beta must be in (0,2)");
    BernsteinFunction f;
    f.kind_ = BernsteinKind::PowerLog;
    f.beta_ = beta;
    f.validate_and_cache_scaling();
    return f;
}

BernsteinFunction BernsteinFunction::linear() {
    BernsteinFunction f;
    f.kind_ = BernsteinKind::Linear;
    f.drift_ = 1.0;
    f.validate_and_cache_scaling();
    return f;
}

BernsteinFunction BernsteinFunction::custom(CustomLevy spec) {
    if (!spec.density) throw DomainError("BernsteinFunction::custom: no density");
    if (spec.drift < 0.0)
        throw DomainError("BernsteinFunction::custom: drift must be >= 0");
    if (spec.nodes < 16)
        throw DomainError("BernsteinFunction::custom: nodes must be >= 16");
    BernsteinFunction f;
    f.kind_ = BernsteinKind::Custom;
    f.drift_ = spec.drift;
    f.custom_ = spec;
    GaussLaguerre gl(spec.nodes);
    f.nodes_ = gl.nodes;
    f.weights_ = gl.scaled_weights;
    // node-doubling error monitor on a representative evaluation
    GaussLaguerre gl2(2 * spec.nodes);
    auto eval = [&](const GaussLaguerre& q, double x) {
        double s = 0.0;
        for (size_t i = 0; i < q.nodes.size(); ++i) {
            double t = q.nodes[i];
            s += q.scaled_weights[i] * spec.density(t) * (-std::expm1(-t * x));
        }
        return s;
    };
    double v1 = eval(gl, 1.0), v2 = eval(gl2, 1.0);
    if (!(std::abs(v1 - v2) <= 1e-6 * std::max(1.0, std::abs(v2))))
        throw InvalidBernstein("custom: Levy quadrature not converged");
    f.validate_and_cache_scaling();
    return f;
}

double BernsteinFunction::operator()(double x) const {
    if (x < 0.0) throw DomainError("BernsteinFunction: x must be >= 0");
    switch (kind_) {
        case BernsteinKind::Power:
            return std::pow(x, 0.5 * beta_);
        case BernsteinKind::PowerLog: {
            if (x == 0.0) return 0.0;
            double u = std::pow(x, 0.5 * beta_);
            double l = std::log1p(u);
            if (l == 0.0) return 0.0;  // underflowed u
            return x / l;
        }
        case BernsteinKind::Linear:
            return x;
        case BernsteinKind::Custom: {
            double s = drift_ * x;
            for (size_t i = 0; i < nodes_.size(); ++i) {
                double t = nodes_[i];
                s += weights_[i] * custom_.density(t) * (-std::expm1(-t * x));
            }
            return s;
        }
    }
    throw DomainError("BernsteinFunction: bad kind");
}

double BernsteinFunction::derivative(double x) const {
    if (!(x > 0.0)) throw DomainError("BernsteinFunction: x must be > 0");
    switch (kind_) {
        case BernsteinKind::Power:
            return 0.5 * beta_ * std::pow(x, 0.5 * beta_ - 1.0);
        case BernsteinKind::PowerLog: {
            double p = 0.5 * beta_;
            double u = std::pow(x, p);
            double l = std::log1p(u);
            double lp = p * u / (x * (1.0 + u));  // dl/dx
            return 1.0 / l - x * lp / (l * l);
        }
        case BernsteinKind::Linear:
            return 1.0;
        case BernsteinKind::Custom: {
            double s = drift_;
            for (size_t i = 0; i < nodes_.size(); ++i) {
                double t = nodes_[i];
                s += weights_[i] * custom_.density(t) * t * std::exp(-t * x);
            }
            return s;
        }
    }
    throw DomainError("BernsteinFunction: bad kind");
}

double BernsteinFunction::second_derivative(double x) const {
    if (!(x > 0.0)) throw DomainError("BernsteinFunction: x must be > 0");
    switch (kind_) {
        case BernsteinKind::Power: {
            double p = 0.5 * beta_;
            return p * (p - 1.0) * std::pow(x, p - 2.0);
        }
        case BernsteinKind::PowerLog: {
            double p = 0.5 * beta_;
            double u = std::pow(x, p);
            double l = std::log1p(u);
            double up = p * u / x;
            double upp = p * (p - 1.0) * u / (x * x);
            double lp = up / (1.0 + u);
            double lpp = (upp * (1.0 + u) - up * up) / ((1.0 + u) * (1.0 + u));
            return -2.0 * lp / (l * l) + 2.0 * x * lp * lp / (l * l * l) -
                   x * lpp / (l * l);
        }
        case BernsteinKind::Linear:
            return 0.0;
        case BernsteinKind::Custom: {
            double s = 0.0;
            for (size_t i = 0; i < nodes_.size(); ++i) {
                double t = nodes_[i];
                s -= weights_[i] * custom_.density(t) * t * t * std::exp(-t * x);
            }
            return s;
        }
    }
    throw DomainError("BernsteinFunction: bad kind");
}

bool BernsteinFunction::has_levy_density() const {
    return kind_ == BernsteinKind::Power || kind_ == BernsteinKind::Custom;
}

double BernsteinFunction::levy_density(double t) const {
    if (!(t > 0.0)) throw DomainError("levy_density: t must be > 0");
    switch (kind_) {
        case BernsteinKind::Power:
            return power_levy_constant(beta_) * std::pow(t, -1.0 - 0.5 * beta_);
        case BernsteinKind::Custom:
            return custom_.density(t);
        default:
            throw Unsupported("levy_density: kind has no explicit Levy density");
    }
}

void BernsteinFunction::validate_and_cache_scaling() {
    const auto& phi = *this;
    // monotone and midpoint-concave on a log grid
    const int n = 121;
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i)
        xs[i] = std::pow(10.0, -6.0 + 12.0 * i / (n - 1));
    for (int i = 0; i + 1 < n; ++i) {
        double a = phi(xs[i]), b = phi(xs[i + 1]);
        if (!(b >= a * (1.0 - 1e-12)))
            throw InvalidBernstein("phi not nondecreasing on sampled grid");
        double mid = phi(0.5 * (xs[i] + xs[i + 1]));
        if (!(mid >= 0.5 * (a + b) * (1.0 - 1e-9)))
            throw InvalidBernstein("phi not concave on sampled grid");
    }
    ScalingReport rep = estimate_delta0(*this, 1e-4, 1e4, 64);
    delta0_ = rep.delta0_hat;
    c1_ = rep.c1_hat;
    if (!(delta0_ > 0.0 && delta0_ <= 1.0 + 1e-12))
        throw InvalidBernstein("delta0 outside (0,1]");
    delta0_ = std::min(delta0_, 1.0);
    // phi(0+) = 0, at the rate the lower-scaling exponent guarantees
    if (!(phi(1e-12) <=
          phi(1.0) * std::pow(1e-12, 0.8 * delta0_) * (1.0 + 1e-9)))
        throw InvalidBernstein("phi(0+) != 0");
}

ScalingReport estimate_delta0(const BernsteinFunction& phi, double x_min,
                              double x_max, int n) {
    if (!(x_min > 0.0 && x_min < x_max))
        throw DomainError("estimate_delta0: need 0 < x_min < x_max");
    if (n < 32) throw DomainError("estimate_delta0: n must be >= 32");
    std::vector<double> xs(n), ps(n);
    double la = std::log(x_min), lb = std::log(x_max);
    for (int i = 0; i < n; ++i) {
        xs[i] = std::exp(la + (lb - la) * i / (n - 1));
        ps[i] = phi(xs[i]);
    }
    ScalingReport rep{2.0, 1.0, 0, 0.0, 0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double ratio = ps[j] / ps[i];
            double scale = xs[j] / xs[i];
            if (ratio > scale * (1.0 + 1e-10))
                throw ScalingViolation("phi(M)/phi(m) > M/m");
            double slope = std::log(ratio) / std::log(scale);
            if (slope < rep.delta0_hat) {
                rep.delta0_hat = slope;
                rep.worst_m = xs[i];
                rep.worst_M = xs[j];
                rep.worst_ratio = ratio;
            }
            ++rep.pairs_checked;
        }
    }
    if (!(rep.delta0_hat > 0.0))
        throw ScalingViolation("estimate_delta0: delta0_hat <= 0");
    // matching constant: largest c1 with c1 (M/m)^{delta0} <= phi(M)/phi(m)
    double c1 = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            c1 = std::min(c1, (ps[j] / ps[i]) /
                                  std::pow(xs[j] / xs[i], rep.delta0_hat));
    rep.c1_hat = c1;
    return rep;
}

double phi_inverse(const BernsteinFunction& phi, double y) {
    if (!(y > 0.0)) throw DomainError("phi_inverse: y must be > 0");
    double hi = 1.0;
    while (phi(hi) < y) {
        hi *= 2.0;
        if (hi > 1e300) throw RangeError("phi_inverse: y above range of phi");
    }
    double lo = hi * 0.5;
    while (phi(lo) > y) {
        lo *= 0.5;
        if (lo < 1e-300) throw RangeError("phi_inverse: y below range of phi");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (phi(mid) < y)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-14 * hi) break;
    }
    return 0.5 * (lo + hi);
}

double lambda_of_rho(const BernsteinFunction& phi, double alpha, double rho) {
    if (!(rho > 0.0)) throw DomainError("lambda_of_rho: rho must be > 0");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("lambda_of_rho: alpha must be in (0,1)");
    return std::pow(phi(1.0 / (rho * rho)), -1.0 / alpha);
}

double jump_kernel(const BernsteinFunction& phi, double r, int d) {
    if (!(r > 0.0)) throw DomainError("jump_kernel: r must be > 0");
    if (d < 1 || d > 3) throw DomainError("jump_kernel: d must be in {1,2,3}");
    if (!phi.has_levy_density())
        throw Unsupported("jump_kernel: kind has no explicit Levy density");
    // t = r^2 s keeps the heat-kernel peak at s = O(1) for every r
    const double r2 = r * r;
    auto f = [&](double s) {
        double t = r2 * s;
        return std::pow(4.0 * kPi * t, -0.5 * d) * std::exp(-1.0 / (4.0 * s)) *
               phi.levy_density(t) * r2;
    };
    return integrate_exp_sinh(f, 1e-14, 1e-10, 11);
}

DerivativeBoundReport verify_derivative_bound(const BernsteinFunction& phi,
                                              int n_max,
                                              const std::vector<double>& samples) {
    if (n_max < 1 || n_max > 2)
        throw DomainError("verify_derivative_bound: n_max must be 1 or 2");
    DerivativeBoundReport rep{0.0, 0.0};
    for (double x : samples) {
        double p = phi(x);
        rep.worst_n1 = std::max(rep.worst_n1, std::abs(x * phi.derivative(x)) / p);
        if (n_max >= 2)
            rep.worst_n2 = std::max(
                rep.worst_n2, std::abs(x * x * phi.second_derivative(x)) / p);
    }
    return rep;
}

}  // namespace tsfe

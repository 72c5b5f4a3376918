#include "tsfe/specfun.hpp"

#include <cmath>
#include <limits>

#include "tsfe/quadrature.hpp"

namespace tsfe {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSeriesRadius = 5.0;

// 1/Gamma(x) with poles of Gamma mapped to exact zeros.
double rgamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) return 0.0;
    if (x > 0.0) {
        if (x > 170.0) return 0.0;  // Gamma overflows, reciprocal underflows
        return 1.0 / std::tgamma(x);
    }
    // Reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x)/pi.
    double g = std::lgamma(1.0 - x);
    if (g > 700.0) return 0.0;  // |1/Gamma| astronomically large never occurs here
    return std::exp(g) * std::sin(kPi * x) / kPi;
}

// Power series sum_{k>=0} z^k / Gamma(alpha k + beta). Returns false when
// floating point cancellation defeats the requested tolerance.
bool ml_series(double alpha, double beta, std::complex<double> z,
               const Accuracy& acc, std::complex<double>& out) {
    std::complex<double> sum = 0.0, term = 1.0;
    double max_mag = 0.0;
    int quiet = 0;
    for (int k = 0; k < acc.max_terms; ++k) {
        std::complex<double> contrib = term * rgamma(alpha * k + beta);
        sum += contrib;
        max_mag = std::max(max_mag, std::abs(contrib));
        double tol = std::max(acc.abs_tol, acc.rel_tol * std::abs(sum));
        if (std::abs(contrib) < 0.25 * tol && k > 2) {
            if (++quiet >= 3) {
                double cancel = max_mag * std::numeric_limits<double>::epsilon() * 8.0;
                if (cancel > tol) return false;
                out = sum;
                return true;
            }
        } else {
            quiet = 0;
        }
        term *= z;
        if (!std::isfinite(std::abs(term))) return false;
    }
    return false;
}

// Spectral (integral) representation for E_{alpha,beta}(-x), x > 0,
// 0 < alpha < 1, beta <= 1. After s = chi^{1/alpha}:
//   E = (1/pi) int_0^inf s^{alpha-beta} e^{-s}
//       [ s^alpha sin(pi(1-beta)) + x sin(pi(1-beta+alpha)) ]
//       / ( s^{2alpha} + 2 s^alpha x cos(pi alpha) + x^2 ) ds.
double ml_neg_integral(double alpha, double beta, double x, const Accuracy& acc) {
    const double s1 = std::sin(kPi * (1.0 - beta));
    const double s2 = std::sin(kPi * (1.0 - beta + alpha));
    const double c = std::cos(kPi * alpha);
    auto f = [&](double s) {
        double sa = std::pow(s, alpha);
        double denom = sa * sa + 2.0 * sa * x * c + x * x;
        return std::pow(s, alpha - beta) * std::exp(-s) * (sa * s1 + x * s2) /
               (kPi * denom);
    };
    return integrate_exp_sinh(f, 0.1 * acc.abs_tol, 0.1 * acc.rel_tol, 12);
}

// E_{alpha,beta}(-x) for x beyond the series radius, 0 < alpha < 1.
// beta is first reduced into (1-alpha, 1] with the recurrence
// E_{alpha,beta+alpha}(z) = (E_{alpha,beta}(z) - 1/Gamma(beta)) / z.
double ml_neg_real(double alpha, double beta, double x, const Accuracy& acc) {
    int m = 0;
    double beta0 = beta;
    while (beta0 > 1.0 + 1e-14) {
        beta0 -= alpha;
        ++m;
    }
    double v = ml_neg_integral(alpha, beta0, x, acc);
    double b = beta0;
    for (int i = 0; i < m; ++i) {
        v = (v - rgamma(b)) / (-x);
        b += alpha;
    }
    return v;
}

// Asymptotic expansion E_{alpha,beta}(z) ~ [exp branch] - sum z^{-k}/Gamma(beta-alpha k)
// with optimal truncation. Used for large |z| off the negative real axis.
bool ml_asymptotic(double alpha, double beta, std::complex<double> z,
                   const Accuracy& acc, std::complex<double>& out) {
    std::complex<double> sum = 0.0;
    std::complex<double> zin = 1.0 / z;
    std::complex<double> p = zin;
    double smallest = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 60; ++k) {
        std::complex<double> term = p * rgamma(beta - alpha * k);
        double mag = std::abs(term);
        if (mag > smallest) break;  // divergent tail reached
        sum -= term;
        smallest = std::min(smallest, mag);
        p *= zin;
    }
    double arg = std::arg(z);
    if (std::abs(arg) < 0.75 * alpha * kPi) {
        std::complex<double> zr = std::pow(z, (1.0 - beta) / alpha);
        sum += zr * std::exp(std::pow(z, 1.0 / alpha)) / alpha;
    }
    double tol = std::max(acc.abs_tol, acc.rel_tol * std::abs(sum));
    if (smallest > tol) return false;
    out = sum;
    return true;
}

// M_alpha through the Zolotarev integral for the one-sided stable density:
//   M_alpha(th) = th^{a/(1-a)}/(pi(1-a)) int_0^pi exp(lu - s e^{lu}) dphi,
//   s = th^{1/(1-a)},
//   lu = a/(1-a) log(sin(a phi)/sin phi) + log(sin((1-a)phi)/sin phi).
// The integrand is positive and smooth, so there is no cancellation; this is
// the only stable route as alpha -> 1, where the alternating series dies.
WrightValue wright_m_zolotarev(double a, double th, const Accuracy& acc) {
    double s = std::pow(th, 1.0 / (1.0 - a));
    if (!std::isfinite(s)) return {0.0, true};
    const double ls = std::log(s);
    const double r = a / (1.0 - a);
    auto f = [&](double phi) {
        double sp = std::sin(phi);
        double lu = r * std::log(std::sin(a * phi) / sp) +
                    std::log(std::sin((1.0 - a) * phi) / sp);
        double e = ls + lu;
        if (e > 690.0) return 0.0;
        return std::exp(lu - std::exp(e));
    };
    double integral = integrate_tanh_sinh(f, 0.0, kPi, 1e-300,
                                          0.01 * acc.rel_tol, 12);
    if (!(integral > 0.0)) return {0.0, true};
    // th^{r} alone can overflow while the product is moderate
    double lv = r * std::log(th) - std::log(kPi * (1.0 - a)) + std::log(integral);
    if (lv < -709.0) return {0.0, true};
    return {std::exp(lv), false};
}

}  // namespace

std::complex<double> mittag_leffler(const MLQuery& q, const Accuracy& acc) {
    acc.validate();
    if (q.alpha <= 0.0) throw DomainError("mittag_leffler: alpha must be > 0");
    if (q.alpha > 2.0) throw DomainError("mittag_leffler: alpha must be <= 2");
    const double a = q.alpha, b = q.beta;
    const std::complex<double> z = q.z;

    if (a == 1.0 && b == 1.0) return std::exp(z);
    if (a == 2.0 && b == 1.0) return std::cosh(std::sqrt(z));
    if (a == 2.0 && b == 2.0) {
        std::complex<double> s = std::sqrt(z);
        if (std::abs(s) < 1e-150) return 1.0;
        return std::sinh(s) / s;
    }

    std::complex<double> out;
    if (std::abs(z) <= kSeriesRadius && ml_series(a, b, z, acc, out)) return out;
    if (z.imag() == 0.0 && z.real() < 0.0 && a < 1.0)
        return ml_neg_real(a, b, -z.real(), acc);
    if (std::abs(z) > kSeriesRadius && ml_series(a, b, z, acc, out)) return out;
    if (ml_asymptotic(a, b, z, acc, out)) return out;
    throw NonConvergence("mittag_leffler: no regime attained the tolerance");
}

double mittag_leffler_real(double alpha, double beta, double x,
                           const Accuracy& acc) {
    return mittag_leffler({alpha, beta, {x, 0.0}}, acc).real();
}

double ml_symbol(double alpha, double gamma, double t, double lam,
                 const Accuracy& acc) {
    if (!(t > 0.0)) throw DomainError("ml_symbol: t must be > 0");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("ml_symbol: alpha must be in (0,1)");
    double ta = std::pow(t, alpha);
    return std::pow(t, alpha - gamma) *
           mittag_leffler_real(alpha, 1.0 + alpha - gamma, -ta * lam, acc);
}

WrightValue wright_m(const WrightQuery& q, const Accuracy& acc) {
    acc.validate();
    if (!(q.alpha > 0.0 && q.alpha < 1.0))
        throw DomainError("wright_m: alpha must be in (0,1)");
    if (q.theta < 0.0) throw DomainError("wright_m: theta must be >= 0");

    if (q.theta > 4.0 && q.alpha <= 0.75) {
        // Leading-order decay log M ~ -(1-a) a^{a/(1-a)} th^{1/(1-a)}; for
        // a <= 0.75 the neglected corrections are O(log th), so a -800
        // threshold certifies underflow without touching the series.
        double est = -(1.0 - q.alpha) *
                     std::pow(q.alpha, q.alpha / (1.0 - q.alpha)) *
                     std::pow(q.theta, 1.0 / (1.0 - q.alpha));
        if (est < -800.0) return {0.0, true};
    }
    if (q.alpha > 0.75 && q.theta > 0.0) {
        // series cancellation grows without bound as alpha -> 1; switch to the
        // integral unless s underflows (tiny theta, where the series is easy)
        double s = std::pow(q.theta, 1.0 / (1.0 - q.alpha));
        if (!(s < 1e-250)) return wright_m_zolotarev(q.alpha, q.theta, acc);
    }

    // M_alpha(theta) = sum_k (-theta)^k / (k! Gamma(1 - alpha(k+1))).
    // Each contribution is assembled in log space: theta^k/k! and |1/Gamma|
    // can individually leave the representable range while their product is
    // moderate, and clamping either factor would silently truncate the series.
    // Long-double accumulation buys a few extra decades of theta before the
    // alternating series hits its cancellation floor.
    constexpr long double kInf = std::numeric_limits<long double>::infinity();
    constexpr long double kEps = std::numeric_limits<long double>::epsilon();
    const long double kPiL = 3.141592653589793238462643383279502884L;
    long double sum = 0.0L;
    long double log_term = 0.0L;  // log(theta^k / k!)
    long double max_log_err = -kInf;
    const long double th = q.theta;
    const long double aL = q.alpha;
    int quiet = 0;
    bool converged = false;
    for (int k = 0; k < acc.max_terms; ++k) {
        long double x = 1.0L - aL * (k + 1);
        long double lg;  // log |1/Gamma(x)|, -inf exactly at the poles
        long double sgn = 1.0L;
        if (x > 0.0L) {
            lg = -std::lgamma(x);
        } else if (x == std::floor(x)) {
            lg = -kInf;
        } else {
            // range-reduce before sin(pi x): x can be in the hundreds
            long double s = std::sin(kPiL * std::fmod(x, 2.0L));
            lg = std::lgamma(1.0L - x) + std::log(std::fabs(s) / kPiL);
            if (s < 0.0L) sgn = -1.0L;
        }
        long double lmag = log_term + lg;
        if (lmag > 11000.0L) {
            // Contribution overflows even long double; the value is buried
            // hopelessly below the cancellation floor.
            return {0.0, true};
        }
        if (k % 2 == 1) sgn = -sgn;  // sign of (-theta)^k
        long double contrib = lmag == -kInf ? 0.0L : sgn * std::exp(lmag);
        sum += contrib;
        // Per-term error: accumulation roundoff plus lgamma's relative error
        // amplified through exp, both proportional to the term magnitude.
        if (lmag != -kInf)
            max_log_err = std::max(
                max_log_err, lmag + std::log(kEps * (8.0L + std::fabs(lg))));
        long double tol =
            std::max((long double)acc.abs_tol,
                     (long double)acc.rel_tol * std::fabs(sum));
        if (std::fabs(contrib) < 0.25L * tol && k > 2) {
            if (++quiet >= 3) {
                converged = true;
                break;
            }
        } else {
            quiet = 0;
        }
        if (th == 0.0L) {
            converged = true;
            break;
        }
        log_term += std::log(th) - std::log((long double)(k + 1));
    }
    long double log_floor = max_log_err;
    if (!converged) {
        // abs_tol, not rel_tol*|sum|: an unconverged sum is not a scale
        if (log_floor > std::log((long double)acc.abs_tol) && q.theta > 1.0)
            return {0.0, true};
        throw NonConvergence("wright_m: series did not converge");
    }
    long double log_tol = std::log(std::max(
        (long double)acc.abs_tol, (long double)acc.rel_tol * std::fabs(sum)));
    double v = (double)sum;
    if (v < 0.0 || std::log(std::fabs((long double)v) +
                            std::numeric_limits<long double>::denorm_min()) <=
                       log_floor) {
        // Past the resolvable super-exponential decay range.
        return {0.0, true};
    }
    if (log_floor > log_tol && q.theta > 1.0) return {0.0, true};
    return {v, false};
}

double wright_moment(double alpha, double zeta, const Accuracy& acc) {
    acc.validate();
    if (!(zeta > -1.0)) throw DomainError("wright_moment: zeta must be > -1");
    // Integrate theta^zeta M_alpha(theta) up to the point where either the
    // integrand underflows or the series cancellation floor is reached.
    double theta_max = 40.0;
    {
        WrightQuery q{alpha, 0.0};
        for (double th = 4.0; th <= 40.0; th += 2.0) {
            q.theta = th;
            WrightValue w = wright_m(q, acc);
            if (w.underflow || w.value * std::pow(th, std::max(zeta, 0.0)) <
                                   1e-3 * acc.abs_tol) {
                theta_max = th;
                break;
            }
        }
    }
    auto f = [&](double th) {
        WrightValue w = wright_m({alpha, th}, acc);
        return std::pow(th, zeta) * w.value;
    };
    // Split at theta = 1: as alpha -> 1 the density spikes just below 1, and
    // tanh-sinh only clusters nodes at interval endpoints.
    double v;
    if (theta_max > 1.0) {
        v = integrate_tanh_sinh(f, 0.0, 1.0, 0.1 * acc.abs_tol,
                                0.1 * acc.rel_tol, 11) +
            integrate_tanh_sinh(f, 1.0, theta_max, 0.1 * acc.abs_tol,
                                0.1 * acc.rel_tol, 11);
    } else {
        v = integrate_tanh_sinh(f, 0.0, theta_max, 0.1 * acc.abs_tol,
                                0.1 * acc.rel_tol, 11);
    }
    if (!(v > 0.0)) throw NonConvergence("wright_moment: quadrature failed");
    return v;
}

}  // namespace tsfe

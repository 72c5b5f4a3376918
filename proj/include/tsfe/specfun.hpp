#pragma once

#include <complex>

#include "tsfe/errors.hpp"

namespace tsfe {

/// Tolerance bundle shared by the scalar special-function evaluators.
struct Accuracy {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_terms = 2000;

    void validate() const {
        if (!(abs_tol > 0.0 && abs_tol < 1.0) || !(rel_tol > 0.0 && rel_tol < 1.0))
            throw DomainError("Accuracy: tolerances must lie in (0,1)");
        if (max_terms < 16) throw DomainError("Accuracy: max_terms must be >= 16");
    }
};

struct MLQuery {
    double alpha;  // in (0,2]
    double beta;
    std::complex<double> z;
};

struct WrightQuery {
    double alpha;  // in (0,1)
    double theta;  // >= 0
};

struct WrightValue {
    double value;
    bool underflow;  // true when theta is past the resolvable decay range
};

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z).
/// Regime selection (power series, real-line integral representation,
/// asymptotic expansion, exact shortcuts at alpha in {1,2}) is internal.
std::complex<double> mittag_leffler(const MLQuery& q, const Accuracy& acc = {});

/// Convenience wrapper for real arguments on the negative axis, the case the
/// kernel and solver modules use exclusively.
double mittag_leffler_real(double alpha, double beta, double x,
                           const Accuracy& acc = {});

/// t^{alpha-gamma} E_{alpha,1+alpha-gamma}(-t^alpha * lam).
double ml_symbol(double alpha, double gamma, double t, double lam,
                 const Accuracy& acc = {});

/// Wright M-function M_alpha(theta), the density of the inverse alpha-stable
/// subordinator at unit time.
WrightValue wright_m(const WrightQuery& q, const Accuracy& acc = {});

/// Moment integral of M_alpha: equals Gamma(1+zeta)/Gamma(1+alpha*zeta).
double wright_moment(double alpha, double zeta, const Accuracy& acc = {});

}  // namespace tsfe

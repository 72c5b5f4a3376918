#pragma once

#include "tsfe/bernstein.hpp"
#include "tsfe/grid.hpp"
#include "tsfe/specfun.hpp"

namespace tsfe {

/// The time-space fractional equation d_t^alpha w = phi(Delta) w + h with
/// zero initial condition, posed on grid (time starting at 0).
struct TsfeProblem {
    BernsteinFunction phi;
    double alpha;
    SpaceTimeGrid grid;
    Field h;  // spacetime

    void validate() const;
};

/// Discrete Duhamel solution: per Fourier mode,
/// w_k(t) = int_0^t (t-tau)^{alpha-1} E_{alpha,alpha}(-(t-tau)^alpha
/// phi(|xi_k|^2)) h_k(tau) dtau, by product integration (piecewise-linear
/// h_k, kernel integrated exactly through the Mittag-Leffler antiderivative
/// int_0^s r^{alpha-1}E_{alpha,alpha}(-rho r^alpha) dr =
/// s^alpha E_{alpha,alpha+1}(-rho s^alpha)).
Field solve_tsfe(const TsfeProblem& p, const Accuracy& acc = {});

/// G0: the same convolution with the indicator window 0 < t - tau < T,
/// applied exactly at quadrature level. h may live on a two-sided time grid
/// (t_start < 0); it must vanish at the left boundary.
Field apply_g0(const BernsteinFunction& phi, double alpha, double T,
               const Field& h, const Accuracy& acc = {});

/// G1 = phi(Delta) applied to the unwindowed G0 convolution; mode-wise the
/// kernel -phi(|xi|^2)(t-tau)^{alpha-1}E_{alpha,alpha}(...).
Field apply_g1(const BernsteinFunction& phi, double alpha, const Field& h,
               const Accuracy& acc = {});

/// Discrete L2 norm of caputo_l1(w) - phi(Delta)w - h over interior time
/// nodes, normalized by the norm of h there.
double residual(const TsfeProblem& p, const Field& w, const Accuracy& acc = {});

}  // namespace tsfe

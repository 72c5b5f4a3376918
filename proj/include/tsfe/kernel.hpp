#pragma once

#include <array>
#include <vector>

#include "tsfe/bernstein.hpp"
#include "tsfe/grid.hpp"
#include "tsfe/specfun.hpp"

namespace tsfe {

/// One spatial slice of the fundamental solution S_{alpha,gamma,phi}(t, .).
struct KernelSample {
    double alpha;
    double gamma;
    double t;
    Field field;  // space domain
    bool alias_warning = false;  // symbol not negligible at the Nyquist shell
};

struct BoundReport {
    double constant_hat;
    std::array<double, 3> argmax{0.0, 0.0, 0.0};
    double refinement_growth;
};

/// Inverse DFT of the symbol t^{alpha-gamma} E_{alpha,1+alpha-gamma}(-t^alpha
/// phi(|xi|^2)) on the frequency lattice.
KernelSample kernel_fourier(const BernsteinFunction& phi, double alpha,
                            double gamma, double t, const SpaceTimeGrid& grid,
                            const Accuracy& acc = {});

/// Subordination route: S_{alpha,phi}(t,.) = int_0^inf p(t^alpha u, .)
/// M_alpha(u) du with p the spectral heat kernel of phi(Delta). Equals the
/// gamma = alpha Fourier kernel whose symbol is E_{alpha,1}(-t^alpha phi).
KernelSample kernel_subordination(const BernsteinFunction& phi, double alpha,
                                  double t, const SpaceTimeGrid& grid,
                                  const Accuracy& acc = {});

/// Prop 3.1(ii) comparator: max over lattice points with |x| >= 4 cells of
/// |D^k S| |x|^{d+k} / (t^{2 alpha - gamma} phi(|x|^{-2})). k in {0,1};
/// k = 1 is the spectral first derivative along axis 0.
double pointwise_bound_constant(const KernelSample& sample,
                                const BernsteinFunction& phi, int k,
                                std::array<double, 3>* argmax = nullptr);

/// pointwise_bound_constant at the given grid and at the simultaneously
/// (n, L)-doubled grid; refinement_growth is their ratio.
BoundReport verify_pointwise_bound(const BernsteinFunction& phi, double alpha,
                                   double gamma, double t,
                                   const SpaceTimeGrid& grid, int k,
                                   const Accuracy& acc = {});

/// Prop 3.1(iii): constant_hat = max over t of t^{gamma-alpha} * L1 norm of
/// the kernel; refinement growth under (n, L) doubling.
BoundReport verify_l1_bound(const BernsteinFunction& phi, double alpha,
                            double gamma, const std::vector<double>& t_list,
                            const SpaceTimeGrid& grid, const Accuracy& acc = {});

/// Hormander sum (3.2) for m(xi) = phi(|xi|^2) E_{alpha,alpha}(-phi(|xi|^2)):
/// sum over |multi-index| <= ceil(d/2)+1 of int_{K/2<|xi|<K}
/// |K^{|g|} D^g m|^2 dxi, normalized by K^d. d in {1,2}.
double multiplier_sum(const BernsteinFunction& phi, double alpha, double K,
                      int d, const Accuracy& acc = {});

}  // namespace tsfe

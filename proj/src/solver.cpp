#include "tsfe/solver.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <vector>

namespace tsfe {

namespace {

/// Product-integration weights for one Fourier mode: the contribution of the
/// linear segment [t_{n-m}, t_{n-m+1}] to w_n is
///   h_{n-m} (c0[m] - c1[m]) + h_{n-m+1} c1[m],
/// where, with s = t_n - tau, a = (m-1)dt, b = m dt (clipped to the window),
///   c0[m] = K0(b) - K0(a),
///   c1[m] = (b (K0(b)-K0(a)) - (K1(b)-K1(a))) / dt,
///   K0(s) = s^alpha E_{alpha,alpha+1}(-lam s^alpha),
///   K1(s) = s^{alpha+1} [E_{alpha,alpha+1} - E_{alpha,alpha+2}](-lam s^alpha).
struct ModeWeights {
    std::vector<double> c0, c1;
};

ModeWeights mode_weights(double alpha, double lam, double dt, int nt,
                         double window, const Accuracy& acc) {
    auto K0 = [&](double s) {
        if (s <= 0.0) return 0.0;
        double sa = std::pow(s, alpha);
        return sa * mittag_leffler_real(alpha, alpha + 1.0, -lam * sa, acc);
    };
    auto K1 = [&](double s) {
        if (s <= 0.0) return 0.0;
        double sa = std::pow(s, alpha);
        return sa * s *
               (mittag_leffler_real(alpha, alpha + 1.0, -lam * sa, acc) -
                mittag_leffler_real(alpha, alpha + 2.0, -lam * sa, acc));
    };
    ModeWeights w;
    w.c0.assign(nt + 1, 0.0);
    w.c1.assign(nt + 1, 0.0);
    for (int m = 1; m <= nt; ++m) {
        double a = (m - 1) * dt, b = m * dt;
        if (a >= window) continue;
        double bc = std::min(b, window);
        double d0 = K0(bc) - K0(a);
        double d1 = K1(bc) - K1(a);
        w.c0[m] = d0;
        w.c1[m] = (b * d0 - d1) / dt;  // weight keeps the unclipped b
    }
    return w;
}

/// Shared Duhamel machinery: convolve every mode of h with the kernel
/// (t-tau)^{alpha-1}E_{alpha,alpha}(-(t-tau)^alpha phi(|xi|^2)), optionally
/// windowed to t-tau < window, optionally multiplied by -phi(|xi|^2).
Field duhamel(const BernsteinFunction& phi, double alpha, const Field& h,
              double window, bool mul_phi, const Accuracy& acc) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("duhamel: alpha must be in (0,1)");
    if (h.domain != FieldDomain::spacetime)
        throw GridMismatch("duhamel: need a spacetime field");
    const auto& g = h.grid;
    const int nt = g.n_time;
    const double dt = g.dt();
    Field hat = dft_space(h, -1);
    Field out = Field::zeros(g, FieldDomain::spacetime);
    Field what = dft_space(out, -1);  // zeros, right shape
    size_t np = g.points();
    std::map<double, ModeWeights> cache;
    for (size_t idx = 0; idx < np; ++idx) {
        size_t rem = idx;
        double xi2 = 0.0;
        for (int ax = 0; ax < g.d; ++ax) {
            int k = int(rem % size_t(g.n));
            rem /= size_t(g.n);
            double x = g.xi(k);
            xi2 += x * x;
        }
        double lam = phi(xi2);
        double factor = mul_phi ? -lam : 1.0;
        if (mul_phi && xi2 == 0.0) continue;  // phi(0+) = 0 kills the mode
        auto it = cache.find(xi2);
        if (it == cache.end())
            it = cache.emplace(xi2, mode_weights(alpha, lam, dt, nt, window, acc))
                     .first;
        const ModeWeights& mw = it->second;
        for (int n = 1; n <= nt; ++n) {
            std::complex<double> s = 0.0;
            for (int m = 1; m <= n; ++m)
                s += hat.at(n - m, idx) * (mw.c0[m] - mw.c1[m]) +
                     hat.at(n - m + 1, idx) * mw.c1[m];
            what.at(n, idx) = factor * s;
        }
    }
    return dft_space(what, 1);
}

}  // namespace

void TsfeProblem::validate() const {
    grid.validate();
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("TsfeProblem: alpha must be in (0,1)");
    if (grid.t_start != 0.0)
        throw GridMismatch("TsfeProblem: time grid must start at 0");
    if (h.domain != FieldDomain::spacetime || !(h.grid == grid))
        throw GridMismatch("TsfeProblem: h must live on the problem grid");
    h.check_finite();
}

Field solve_tsfe(const TsfeProblem& p, const Accuracy& acc) {
    p.validate();
    return duhamel(p.phi, p.alpha, p.h,
                   std::numeric_limits<double>::infinity(), false, acc);
}

Field apply_g0(const BernsteinFunction& phi, double alpha, double T,
               const Field& h, const Accuracy& acc) {
    if (!(T > 0.0)) throw DomainError("apply_g0: window T must be > 0");
    if (h.grid.t_start < 0.0)
        for (size_t i = 0; i < h.grid.points(); ++i)
            if (std::abs(h.at(0, i)) != 0.0)
                throw DomainError("apply_g0: h must vanish at the left boundary");
    return duhamel(phi, alpha, h, T, false, acc);
}

Field apply_g1(const BernsteinFunction& phi, double alpha, const Field& h,
               const Accuracy& acc) {
    if (h.grid.t_start < 0.0)
        for (size_t i = 0; i < h.grid.points(); ++i)
            if (std::abs(h.at(0, i)) != 0.0)
                throw DomainError("apply_g1: h must vanish at the left boundary");
    return duhamel(phi, alpha, h, std::numeric_limits<double>::infinity(), true,
                   acc);
}

double residual(const TsfeProblem& p, const Field& w, const Accuracy& acc) {
    p.validate();
    if (!(w.grid == p.grid))
        throw GridMismatch("residual: w must live on the problem grid");
    Field dtw = caputo_l1(w, p.alpha);
    Field lw = apply_phi_delta(p.phi, w);
    size_t np = p.grid.points();
    double num = 0.0, den = 0.0;
    for (int n = 1; n <= p.grid.n_time; ++n)
        for (size_t i = 0; i < np; ++i) {
            num += std::norm(dtw.at(n, i) - lw.at(n, i) - p.h.at(n, i));
            den += std::norm(p.h.at(n, i));
        }
    (void)acc;
    if (den == 0.0) return num == 0.0 ? 0.0 : std::sqrt(num);
    return std::sqrt(num / den);
}

}  // namespace tsfe

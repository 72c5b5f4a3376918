#include "tsfe/quadrature.hpp"

#include <tuple>
#include <algorithm>
#include <cmath>

namespace tsfe {

namespace {

constexpr double kPiHalf = 1.5707963267948966;

}  // namespace

double integrate_exp_sinh(const std::function<double(double)>& f,
                          double abs_tol, double rel_tol, int max_levels) {
    // Level 0: h = 1, all integer k. Each refinement halves h and adds the
    // odd multiples, so previous sums are reused.
    double h = 1.0;
    double sum = 0.0;
    {
        // explicit first level: k from -K..K
        for (int k = -60; k <= 60; ++k) {
            double t = k * h;
            double s = kPiHalf * std::sinh(t);
            if (s > 690.0 || s < -690.0) continue;
            double x = std::exp(s);
            double v = f(x) * x * kPiHalf * std::cosh(t);
            if (std::isfinite(v)) sum += v;
        }
    }
    double prev = sum * h;
    for (int level = 1; level <= max_levels; ++level) {
        h *= 0.5;
        double add = 0.0;
        // odd multiples of h only; previous levels are reused
        for (int dir : {+1, -1}) {
            for (int k = dir; std::abs(k) < 2000000; k += 2 * dir) {
                double t = k * h;
                double s = kPiHalf * std::sinh(t);
                if (s > 690.0 || s < -690.0) break;
                double x = std::exp(s);
                double v = f(x) * x * kPiHalf * std::cosh(t);
                if (std::isfinite(v)) add += v;
                if (std::abs(v) < 1e-300 && std::abs(t) > 3.0) break;
            }
        }
        sum += add;
        double cur = sum * h;
        double err = std::abs(cur - prev);
        if (level >= 3 && err <= std::max(abs_tol, rel_tol * std::abs(cur)))
            return cur;
        prev = cur;
    }
    return prev;  // best effort; callers validate against tolerances
}

double integrate_tanh_sinh(const std::function<double(double)>& f, double a,
                           double b, double abs_tol, double rel_tol,
                           int max_levels) {
    // x = c + r*tanh(pi/2 sinh t), c midpoint, r half-width.
    const double c = 0.5 * (a + b);
    const double r = 0.5 * (b - a);
    auto eval = [&](double t) -> double {
        double u = kPiHalf * std::sinh(t);
        double sech = 1.0 / std::cosh(u);
        double x = c + r * std::tanh(u);
        double w = r * kPiHalf * std::cosh(t) * sech * sech;
        if (x <= a || x >= b) return 0.0;
        double v = f(x) * w;
        return std::isfinite(v) ? v : 0.0;
    };
    double h = 1.0;
    double sum = eval(0.0);
    for (int k = 1; k <= 7; ++k) sum += eval(k * h) + eval(-k * h);
    double prev = sum * h;
    for (int level = 1; level <= max_levels; ++level) {
        h *= 0.5;
        double add = 0.0;
        for (int dir : {+1, -1}) {
            for (int k = dir;; k += 2 * dir) {
                double v = eval(k * h);
                add += v;
                if (std::abs(k * h) > 4.0 && std::abs(v) < 1e-300) break;
                if (std::abs(k) > 2000000) break;
            }
        }
        sum += add;
        double cur = sum * h;
        double err = std::abs(cur - prev);
        if (level >= 3 && err <= std::max(abs_tol, rel_tol * std::abs(cur)))
            return cur;
        prev = cur;
    }
    return prev;
}

GaussLaguerre::GaussLaguerre(int n) {
    // Golub-Welsch: symmetric tridiagonal with diag 2i+1, off-diag i+1.
    std::vector<double> d(n), e(n);
    for (int i = 0; i < n; ++i) {
        d[i] = 2.0 * i + 1.0;
        e[i] = i + 1.0;  // e[i] couples i and i+1; e[n-1] unused
    }
    // QL with implicit shifts; first components of eigenvectors give weights.
    std::vector<double> z(n, 0.0);
    z[0] = 1.0;
    std::vector<std::vector<double>> vec(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) vec[i][i] = 1.0;
    std::vector<double> sub(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) sub[i] = e[i];

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        for (;;) {
            int m;
            for (m = l; m + 1 < n; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(sub[m]) <= 1e-15 * dd) break;
            }
            if (m == l) break;
            if (++iter > 60) break;
            double g = (d[l + 1] - d[l]) / (2.0 * sub[l]);
            double rr = std::hypot(g, 1.0);
            g = d[m] - d[l] + sub[l] / (g + (g >= 0 ? std::abs(rr) : -std::abs(rr)));
            double s = 1.0, cth = 1.0, p = 0.0;
            for (int i = m - 1; i >= l; --i) {
                double ff = s * sub[i];
                double bb = cth * sub[i];
                rr = std::hypot(ff, g);
                sub[i + 1] = rr;
                if (rr == 0.0) {
                    d[i + 1] -= p;
                    sub[m] = 0.0;
                    break;
                }
                s = ff / rr;
                cth = g / rr;
                g = d[i + 1] - p;
                rr = (d[i] - g) * s + 2.0 * cth * bb;
                p = s * rr;
                d[i + 1] = g + p;
                g = cth * rr - bb;
                for (int k = 0; k < n; ++k) {
                    double fk = vec[k][i + 1];
                    vec[k][i + 1] = s * vec[k][i] + cth * fk;
                    vec[k][i] = cth * vec[k][i] - s * fk;
                }
            }
            d[l] -= p;
            sub[l] = g;
            sub[m] = 0.0;
        }
    }
    std::vector<std::tuple<double, double, double>> nw(n);
    for (int i = 0; i < n; ++i) {
        double v0 = std::abs(vec[0][i]);
        double w = v0 * v0;  // total weight of e^{-x} is 1
        // w*e^{x} in log space; v0 stays representable long after w underflows
        double sw = v0 > 0.0 ? std::exp(2.0 * std::log(v0) + d[i]) : 0.0;
        nw[i] = {d[i], w, sw};
    }
    std::sort(nw.begin(), nw.end());
    nodes.resize(n);
    weights.resize(n);
    scaled_weights.resize(n);
    for (int i = 0; i < n; ++i) {
        nodes[i] = std::get<0>(nw[i]);
        weights[i] = std::get<1>(nw[i]);
        scaled_weights[i] = std::get<2>(nw[i]);
    }
}

}  // namespace tsfe

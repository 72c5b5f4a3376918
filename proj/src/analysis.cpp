#include "tsfe/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <array>
#include <deque>
#include <limits>
#include <random>

#include "tsfe/solver.hpp"

namespace tsfe {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// max of v over windows [i+lo, i+hi] clipped to [0, n), monotone deque.
std::vector<double> sliding_max_clipped(const std::vector<double>& v, int lo,
                                        int hi) {
    int n = int(v.size());
    std::vector<double> out(n);
    std::deque<int> dq;
    int next = 0;
    for (int i = 0; i < n; ++i) {
        int wlo = std::max(0, i + lo), whi = std::min(n - 1, i + hi);
        while (next <= whi) {
            while (!dq.empty() && v[dq.back()] <= v[next]) dq.pop_back();
            dq.push_back(next++);
        }
        while (!dq.empty() && dq.front() < wlo) dq.pop_front();
        out[i] = dq.empty() ? v[i] : v[dq.front()];
    }
    return out;
}

/// max over periodic windows i +- m, m <= n/2.
std::vector<double> sliding_max_periodic(const std::vector<double>& v, int m) {
    int n = int(v.size());
    std::vector<double> ext(v.size() * 3);
    for (int r = 0; r < 3; ++r)
        std::copy(v.begin(), v.end(), ext.begin() + r * n);
    std::vector<double> full = sliding_max_clipped(ext, -m, m);
    return std::vector<double>(full.begin() + n, full.begin() + 2 * n);
}

void require_d1(const Field& f, const char* who) {
    if (f.grid.d != 1) throw Unsupported(std::string(who) + ": d = 1 only");
}

/// Dyadic cylinder ladder: (m_x cells, m_t nodes) for rho = m_x*dx from
/// 2 cells up to L, with m_t = clamp(round(lambda(rho)/dt), 1, n_time+1).
std::vector<std::pair<int, int>> cylinder_ladder(const SpaceTimeGrid& g,
                                                 const BernsteinFunction& phi,
                                                 double alpha) {
    std::vector<std::pair<int, int>> out;
    for (int mx = 2; mx <= g.n / 2; mx *= 2) {
        double rho = mx * g.dx();
        double lam = lambda_of_rho(phi, alpha, rho);
        int mt = int(std::llround(lam / g.dt()));
        mt = std::clamp(mt, 1, g.n_time + 1);
        out.emplace_back(mx, mt);
    }
    return out;
}

/// Backward-in-time clipped window average of a (n_time+1) x n real array:
/// B(t0, x0) = mean over t in [t0-mt+1, t0] cap [0, nt], x in x0 +- mx
/// (periodic).
std::vector<double> cylinder_average(const std::vector<double>& a,
                                     const SpaceTimeGrid& g, int mt, int mx) {
    int nt = g.n_time, n = g.n;
    // prefix in t per column
    std::vector<double> pt((nt + 2) * n, 0.0);
    for (int t = 0; t <= nt; ++t)
        for (int x = 0; x < n; ++x)
            pt[(t + 1) * n + x] = pt[t * n + x] + a[t * n + x];
    std::vector<double> out((nt + 1) * n);
    std::vector<double> row(n), prow(3 * n + 1);
    for (int t0 = 0; t0 <= nt; ++t0) {
        int lo = std::max(0, t0 - mt + 1);
        int cnt = t0 - lo + 1;
        for (int x = 0; x < n; ++x)
            row[x] = pt[(t0 + 1) * n + x] - pt[lo * n + x];
        // periodic prefix over tripled row: the window around center x + n
        // reaches index 2n + mx, so a doubled row is not enough
        prow[0] = 0.0;
        for (int i = 0; i < 3 * n; ++i) prow[i + 1] = prow[i] + row[i % n];
        for (int x = 0; x < n; ++x) {
            int c = x + n;
            double s = prow[c + mx + 1] - prow[c - mx];
            out[t0 * n + x] = s / (double(cnt) * (2 * mx + 1));
        }
    }
    return out;
}

/// Place anchored values at the points they cover: out(t,x) = max over
/// t0 in [t, t+mt-1] (clipped) and x0 in x +- mx (periodic) of B(t0,x0).
std::vector<double> cylinder_place(const std::vector<double>& b,
                                   const SpaceTimeGrid& g, int mt, int mx) {
    int nt = g.n_time, n = g.n;
    std::vector<double> tmp((nt + 1) * n);
    std::vector<double> col(nt + 1);
    for (int x = 0; x < n; ++x) {
        for (int t = 0; t <= nt; ++t) col[t] = b[t * n + x];
        std::vector<double> mcol = sliding_max_clipped(col, 0, mt - 1);
        for (int t = 0; t <= nt; ++t) tmp[t * n + x] = mcol[t];
    }
    std::vector<double> out((nt + 1) * n);
    std::vector<double> row(n);
    for (int t = 0; t <= nt; ++t) {
        for (int x = 0; x < n; ++x) row[x] = tmp[t * n + x];
        std::vector<double> mrow = sliding_max_periodic(row, mx);
        for (int x = 0; x < n; ++x) out[t * n + x] = mrow[x];
    }
    return out;
}

double smooth01(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    double a = std::exp(-1.0 / u), b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

double bump(double u) {
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

struct Draws {
    std::vector<double> a, b;  // spatial cos/sin coefficients
    std::array<double, 4> c;   // time profile coefficients
};

Draws draw_coeffs(std::mt19937& rng, int k_max) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Draws d;
    d.a.resize(k_max);
    d.b.resize(k_max);
    for (int k = 0; k < k_max; ++k) {
        d.a[k] = nd(rng) / (1.0 + k);
        d.b[k] = nd(rng) / (1.0 + k);
    }
    for (auto& c : d.c) c = nd(rng);
    return d;
}

double spatial_profile(const Draws& d, double x, double L) {
    double s = 0.0;
    for (size_t k = 0; k < d.a.size(); ++k) {
        double xi = kPi * double(k + 1) / L;
        s += d.a[k] * std::cos(xi * x) + d.b[k] * std::sin(xi * x);
    }
    return s;
}

double time_profile(const Draws& d, double t, double t0, double t1) {
    double tau = (t - t0) / (t1 - t0);
    return d.c[0] + d.c[1] * tau + d.c[2] * std::cos(2.0 * kPi * tau) +
           d.c[3] * std::sin(2.0 * kPi * tau);
}

/// h for one oscillation-lemma trial: random smooth profile times the
/// support-case masks for the given (rho, lambda).
Field case_field(const SpaceTimeGrid& g, const Draws& d, SupportCase sc,
                 double rho, double lam) {
    Field h = Field::zeros(g, FieldDomain::spacetime);
    for (int tj = 0; tj <= g.n_time; ++tj) {
        double t = g.time(tj);
        double mt = 0.0;
        switch (sc) {
            case SupportCase::local:
                mt = bump(t / (3.0 * lam));
                break;
            case SupportCase::time_strip:
                mt = smooth01((t + 3.0 * lam) / lam);
                break;
            case SupportCase::past_ball:
            case SupportCase::past_complement:
                mt = smooth01((t - g.t_start) / (0.5 * lam)) *
                     smooth01((-2.0 * lam - t) / (0.5 * lam));
                break;
        }
        if (mt == 0.0) continue;
        double pt = mt * time_profile(d, t, g.t_start, g.T);
        for (int j = 0; j < g.n; ++j) {
            double x = g.coord(j);
            double mx = 1.0;
            if (sc == SupportCase::local || sc == SupportCase::past_ball)
                mx = bump(x / (3.0 * rho));
            else if (sc == SupportCase::past_complement)
                mx = smooth01((std::abs(x) - 2.0 * rho) / rho);
            if (mx == 0.0) continue;
            h.at(tj, size_t(j)) = pt * mx * spatial_profile(d, x, g.L);
        }
    }
    return h;
}

Field abs_pow(const Field& f, double p) {
    Field out = f;
    for (auto& v : out.values) v = std::pow(std::abs(v), p);
    return out;
}

}  // namespace

void Weight::validate() const {
    if (samples.empty()) throw DomainError("Weight: empty");
    for (double s : samples)
        if (!(s > 0.0) || !std::isfinite(s))
            throw DomainError("Weight: samples must be positive and finite");
}

Weight weight_ones(size_t n) { return Weight{std::vector<double>(n, 1.0)}; }

Weight power_weight_space(const SpaceTimeGrid& g, double a) {
    if (g.d != 1) throw Unsupported("power_weight_space: d = 1 only");
    Weight w;
    w.samples.resize(g.points());
    for (int j = 0; j < g.n; ++j) {
        double r = std::max(std::abs(g.coord(j)), g.dx());
        w.samples[size_t(j)] = std::pow(r, a);
    }
    w.validate();
    return w;
}

Weight power_weight_time(const SpaceTimeGrid& g, double a) {
    Weight w;
    w.samples.resize(size_t(g.n_time) + 1);
    for (int j = 0; j <= g.n_time; ++j) {
        double r = std::max(std::abs(g.time(j)), g.dt());
        w.samples[size_t(j)] = std::pow(r, a);
    }
    w.validate();
    return w;
}

double ap_characteristic(const Weight& mu, double p, int d) {
    mu.validate();
    if (!(p > 1.0)) throw DomainError("ap_characteristic: need p > 1");
    size_t sz = mu.samples.size();
    double ex = -1.0 / (p - 1.0);
    if (d == 1) {
        int n = int(sz);
        if (n < 5) throw DomainError("ap_characteristic: too few samples");
        std::vector<double> pm(n + 1, 0.0), ps(n + 1, 0.0);
        for (int i = 0; i < n; ++i) {
            pm[i + 1] = pm[i] + mu.samples[size_t(i)];
            ps[i + 1] = ps[i] + std::pow(mu.samples[size_t(i)], ex);
        }
        double best = 0.0;
        for (int m = 2; m <= (n - 1) / 2; ++m)
            for (int c = m; c + m < n; ++c) {
                double cnt = 2.0 * m + 1.0;
                double am = (pm[c + m + 1] - pm[c - m]) / cnt;
                double as = (ps[c + m + 1] - ps[c - m]) / cnt;
                best = std::max(best, am * std::pow(as, p - 1.0));
            }
        return best;
    }
    if (d == 2) {
        int n = int(std::llround(std::sqrt(double(sz))));
        if (size_t(n) * size_t(n) != sz)
            throw GridMismatch("ap_characteristic: d=2 needs n^2 samples");
        double best = 0.0;
        for (int m = 2; m <= n / 2; m *= 2) {
            std::vector<std::pair<int, int>> off;
            for (int dy = -m; dy <= m; ++dy)
                for (int dxo = -m; dxo <= m; ++dxo)
                    if (dxo * dxo + dy * dy <= m * m) off.emplace_back(dxo, dy);
            for (int cy = m; cy + m < n; ++cy)
                for (int cx = m; cx + m < n; ++cx) {
                    double sm = 0.0, ss = 0.0;
                    for (auto [dxo, dy] : off) {
                        double v = mu.samples[size_t(cy + dy) * n + (cx + dxo)];
                        sm += v;
                        ss += std::pow(v, ex);
                    }
                    double cnt = double(off.size());
                    best = std::max(best,
                                    (sm / cnt) * std::pow(ss / cnt, p - 1.0));
                }
        }
        return best;
    }
    throw Unsupported("ap_characteristic: d in {1,2}");
}

double mixed_norm(const Field& f, const MixedNormParams& params) {
    if (f.domain != FieldDomain::spacetime)
        throw GridMismatch("mixed_norm: need a spacetime field");
    const auto& g = f.grid;
    if (params.mu1.samples.size() != g.points() ||
        params.mu2.samples.size() != size_t(g.n_time) + 1)
        throw GridMismatch("mixed_norm: weight sizes do not match the grid");
    if (!(params.p >= 1.0 && params.q >= 1.0))
        throw DomainError("mixed_norm: need p, q >= 1");
    params.mu1.validate();
    params.mu2.validate();
    double tol = 1e-12 * (std::abs(params.T) + 1.0);
    int j_lo = -1, j_hi = -1;
    for (int j = 0; j <= g.n_time; ++j) {
        double t = g.time(j);
        if (t >= -tol && t <= params.T + tol) {
            if (j_lo < 0) j_lo = j;
            j_hi = j;
        }
    }
    if (j_lo < 0 || j_hi <= j_lo)
        throw DomainError("mixed_norm: [0, T] covers fewer than two time nodes");
    double cv = g.cell_volume();
    double acc = 0.0;
    for (int j = j_lo; j <= j_hi; ++j) {
        double inner = 0.0;
        for (size_t i = 0; i < g.points(); ++i)
            inner += std::pow(std::abs(f.at(j, i)), params.p) *
                     params.mu1.samples[i] * cv;
        double wt = (j == j_lo || j == j_hi) ? 0.5 : 1.0;
        acc += std::pow(inner, params.q / params.p) *
               params.mu2.samples[size_t(j)] * wt * g.dt();
    }
    return std::pow(acc, 1.0 / params.q);
}

Field hl_maximal(const Field& f, MaximalMode mode, const BernsteinFunction& phi,
                 double alpha) {
    require_d1(f, "hl_maximal");
    const auto& g = f.grid;
    int n = g.n, ns = f.n_slices();
    Field out = f;
    if (mode == MaximalMode::space) {
        for (int s = 0; s < ns; ++s) {
            // tripled periodic prefix: windows around center c + n reach
            // index 2n + m
            std::vector<double> a(n), best(n, 0.0), prow(3 * n + 1, 0.0);
            for (int j = 0; j < n; ++j) a[j] = std::abs(f.at(s, size_t(j)));
            for (int i = 0; i < 3 * n; ++i) prow[i + 1] = prow[i] + a[i % n];
            for (int m = 1; m <= n / 2; ++m) {
                std::vector<double> avg(n);
                for (int c = 0; c < n; ++c)
                    avg[c] = (prow[c + n + m + 1] - prow[c + n - m]) /
                             double(2 * m + 1);
                std::vector<double> placed = sliding_max_periodic(avg, m);
                for (int j = 0; j < n; ++j) best[j] = std::max(best[j], placed[j]);
            }
            for (int j = 0; j < n; ++j) out.at(s, size_t(j)) = best[j];
        }
        return out;
    }
    if (mode == MaximalMode::time) {
        if (f.domain != FieldDomain::spacetime)
            throw GridMismatch("hl_maximal: time mode needs a spacetime field");
        int nt = g.n_time;
        for (int j = 0; j < n; ++j) {
            std::vector<double> a(nt + 1), best(nt + 1, 0.0), pt(nt + 2, 0.0);
            for (int s = 0; s <= nt; ++s) a[s] = std::abs(f.at(s, size_t(j)));
            for (int s = 0; s <= nt; ++s) pt[s + 1] = pt[s] + a[s];
            for (int m = 1; m <= nt; ++m) {
                std::vector<double> avg(nt + 1);
                for (int c = 0; c <= nt; ++c) {
                    int lo = std::max(0, c - m), hi = std::min(nt, c + m);
                    avg[c] = (pt[hi + 1] - pt[lo]) / double(hi - lo + 1);
                }
                std::vector<double> placed = sliding_max_clipped(avg, -m, m);
                for (int s = 0; s <= nt; ++s)
                    best[s] = std::max(best[s], placed[s]);
            }
            for (int s = 0; s <= nt; ++s) out.at(s, size_t(j)) = best[s];
        }
        return out;
    }
    // spacetime_cylinder
    if (f.domain != FieldDomain::spacetime)
        throw GridMismatch("hl_maximal: cylinder mode needs a spacetime field");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("hl_maximal: alpha must be in (0,1)");
    int nt = g.n_time;
    std::vector<double> a((nt + 1) * n), best((nt + 1) * n, 0.0);
    for (int s = 0; s <= nt; ++s)
        for (int j = 0; j < n; ++j)
            a[s * n + j] = std::abs(f.at(s, size_t(j)));
    for (auto [mx, mt] : cylinder_ladder(g, phi, alpha)) {
        std::vector<double> avg = cylinder_average(a, g, mt, mx);
        std::vector<double> placed = cylinder_place(avg, g, mt, mx);
        for (size_t i = 0; i < best.size(); ++i)
            best[i] = std::max(best[i], placed[i]);
    }
    for (int s = 0; s <= nt; ++s)
        for (int j = 0; j < n; ++j) out.at(s, size_t(j)) = best[s * n + j];
    return out;
}

Field sharp_function(const Field& f, const BernsteinFunction& phi,
                     double alpha) {
    require_d1(f, "sharp_function");
    if (f.domain != FieldDomain::spacetime)
        throw GridMismatch("sharp_function: need a spacetime field");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("sharp_function: alpha must be in (0,1)");
    const auto& g = f.grid;
    int n = g.n, nt = g.n_time;
    std::vector<std::complex<double>> v((nt + 1) * n);
    for (int s = 0; s <= nt; ++s)
        for (int j = 0; j < n; ++j) v[s * n + j] = f.at(s, size_t(j));
    std::vector<double> best((nt + 1) * n, 0.0);
    for (auto [mx, mt] : cylinder_ladder(g, phi, alpha)) {
        std::vector<double> osc((nt + 1) * n, 0.0);
        for (int t0 = 0; t0 <= nt; ++t0) {
            int lo = std::max(0, t0 - mt + 1);
            int cnt_t = t0 - lo + 1;
            double cnt = double(cnt_t) * (2 * mx + 1);
            for (int x0 = 0; x0 < n; ++x0) {
                std::complex<double> mean = 0.0;
                for (int t = lo; t <= t0; ++t)
                    for (int dxo = -mx; dxo <= mx; ++dxo)
                        mean += v[t * n + ((x0 + dxo + 2 * n) % n)];
                mean /= cnt;
                double o = 0.0;
                for (int t = lo; t <= t0; ++t)
                    for (int dxo = -mx; dxo <= mx; ++dxo)
                        o += std::abs(v[t * n + ((x0 + dxo + 2 * n) % n)] - mean);
                osc[t0 * n + x0] = o / cnt;
            }
        }
        std::vector<double> placed = cylinder_place(osc, g, mt, mx);
        for (size_t i = 0; i < best.size(); ++i)
            best[i] = std::max(best[i], placed[i]);
    }
    Field out = f;
    for (int s = 0; s <= nt; ++s)
        for (int j = 0; j < n; ++j) out.at(s, size_t(j)) = best[s * n + j];
    return out;
}

double littlewood_paley_norm(const Field& f, const BernsteinFunction& phi,
                             double s, double p, const Weight& mu) {
    if (f.domain != FieldDomain::space)
        throw GridMismatch("littlewood_paley_norm: need a space field");
    const auto& g = f.grid;
    if (mu.samples.size() != g.points())
        throw GridMismatch("littlewood_paley_norm: weight size mismatch");
    mu.validate();
    if (!(p >= 1.0)) throw DomainError("littlewood_paley_norm: need p >= 1");
    double xi_max = kPi * (g.n / 2) / g.L;
    int j_hi = int(std::ceil(std::log2(xi_max))) + 1;
    // normalized dyadic bump partition in log2|xi|
    auto weight_j = [&](double xi2, int j) {
        if (xi2 == 0.0) return j <= 0 ? 1.0 : 0.0;
        double vv = 0.5 * std::log2(xi2);
        double den = 0.0;
        for (int k = int(std::floor(vv)) - 1; k <= int(std::ceil(vv)) + 1; ++k)
            den += bump(vv - k);
        if (den == 0.0) return 0.0;
        if (j <= 0) {
            // S: all pieces at or below level 0
            double num = 0.0;
            for (int k = int(std::floor(vv)) - 1; k <= 0; ++k)
                num += bump(vv - k);
            return num / den;
        }
        return bump(vv - j) / den;
    };
    auto lp_norm = [&](const std::vector<double>& vals) {
        double acc = 0.0;
        double cv = g.cell_volume();
        for (size_t i = 0; i < vals.size(); ++i)
            acc += std::pow(vals[i], p) * mu.samples[i] * cv;
        return std::pow(acc, 1.0 / p);
    };
    Field sf = apply_multiplier(f, [&](const std::array<double, 3>&,
                                       double xi2) {
        return std::complex<double>(weight_j(xi2, 0), 0.0);
    });
    std::vector<double> sq(g.points(), 0.0), svals(g.points());
    for (size_t i = 0; i < g.points(); ++i) svals[i] = std::abs(sf.at(0, i));
    for (int j = 1; j <= j_hi; ++j) {
        Field dj = apply_multiplier(f, [&](const std::array<double, 3>&,
                                           double xi2) {
            return std::complex<double>(weight_j(xi2, j), 0.0);
        });
        double fac = std::pow(phi(std::pow(4.0, j)), s);
        for (size_t i = 0; i < g.points(); ++i)
            sq[i] += fac * std::norm(dj.at(0, i));
    }
    for (auto& x : sq) x = std::sqrt(x);
    return lp_norm(svals) + lp_norm(sq);
}

Field random_bandlimited_field(const SpaceTimeGrid& g, int k_max,
                               unsigned seed) {
    std::mt19937 rng(seed);
    Draws d = draw_coeffs(rng, k_max);
    Field h = Field::zeros(g, FieldDomain::spacetime);
    for (int tj = 0; tj <= g.n_time; ++tj) {
        double pt = time_profile(d, g.time(tj), g.t_start, g.T);
        for (int j = 0; j < g.n; ++j)
            h.at(tj, size_t(j)) = pt * spatial_profile(d, g.coord(j), g.L);
    }
    return h;
}

namespace {

struct OscSample {
    double g0 = 0.0, g1 = 0.0;
    bool used = false;
};

/// One (trial, rho) oscillation measurement on a given resolution. The grid
/// is rebuilt per rho so the cylinder Q = (-lambda, 0] x B_rho is resolved.
OscSample osc_sample(const BernsteinFunction& phi, double alpha, double p0,
                     SupportCase sc, const Draws& draws, double L, double rho,
                     int n, int n_time) {
    double lam = lambda_of_rho(phi, alpha, rho);
    SpaceTimeGrid g;
    g.d = 1;
    g.n = n;
    g.L = L;
    g.n_time = n_time;
    g.t_start = -4.0 * lam;
    g.T = 0.5 * lam;
    g.validate();
    Field h = case_field(g, draws, sc, rho, lam);
    double hmax = 0.0;
    for (const auto& v : h.values) hmax = std::max(hmax, std::abs(v));
    OscSample out;
    if (hmax < 1e-14) return out;
    Accuracy acc;
    Field w0 = apply_g0(phi, alpha, 4.0 * lam, h, acc);
    Field w1 = apply_g1(phi, alpha, h, acc);
    // maximal functions of |h|^p0
    Field hp = abs_pow(h, p0);
    Field mtx = hl_maximal(hp, MaximalMode::spacetime_cylinder, phi, alpha);
    // Q nodes: t in (-lambda, 0], |x| <= rho
    std::vector<int> qt, qx;
    for (int tj = 0; tj <= g.n_time; ++tj) {
        double t = g.time(tj);
        if (t > -lam - 1e-12 * lam && t <= 1e-12 * lam) qt.push_back(tj);
    }
    for (int j = 0; j < g.n; ++j)
        if (std::abs(g.coord(j)) <= rho + 1e-12) qx.push_back(j);
    if (qt.empty() || qx.empty()) return out;
    double rhs_min = std::numeric_limits<double>::infinity();
    if (sc == SupportCase::past_complement) {
        Field mx = hl_maximal(hp, MaximalMode::space, phi, alpha);
        Field mtmx = hl_maximal(mx, MaximalMode::time, phi, alpha);
        for (int tj : qt)
            for (int j : qx)
                rhs_min = std::min(
                    rhs_min, std::abs(mtmx.at(tj, size_t(j))) +
                                 std::abs(mtx.at(tj, size_t(j))));
    } else {
        for (int tj : qt)
            for (int j : qx)
                rhs_min = std::min(rhs_min, std::abs(mtx.at(tj, size_t(j))));
    }
    double hscale = std::pow(hmax, p0);
    if (!(rhs_min > 1e-12 * hscale)) return out;
    auto lhs_of = [&](const Field& w) {
        if (sc == SupportCase::past_complement) {
            // double average of |w(z1) - w(z2)|^p0 over Q x Q
            double acc2 = 0.0;
            size_t cnt = 0;
            for (int t1 : qt)
                for (int j1 : qx)
                    for (int t2 : qt)
                        for (int j2 : qx) {
                            acc2 += std::pow(
                                std::abs(w.at(t1, size_t(j1)) -
                                         w.at(t2, size_t(j2))),
                                p0);
                            ++cnt;
                        }
            return acc2 / double(cnt);
        }
        double acc2 = 0.0;
        for (int tj : qt)
            for (int j : qx)
                acc2 += std::pow(std::abs(w.at(tj, size_t(j))), p0);
        return acc2 / double(qt.size() * qx.size());
    };
    out.g0 = lhs_of(w0) / rhs_min;
    out.g1 = lhs_of(w1) / rhs_min;
    out.used = true;
    return out;
}

}  // namespace

OscillationReport verify_oscillation_lemmas(const BernsteinFunction& phi,
                                            double alpha, double p0,
                                            SupportCase support, int trials,
                                            unsigned seed, int n, int n_time) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("verify_oscillation_lemmas: alpha in (0,1)");
    if (!(p0 >= 1.0)) throw DomainError("verify_oscillation_lemmas: p0 >= 1");
    const double L = 8.0;
    const std::vector<double> rhos = {L / 8.0, L / 4.0};
    OscillationReport rep;
    rep.g0.seed = rep.g1.seed = seed;
    double base0 = 0.0, base1 = 0.0, fine0 = 0.0, fine1 = 0.0;
    for (int tr = 0; tr < trials; ++tr) {
        std::mt19937 rng(seed + unsigned(tr));
        Draws draws = draw_coeffs(rng, 6);
        for (double rho : rhos) {
            OscSample b = osc_sample(phi, alpha, p0, support, draws, L, rho, n,
                                     n_time);
            OscSample f2 = osc_sample(phi, alpha, p0, support, draws, L, rho,
                                      2 * n, 2 * n_time);
            if (!b.used || !f2.used) {
                ++rep.g0.skipped;
                ++rep.g1.skipped;
                continue;
            }
            base0 = std::max(base0, b.g0);
            base1 = std::max(base1, b.g1);
            fine0 = std::max(fine0, f2.g0);
            fine1 = std::max(fine1, f2.g1);
            ++rep.g0.used;
            ++rep.g1.used;
        }
    }
    rep.g0.max_ratio = std::max(base0, fine0);
    rep.g1.max_ratio = std::max(base1, fine1);
    rep.g0.refinement_growth = base0 > 0.0 ? fine0 / base0 : 0.0;
    rep.g1.refinement_growth = base1 > 0.0 ? fine1 / base1 : 0.0;
    return rep;
}

namespace {

OscSample sharp_sample(const BernsteinFunction& phi, double alpha, double p0,
                       const Draws& draws, double L, int n, int n_time) {
    double rho = L / 8.0;
    double lam = lambda_of_rho(phi, alpha, rho);
    SpaceTimeGrid g;
    g.d = 1;
    g.n = n;
    g.L = L;
    g.n_time = n_time;
    g.t_start = -4.0 * lam;
    g.T = lam;
    g.validate();
    Field h = case_field(g, draws, SupportCase::local, rho, lam);
    double hmax = 0.0;
    for (const auto& v : h.values) hmax = std::max(hmax, std::abs(v));
    OscSample out;
    if (hmax < 1e-14) return out;
    Accuracy acc;
    Field w0 = apply_g0(phi, alpha, 4.0 * lam, h, acc);
    Field w1 = apply_g1(phi, alpha, h, acc);
    Field hp = abs_pow(h, p0);
    Field mtx = hl_maximal(hp, MaximalMode::spacetime_cylinder, phi, alpha);
    Field mx = hl_maximal(hp, MaximalMode::space, phi, alpha);
    Field mtmx = hl_maximal(mx, MaximalMode::time, phi, alpha);
    std::vector<double> rhs(h.values.size());
    double rhs_max = 0.0;
    for (int tj = 0; tj <= g.n_time; ++tj)
        for (int j = 0; j < g.n; ++j) {
            size_t i = size_t(tj) * g.points() + size_t(j);
            rhs[i] = std::pow(std::abs(mtx.at(tj, size_t(j))), 1.0 / p0) +
                     std::pow(std::abs(mtmx.at(tj, size_t(j))), 1.0 / p0);
            rhs_max = std::max(rhs_max, rhs[i]);
        }
    if (rhs_max == 0.0) return out;
    Field s0 = sharp_function(w0, phi, alpha);
    Field s1 = sharp_function(w1, phi, alpha);
    double r0 = 0.0, r1 = 0.0;
    for (size_t i = 0; i < rhs.size(); ++i) {
        if (rhs[i] < 1e-8 * rhs_max) continue;
        r0 = std::max(r0, std::abs(s0.values[i]) / rhs[i]);
        r1 = std::max(r1, std::abs(s1.values[i]) / rhs[i]);
    }
    out.g0 = r0;
    out.g1 = r1;
    out.used = true;
    return out;
}

}  // namespace

OscillationReport verify_sharp_bound(const BernsteinFunction& phi, double alpha,
                                     double p0, int trials, unsigned seed,
                                     int n, int n_time) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("verify_sharp_bound: alpha in (0,1)");
    OscillationReport rep;
    rep.g0.seed = rep.g1.seed = seed;
    const double L = 8.0;
    double base0 = 0.0, base1 = 0.0, fine0 = 0.0, fine1 = 0.0;
    for (int tr = 0; tr < trials; ++tr) {
        std::mt19937 rng(seed + unsigned(tr));
        Draws draws = draw_coeffs(rng, 6);
        OscSample b = sharp_sample(phi, alpha, p0, draws, L, n, n_time);
        OscSample f2 = sharp_sample(phi, alpha, p0, draws, L, 2 * n,
                                    2 * n_time);
        if (!b.used || !f2.used) {
            ++rep.g0.skipped;
            ++rep.g1.skipped;
            continue;
        }
        base0 = std::max(base0, b.g0);
        base1 = std::max(base1, b.g1);
        fine0 = std::max(fine0, f2.g0);
        fine1 = std::max(fine1, f2.g1);
        ++rep.g0.used;
        ++rep.g1.used;
    }
    rep.g0.max_ratio = std::max(base0, fine0);
    rep.g1.max_ratio = std::max(base1, fine1);
    rep.g0.refinement_growth = base0 > 0.0 ? fine0 / base0 : 0.0;
    rep.g1.refinement_growth = base1 > 0.0 ? fine1 / base1 : 0.0;
    return rep;
}

namespace {

struct ThmSample {
    double c0 = 0.0, c1 = 0.0;
    bool used = false;
};

ThmSample theorem_sample(const BernsteinFunction& phi, double alpha, double p,
                         double q, double a_space, double a_time,
                         const Draws& draws, int n, int n_time, double L,
                         double T, unsigned seed_for_field) {
    SpaceTimeGrid g;
    g.d = 1;
    g.n = n;
    g.L = L;
    g.n_time = n_time;
    g.T = T;
    g.validate();
    Field h = random_bandlimited_field(g, int(draws.a.size()), seed_for_field);
    MixedNormParams mp{p, q, T, power_weight_space(g, a_space),
                       power_weight_time(g, a_time)};
    double hn = mixed_norm(h, mp);
    ThmSample out;
    if (hn < 1e-12) return out;
    TsfeProblem prob{phi, alpha, g, h};
    Field w = solve_tsfe(prob);
    Field lw = apply_phi_delta(phi, w);
    Field dtw = caputo_l1(w, alpha);
    double nl = mixed_norm(lw, mp);
    double nw = mixed_norm(w, mp);
    double nd = mixed_norm(dtw, mp);
    out.c0 = nl / hn;
    out.c1 = (nd + nw + nl) / hn;
    out.used = true;
    return out;
}

}  // namespace

Theorem1Report verify_theorem1(const BernsteinFunction& phi, double alpha,
                               double p, double q, double a_space,
                               double a_time, int trials, unsigned seed, int n,
                               int n_time, double L, double T) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("verify_theorem1: alpha in (0,1)");
    Theorem1Report rep;
    rep.seed = seed;
    SpaceTimeGrid g;
    g.d = 1;
    g.n = n;
    g.L = L;
    g.n_time = n_time;
    g.T = T;
    g.validate();
    rep.ap_space = ap_characteristic(power_weight_space(g, a_space), p, 1);
    rep.ap_time = ap_characteristic(power_weight_time(g, a_time), q, 1);
    double b0 = 0.0, b1 = 0.0, f0 = 0.0, f1 = 0.0;
    for (int tr = 0; tr < trials; ++tr) {
        std::mt19937 rng(seed + unsigned(tr));
        Draws draws = draw_coeffs(rng, 8);
        unsigned fs = seed + unsigned(tr);
        ThmSample b = theorem_sample(phi, alpha, p, q, a_space, a_time, draws,
                                     n, n_time, L, T, fs);
        ThmSample f2 = theorem_sample(phi, alpha, p, q, a_space, a_time, draws,
                                      2 * n, 2 * n_time, L, T, fs);
        if (!b.used || !f2.used) {
            ++rep.skipped;
            continue;
        }
        b0 = std::max(b0, b.c0);
        b1 = std::max(b1, b.c1);
        f0 = std::max(f0, f2.c0);
        f1 = std::max(f1, f2.c1);
        ++rep.used;
    }
    rep.c0_hat = std::max(b0, f0);
    rep.c1_hat = std::max(b1, f1);
    rep.growth_c0 = b0 > 0.0 ? f0 / b0 : 0.0;
    rep.growth_c1 = b1 > 0.0 ? f1 / b1 : 0.0;
    return rep;
}

}  // namespace tsfe

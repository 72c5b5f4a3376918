#include <doctest.h>

#include <cmath>
#include <complex>

#include "tsfe/analysis.hpp"
#include "tsfe/solver.hpp"

using namespace tsfe;

namespace {
constexpr double kPi = 3.14159265358979323846;

SpaceTimeGrid solver_grid(int n_time) {
    SpaceTimeGrid g;
    g.d = 1;
    g.n = 16;
    g.L = 5.0;
    g.n_time = n_time;
    g.T = 1.0;
    g.validate();
    return g;
}

double rel_l2(const Field& a, const Field& b) {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) {
        num += std::norm(a.values[i] - b.values[i]);
        den += std::norm(b.values[i]);
    }
    return std::sqrt(num / den);
}

Field manufactured_h(const SpaceTimeGrid& g, const BernsteinFunction& phi,
                     double alpha, Field* w_exact) {
    double xi1 = kPi / g.L, lam = phi(xi1 * xi1);
    Field h = Field::zeros(g, FieldDomain::spacetime);
    *w_exact = Field::zeros(g, FieldDomain::spacetime);
    for (int tj = 0; tj <= g.n_time; ++tj) {
        double t = g.time(tj);
        double cap = 2.0 * std::pow(t, 2.0 - alpha) / std::tgamma(3.0 - alpha);
        for (int j = 0; j < g.n; ++j) {
            double sx = std::sin(xi1 * g.coord(j));
            h.at(tj, size_t(j)) = sx * (cap + lam * t * t);
            w_exact->at(tj, size_t(j)) = sx * t * t;
        }
    }
    return h;
}
}  // namespace

TEST_SUITE_BEGIN("solver");

TEST_CASE("single mode with constant forcing has a closed form") {
    // h = cos(xi x): w(t) = t^alpha E_{alpha,alpha+1}(-lam t^alpha) cos(xi x),
    // exact for the product-integration scheme (h is linear in t).
    SpaceTimeGrid g = solver_grid(32);
    auto phi = BernsteinFunction::power(1.0);
    double alpha = 0.5, xi = 2.0 * kPi / g.L, lam = phi(xi * xi);
    Field h = Field::zeros(g, FieldDomain::spacetime);
    for (int tj = 0; tj <= g.n_time; ++tj)
        for (int j = 0; j < g.n; ++j)
            h.at(tj, size_t(j)) = std::cos(xi * g.coord(j));
    Field w = solve_tsfe({phi, alpha, g, h});
    double worst = 0.0;
    for (int tj = 1; tj <= g.n_time; ++tj) {
        double t = g.time(tj);
        double want = std::pow(t, alpha) *
                      mittag_leffler_real(alpha, alpha + 1.0,
                                          -lam * std::pow(t, alpha));
        for (int j = 0; j < g.n; ++j)
            worst = std::max(worst, std::abs(w.at(tj, size_t(j)).real() -
                                             want * std::cos(xi * g.coord(j))));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("manufactured polynomial solution is recovered") {
    auto phi = BernsteinFunction::power(1.0);
    for (double alpha : {0.3, 0.7}) {
        SpaceTimeGrid g = solver_grid(512);
        Field wex;
        Field h = manufactured_h(g, phi, alpha, &wex);
        Field w = solve_tsfe({phi, alpha, g, h});
        CHECK(rel_l2(w, wex) < 1e-4);
    }
}

TEST_CASE("residual decreases at first order under time refinement") {
    auto phi = BernsteinFunction::power(1.0);
    double alpha = 0.5;
    double res[2];
    int nts[2] = {64, 256};
    for (int i = 0; i < 2; ++i) {
        SpaceTimeGrid g = solver_grid(nts[i]);
        Field wex;
        Field h = manufactured_h(g, phi, alpha, &wex);
        TsfeProblem p{phi, alpha, g, h};
        res[i] = residual(p, solve_tsfe(p));
    }
    double order = std::log(res[0] / res[1]) / std::log(4.0);
    CHECK(order >= 1.0);
}

TEST_CASE("causality: solution vanishes before the forcing starts") {
    SpaceTimeGrid g = solver_grid(64);
    auto phi = BernsteinFunction::power(1.0);
    Field h = random_bandlimited_field(g, 6, 17u);
    for (int tj = 0; tj <= g.n_time; ++tj)
        if (g.time(tj) <= 0.5)
            for (int j = 0; j < g.n; ++j) h.at(tj, size_t(j)) = 0.0;
    Field w = solve_tsfe({phi, 0.5, g, h});
    for (int tj = 0; tj <= g.n_time; ++tj)
        if (g.time(tj) <= 0.5)
            for (int j = 0; j < g.n; ++j)
                CHECK(std::abs(w.at(tj, size_t(j))) < 1e-12);
}

TEST_CASE("linearity to rounding error") {
    SpaceTimeGrid g = solver_grid(48);
    auto phi = BernsteinFunction::power(1.0);
    Field h1 = random_bandlimited_field(g, 6, 1u);
    Field h2 = random_bandlimited_field(g, 6, 2u);
    Field hs = h1;
    for (size_t i = 0; i < hs.values.size(); ++i)
        hs.values[i] = 2.0 * h1.values[i] - 3.0 * h2.values[i];
    Field w1 = solve_tsfe({phi, 0.5, g, h1});
    Field w2 = solve_tsfe({phi, 0.5, g, h2});
    Field ws = solve_tsfe({phi, 0.5, g, hs});
    double worst = 0.0, scale = 0.0;
    for (size_t i = 0; i < ws.values.size(); ++i) {
        worst = std::max(worst, std::abs(ws.values[i] - 2.0 * w1.values[i] +
                                         3.0 * w2.values[i]));
        scale = std::max(scale, std::abs(ws.values[i]));
    }
    CHECK(worst < 1e-12 * std::max(1.0, scale));
}

TEST_CASE("g1 equals phi(Delta) applied to the unwindowed solution") {
    SpaceTimeGrid g = solver_grid(32);
    auto phi = BernsteinFunction::power(1.0);
    Field h = random_bandlimited_field(g, 5, 9u);
    Field g1 = apply_g1(phi, 0.5, h);
    Field alt = apply_phi_delta(phi, solve_tsfe({phi, 0.5, g, h}));
    double worst = 0.0;
    for (size_t i = 0; i < g1.values.size(); ++i)
        worst = std::max(worst, std::abs(g1.values[i] - alt.values[i]));
    CHECK(worst < 1e-10);
}

TEST_CASE("g0 with a full window reproduces the solve on one-sided grids") {
    SpaceTimeGrid g = solver_grid(32);
    auto phi = BernsteinFunction::power(1.0);
    Field h = random_bandlimited_field(g, 5, 4u);
    Field a = apply_g0(phi, 0.5, 10.0 * g.T, h);
    Field b = solve_tsfe({phi, 0.5, g, h});
    CHECK(a.values == b.values);
}

TEST_CASE("two-sided grids demand vanishing left-boundary data") {
    SpaceTimeGrid g = solver_grid(32);
    g.t_start = -1.0;
    g.validate();
    Field h = Field::zeros(g, FieldDomain::spacetime);
    for (auto& v : h.values) v = 1.0;
    CHECK_THROWS_AS(apply_g0(BernsteinFunction::linear(), 0.5, 1.0, h),
                    DomainError);
    CHECK_THROWS_AS(apply_g1(BernsteinFunction::linear(), 0.5, h), DomainError);
}

TEST_CASE("problem validation rejects mismatched grids") {
    SpaceTimeGrid g = solver_grid(16);
    SpaceTimeGrid g2 = solver_grid(32);
    Field h = Field::zeros(g2, FieldDomain::spacetime);
    TsfeProblem p{BernsteinFunction::linear(), 0.5, g, h};
    CHECK_THROWS_AS(p.validate(), GridMismatch);
}

TEST_SUITE_END();

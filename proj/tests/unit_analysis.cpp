#include <doctest.h>

#include <cmath>
#include <complex>

#include "tsfe/analysis.hpp"

using namespace tsfe;

namespace {
constexpr double kPi = 3.14159265358979323846;

SpaceTimeGrid ana_grid(int n = 128, int n_time = 32) {
    SpaceTimeGrid g;
    g.d = 1;
    g.n = n;
    g.L = 8.0;
    g.n_time = n_time;
    g.T = 1.0;
    g.t_start = -1.0;
    g.validate();
    return g;
}
}  // namespace

TEST_SUITE_BEGIN("analysis");

TEST_CASE("weights validate positivity") {
    Weight w{{1.0, 2.0, 0.0}};
    CHECK_THROWS_AS(w.validate(), DomainError);
    CHECK_NOTHROW(weight_ones(8).validate());
    SpaceTimeGrid g = ana_grid();
    CHECK_NOTHROW(power_weight_space(g, 0.3).validate());
    CHECK_NOTHROW(power_weight_time(g, -0.2).validate());
}

TEST_CASE("ap characteristic of the flat weight is exactly 1") {
    CHECK(ap_characteristic(weight_ones(64), 2.0, 1) == 1.0);
    CHECK(ap_characteristic(weight_ones(64 * 64), 2.0, 2) == 1.0);
}

TEST_CASE("ap characteristic grows with the power exponent") {
    SpaceTimeGrid g = ana_grid();
    double a1 = ap_characteristic(power_weight_space(g, 0.2), 2.0, 1);
    double a2 = ap_characteristic(power_weight_space(g, 0.6), 2.0, 1);
    CHECK(a1 > 1.0);
    CHECK(a2 > a1);
}

TEST_CASE("mixed norm on constants is the weighted volume") {
    SpaceTimeGrid g = ana_grid();
    Field one = Field::zeros(g, FieldDomain::spacetime);
    for (auto& v : one.values) v = 1.0;
    MixedNormParams mp{2.0, 2.0, g.T, weight_ones(g.points()),
                       weight_ones(size_t(g.n_time) + 1)};
    // (int_0^1 (int_{-8}^{8} 1 dx) dt)^{1/2} = 4
    CHECK(mixed_norm(one, mp) == doctest::Approx(4.0).epsilon(1e-12));
    mp.p = 3.0;
    mp.q = 2.0;
    CHECK(mixed_norm(one, mp) ==
          doctest::Approx(std::pow(16.0, 1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("maximal averages stay inside the range of |f|") {
    SpaceTimeGrid g = ana_grid();
    auto phi = BernsteinFunction::power(1.0);
    Field f = random_bandlimited_field(g, 6, 23u);
    double fmax = 0.0;
    for (const auto& v : f.values) fmax = std::max(fmax, std::abs(v));
    for (auto mode : {MaximalMode::space, MaximalMode::time,
                      MaximalMode::spacetime_cylinder}) {
        Field m = hl_maximal(f, mode, phi, 0.5);
        for (size_t i = 0; i < f.values.size(); ++i) {
            CHECK(m.values[i].real() >= 0.0);
            CHECK(m.values[i].real() <= fmax * (1.0 + 1e-12));
        }
    }
    // constant field: maximal equals the constant in every mode
    Field c = Field::zeros(g, FieldDomain::spacetime);
    for (auto& v : c.values) v = 2.5;
    for (auto mode : {MaximalMode::space, MaximalMode::time,
                      MaximalMode::spacetime_cylinder}) {
        Field m = hl_maximal(c, mode, phi, 0.5);
        for (const auto& v : m.values)
            CHECK(std::abs(v) == doctest::Approx(2.5).epsilon(1e-12));
    }
}

TEST_CASE("maximal of the unit indicator at distance 2 is 1/2") {
    SpaceTimeGrid g = ana_grid(256);
    auto phi = BernsteinFunction::linear();
    Field f = Field::zeros(g, FieldDomain::space);
    for (int j = 0; j < g.n; ++j)
        if (g.coord(j) >= 0.0 && g.coord(j) <= 1.0) f.at(0, size_t(j)) = 1.0;
    Field m = hl_maximal(f, MaximalMode::space, phi, 0.5);
    int j2 = int(std::llround((2.0 + g.L) / g.dx()));
    CHECK(std::abs(m.at(0, size_t(j2)).real() - 0.5) < g.dx());
}

TEST_CASE("sharp function obeys f_sharp <= 2 M f pointwise") {
    SpaceTimeGrid g = ana_grid(64, 32);
    auto phi = BernsteinFunction::power(1.0);
    for (unsigned seed : {1u, 2u, 3u}) {
        Field f = random_bandlimited_field(g, 6, seed);
        Field sh = sharp_function(f, phi, 0.5);
        Field mm = hl_maximal(f, MaximalMode::spacetime_cylinder, phi, 0.5);
        for (size_t i = 0; i < sh.values.size(); ++i)
            CHECK(std::abs(sh.values[i]) <= 2.0 * std::abs(mm.values[i]) + 1e-12);
    }
}

TEST_CASE("sharp function of a constant is zero") {
    SpaceTimeGrid g = ana_grid(64, 16);
    Field c = Field::zeros(g, FieldDomain::spacetime);
    for (auto& v : c.values) v = 7.0;
    Field sh = sharp_function(c, BernsteinFunction::linear(), 0.5);
    for (const auto& v : sh.values) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("littlewood-paley norm is comparable to the bessel norm") {
    SpaceTimeGrid g = ana_grid(256);
    auto phi = BernsteinFunction::linear();
    Weight ones = weight_ones(g.points());
    for (int kmode : {2, 8, 24}) {
        Field f = Field::zeros(g, FieldDomain::space);
        for (int j = 0; j < g.n; ++j)
            f.at(0, size_t(j)) = std::cos(kmode * kPi * g.coord(j) / g.L);
        double lp = littlewood_paley_norm(f, phi, 0.5, 2.0, ones);
        Field bf = apply_bessel(phi, 1.0, f);
        double bn = 0.0;
        for (const auto& v : bf.values) bn += std::norm(v);
        bn = std::sqrt(bn * g.cell_volume());
        CHECK(lp / bn > 0.2);
        CHECK(lp / bn < 5.0);
    }
}

TEST_CASE("random field generator is deterministic and band-limited") {
    SpaceTimeGrid g = ana_grid(64, 16);
    Field a = random_bandlimited_field(g, 6, 77u);
    Field b = random_bandlimited_field(g, 6, 77u);
    CHECK(a.values == b.values);
    Field c = random_bandlimited_field(g, 6, 78u);
    CHECK(a.values != c.values);
}

TEST_CASE("oscillation and sharp verifiers stay bounded at tiny scale") {
    auto phi = BernsteinFunction::power(1.0);
    OscillationReport r = verify_oscillation_lemmas(
        phi, 0.5, 2.0, SupportCase::local, 2, 5u, 32, 32);
    CHECK(r.g0.used > 0);
    CHECK(std::isfinite(r.g0.max_ratio));
    CHECK(std::isfinite(r.g1.max_ratio));
    OscillationReport s = verify_sharp_bound(phi, 0.5, 2.0, 1, 5u, 32, 32);
    CHECK(std::isfinite(s.g0.max_ratio));
    CHECK(std::isfinite(s.g1.max_ratio));
}

TEST_CASE("theorem1 verifier produces finite constants") {
    auto phi = BernsteinFunction::linear();
    Theorem1Report r = verify_theorem1(phi, 0.5, 2.0, 2.0, 0.0, 0.0, 2, 7u, 32,
                                       32, 8.0, 1.0);
    CHECK(r.used == 2);
    CHECK(std::isfinite(r.c0_hat));
    CHECK(std::isfinite(r.c1_hat));
    CHECK(r.ap_space == 1.0);
}

TEST_SUITE_END();

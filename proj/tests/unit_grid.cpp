#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <random>

#include "tsfe/grid.hpp"

using namespace tsfe;

namespace {
constexpr double kPi = 3.14159265358979323846;

SpaceTimeGrid small_grid(int d = 1) {
    SpaceTimeGrid g;
    g.d = d;
    g.n = 32;
    g.L = 5.0;
    g.n_time = 16;
    g.T = 1.0;
    g.validate();
    return g;
}
}  // namespace

TEST_SUITE_BEGIN("grid");

TEST_CASE("grid validation and frequency wrapping") {
    SpaceTimeGrid g = small_grid();
    CHECK(g.xi(0) == 0.0);
    CHECK(g.xi(1) == doctest::Approx(kPi / g.L));
    CHECK(g.xi(g.n - 1) == doctest::Approx(-kPi / g.L));
    CHECK(g.xi(g.n / 2) == doctest::Approx(-kPi * (g.n / 2) / g.L));
    SpaceTimeGrid bad = g;
    bad.n = 33;  // not a power of two
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = g;
    bad.T = bad.t_start;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("forward/inverse DFT round trip") {
    for (int d : {1, 2}) {
        SpaceTimeGrid g = small_grid(d);
        Field f = Field::zeros(g, FieldDomain::spacetime);
        std::mt19937 rng(11);
        std::normal_distribution<double> nd;
        for (auto& v : f.values) v = {nd(rng), nd(rng)};
        Field back = dft_space(dft_space(f, -1), 1);
        double worst = 0.0;
        for (size_t i = 0; i < f.values.size(); ++i)
            worst = std::max(worst, std::abs(back.values[i] - f.values[i]));
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("apply_phi_delta diagonalizes plane waves") {
    SpaceTimeGrid g = small_grid();
    auto phi = BernsteinFunction::power(1.0);
    double xi = 3.0 * kPi / g.L;
    Field f = Field::zeros(g, FieldDomain::space);
    for (int j = 0; j < g.n; ++j) f.at(0, size_t(j)) = std::cos(xi * g.coord(j));
    Field lf = apply_phi_delta(phi, f);
    double lam = phi(xi * xi);
    double worst = 0.0;
    for (int j = 0; j < g.n; ++j)
        worst = std::max(worst,
                         std::abs(lf.at(0, size_t(j)) + lam * f.at(0, size_t(j))));
    CHECK(worst < 1e-12);
}

TEST_CASE("bessel operator inverts itself") {
    SpaceTimeGrid g = small_grid();
    auto phi = BernsteinFunction::power(1.0);
    Field f = Field::zeros(g, FieldDomain::space);
    std::mt19937 rng(5);
    std::normal_distribution<double> nd;
    for (auto& v : f.values) v = nd(rng);
    Field r = apply_bessel(phi, -0.7, apply_bessel(phi, 0.7, f));
    double worst = 0.0;
    for (size_t i = 0; i < f.values.size(); ++i)
        worst = std::max(worst, std::abs(r.values[i] - f.values[i]));
    CHECK(worst < 1e-12);
}

TEST_CASE("caputo L1 is exact on linear-in-time data") {
    SpaceTimeGrid g = small_grid();
    double alpha = 0.6;
    Field f = Field::zeros(g, FieldDomain::spacetime);
    for (int tj = 0; tj <= g.n_time; ++tj)
        for (size_t i = 0; i < g.points(); ++i) f.at(tj, i) = 3.0 * g.time(tj);
    Field df = caputo_l1(f, alpha);
    // d_t^alpha (c t) = c t^{1-alpha}/Gamma(2-alpha)
    for (int tj = 1; tj <= g.n_time; ++tj) {
        double want = 3.0 * std::pow(g.time(tj), 1.0 - alpha) /
                      std::tgamma(2.0 - alpha);
        CHECK(df.at(tj, 0).real() == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("fractional integral is exact on linear-in-time data") {
    SpaceTimeGrid g = small_grid();
    double alpha = 0.4;
    Field f = Field::zeros(g, FieldDomain::spacetime);
    for (int tj = 0; tj <= g.n_time; ++tj)
        for (size_t i = 0; i < g.points(); ++i)
            f.at(tj, i) = 1.0 + 2.0 * g.time(tj);
    Field jf = fractional_integral(f, alpha);
    for (int tj = 1; tj <= g.n_time; ++tj) {
        double t = g.time(tj);
        double want = std::pow(t, alpha) / std::tgamma(alpha + 1.0) +
                      2.0 * std::pow(t, alpha + 1.0) / std::tgamma(alpha + 2.0);
        CHECK(jf.at(tj, 0).real() == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("field binary round trip") {
    SpaceTimeGrid g = small_grid();
    Field f = Field::zeros(g, FieldDomain::spacetime);
    std::mt19937 rng(3);
    std::normal_distribution<double> nd;
    for (auto& v : f.values) v = {nd(rng), nd(rng)};
    std::string path =
        (std::filesystem::temp_directory_path() / "tsfe_field_rt.bin").string();
    write_field(path, f);
    Field r = read_field(path);
    CHECK(r.grid == f.grid);
    CHECK(r.values == f.values);  // byte-exact
    std::remove(path.c_str());
    std::remove((path + ".json").c_str());
}

TEST_CASE("grid mismatch is rejected") {
    SpaceTimeGrid g = small_grid();
    Field f = Field::zeros(g, FieldDomain::space);
    f.values[0] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(f.check_finite(), RangeError);
}

TEST_SUITE_END();

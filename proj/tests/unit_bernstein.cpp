#include <doctest.h>

#include <cmath>

#include "tsfe/bernstein.hpp"

using namespace tsfe;

TEST_SUITE_BEGIN("bernstein");

TEST_CASE("power and linear evaluate their closed forms") {
    auto p1 = BernsteinFunction::power(1.0);  // x^{1/2}
    CHECK(p1(4.0) == doctest::Approx(2.0).epsilon(1e-12));
    auto p = BernsteinFunction::power(1.4);
    CHECK(p(9.0) == doctest::Approx(std::pow(9.0, 0.7)).epsilon(1e-12));
    auto lin = BernsteinFunction::linear();
    CHECK(lin(3.5) == 3.5);
    CHECK(lin.derivative(3.5) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("scaling exponents: delta0 of Power(beta) is beta/2, Linear is 1") {
    auto sp = estimate_delta0(BernsteinFunction::power(1.0), 1e-3, 1e6, 200);
    CHECK(sp.delta0_hat == doctest::Approx(0.5).epsilon(1e-6));
    auto sl = estimate_delta0(BernsteinFunction::linear(), 1e-3, 1e6, 200);
    CHECK(sl.delta0_hat == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("power_log lower-scaling fixture") {
    // brute-force infimum over [1e-3, 1e6]; frozen regression value
    auto s = estimate_delta0(BernsteinFunction::power_log(1.0), 1e-3, 1e6, 400);
    CHECK(s.delta0_hat == doctest::Approx(0.508017).epsilon(1e-3));
    CHECK(s.worst_ratio >= 1.0);
}

TEST_CASE("phi_inverse is a two-sided inverse") {
    for (auto phi : {BernsteinFunction::power(1.2), BernsteinFunction::linear(),
                     BernsteinFunction::power_log(1.0)}) {
        for (double x : {1e-3, 0.1, 1.0, 50.0, 1e4}) {
            double y = phi(x);
            CHECK(phi_inverse(phi, y) == doctest::Approx(x).epsilon(1e-10));
        }
    }
}

TEST_CASE("lambda_of_rho matches its defining formula") {
    auto phi = BernsteinFunction::power(1.0);
    double alpha = 0.4, rho = 2.0;
    double want = std::pow(phi(1.0 / (rho * rho)), -1.0 / alpha);
    CHECK(lambda_of_rho(phi, alpha, rho) == doctest::Approx(want).epsilon(1e-12));
    CHECK_THROWS_AS(lambda_of_rho(phi, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(lambda_of_rho(phi, 0.5, -1.0), DomainError);
}

TEST_CASE("jump kernel of Power(beta) scales like r^{-d-beta}") {
    for (double beta : {0.6, 1.0, 1.4}) {
        auto phi = BernsteinFunction::power(beta);
        for (int d : {1, 2}) {
            double j1 = jump_kernel(phi, 1.0, d);
            double j2 = jump_kernel(phi, 2.0, d);
            CHECK(j1 > 0.0);
            CHECK(j2 / j1 ==
                  doctest::Approx(std::pow(2.0, -d - beta)).epsilon(1e-6));
        }
    }
}

TEST_CASE("derivative bounds |x^n phi^{(n)}| <= c phi hold on samples") {
    std::vector<double> xs;
    for (int i = -30; i <= 30; ++i) xs.push_back(std::pow(10.0, i / 5.0));
    for (auto phi :
         {BernsteinFunction::power(0.8), BernsteinFunction::linear(),
          BernsteinFunction::power_log(1.0)}) {
        auto r = verify_derivative_bound(phi, 2, xs);
        CHECK(r.worst_n1 <= 1.0 + 1e-9);  // Bernstein: x phi' <= phi
        CHECK(std::isfinite(r.worst_n2));
    }
}

TEST_CASE("invalid custom Levy specs are rejected") {
    CustomLevy neg;
    neg.density = [](double) { return -1.0; };
    CHECK_THROWS_AS(BernsteinFunction::custom(neg), std::invalid_argument);
    CHECK_THROWS_AS(BernsteinFunction::power(2.5), DomainError);
    CHECK_THROWS_AS(BernsteinFunction::power(0.0), DomainError);
}

TEST_CASE("custom Levy with exponential density has the closed form") {
    // w(t) = e^{-t}, drift a: phi(x) = a x + x/(1+x)
    CustomLevy spec;
    spec.density = [](double t) { return std::exp(-t); };
    spec.drift = 0.5;
    spec.nodes = 128;
    auto phi = BernsteinFunction::custom(spec);
    for (double x : {0.25, 1.0, 4.0})
        CHECK(phi(x) == doctest::Approx(0.5 * x + x / (1.0 + x)).epsilon(1e-8));
    // far argument: e^{-t(1+x)} strains the Laguerre rule, accept 1e-5
    CHECK(phi(50.0) ==
          doctest::Approx(0.5 * 50.0 + 50.0 / 51.0).epsilon(1e-5));
    CHECK(phi.has_levy_density());
    CHECK(phi.levy_density(2.0) == doctest::Approx(std::exp(-2.0)));
}

TEST_SUITE_END();

#include <cmath>
#include <complex>
#include <random>

#include <doctest.h>

#include "annpick/laurent.hpp"

using namespace annpick;

namespace {

LaurentPoly random_laurent(std::mt19937_64& rng, int lo, int hi) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::map<int, Complex> c;
    for (int n = lo; n <= hi; ++n) c[n] = Complex(gauss(rng), gauss(rng));
    return LaurentPoly(std::move(c));
}

}  // namespace

TEST_CASE("weights and the norm formula") {
    AnnulusContext ctx = AnnulusContext::make(0.5);
    CHECK(annulus_weight(0, 0.5) == 1.0);
    CHECK(annulus_weight(3, 0.5) == 1.0);
    CHECK(annulus_weight(-1, 0.5) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(annulus_weight(-2, 0.5) == doctest::Approx(16.0).epsilon(1e-15));

    // || z^{-1} ||^2 = r^{-2} = 4 at r = 1/2
    const LaurentPoly f = LaurentPoly::monomial(-1);
    const double n = norm(f, ctx);
    CHECK(n * n == doctest::Approx(4.0).epsilon(1e-15));

    for (int k = 0; k <= 5; ++k) {
        CHECK(norm(LaurentPoly::monomial(k), ctx) == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("monomials are orthogonal in every space") {
    for (double r : {0.3, 0.5, 0.8}) {
        AnnulusContext ctx = AnnulusContext::make(r);
        for (int n = -30; n <= 30; n += 6) {
            for (int m = -30; m <= 30; m += 7) {
                if (n == m) continue;
                const Complex ip =
                    inner_product(LaurentPoly::monomial(n), LaurentPoly::monomial(m), ctx);
                CHECK(std::abs(ip) == 0.0);
            }
        }
    }
}

TEST_CASE("coefficient extraction agrees with circle quadrature") {
    // c_n = (1/2pi) int f(rho e^{it}) rho^{-n} e^{-int} dt, trapezoid rule;
    // an oracle independent of the coefficient container.
    std::mt19937_64 rng(7);
    const LaurentPoly f = random_laurent(rng, -4, 5);
    const double rho = 0.75;
    constexpr int quad = 4096;
    for (int n = -4; n <= 5; ++n) {
        Complex acc(0.0);
        for (int k = 0; k < quad; ++k) {
            const double t = 2.0 * M_PI * k / quad;
            acc += eval_at(f, std::polar(rho, t)) * std::polar(std::pow(rho, -n), -n * t);
        }
        acc /= static_cast<double>(quad);
        CHECK(std::abs(acc - f.coeff(n)) <= 1e-10);
    }
}

TEST_CASE("evaluation is multiplicative and addition is linear") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const LaurentPoly f = random_laurent(rng, -3, 4);
        const LaurentPoly g = random_laurent(rng, -2, 2);
        const Complex z = std::polar(0.8, 1.1 * trial);
        CHECK(std::abs(eval_at(multiply(f, g), z) - eval_at(f, z) * eval_at(g, z)) <= 1e-10);
        CHECK(std::abs(eval_at(f + g, z) - eval_at(f, z) - eval_at(g, z)) <= 1e-12);
    }
}

TEST_CASE("divide_exact inverts multiply and rejects non-factors") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const LaurentPoly f = random_laurent(rng, -2, 3);
        const LaurentPoly g = random_laurent(rng, -1, 2);
        const auto q = divide_exact(multiply(f, g), g);
        REQUIRE(q.has_value());
        CHECK((*q - f).max_abs_coeff() <= 1e-9 * f.max_abs_coeff());
    }
    const LaurentPoly num{{0, 1.0}, {1, 1.0}};
    const LaurentPoly den{{0, 1.0}, {2, 1.0}};
    CHECK(!divide_exact(num, den).has_value());
}

TEST_CASE("reflection is a multiplicative isometric involution") {
    AnnulusContext ctx = AnnulusContext::make(0.5);
    std::mt19937_64 rng(17);

    // iota(z^n) = r^n z^{-n}
    const LaurentPoly zi = reflect_to_disk0(LaurentPoly::monomial(3), ctx);
    CHECK(zi.term_count() == 1);
    CHECK(std::abs(zi.coeff(-3) - Complex(0.125)) <= 1e-15);

    for (int trial = 0; trial < 8; ++trial) {
        const LaurentPoly f = random_laurent(rng, -3, 3);
        const LaurentPoly g = random_laurent(rng, -2, 4);
        const LaurentPoly ff = reflect_to_disk0(reflect_to_disk0(f, ctx), ctx);
        CHECK((ff - f).max_abs_coeff() <= 1e-12 * f.max_abs_coeff());
        CHECK(std::abs(norm(reflect_to_disk0(f, ctx), ctx) - norm(f, ctx)) <= 1e-12);
        const LaurentPoly lhs = reflect_to_disk0(multiply(f, g), ctx);
        const LaurentPoly rhs = multiply(reflect_to_disk0(f, ctx), reflect_to_disk0(g, ctx));
        CHECK((lhs - rhs).max_abs_coeff() <= 1e-12 * lhs.max_abs_coeff());

        // iota(f)(z) = f(r/z) pointwise
        const Complex z = std::polar(0.7, 0.3 + trial);
        CHECK(std::abs(eval_at(reflect_to_disk0(f, ctx), z) - eval_at(f, ctx.r / z)) <= 1e-10);
    }
}

TEST_CASE("hardy subspace norms match the annulus norm on their supports") {
    std::mt19937_64 rng(19);
    for (double r : {0.3, 0.5, 0.8}) {
        AnnulusContext ctx = AnnulusContext::make(r);
        for (int trial = 0; trial < 5; ++trial) {
            const LaurentPoly f = random_laurent(rng, 0, 8);
            CHECK(norm(f, ctx, Space::DiskHardy) == norm(f, ctx));
            const LaurentPoly g = reflect_to_disk0(f, ctx);
            CHECK(norm(g, ctx, Space::Disk0Hardy) == norm(g, ctx));
        }
    }
    AnnulusContext ctx = AnnulusContext::make(0.5);
    CHECK_THROWS_AS(norm(LaurentPoly::monomial(-1), ctx, Space::DiskHardy), OpError);
    CHECK_THROWS_AS(norm(LaurentPoly::monomial(1), ctx, Space::Disk0Hardy), OpError);
}

TEST_CASE("reproducing property with certified tails") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    for (double r : {0.3, 0.5, 0.8}) {
        AnnulusContext ctx = AnnulusContext::make(r);
        for (int trial = 0; trial < 10; ++trial) {
            const LaurentPoly f = random_laurent(rng, -5, 5);
            const double rho = r + (1.0 - r) * (0.1 + 0.08 * (trial % 10));
            const Complex lambda = std::polar(rho, angle(rng));
            const Complex direct = eval_at(f, lambda);
            const Complex via = inner_product(f, kernel_expansion(lambda, ctx), ctx);
            const double bound = reproducing_tail_bound(f, lambda, ctx);
            CHECK(std::abs(direct - via) <= bound + 1e-12);
            CHECK(std::abs(direct - via) <= 1e-8);
        }
    }
}

TEST_CASE("moment vector oracle for z - 1/2") {
    AnnulusContext ctx = AnnulusContext::make(0.5);
    const LaurentPoly f{{1, Complex(1.0)}, {0, Complex(-0.5)}};
    const auto mv = moment_vector(f, ctx, 2);
    CHECK(std::abs(mv.at(0) - Complex(1.25)) <= 1e-15);
    CHECK(std::abs(mv.at(1) - Complex(-0.5)) <= 1e-15);
    CHECK(std::abs(mv.at(-1) - Complex(-0.5)) <= 1e-15);
    CHECK(std::abs(mv.at(2)) == 0.0);
    CHECK(std::abs(mv.at(-2)) == 0.0);
}

TEST_CASE("context and evaluation guard rails") {
    CHECK_THROWS_AS(AnnulusContext::make(1.5), ValidationError);
    CHECK_THROWS_AS(AnnulusContext::make(0.0), ValidationError);
    CHECK_THROWS_AS(eval_at(LaurentPoly::monomial(-2), Complex(0.0)), OpError);
    AnnulusContext ctx = AnnulusContext::make(0.25);
    CHECK(ctx.z0 == Complex(0.5));
    CHECK(ctx.contains(Complex(0.3)));
    CHECK(!ctx.contains(Complex(0.2)));
    CHECK(!ctx.contains(Complex(1.0)));
}

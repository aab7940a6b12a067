#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include <doctest.h>

#include "annpick/hardy.hpp"

using namespace annpick;

namespace {

std::mt19937_64 seeded(std::uint64_t s) { return std::mt19937_64(s); }

LaurentPoly random_poly(std::mt19937_64& rng, int deg) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::map<int, Complex> c;
    for (int n = 0; n <= deg; ++n) c[n] = Complex(gauss(rng), gauss(rng));
    return LaurentPoly(std::move(c));
}

bool matches_root(const std::vector<Complex>& roots, Complex want, double tol) {
    return std::any_of(roots.begin(), roots.end(),
                       [&](Complex r) { return std::abs(r - want) <= tol; });
}

double rel_diff(const LaurentPoly& a, const LaurentPoly& b) {
    return (a - b).max_abs_coeff() / std::max(a.max_abs_coeff(), 1e-300);
}

}  // namespace

TEST_CASE("companion roots with origin zeros and clustering") {
    const Complex a(0.3, 0.1), b(-0.7, 0.0);
    // (z - a)(z - b) z^2, leading 2
    PolyRoots pr0;
    pr0.leading = Complex(2.0);
    pr0.roots = {a, b, Complex(0.0), Complex(0.0)};
    const LaurentPoly p = from_roots(pr0);
    const PolyRoots pr = poly_roots(p);
    CHECK(pr.degree() == 4);
    CHECK(std::abs(pr.leading - Complex(2.0)) <= 1e-12);
    CHECK(matches_root(pr.roots, a, 1e-10));
    CHECK(matches_root(pr.roots, b, 1e-10));
    CHECK(std::count_if(pr.roots.begin(), pr.roots.end(),
                        [](Complex r) { return std::abs(r) == 0.0; }) == 2);

    CHECK(rel_diff(from_roots(pr), p) <= 1e-10);

    const auto clustered =
        cluster_roots({Complex(1.0), Complex(1.0 + 1e-12), Complex(5.0)}, 1e-8);
    CHECK(clustered.size() == 3);
    CHECK(std::abs(clustered[0] - clustered[1]) == 0.0);

    CHECK_THROWS_AS(poly_roots(LaurentPoly::zero()), OpError);
}

TEST_CASE("inner-outer oracles on the disk") {
    AnnulusContext ctx = AnnulusContext::make(0.5);

    SUBCASE("z - 2 is outer up to a phase") {
        const LaurentPoly p{{1, Complex(1.0)}, {0, Complex(-2.0)}};
        const DiskFactorization fac = poly_inner_outer(p, ctx);
        CHECK(fac.inner.num.term_count() == 1);
        CHECK(std::abs(fac.inner.num.coeff(0) - Complex(-1.0)) <= 1e-12);
        CHECK(std::abs(fac.outer.coeff(0) - Complex(2.0)) <= 1e-12);
        CHECK(std::abs(fac.outer.coeff(1) - Complex(-1.0)) <= 1e-12);
    }

    SUBCASE("z - 1/2 picks up one Blaschke factor") {
        const LaurentPoly p{{1, Complex(1.0)}, {0, Complex(-0.5)}};
        const DiskFactorization fac = poly_inner_outer(p, ctx);
        // outer = 1 - z/2, inner = (z - 1/2)/(1 - z/2)
        CHECK(std::abs(fac.outer.coeff(0) - Complex(1.0)) <= 1e-12);
        CHECK(std::abs(fac.outer.coeff(1) - Complex(-0.5)) <= 1e-12);
        for (int k = 0; k < 8; ++k) {
            const Complex z = std::polar(1.0, 0.7 * k);
            CHECK(std::abs(std::abs(fac.inner.eval(z)) - 1.0) <= 1e-12);
        }
    }

    SUBCASE("monomials are already inner") {
        const DiskFactorization fac = poly_inner_outer(LaurentPoly::monomial(1), ctx);
        CHECK(std::abs(fac.outer.coeff(0) - Complex(1.0)) <= 1e-12);
        CHECK(fac.inner.num.term_count() == 1);
        CHECK(std::abs(fac.inner.num.coeff(1) - Complex(1.0)) <= 1e-12);
    }
}

TEST_CASE("factorization contract on a seeded corpus") {
    AnnulusContext ctx = AnnulusContext::make(0.5);
    auto rng = seeded(41);
    for (int trial = 0; trial < 12; ++trial) {
        const LaurentPoly p = random_poly(rng, 2 + trial % 5);
        const DiskFactorization fac = poly_inner_outer(p, ctx);

        // reassembly: p * den = num * outer
        CHECK(rel_diff(multiply(p, fac.inner.den), multiply(fac.inner.num, fac.outer)) <=
              1e-9);
        // outer part has no roots in the open disk and is positive at 0
        for (const Complex root : poly_roots(fac.outer).roots) {
            CHECK(std::abs(root) >= 1.0 - 1e-8);
        }
        CHECK(fac.outer.coeff(0).real() > 0.0);
        CHECK(std::abs(fac.outer.coeff(0).imag()) <= 1e-12 * fac.outer.max_abs_coeff());
        // |inner| = 1 on the circle
        for (int k = 0; k < 6; ++k) {
            const Complex z = std::polar(1.0, 1.047 * k);
            CHECK(std::abs(std::abs(fac.inner.eval(z)) - 1.0) <= 1e-9);
        }
        // norms agree: the inner factor is isometric on the circle
        CHECK(std::abs(norm(p, ctx, Space::DiskHardy) - norm(fac.outer, ctx, Space::DiskHardy)) <=
              1e-9 * norm(p, ctx, Space::DiskHardy));
    }
}

TEST_CASE("autocorrelation and Fejer-Riesz on a hand example") {
    AnnulusContext ctx = AnnulusContext::make(0.5);
    const LaurentPoly p{{0, Complex(1.0)}, {1, Complex(-0.5)}};
    const auto q = autocorrelation(p);
    CHECK(std::abs(q.at(0) - Complex(1.25)) <= 1e-15);
    CHECK(std::abs(q.at(1) - Complex(-0.5)) <= 1e-15);
    CHECK(std::abs(q.at(-1) - Complex(-0.5)) <= 1e-15);

    const LaurentPoly h = fejer_riesz_outer(q, ctx);
    CHECK(std::abs(h.coeff(0) - Complex(1.0)) <= 1e-8);
    CHECK(std::abs(h.coeff(1) - Complex(-0.5)) <= 1e-8);

    CHECK_THROWS_AS(fejer_riesz_outer(std::map<int, Complex>{{0, Complex(-1.0)}}, ctx),
                    OpError);
}

TEST_CASE("Fejer-Riesz agrees with the root-reflection outer factor") {
    AnnulusContext ctx = AnnulusContext::make(0.5);
    auto rng = seeded(43);
    for (int trial = 0; trial < 10; ++trial) {
        const LaurentPoly p = random_poly(rng, 1 + trial % 8);
        const LaurentPoly via_roots = poly_inner_outer(p, ctx).outer;
        const LaurentPoly via_fr = fejer_riesz_outer(autocorrelation(p), ctx);
        CHECK(rel_diff(via_roots, via_fr) <= 1e-8);
    }
}

TEST_CASE("disk0 factorization through the reflection") {
    AnnulusContext ctx = AnnulusContext::make(0.5);

    // z^{-1} = (z^{-1}/2) * 2 with |z^{-1}/2| = 1 on |z| = r
    const DiskFactorization fac = disk0_inner_outer(LaurentPoly::monomial(-1), ctx);
    CHECK(fac.domain == Space::Disk0Hardy);
    CHECK(std::abs(fac.outer.coeff(0) - Complex(2.0)) <= 1e-12);
    CHECK(fac.inner.num.term_count() == 1);
    CHECK(std::abs(fac.inner.num.coeff(-1) - Complex(0.5)) <= 1e-12);
    for (int k = 0; k < 6; ++k) {
        const Complex z = std::polar(0.5, 1.0 * k);
        CHECK(std::abs(std::abs(fac.inner.eval(z)) - 1.0) <= 1e-12);
    }

    auto rng = seeded(47);
    for (int trial = 0; trial < 8; ++trial) {
        const LaurentPoly p = reflect_to_disk0(random_poly(rng, 2 + trial % 4), ctx);
        const DiskFactorization f0 = disk0_inner_outer(p, ctx);
        CHECK(rel_diff(multiply(p, f0.inner.den), multiply(f0.inner.num, f0.outer)) <= 1e-9);
        CHECK(std::abs(norm(p, ctx) - norm(f0.outer, ctx)) <= 1e-9 * norm(p, ctx));
        // outer lives on the same side and has no roots in |z| > r
        CHECK(f0.outer.has_nonpositive_support());
        const LaurentPoly mirrored = reflect_to_disk0(f0.outer, ctx);
        for (const Complex root : poly_roots(mirrored).roots) {
            CHECK(std::abs(root) >= 1.0 - 1e-8);
        }
    }
}

TEST_CASE("rational expansion on the annulus") {
    AnnulusContext ctx = AnnulusContext::make(0.5);

    // 1/(1 - z/2) = sum (z/2)^k, bounded on the closure
    RationalLaurent geo;
    geo.num = LaurentPoly::constant(1.0);
    geo.den = LaurentPoly{{0, Complex(1.0)}, {1, Complex(-0.5)}};
    const LaurentPoly series = expand_on_annulus(geo, ctx);
    for (int k = 0; k < 6; ++k) {
        const Complex z = std::polar(0.8, 0.9 * k);
        CHECK(std::abs(eval_at(series, z) - geo.eval(z)) <= 1e-10);
    }

    // exact division path
    RationalLaurent inv;
    inv.num = LaurentPoly::constant(1.0);
    inv.den = LaurentPoly::monomial(1);
    const LaurentPoly zi = expand_on_annulus(inv, ctx);
    CHECK(zi.term_count() == 1);
    CHECK(std::abs(zi.coeff(-1) - Complex(1.0)) <= 1e-15);

    // pole inside the annulus: unbounded
    RationalLaurent bad;
    bad.num = LaurentPoly::constant(1.0);
    bad.den = LaurentPoly{{1, Complex(1.0)}, {0, Complex(-0.9)}};
    CHECK_THROWS_AS(expand_on_annulus(bad, ctx), OpError);
}

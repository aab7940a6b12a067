#pragma once

#include <map>
#include <vector>

#include "annpick/laurent.hpp"

namespace annpick {

struct PolyRoots {
    Complex leading{1.0, 0.0};
    std::vector<Complex> roots;  // repeated according to multiplicity

    int degree() const { return static_cast<int>(roots.size()); }
};

// Ratio of finite Laurent polynomials. Blaschke-type inner factors live
// here; a plain polynomial has denominator 1.
struct RationalLaurent {
    LaurentPoly num;
    LaurentPoly den{LaurentPoly::constant(1.0)};

    Complex eval(Complex z) const;
    bool is_polynomial() const;
};

struct DiskFactorization {
    RationalLaurent inner;  // unimodular phase folded in
    LaurentPoly outer;
    Complex phase{1.0, 0.0};  // the unimodular constant inside `inner`
    Space domain = Space::DiskHardy;  // which circle carries |inner| = 1
};

// Roots of a polynomial (support in [0, inf)) via the companion matrix of
// the monic normalization; clustered to restore multiplicities.
PolyRoots poly_roots(const LaurentPoly& p);

LaurentPoly from_roots(const PolyRoots& pr);

// Greedy chain clustering with a relative tolerance; each cluster is
// replaced by its mean, repeated by cluster size.
std::vector<Complex> cluster_roots(const std::vector<Complex>& raw, double rel_tol);

DiskFactorization poly_inner_outer(const LaurentPoly& p, const AnnulusContext& ctx);

// q_n = sum_k c_{k+n} conj(c_k): the coefficients of |p|^2 on the unit circle.
std::map<int, Complex> autocorrelation(const LaurentPoly& p);

// Spectral factorization of a nonnegative trigonometric polynomial:
// returns h with |h|^2 = sum q_n e^{i n theta} on the circle and h(0) > 0.
LaurentPoly fejer_riesz_outer(const std::map<int, Complex>& autocorr,
                              const AnnulusContext& ctx);

// Factor a function supported in (-inf, 0] by conjugating with the
// reflection iota and pulling both factors back.
DiskFactorization disk0_inner_outer(const LaurentPoly& p, const AnnulusContext& ctx);

// Laurent expansion of a rational function converging on the closed
// annulus. Tries exact polynomial division first; otherwise expands each
// denominator factor as a geometric series, which needs every pole to
// stay a fixed relative margin away from the two boundary circles.
// Throws UnboundedMultiplier for poles on or near the closure.
LaurentPoly expand_on_annulus(const RationalLaurent& phi, const AnnulusContext& ctx);

}  // namespace annpick

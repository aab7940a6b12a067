#pragma once

#include <array>
#include <vector>

#include "annpick/laurent.hpp"

namespace annpick {

// u(z) = ( z/sqrt(r^2+1), (r/sqrt(r^2+1))/z ): the annulus into the ball B_2.
std::array<Complex, 2> embed_point(Complex z, const AnnulusContext& ctx);

// Coefficients of the embedded function against the monomials z1^i z2^j:
// b[i][j] = c r^j (r^2+1)^{-(i+j)/2} a_{i-j}, c = (1-r^2)/(1+r^2).
struct DAEmbedding {
    double r = 0.5;
    int M = 0;
    std::vector<std::vector<Complex>> b;  // (M+1) x (M+1)
    double tail_bound = 0.0;  // bound on the norm-square mass outside the box
};

DAEmbedding da_embedding_coeffs(const LaurentPoly& f, const AnnulusContext& ctx, int M);

// ||z1^i z2^j||^2 = i! j! / (i+j)!.
double monomial_norm_sq(int i, int j);

double binomial(int n, int k);

struct IsometryCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    double tail_bound = 0.0;
    bool certified = false;  // tail_bound <= ctx.tol_numeric
};

// lhs = truncated norm-square of the embedding, rhs = scaled annulus
// norm-square; their gap must stay within the geometric tail bound.
IsometryCheck da_isometry_check(const LaurentPoly& f, const AnnulusContext& ctx, int M);

// Word series over the alphabet {1,2} with heap indexing: the empty word
// is index 0 and word w followed by letter l has index 2*idx(w) + l. The
// coefficient of a word depends only on its letter counts.
struct NCSeries {
    int max_len = 0;
    std::vector<Complex> coeffs;  // size 2^{max_len+1} - 1
};

NCSeries nc_lift(const DAEmbedding& emb, int max_len);

struct LeftOuterResidual {
    int m_G = 0;
    std::vector<double> by_degree;  // residual at G-degree 0 .. m_G
    double residual = 0.0;
    int rows = 0;  // least-squares dimensions actually solved
    int cols = 0;
};

// min over free polynomials G of degree <= m_G of || G F - 1 ||_{F^2},
// where F is the word lift of the embedding and 1 is the vacuum.
LeftOuterResidual left_outer_residual(const DAEmbedding& emb, const AnnulusContext& ctx,
                                      int m_G);

}  // namespace annpick

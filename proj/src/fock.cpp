#include "annpick/fock.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace annpick {

std::array<Complex, 2> embed_point(Complex z, const AnnulusContext& ctx) {
    if (z == Complex(0.0))
        throw OpError(ErrKind::ZeroPoint, "embed_point", "the embedding needs z != 0");
    const double s = std::sqrt(ctx.r * ctx.r + 1.0);
    return {z / s, ctx.r / (s * z)};
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double acc = 1.0;
    for (int t = 1; t <= k; ++t) acc *= static_cast<double>(n - k + t) / t;
    return acc;
}

double monomial_norm_sq(int i, int j) { return 1.0 / binomial(i + j, i); }

DAEmbedding da_embedding_coeffs(const LaurentPoly& f, const AnnulusContext& ctx, int M) {
    if (M < 0)
        throw OpError(ErrKind::WindowTooSmall, "da_embedding_coeffs", "M must be >= 0");
    DAEmbedding emb;
    emb.r = ctx.r;
    emb.M = M;
    emb.b.assign(M + 1, std::vector<Complex>(M + 1, Complex(0.0)));

    const double r2 = ctx.r * ctx.r;
    const double s = r2 + 1.0;
    const double c = (1.0 - r2) / (1.0 + r2);
    const double inv_sqrt_s = 1.0 / std::sqrt(s);
    for (int i = 0; i <= M; ++i) {
        for (int j = 0; j <= M; ++j) {
            const Complex a = f.coeff(i - j);
            if (a == Complex(0.0)) continue;
            double factor = c;
            for (int t = 0; t < j; ++t) factor *= ctx.r;
            for (int t = 0; t < i + j; ++t) factor *= inv_sqrt_s;
            // negative diagonals carry the annulus weight r^{2(i-j)}; this
            // is what makes the truncated norm match c * ||f||^2, e.g.
            // f = z^{-1} needs the full weight 1/r^2 to reach c/r^2
            for (int t = 0; t < 2 * (j - i); ++t) factor /= ctx.r;
            emb.b[i][j] = factor * a;
        }
    }

    // Per diagonal k = i - j the omitted norm-square mass is geometric:
    // C(i+j, i) <= 2^{i+j} turns each diagonal into a series with ratio
    // q = 4 r^2 / (1 + r^2)^2 < 1; the lead term picks up (2/s)^k on
    // analytic diagonals and (2/(r^2 s))^{|k|} on co-analytic ones.
    const double q = 4.0 * r2 / (s * s);
    double tail = 0.0;
    for (const auto& [k, ck] : f.coeffs()) {
        const double a2 = std::norm(ck) * c * c;
        double lead = a2;
        const double step = k >= 0 ? 2.0 / s : 2.0 / (r2 * s);
        for (int t = 0; t < std::abs(k); ++t) lead *= step;
        const int start = std::max(0, M - std::abs(k) + 1);
        double qpow = 1.0;
        for (int t = 0; t < start; ++t) qpow *= q;
        tail += lead * qpow / (1.0 - q);
    }
    emb.tail_bound = tail;
    return emb;
}

IsometryCheck da_isometry_check(const LaurentPoly& f, const AnnulusContext& ctx, int M) {
    if (!f.is_zero() &&
        (M < std::abs(f.support_min()) || M < f.support_max()))
        throw OpError(ErrKind::TruncationTooSmall, "da_isometry_check",
                      "M misses entire diagonals of the support of f");
    const DAEmbedding emb = da_embedding_coeffs(f, ctx, M);
    IsometryCheck out;
    out.tail_bound = emb.tail_bound;
    for (int i = 0; i <= M; ++i)
        for (int j = 0; j <= M; ++j)
            out.lhs += std::norm(emb.b[i][j]) * binomial(i + j, i);
    const double c = (1.0 - ctx.r * ctx.r) / (1.0 + ctx.r * ctx.r);
    const double n = norm(f, ctx);
    out.rhs = c * n * n;
    out.gap = std::abs(out.lhs - out.rhs);
    out.certified = out.tail_bound <= ctx.tol_numeric;
    return out;
}

NCSeries nc_lift(const DAEmbedding& emb, int max_len) {
    if (max_len < 0 || max_len > 20)
        throw OpError(ErrKind::WindowTooSmall, "nc_lift", "word length must be in [0, 20]");
    NCSeries lift;
    lift.max_len = max_len;
    lift.coeffs.assign((std::size_t{1} << (max_len + 1)) - 1, Complex(0.0));
    for (std::size_t idx = 0; idx < lift.coeffs.size(); ++idx) {
        // bits of idx+1 after the leading one spell the word, 0 -> letter 1
        std::size_t t = idx + 1;
        int len = 0;
        while ((std::size_t{2} << len) <= t) ++len;
        int i = 0, j = 0;
        for (int bit = len - 1; bit >= 0; --bit) ((t >> bit) & 1) ? ++j : ++i;
        if (i <= emb.M && j <= emb.M) lift.coeffs[idx] = emb.b[i][j];
    }
    return lift;
}

namespace {

int word_length(std::size_t idx) {
    int len = 0;
    while ((std::size_t{2} << len) <= idx + 1) ++len;
    return len;
}

// Min-norm solve of N x = g for Hermitian psd N via eigendecomposition,
// dropping the near-null directions.
Eigen::VectorXcd pinv_solve(const Eigen::MatrixXcd& n, const Eigen::VectorXcd& g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(n);
    const auto& vals = es.eigenvalues();
    const double cut = 1e-12 * std::max(vals.cwiseAbs().maxCoeff(), 1e-300);
    Eigen::VectorXcd y = es.eigenvectors().adjoint() * g;
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = vals(i) > cut ? y(i) / vals(i) : 0.0;
    return es.eigenvectors() * y;
}

}  // namespace

LeftOuterResidual left_outer_residual(const DAEmbedding& emb, const AnnulusContext& ctx,
                                      int m_G) {
    if (m_G < 0)
        throw OpError(ErrKind::WindowTooSmall, "left_outer_residual", "m_G must be >= 0");
    const int L = std::min(12, emb.M);
    if (m_G > L)
        throw OpError(ErrKind::TruncationTooSmall, "left_outer_residual",
                      "m_G exceeds the truncated word length of the lift");
    const NCSeries lift = nc_lift(emb, L);
    const std::size_t rows = lift.coeffs.size();
    const std::size_t cols = (std::size_t{1} << (m_G + 1)) - 1;

    // Normal equations over G's word coefficients. Entry (u, u') is
    // nonzero only when u and u' are prefixes of a common objective word,
    // so each word contributes a small rank-one update over its prefix
    // chain. (G F)^(w) = sum over splittings w = u v of G^(u) F^(v).
    Eigen::MatrixXcd nm = Eigen::MatrixXcd::Zero(cols, cols);
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(cols);
    std::vector<std::pair<std::size_t, Complex>> chain;
    for (std::size_t w = 0; w < rows; ++w) {
        chain.clear();
        const int lw = word_length(w);
        // ancestors u of w, paired with the lift value at the suffix v
        std::size_t u = w;
        for (int lu = lw;; --lu) {
            if (u < cols) {
                const int lv = lw - lu;
                const std::size_t v =
                    ((std::size_t{1} << lv) | ((w + 1) & ((std::size_t{1} << lv) - 1))) - 1;
                if (lift.coeffs[v] != Complex(0.0)) chain.emplace_back(u, lift.coeffs[v]);
            }
            if (lu == 0) break;
            u = (u - 1) / 2;
        }
        for (const auto& [u1, a1] : chain) {
            for (const auto& [u2, a2] : chain) nm(u1, u2) += std::conj(a1) * a2;
            if (w == 0) g(u1) += std::conj(a1);
        }
    }

    LeftOuterResidual out;
    out.m_G = m_G;
    out.rows = static_cast<int>(rows);
    out.cols = static_cast<int>(cols);
    for (int mu = 0; mu <= m_G; ++mu) {
        const Eigen::Index c = (Eigen::Index{1} << (mu + 1)) - 1;
        const Eigen::MatrixXcd nblock = nm.topLeftCorner(c, c);
        const Eigen::VectorXcd gblock = g.head(c);
        const Eigen::VectorXcd x = pinv_solve(nblock, gblock);
        const double rsq = 1.0 - 2.0 * (x.adjoint() * gblock)(0).real() +
                           (x.adjoint() * nblock * x)(0).real();
        out.by_degree.push_back(std::sqrt(std::max(rsq, 0.0)));
    }
    out.residual = out.by_degree.back();
    (void)ctx;
    return out;
}

}  // namespace annpick

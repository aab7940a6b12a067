#include "annpick/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace annpick {

const char* to_string(KernelId id) {
    switch (id) {
        case KernelId::AnnulusPick: return "annulus";
        case KernelId::Szego: return "szego";
        case KernelId::Disk0Szego: return "disk0";
        case KernelId::DruryArveson2: return "da2";
    }
    return "?";
}

const char* to_string(BoundKind kind) {
    return kind == BoundKind::LowerBoundOnMultNorm ? "LowerBoundOnMultNorm" : "PsdWitness";
}

Complex kernel_eval(KernelId id, Complex lambda, Complex mu, const AnnulusContext& ctx) {
    const Complex prod = lambda * std::conj(mu);
    const double r2 = ctx.r * ctx.r;
    switch (id) {
        case KernelId::AnnulusPick:
            if (!ctx.contains(lambda) || !ctx.contains(mu))
                throw OpError(ErrKind::PointOutsideDomain, "kernel_eval",
                              "annulus kernel needs points with r < |z| < 1");
            return (1.0 - r2) / ((Complex(1.0) - prod) * (Complex(1.0) - r2 / prod));
        case KernelId::Szego:
            if (std::abs(lambda) >= 1.0 || std::abs(mu) >= 1.0)
                throw OpError(ErrKind::PointOutsideDomain, "kernel_eval",
                              "Szego kernel needs points in the open unit disk");
            return Complex(1.0) / (Complex(1.0) - prod);
        case KernelId::Disk0Szego:
            if (std::abs(lambda) <= ctx.r || std::abs(mu) <= ctx.r)
                throw OpError(ErrKind::PointOutsideDomain, "kernel_eval",
                              "Disk0 kernel needs points with |z| > r");
            return Complex(1.0) / (Complex(1.0) - r2 / prod);
        case KernelId::DruryArveson2:
            throw OpError(ErrKind::DomainMismatch, "kernel_eval",
                          "two-variable ball kernel takes coordinate pairs; use ball2_kernel");
    }
    throw OpError(ErrKind::DomainMismatch, "kernel_eval", "unknown kernel id");
}

Complex ball2_kernel(const std::array<Complex, 2>& z, const std::array<Complex, 2>& w) {
    const Complex ip = z[0] * std::conj(w[0]) + z[1] * std::conj(w[1]);
    if (std::abs(ip) >= 1.0)
        throw OpError(ErrKind::PointOutsideDomain, "ball2_kernel",
                      "pairing <z,w> must lie in the open unit disk");
    return Complex(1.0) / (Complex(1.0) - ip);
}

Eigen::MatrixXcd pick_matrix(const std::vector<Complex>& phi_values,
                             const std::vector<Complex>& points, KernelId target, KernelId source,
                             double t, const AnnulusContext& ctx) {
    if (phi_values.size() != points.size())
        throw OpError(ErrKind::DomainMismatch, "pick_matrix",
                      "phi_values and points must have equal length");
    if (t < 0.0)
        throw OpError(ErrKind::DomainMismatch, "pick_matrix", "t must be nonnegative");
    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const Complex kt = kernel_eval(target, points[i], points[j], ctx);
            const Complex ks = kernel_eval(source, points[i], points[j], ctx);
            const Complex v = t * t * kt - phi_values[i] * std::conj(phi_values[j]) * ks;
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    }
    return m;
}

PsdResult psd_check(const Eigen::MatrixXcd& m, double tol, double hermitian_tol) {
    if (m.rows() != m.cols())
        throw OpError(ErrKind::NotHermitian, "psd_check", "matrix is not square");
    const double scale_all = m.cwiseAbs().maxCoeff();
    const double herm_dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > hermitian_tol * std::max(scale_all, 1.0))
        throw OpError(ErrKind::NotHermitian, "psd_check", "matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()),
                                                       Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    const double diag_scale = std::max(m.diagonal().real().maxCoeff(), 0.0);
    return PsdResult{min_eig >= -tol * diag_scale, min_eig};
}

std::vector<Complex> certification_grid(const AnnulusContext& ctx, int grid_size) {
    if (grid_size < 1)
        throw OpError(ErrKind::DomainMismatch, "certification_grid", "grid_size must be >= 1");
    constexpr int kRadii = 8;
    const double eps = (1.0 - ctx.r) / 200.0;
    const double lo = ctx.r + eps;
    const double hi = 1.0 - eps;
    const double ratio = std::pow(hi / lo, 1.0 / (kRadii - 1));
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(kRadii) * grid_size);
    double rho = lo;
    for (int i = 0; i < kRadii; ++i, rho *= ratio) {
        for (int k = 0; k < grid_size; ++k) {
            const double theta = 2.0 * M_PI * k / grid_size;
            pts.emplace_back(std::polar(rho, theta));
        }
    }
    return pts;
}

namespace {

// Max of |f| on the circle |z| = rho: dense sampling, then ternary
// refinement around every local maximum of the sample sequence.
double circle_sup(const std::function<Complex(Complex)>& f, double rho) {
    constexpr int kSamples = 2048;
    std::vector<double> vals(kSamples);
    for (int k = 0; k < kSamples; ++k)
        vals[k] = std::abs(f(std::polar(rho, 2.0 * M_PI * k / kSamples)));
    double best = 0.0;
    const double step = 2.0 * M_PI / kSamples;
    for (int k = 0; k < kSamples; ++k) {
        const double prev = vals[(k + kSamples - 1) % kSamples];
        const double next = vals[(k + 1) % kSamples];
        best = std::max(best, vals[k]);
        if (vals[k] < prev || vals[k] < next) continue;
        double a = step * k - step;
        double b = step * k + step;
        for (int it = 0; it < 60; ++it) {
            const double m1 = a + (b - a) / 3.0;
            const double m2 = b - (b - a) / 3.0;
            const double f1 = std::abs(f(std::polar(rho, m1)));
            const double f2 = std::abs(f(std::polar(rho, m2)));
            best = std::max({best, f1, f2});
            if (f1 < f2) a = m1; else b = m2;
        }
    }
    return best;
}

}  // namespace

double boundary_sup_norm(const LaurentPoly& phi, const AnnulusContext& ctx) {
    if (phi.is_zero()) return 0.0;
    return boundary_sup_norm_fn([&phi](Complex z) { return eval_at(phi, z); }, ctx);
}

double boundary_sup_norm_fn(const std::function<Complex(Complex)>& phi,
                            const AnnulusContext& ctx) {
    return std::max(circle_sup(phi, ctx.r), circle_sup(phi, 1.0));
}

namespace {

struct GridKernels {
    Eigen::MatrixXcd target;  // Gram of the target kernel on the grid
    Eigen::MatrixXcd weighted_source;  // phi_i conj(phi_j) source_ij
};

GridKernels grid_kernels(const std::vector<Complex>& phi_values,
                         const std::vector<Complex>& points, KernelId target, KernelId source,
                         const AnnulusContext& ctx) {
    const auto n = static_cast<Eigen::Index>(points.size());
    GridKernels g{Eigen::MatrixXcd(n, n), Eigen::MatrixXcd(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const Complex kt = kernel_eval(target, points[i], points[j], ctx);
            const Complex ks =
                phi_values[i] * std::conj(phi_values[j]) * kernel_eval(source, points[i], points[j], ctx);
            g.target(i, j) = kt;
            g.target(j, i) = std::conj(kt);
            g.weighted_source(i, j) = ks;
            g.weighted_source(j, i) = std::conj(ks);
        }
    }
    return g;
}

// Fast PSD probe for the bisection: Cholesky of M + tol*scale*I. The
// shift matches the relative threshold used by psd_check.
bool psd_probe(const Eigen::MatrixXcd& m, double tol) {
    const double diag_scale = std::max(m.diagonal().real().maxCoeff(), 0.0);
    Eigen::MatrixXcd shifted = m;
    shifted.diagonal().array() += tol * diag_scale + 1e-300;
    Eigen::LLT<Eigen::MatrixXcd> llt(shifted);
    return llt.info() == Eigen::Success;
}

PickCertificate bisect_certificate(const GridKernels& g, const std::vector<Complex>& points,
                                   int grid_size, double bracket_hi, const AnnulusContext& ctx,
                                   double* lower_out) {
    auto matrix_at = [&g](double t) -> Eigen::MatrixXcd {
        return t * t * g.target - g.weighted_source;
    };
    PickCertificate cert;
    cert.points = points;
    cert.grid_size = grid_size;

    double lo = 0.0, hi = bracket_hi;
    if (psd_probe(matrix_at(lo), ctx.tol_psd)) {
        // already feasible at t = 0 (phi vanishes on the grid)
        cert.bound_kind = BoundKind::PsdWitness;
        cert.t_star = 0.0;
        cert.matrix = matrix_at(0.0);
        cert.min_eigenvalue = psd_check(cert.matrix, ctx.tol_psd, 1e-6).min_eigenvalue;
        *lower_out = 0.0;
        return cert;
    }
    for (int it = 0; it < 60 && (hi - lo) > ctx.tol_numeric * std::max(1.0, lo); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (psd_probe(matrix_at(mid), ctx.tol_psd)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // lo is the largest probed t whose Pick matrix fails PSD: a certified
    // lower bound for the multiplier norm, witnessed by the eigenvalue below.
    cert.bound_kind = BoundKind::LowerBoundOnMultNorm;
    cert.t_star = lo;
    cert.matrix = matrix_at(lo);
    cert.min_eigenvalue = psd_check(cert.matrix, ctx.tol_psd, 1e-6).min_eigenvalue;
    *lower_out = lo;
    return cert;
}

}  // namespace

MultNormBounds mult_norm_bounds(const LaurentPoly& phi, const AnnulusContext& ctx, int grid_size) {
    const bool one_sided = phi.has_nonnegative_support() || phi.has_nonpositive_support();
    return mult_norm_bounds_fn([&phi](Complex z) { return eval_at(phi, z); }, one_sided, ctx,
                               grid_size);
}

MultNormBounds mult_norm_bounds_fn(const std::function<Complex(Complex)>& phi,
                                   bool norm_equals_sup, const AnnulusContext& ctx,
                                   int grid_size) {
    MultNormBounds out;
    out.sup_norm = boundary_sup_norm_fn(phi, ctx);
    out.upper = norm_equals_sup ? out.sup_norm : std::sqrt(2.0) * out.sup_norm;

    const auto points = certification_grid(ctx, grid_size);
    std::vector<Complex> values;
    values.reserve(points.size());
    for (const Complex& p : points) values.push_back(phi(p));
    const auto g =
        grid_kernels(values, points, KernelId::AnnulusPick, KernelId::AnnulusPick, ctx);
    out.certificate = bisect_certificate(g, points, grid_size,
                                          std::sqrt(2.0) * out.sup_norm + 1.0, ctx, &out.lower);
    return out;
}

double mixed_multiplier_bound(const LaurentPoly& f, const LaurentPoly& g,
                              const AnnulusContext& ctx) {
    if (!f.has_nonpositive_support())
        throw OpError(ErrKind::WrongSubspace, "mixed_multiplier_bound",
                      "f must be supported in (-inf, 0]");
    if (!g.has_nonnegative_support())
        throw OpError(ErrKind::WrongSubspace, "mixed_multiplier_bound",
                      "g must be supported in [0, inf)");
    const double f_norm = norm(f, ctx, Space::Disk0Hardy);
    return f_norm / (1.0 - ctx.r * ctx.r) + boundary_sup_norm(g, ctx);
}

MixedLowerBound mixed_mult_lower_bound(const LaurentPoly& phi, const AnnulusContext& ctx,
                                       int grid_size, double bracket_hi) {
    const auto points = certification_grid(ctx, grid_size);
    std::vector<Complex> values;
    values.reserve(points.size());
    for (const Complex& p : points) values.push_back(eval_at(phi, p));
    const auto g = grid_kernels(values, points, KernelId::AnnulusPick, KernelId::Szego, ctx);
    MixedLowerBound out;
    out.certificate =
        bisect_certificate(g, points, grid_size, bracket_hi + 1.0, ctx, &out.lower);
    return out;
}

}  // namespace annpick

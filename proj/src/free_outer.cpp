#include "annpick/free_outer.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

namespace annpick {

const char* to_string(Ternary t) {
    switch (t) {
        case Ternary::False: return "false";
        case Ternary::True: return "true";
        case Ternary::Undecided: return "undecided";
    }
    return "?";
}

const char* to_string(FactorPath path) {
    switch (path) {
        case FactorPath::DiskAnalytic: return "DiskAnalytic";
        case FactorPath::Disk0Analytic: return "Disk0Analytic";
        case FactorPath::HeuristicSearch: return "HeuristicSearch";
    }
    return "?";
}

MomentFunctional moment_functional(const LaurentPoly& f, const AnnulusContext& ctx, int window) {
    MomentFunctional mf;
    mf.window = window < 0 ? f.span() : window;
    mf.values = moment_vector(f, ctx, mf.window);
    return mf;
}

namespace {

double moment_mismatch(const LaurentPoly& f, const LaurentPoly& g, const AnnulusContext& ctx) {
    const int window = std::max(f.span(), g.span());
    const auto mf = moment_vector(f, ctx, window);
    const auto mg = moment_vector(g, ctx, window);
    double worst = 0.0;
    for (int n = -window; n <= window; ++n)
        worst = std::max(worst, std::abs(mf.at(n) - mg.at(n)));
    return worst;
}

double moment_scale(const LaurentPoly& f, const LaurentPoly& g, const AnnulusContext& ctx) {
    const Complex nf = inner_product(f, f, ctx);
    const Complex ng = inner_product(g, g, ctx);
    return std::max({1.0, std::abs(nf), std::abs(ng)});
}

double norm_of_product(const RationalLaurent& phi, const LaurentPoly& h,
                       const AnnulusContext& ctx) {
    const LaurentPoly num_h = phi.num * h;
    if (auto q = divide_exact(num_h, phi.den)) return norm(*q, ctx);
    return norm(expand_on_annulus(RationalLaurent{num_h, phi.den}, ctx), ctx);
}

struct RationalShape {
    bool disk_analytic = false;
    bool disk0_analytic = false;
};

// Pole placement decides boundedness and which boundary circle carries
// the multiplier norm.
RationalShape classify_rational(const RationalLaurent& phi, const AnnulusContext& ctx,
                                const char* op) {
    RationalShape shape;
    if (phi.num.is_zero()) {
        shape.disk_analytic = true;
        return shape;
    }
    if (phi.is_polynomial()) {
        shape.disk_analytic = phi.num.has_nonnegative_support();
        shape.disk0_analytic = phi.num.has_nonpositive_support();
        return shape;
    }
    const int shift = phi.den.support_min();
    std::map<int, Complex> dc;
    for (const auto& [n, c] : phi.den.coeffs()) dc[n - shift] = c;
    const PolyRoots dr = poly_roots(LaurentPoly(std::move(dc)));
    bool all_outside = true;
    bool all_inside = true;
    for (const Complex rho : dr.roots) {
        const double m = std::abs(rho);
        if (m >= ctx.r * (1.0 - 1e-9) && m <= 1.0 + 1e-9)
            throw OpError(ErrKind::UnboundedMultiplier, op,
                          "pole on the closure of the annulus");
        (m > 1.0 ? all_inside : all_outside) = false;
    }
    shape.disk_analytic =
        all_outside && phi.num.support_min() - phi.den.support_min() >= 0;
    shape.disk0_analytic =
        all_inside && phi.num.support_max() - phi.den.support_max() <= 0;
    return shape;
}

}  // namespace

bool moments_equal(const LaurentPoly& f, const LaurentPoly& g, const AnnulusContext& ctx) {
    return moment_mismatch(f, g, ctx) <= ctx.tol_exact * moment_scale(f, g, ctx);
}

SubinnerResult is_subinner(const RationalLaurent& phi, const LaurentPoly& h,
                           const AnnulusContext& ctx, int grid_size) {
    if (h.is_zero())
        throw OpError(ErrKind::ZeroFunction, "is_subinner", "h must be nonzero");
    if (phi.den.is_zero())
        throw OpError(ErrKind::ZeroPolynomial, "is_subinner", "zero denominator");

    const RationalShape shape = classify_rational(phi, ctx, "is_subinner");
    SubinnerResult out;
    out.evidence.norm_exact = shape.disk_analytic || shape.disk0_analytic;
    auto eval = [&phi](Complex z) { return phi.eval(z); };
    out.evidence.sup_norm = boundary_sup_norm_fn(eval, ctx);

    bool norm_is_one = false;
    if (out.evidence.norm_exact) {
        out.evidence.mult_norm_lower = out.evidence.sup_norm;
        out.evidence.mult_norm_upper = out.evidence.sup_norm;
        norm_is_one = std::abs(out.evidence.sup_norm - 1.0) <= ctx.tol_exact;
    } else if (grid_size > 0) {
        const MultNormBounds mb = mult_norm_bounds_fn(eval, false, ctx, grid_size);
        out.evidence.mult_norm_lower = mb.lower;
        out.evidence.mult_norm_upper = mb.upper;
        out.evidence.certificate = mb.certificate;
        norm_is_one = mb.lower <= 1.0 + ctx.tol_exact && mb.upper >= 1.0 - ctx.tol_exact;
    } else {
        // sup |phi| never exceeds the multiplier norm, so it is a valid
        // lower bound even without a Pick grid.
        out.evidence.mult_norm_lower = out.evidence.sup_norm;
        out.evidence.mult_norm_upper = std::sqrt(2.0) * out.evidence.sup_norm;
        norm_is_one = out.evidence.sup_norm <= 1.0 + ctx.tol_exact &&
                      out.evidence.mult_norm_upper >= 1.0 - ctx.tol_exact;
    }

    const double nh = norm(h, ctx);
    out.evidence.norm_equality_residual = std::abs(norm_of_product(phi, h, ctx) - nh);
    const bool attains = out.evidence.norm_equality_residual <= ctx.tol_exact * std::max(1.0, nh);
    out.flag = norm_is_one && attains;
    return out;
}

SubinnerResult is_subinner(const LaurentPoly& phi, const LaurentPoly& h,
                           const AnnulusContext& ctx, int grid_size) {
    return is_subinner(RationalLaurent{phi, LaurentPoly::constant(1.0)}, h, ctx, grid_size);
}

FreeOuterResult is_free_outer(const LaurentPoly& f, const AnnulusContext& ctx) {
    FreeOuterResult out;
    if (f.is_zero()) {
        out.flag = Ternary::False;
        out.reason = "zero function";
        return out;
    }
    if (f.has_nonnegative_support()) {
        for (const Complex a : poly_roots(f).roots) {
            if (std::abs(a) < 1.0 - 1e-8) {
                out.flag = Ternary::False;
                out.reason = "root in the open unit disk";
                out.witness_root = a;
                out.has_witness = true;
                return out;
            }
        }
        out.flag = Ternary::True;
        out.reason = "no roots in the open unit disk";
        return out;
    }
    if (f.has_nonpositive_support()) {
        for (const Complex a : poly_roots(reflect_to_disk0(f, ctx)).roots) {
            if (std::abs(a) < 1.0 - 1e-8) {
                out.flag = Ternary::False;
                out.reason = "root in the exterior disk |z| > r";
                out.witness_root = std::abs(a) == 0.0 ? Complex(0.0) : ctx.r / a;
                out.has_witness = std::abs(a) != 0.0;
                if (!out.has_witness) out.reason = "vanishes at infinity";
                return out;
            }
        }
        out.flag = Ternary::True;
        out.reason = "no roots in the exterior disk |z| > r";
        return out;
    }
    out.flag = Ternary::Undecided;
    out.reason = "two-sided support: outside the decidable analytic cases";
    return out;
}

FactorizationResult factor_subinner_free_outer(const LaurentPoly& f, const AnnulusContext& ctx,
                                               int search_N, int restarts) {
    if (f.is_zero())
        throw OpError(ErrKind::ZeroFunction, "factor_subinner_free_outer", "cannot factor zero");
    FactorizationResult out;

    if (f.has_nonnegative_support() || f.has_nonpositive_support()) {
        const bool disk_side = f.has_nonnegative_support();
        const DiskFactorization fd =
            disk_side ? poly_inner_outer(f, ctx) : disk0_inner_outer(f, ctx);
        out.path = disk_side ? FactorPath::DiskAnalytic : FactorPath::Disk0Analytic;
        out.certified = true;

        const Complex h0 = eval_at(fd.outer, ctx.z0);
        const Complex u = std::conj(h0) / std::abs(h0);
        out.free_outer = u * fd.outer;
        out.subinner.num = std::conj(u) * fd.inner.num;
        out.subinner.den = fd.inner.den;

        out.evidence.h_at_z0 = eval_at(out.free_outer, ctx.z0);
        const LaurentPoly lhs = out.subinner.num * out.free_outer;
        const LaurentPoly rhs = f * out.subinner.den;
        out.evidence.reassembly_residual =
            (lhs - rhs).max_abs_coeff() / std::max(1.0, rhs.max_abs_coeff());
        out.evidence.norm_equality_residual =
            std::abs(norm(f, ctx) - norm(out.free_outer, ctx));
        out.evidence.moment_match_residual = moment_mismatch(f, out.free_outer, ctx);
        out.evidence.subinner_check = is_subinner(out.subinner, out.free_outer, ctx, 0);
        out.evidence.subinner_checked = true;
        return out;
    }

    const int N = search_N < 0 ? f.span() : search_N;
    const ExtremalResult ex = extremal_search(f, ctx, N, restarts);
    out.path = FactorPath::HeuristicSearch;
    out.certified = false;
    out.free_outer = ex.best_h;
    out.search_value = ex.value;
    out.search_feasibility = ex.feasibility;
    out.subinner.num = f;  // formal quotient f / best_h, not a certificate
    out.subinner.den = ex.best_h.is_zero() ? LaurentPoly::constant(1.0) : ex.best_h;
    out.evidence.h_at_z0 = ex.best_h.is_zero() ? Complex(0.0) : eval_at(ex.best_h, ctx.z0);
    out.evidence.norm_equality_residual =
        std::abs(norm(f, ctx) - norm(ex.best_h, ctx));
    out.evidence.moment_match_residual = ex.feasibility;
    out.evidence.reassembly_residual = 0.0;
    return out;
}

CyclicityResult cyclicity_residual(const LaurentPoly& f, const AnnulusContext& ctx, int degree) {
    if (degree < 1)
        throw OpError(ErrKind::WindowTooSmall, "cyclicity_residual", "degree must be >= 1");
    CyclicityResult out;
    if (f.is_zero()) {
        out.residual = 1.0;
        return out;
    }
    const int rlo = std::min(f.support_min() - degree, 0);
    const int rhi = std::max(f.support_max() + degree, 0);
    const int rows = rhi - rlo + 1;
    const int cols = 2 * degree + 1;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(rows, cols);
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(rows);
    for (int n = rlo; n <= rhi; ++n) {
        const double w = std::sqrt(annulus_weight(n, ctx.r));
        for (int k = -degree; k <= degree; ++k) {
            const Complex c = f.coeff(n - k);
            if (c != Complex(0.0)) a(n - rlo, k + degree) = w * c;
        }
        if (n == 0) b(n - rlo) = w;
    }
    const Eigen::VectorXcd x = a.colPivHouseholderQr().solve(b);
    out.residual = (a * x - b).norm();

    if (f.span() > 0) {
        std::map<int, Complex> shifted;
        for (const auto& [n, c] : f.coeffs()) shifted[n - f.support_min()] = c;
        for (const Complex rho : poly_roots(LaurentPoly(std::move(shifted))).roots) {
            if (!ctx.contains(rho)) continue;
            const double k = kernel_eval(KernelId::AnnulusPick, rho, rho, ctx).real();
            out.lower_bound = std::max(out.lower_bound, 1.0 / std::sqrt(k));
        }
    }
    return out;
}

std::vector<double> cyclicity_curve(const LaurentPoly& f, const AnnulusContext& ctx,
                                    int max_degree) {
    std::vector<double> curve;
    curve.reserve(std::max(max_degree, 0));
    for (int d = 1; d <= max_degree; ++d) curve.push_back(cyclicity_residual(f, ctx, d).residual);
    return curve;
}

namespace {

Complex cpow_int(Complex base, int e) {
    if (e < 0) return Complex(1.0) / cpow_int(base, -e);
    Complex acc(1.0);
    for (int i = 0; i < e; ++i) acc *= base;
    return acc;
}

// All state for one search instance: h lives in C^{2N+1} indexed by
// exponent k in [-N, N]; moments are matched on |n| <= 2N, which is the
// full reach of the window.
struct SearchProblem {
    int N;
    double r;
    Complex z0;
    Eigen::VectorXcd target;  // t_n, n = -2N..2N
    double scale;

    int dim() const { return 2 * N + 1; }
    int nres() const { return 4 * N + 1; }

    double weight(int k) const { return annulus_weight(k, r); }

    Complex hval(const Eigen::VectorXcd& h, int k) const {
        return (k < -N || k > N) ? Complex(0.0) : h(k + N);
    }

    Complex point_value(const Eigen::VectorXcd& h) const {
        Complex acc(0.0);
        for (int k = -N; k <= N; ++k) acc += h(k + N) * cpow_int(z0, k);
        return acc;
    }

    Eigen::VectorXcd residuals(const Eigen::VectorXcd& h) const {
        Eigen::VectorXcd d(nres());
        for (int n = -2 * N; n <= 2 * N; ++n) {
            Complex acc(0.0);
            for (int m = std::max(-N, n - N); m <= std::min(N, n + N); ++m)
                acc += weight(m) * hval(h, m - n) * std::conj(h(m + N));
            d(n + 2 * N) = acc - target(n + 2 * N);
        }
        return d;
    }

    double feasibility(const Eigen::VectorXcd& h) const {
        return residuals(h).cwiseAbs().maxCoeff();
    }

    double penalized_value(const Eigen::VectorXcd& h, double rho) const {
        const Complex e = point_value(h);
        return std::norm(e) - rho * residuals(h).squaredNorm();
    }

    // Wirtinger gradient of the penalized objective with respect to
    // conj(h_k); ascent moves h along this vector.
    Eigen::VectorXcd penalized_gradient(const Eigen::VectorXcd& h, double rho) const {
        const Complex e = point_value(h);
        const Eigen::VectorXcd d = residuals(h);
        Eigen::VectorXcd g(dim());
        for (int k = -N; k <= N; ++k) {
            Complex acc = e * std::conj(cpow_int(z0, k));
            for (int n = -2 * N; n <= 2 * N; ++n) {
                const Complex dn = d(n + 2 * N);
                if (dn == Complex(0.0)) continue;
                acc -= rho * (std::conj(dn) * weight(k) * hval(h, k - n) +
                              dn * weight(k + n) * hval(h, k + n));
            }
            g(k + N) = acc;
        }
        return g;
    }

    // Real Jacobian of the moment residuals: rows alternate Re/Im of D_n,
    // columns alternate Re/Im of h_k.
    Eigen::MatrixXd real_jacobian(const Eigen::VectorXcd& h) const {
        Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * nres(), 2 * dim());
        for (int n = -2 * N; n <= 2 * N; ++n) {
            const int row = 2 * (n + 2 * N);
            for (int k = -N; k <= N; ++k) {
                const int col = 2 * (k + N);
                const Complex a = weight(k + n) * std::conj(hval(h, k + n));
                const Complex bb = weight(k) * hval(h, k - n);
                j(row, col) = (a + bb).real();
                j(row, col + 1) = -(a - bb).imag();
                j(row + 1, col) = (a + bb).imag();
                j(row + 1, col + 1) = (a - bb).real();
            }
        }
        return j;
    }

    static Eigen::VectorXd realify(const Eigen::VectorXcd& v) {
        Eigen::VectorXd x(2 * v.size());
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            x(2 * i) = v(i).real();
            x(2 * i + 1) = v(i).imag();
        }
        return x;
    }

    static Eigen::VectorXcd complexify(const Eigen::VectorXd& x) {
        Eigen::VectorXcd v(x.size() / 2);
        for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(x(2 * i), x(2 * i + 1));
        return v;
    }

    void ascend(Eigen::VectorXcd& h, double rho) const {
        double step = 0.1;
        for (int it = 0; it < 400; ++it) {
            const double v = penalized_value(h, rho);
            const Eigen::VectorXcd g = penalized_gradient(h, rho);
            const double gn2 = g.squaredNorm();
            if (gn2 <= 1e-22 * std::max(1.0, v * v)) return;
            bool accepted = false;
            for (int bt = 0; bt < 50; ++bt) {
                const Eigen::VectorXcd trial = h + step * g;
                if (penalized_value(trial, rho) > v + 1e-4 * step * gn2) {
                    h = trial;
                    step *= 1.3;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) return;
        }
    }

    // Gauss-Newton projection onto the moment variety.
    void polish(Eigen::VectorXcd& h) const {
        for (int it = 0; it < 60; ++it) {
            const Eigen::VectorXcd d = residuals(h);
            const double rn = d.norm();
            if (rn <= 1e-14 * scale) return;
            const Eigen::MatrixXd j = real_jacobian(h);
            const Eigen::VectorXd step = j.colPivHouseholderQr().solve(-realify(d));
            const Eigen::VectorXcd dir = complexify(step);
            bool accepted = false;
            double alpha = 1.0;
            for (int bt = 0; bt < 30; ++bt) {
                const Eigen::VectorXcd trial = h + alpha * dir;
                if (residuals(trial).norm() < rn) {
                    h = trial;
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!accepted) return;
        }
    }

    // Ascend |h(z0)| along the tangent space of the variety, re-polishing
    // after each step.
    void ride_ridge(Eigen::VectorXcd& h, double feas_tol) const {
        int stalls = 0;
        for (int round = 0; round < 150 && stalls < 3; ++round) {
            polish(h);
            const double v = std::abs(point_value(h));
            Eigen::VectorXcd ge(dim());
            const Complex e = point_value(h);
            for (int k = -N; k <= N; ++k) ge(k + N) = e * std::conj(cpow_int(z0, k));
            const Eigen::VectorXd gr = realify(ge);
            const Eigen::MatrixXd j = real_jacobian(h);
            const Eigen::VectorXd u = j.transpose().colPivHouseholderQr().solve(gr);
            const Eigen::VectorXd tangent = gr - j.transpose() * u;
            if (tangent.norm() <= 1e-10 * std::max(1.0, gr.norm())) return;
            const Eigen::VectorXcd dir = complexify(tangent);
            double eta = 0.5 * std::max(1.0, h.norm()) / std::max(tangent.norm(), 1e-30);
            bool improved = false;
            for (int bt = 0; bt < 25; ++bt) {
                Eigen::VectorXcd trial = h + eta * dir;
                polish(trial);
                if (feasibility(trial) <= feas_tol &&
                    std::abs(point_value(trial)) > v * (1.0 + 1e-12)) {
                    const double gain = std::abs(point_value(trial)) - v;
                    h = trial;
                    improved = true;
                    stalls = gain <= 1e-10 * std::max(1.0, v) ? stalls + 1 : 0;
                    break;
                }
                eta *= 0.5;
            }
            if (!improved) return;
        }
    }
};

}  // namespace

ExtremalResult extremal_search(const LaurentPoly& f, const AnnulusContext& ctx, int N,
                               int restarts) {
    if (f.is_zero())
        throw OpError(ErrKind::ZeroFunction, "extremal_search", "zero input");
    if (N < f.span())
        throw OpError(ErrKind::WindowTooSmall, "extremal_search",
                      "N must be at least the support span of f");
    if (restarts < 1) restarts = 1;

    SearchProblem prob;
    prob.N = N;
    prob.r = ctx.r;
    prob.z0 = ctx.z0;
    prob.target = Eigen::VectorXcd::Zero(prob.nres());
    {
        const auto mv = moment_vector(f, ctx, 2 * N);
        for (int n = -2 * N; n <= 2 * N; ++n) prob.target(n + 2 * N) = mv.at(n);
    }
    prob.scale = std::max(1.0, prob.target.cwiseAbs().maxCoeff());
    const double feas_tol = 1e-9 * prob.scale;

    // informed warm starts: f itself, its coefficient reversal, and for
    // one-sided inputs the classical outer factor, which already lies on
    // the moment variety at the analytic optimum
    const int center = f.support_min() + f.support_max();
    std::vector<Eigen::VectorXcd> warm;
    {
        Eigen::VectorXcd h_f = Eigen::VectorXcd::Zero(prob.dim());
        Eigen::VectorXcd h_rev = Eigen::VectorXcd::Zero(prob.dim());
        for (const auto& [n, c] : f.coeffs()) {
            h_f(n + N) = c;
            h_rev(center - n + N) = std::conj(c);
        }
        warm.push_back(std::move(h_f));
        warm.push_back(std::move(h_rev));
        if (f.has_nonnegative_support() || f.has_nonpositive_support()) {
            const LaurentPoly outer = f.has_nonnegative_support()
                                          ? poly_inner_outer(f, ctx).outer
                                          : disk0_inner_outer(f, ctx).outer;
            if (outer.support_min() >= -N && outer.support_max() <= N) {
                Eigen::VectorXcd h_o = Eigen::VectorXcd::Zero(prob.dim());
                for (const auto& [n, c] : outer.coeffs()) h_o(n + N) = c;
                warm.push_back(std::move(h_o));
            }
        }
    }

    ExtremalResult best;
    bool have_best = false;
    for (int k = 0; k < restarts; ++k) {
        Eigen::VectorXcd h;
        if (k < static_cast<int>(warm.size())) {
            h = warm[static_cast<std::size_t>(k)];
        } else {
            std::mt19937_64 rng(ctx.seed + 1000003ULL * static_cast<std::uint64_t>(k));
            auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
            auto gauss = [&]() {
                double u1 = unit();
                while (u1 <= 0.0) u1 = unit();
                return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * unit());
            };
            h = Eigen::VectorXcd(prob.dim());
            for (int i = 0; i < prob.dim(); ++i) h(i) = Complex(gauss(), gauss());
            // start on the right norm sphere: match the zeroth moment
            double m0 = 0.0;
            for (int i = 0; i < prob.dim(); ++i)
                m0 += prob.weight(i - N) * std::norm(h(i));
            h *= std::sqrt(prob.target(2 * N).real() / m0);
        }

        for (const double rho : {10.0, 1e3, 1e5}) prob.ascend(h, rho);
        prob.ride_ridge(h, feas_tol);

        const double feas = prob.feasibility(h);
        const double value = std::abs(prob.point_value(h));
        const bool ok = feas <= feas_tol;
        bool take = false;
        if (!have_best) {
            take = true;
        } else if (ok != best.feasible) {
            take = ok;
        } else if (ok) {
            take = value > best.value + 1e-12;
        } else {
            take = feas < best.feasibility;
        }
        if (take) {
            best.value = value;
            best.feasibility = feas;
            best.best_restart = k;
            best.feasible = ok;
            std::map<int, Complex> coeffs;
            const double peak = h.cwiseAbs().maxCoeff();
            for (int i = 0; i < prob.dim(); ++i)
                if (std::abs(h(i)) > 1e-13 * peak) coeffs[i - N] = h(i);
            best.best_h = LaurentPoly(std::move(coeffs));
            have_best = true;
        }
    }

    // re-evaluate after the coefficient cleanup, then fix the phase
    if (!best.best_h.is_zero()) {
        Eigen::VectorXcd h = Eigen::VectorXcd::Zero(prob.dim());
        for (const auto& [n, c] : best.best_h.coeffs()) h(n + N) = c;
        best.feasibility = prob.feasibility(h);
        best.feasible = best.feasibility <= feas_tol;
        const Complex e = prob.point_value(h);
        best.value = std::abs(e);
        if (e != Complex(0.0)) best.best_h *= std::conj(e) / std::abs(e);
    }
    return best;
}

}  // namespace annpick

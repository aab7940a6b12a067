#include "annpick/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace annpick {

const char* to_string(ErrKind kind) {
    switch (kind) {
        case ErrKind::ZeroBaseWithNegativePowers: return "ZeroBaseWithNegativePowers";
        case ErrKind::WrongSubspace: return "WrongSubspace";
        case ErrKind::WindowTooSmall: return "WindowTooSmall";
        case ErrKind::PointOutsideAnnulus: return "PointOutsideAnnulus";
        case ErrKind::PointOutsideDomain: return "PointOutsideDomain";
        case ErrKind::DomainMismatch: return "DomainMismatch";
        case ErrKind::NotHermitian: return "NotHermitian";
        case ErrKind::ZeroPolynomial: return "ZeroPolynomial";
        case ErrKind::ZeroFunction: return "ZeroFunction";
        case ErrKind::NotNonnegative: return "NotNonnegative";
        case ErrKind::UnboundedMultiplier: return "UnboundedMultiplier";
        case ErrKind::TruncationTooSmall: return "TruncationTooSmall";
        case ErrKind::ZeroPoint: return "ZeroPoint";
    }
    return "UnknownError";
}

void LaurentPoly::prune() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->second == Complex(0.0)) {
            it = coeffs_.erase(it);
        } else {
            ++it;
        }
    }
}

double LaurentPoly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [n, c] : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
    for (const auto& [n, c] : rhs.coeffs_) coeffs_[n] += c;
    prune();
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs) {
    for (const auto& [n, c] : rhs.coeffs_) coeffs_[n] -= c;
    prune();
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(Complex s) {
    if (s == Complex(0.0)) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [n, c] : coeffs_) c *= s;
    prune();
    return *this;
}

AnnulusContext AnnulusContext::make(double r) {
    AnnulusContext ctx;
    ctx.r = r;
    ctx.z0 = Complex(std::sqrt(r));
    ctx.validate();
    return ctx;
}

void AnnulusContext::validate() const {
    if (!(r > 0.0 && r < 1.0)) throw ValidationError("r must lie in (0, 1)");
    const double az0 = std::abs(z0);
    if (!(az0 > r && az0 < 1.0)) throw ValidationError("z0 must lie in the annulus r < |z0| < 1");
    if (kernel_window < 1) throw ValidationError("kernel_window must be >= 1");
    if (tol_exact < 0.0 || tol_psd < 0.0 || tol_numeric < 0.0)
        throw ValidationError("tolerances must be nonnegative");
}

namespace {

// Integer power by repeated multiplication; as reproducible as it gets.
double ipow(double base, int e) {
    if (e < 0) return 1.0 / ipow(base, -e);
    double acc = 1.0;
    for (int i = 0; i < e; ++i) acc *= base;
    return acc;
}

Complex cipow(Complex base, int e) {
    if (e < 0) return Complex(1.0) / cipow(base, -e);
    Complex acc(1.0);
    for (int i = 0; i < e; ++i) acc *= base;
    return acc;
}

}  // namespace

double annulus_weight(int n, double r) { return n >= 0 ? 1.0 : ipow(r, 2 * n); }

Complex eval_at(const LaurentPoly& f, Complex z) {
    if (z == Complex(0.0) && !f.is_zero() && f.support_min() < 0)
        throw OpError(ErrKind::ZeroBaseWithNegativePowers, "eval_at",
                      "z = 0 with negative exponents present");
    Complex acc(0.0);
    for (const auto& [n, c] : f.coeffs()) acc += c * cipow(z, n);
    return acc;
}

LaurentPoly multiply(const LaurentPoly& f, const LaurentPoly& g) {
    std::map<int, Complex> out;
    for (const auto& [n, a] : f.coeffs())
        for (const auto& [m, b] : g.coeffs()) out[n + m] += a * b;
    return LaurentPoly(std::move(out));
}

std::optional<LaurentPoly> divide_exact(const LaurentPoly& num, const LaurentPoly& den,
                                        double rel_tol) {
    if (den.is_zero())
        throw OpError(ErrKind::ZeroPolynomial, "divide_exact", "division by zero polynomial");
    if (num.is_zero()) return LaurentPoly::zero();
    const int q_min = num.support_min() - den.support_min();
    const int q_max = num.support_max() - den.support_max();
    if (q_max < q_min) return std::nullopt;

    const bool anchor_top =
        std::abs(den.coeff(den.support_max())) >= std::abs(den.coeff(den.support_min()));
    std::map<int, Complex> q;
    LaurentPoly rem = num;
    const int anchor = anchor_top ? den.support_max() : den.support_min();
    for (int step = 0; step <= q_max - q_min; ++step) {
        const int k = anchor_top ? q_max - step : q_min + step;
        const Complex c = rem.coeff(k + anchor) / den.coeff(anchor);
        if (c == Complex(0.0)) continue;
        q[k] = c;
        rem -= LaurentPoly::monomial(k, c) * den;
    }
    if (rem.max_abs_coeff() > rel_tol * std::max(1.0, num.max_abs_coeff())) return std::nullopt;
    return LaurentPoly(std::move(q));
}

namespace {

void require_support(const LaurentPoly& f, Space space, const char* op) {
    if (space == Space::DiskHardy && !f.has_nonnegative_support())
        throw OpError(ErrKind::WrongSubspace, op, "DiskHardy requires support in [0, inf)");
    if (space == Space::Disk0Hardy && !f.has_nonpositive_support())
        throw OpError(ErrKind::WrongSubspace, op, "Disk0Hardy requires support in (-inf, 0]");
}

}  // namespace

Complex inner_product(const LaurentPoly& f, const LaurentPoly& g, const AnnulusContext& ctx,
                      Space space) {
    require_support(f, space, "inner_product");
    require_support(g, space, "inner_product");
    Complex acc(0.0);
    for (const auto& [n, a] : f.coeffs()) {
        const Complex b = g.coeff(n);
        if (b == Complex(0.0)) continue;
        acc += annulus_weight(n, ctx.r) * a * std::conj(b);
    }
    return acc;
}

double norm(const LaurentPoly& f, const AnnulusContext& ctx, Space space) {
    return std::sqrt(std::real(inner_product(f, f, ctx, space)));
}

std::map<int, Complex> moment_vector(const LaurentPoly& f, const AnnulusContext& ctx, int window) {
    if (window < f.span())
        throw OpError(ErrKind::WindowTooSmall, "moment_vector",
                      "window smaller than the support span of f");
    std::map<int, Complex> moments;
    for (int n = -window; n <= window; ++n) {
        Complex acc(0.0);
        // <z^n f, f> = sum_j w_j f_{j-n} conj(f_j)
        for (const auto& [j, fj] : f.coeffs()) {
            const Complex fshift = f.coeff(j - n);
            if (fshift == Complex(0.0)) continue;
            acc += annulus_weight(j, ctx.r) * fshift * std::conj(fj);
        }
        moments[n] = acc;
    }
    return moments;
}

LaurentPoly kernel_expansion(Complex lambda, const AnnulusContext& ctx) {
    if (!ctx.contains(lambda))
        throw OpError(ErrKind::PointOutsideAnnulus, "kernel_expansion",
                      "lambda must satisfy r < |lambda| < 1");
    const Complex lc = std::conj(lambda);
    std::map<int, Complex> coeffs;
    for (int n = -ctx.kernel_window; n <= ctx.kernel_window; ++n) {
        coeffs[n] = n >= 0 ? cipow(lc, n) : cipow(lc, n) * ipow(ctx.r, -2 * n);
    }
    return LaurentPoly(std::move(coeffs));
}

double reproducing_tail_bound(const LaurentPoly& f, Complex lambda, const AnnulusContext& ctx) {
    // |<f, tail of k_lambda>| <= ||f|| * ||tail||, and the tail norm is a pair
    // of geometric series starting at exponent K+1:
    //   sum_{n>K} |lambda|^{2n}  +  sum_{m>K} (r/|lambda|)^{2m}.
    // A summation-roundoff floor is added so the bound stays valid for the
    // computed quantities when the geometric part underflows machine noise.
    const double al = std::abs(lambda);
    const int K = ctx.kernel_window;
    const double qo = al * al;
    const double qi = (ctx.r / al) * (ctx.r / al);
    const double tail_sq = ipow(qo, K + 1) / (1.0 - qo) + ipow(qi, K + 1) / (1.0 - qi);
    const double section_sq = 1.0 / (1.0 - qo) + qi / (1.0 - qi);  // ||k_lambda||^2
    const double fp_floor = 64.0 * std::numeric_limits<double>::epsilon() * norm(f, ctx) *
                            std::sqrt(section_sq);
    return norm(f, ctx) * std::sqrt(tail_sq) + fp_floor;
}

LaurentPoly reflect_to_disk0(const LaurentPoly& f, const AnnulusContext& ctx) {
    std::map<int, Complex> out;
    for (const auto& [n, c] : f.coeffs()) out[-n] = c * ipow(ctx.r, n);
    return LaurentPoly(std::move(out));
}

}  // namespace annpick

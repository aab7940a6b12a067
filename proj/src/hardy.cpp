#include "annpick/hardy.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

namespace annpick {

Complex RationalLaurent::eval(Complex z) const {
    return eval_at(num, z) / eval_at(den, z);
}

bool RationalLaurent::is_polynomial() const {
    return den.term_count() == 1 && den.coeff(0) == Complex(1.0);
}

std::vector<Complex> cluster_roots(const std::vector<Complex>& raw, double rel_tol) {
    std::vector<Complex> sorted = raw;
    std::sort(sorted.begin(), sorted.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    struct Cluster {
        Complex sum;
        int count;
    };
    std::vector<Cluster> clusters;
    for (const Complex z : sorted) {
        bool placed = false;
        for (Cluster& c : clusters) {
            const Complex mean = c.sum / static_cast<double>(c.count);
            if (std::abs(z - mean) <= rel_tol * std::max(1.0, std::abs(mean))) {
                c.sum += z;
                ++c.count;
                placed = true;
                break;
            }
        }
        if (!placed) clusters.push_back({z, 1});
    }
    std::vector<Complex> out;
    out.reserve(sorted.size());
    for (const Cluster& c : clusters) {
        const Complex mean = c.sum / static_cast<double>(c.count);
        out.insert(out.end(), c.count, mean);
    }
    return out;
}

PolyRoots poly_roots(const LaurentPoly& p) {
    if (p.is_zero())
        throw OpError(ErrKind::ZeroPolynomial, "poly_roots", "zero polynomial has no root data");
    if (!p.has_nonnegative_support())
        throw OpError(ErrKind::WrongSubspace, "poly_roots", "expected support in [0, inf)");
    const int m = p.support_min();
    const int d = p.support_max();
    PolyRoots out;
    out.leading = p.coeff(d);
    out.roots.assign(m, Complex(0.0));
    const int n = d - m;
    if (n == 0) return out;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) comp(i + 1, i) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -p.coeff(m + i) / out.leading;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(comp, false);
    std::vector<Complex> raw(ces.eigenvalues().data(), ces.eigenvalues().data() + n);
    const auto clustered = cluster_roots(raw, 1e-8);
    out.roots.insert(out.roots.end(), clustered.begin(), clustered.end());
    return out;
}

LaurentPoly from_roots(const PolyRoots& pr) {
    LaurentPoly acc = LaurentPoly::constant(pr.leading);
    for (const Complex rho : pr.roots) acc = acc * LaurentPoly{{0, -rho}, {1, Complex(1.0)}};
    return acc;
}

DiskFactorization poly_inner_outer(const LaurentPoly& p, const AnnulusContext& ctx) {
    (void)ctx;
    if (p.is_zero())
        throw OpError(ErrKind::ZeroPolynomial, "poly_inner_outer", "cannot factor zero");
    const PolyRoots pr = poly_roots(p);

    LaurentPoly num = LaurentPoly::constant(1.0);
    LaurentPoly den = LaurentPoly::constant(1.0);
    LaurentPoly outer_raw = LaurentPoly::constant(1.0);
    for (const Complex a : pr.roots) {
        if (std::abs(a) < 1.0 - 1e-8) {
            num = num * LaurentPoly{{0, -a}, {1, Complex(1.0)}};
            const LaurentPoly refl{{0, Complex(1.0)}, {1, -std::conj(a)}};
            den = den * refl;
            outer_raw = outer_raw * refl;
        } else {
            outer_raw = outer_raw * LaurentPoly{{0, -a}, {1, Complex(1.0)}};
        }
    }
    const Complex zeta = eval_at(outer_raw, Complex(0.0));
    const Complex gamma = std::abs(pr.leading) * std::conj(zeta) / std::abs(zeta);
    const Complex phase = pr.leading / gamma;

    DiskFactorization fd;
    fd.inner.num = phase * num;
    fd.inner.den = den;
    fd.outer = gamma * outer_raw;
    fd.phase = phase;
    fd.domain = Space::DiskHardy;
    return fd;
}

std::map<int, Complex> autocorrelation(const LaurentPoly& p) {
    std::map<int, Complex> q;
    for (const auto& [k, ck] : p.coeffs()) {
        for (const auto& [j, cj] : p.coeffs()) {
            q[k - j] += ck * std::conj(cj);
        }
    }
    for (auto it = q.begin(); it != q.end();)
        it = (it->second == Complex(0.0)) ? q.erase(it) : std::next(it);
    return q;
}

LaurentPoly fejer_riesz_outer(const std::map<int, Complex>& autocorr,
                              const AnnulusContext& ctx) {
    int d = 0;
    double scale = 0.0;
    for (const auto& [n, qn] : autocorr) {
        if (std::abs(qn) == 0.0) continue;
        d = std::max(d, std::abs(n));
        scale = std::max(scale, std::abs(qn));
    }
    if (scale == 0.0) return LaurentPoly::zero();

    auto q_at = [&autocorr](int n) {
        auto it = autocorr.find(n);
        return it == autocorr.end() ? Complex(0.0) : it->second;
    };
    for (int n = 0; n <= d; ++n) {
        if (std::abs(q_at(-n) - std::conj(q_at(n))) > ctx.tol_exact * scale)
            throw OpError(ErrKind::NotHermitian, "fejer_riesz_outer",
                          "autocorrelation must satisfy q_{-n} = conj(q_n)");
    }

    constexpr int kGrid = 2048;
    std::vector<double> trig(kGrid);
    double vmax = 0.0;
    int arg_vmax = 0;
    for (int k = 0; k < kGrid; ++k) {
        const Complex z = std::polar(1.0, 2.0 * M_PI * k / kGrid);
        Complex acc = 0.0;
        Complex zn = 1.0;
        for (int n = 0; n <= d; ++n) {
            acc += q_at(n) * zn;
            if (n > 0) acc += q_at(-n) * std::conj(zn);
            zn *= z;
        }
        trig[k] = acc.real();
        if (trig[k] > vmax) {
            vmax = trig[k];
            arg_vmax = k;
        }
        if (trig[k] < -1e-9 * scale)
            throw OpError(ErrKind::NotNonnegative, "fejer_riesz_outer",
                          "trigonometric polynomial is negative on the circle");
    }

    if (d == 0) return LaurentPoly::constant(std::sqrt(std::max(q_at(0).real(), 0.0)));

    // P(z) = z^d * Q(z): a degree-2d polynomial whose root multiset is
    // invariant under rho -> 1/conj(rho). The d largest-modulus roots give
    // the zero set of the outer factor.
    std::map<int, Complex> pc;
    for (int n = -d; n <= d; ++n) pc[n + d] = q_at(n);
    PolyRoots roots = poly_roots(LaurentPoly(std::move(pc)));
    std::sort(roots.roots.begin(), roots.roots.end(), [](Complex a, Complex b) {
        if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    roots.roots.resize(d);
    roots.leading = Complex(1.0);
    const LaurentPoly h_raw = from_roots(roots);

    // |h|^2 / Q is constant on the circle; read the constant off at the
    // maximizer of Q, far from any circle zeros.
    const Complex zstar = std::polar(1.0, 2.0 * M_PI * arg_vmax / kGrid);
    const double s = std::sqrt(vmax) / std::abs(eval_at(h_raw, zstar));
    const Complex h0 = eval_at(h_raw, Complex(0.0));
    return (s * std::conj(h0) / std::abs(h0)) * h_raw;
}

LaurentPoly expand_on_annulus(const RationalLaurent& phi, const AnnulusContext& ctx) {
    if (phi.den.is_zero())
        throw OpError(ErrKind::ZeroPolynomial, "expand_on_annulus", "zero denominator");
    if (auto exact = divide_exact(phi.num, phi.den)) return *exact;
    if (phi.num.is_zero()) return LaurentPoly::zero();

    // shift den to a genuine polynomial before rooting
    const int shift = phi.den.support_min();
    std::map<int, Complex> dc;
    for (const auto& [n, c] : phi.den.coeffs()) dc[n - shift] = c;
    const PolyRoots dr = poly_roots(LaurentPoly(std::move(dc)));

    double worst_ratio = 0.0;
    for (const Complex rho : dr.roots) {
        const double m = std::abs(rho);
        if (m >= ctx.r * (1.0 - 1e-9) && m <= 1.0 + 1e-9)
            throw OpError(ErrKind::UnboundedMultiplier, "expand_on_annulus",
                          "denominator root on the closure of the annulus");
        worst_ratio = std::max(worst_ratio, m < ctx.r ? m / ctx.r : 1.0 / m);
    }
    int window = 64;
    if (worst_ratio > 0.0)
        window = std::max(window, static_cast<int>(std::ceil(
                                      std::log(1e-16) / (2.0 * std::log(worst_ratio)))));
    if (window > 20000)
        throw OpError(ErrKind::WindowTooSmall, "expand_on_annulus",
                      "pole too close to the annulus for a convergent expansion");

    // 1/(z - rho) as a geometric series: around 0 for outer poles, around
    // infinity for inner poles; accumulate the product truncated to the
    // window plus the numerator's reach.
    const int num_lo = phi.num.support_min();
    const int num_hi = phi.num.support_max();
    const int keep_lo = -window + num_lo - 1;
    const int keep_hi = window + num_hi + 1;
    auto truncate = [&](const LaurentPoly& f) {
        std::map<int, Complex> kept;
        for (const auto& [n, c] : f.coeffs())
            if (n >= keep_lo && n <= keep_hi) kept[n] = c;
        return LaurentPoly(std::move(kept));
    };

    LaurentPoly acc = (Complex(1.0) / dr.leading) * phi.num;
    acc = truncate(acc * LaurentPoly::monomial(-shift));
    for (const Complex rho : dr.roots) {
        std::map<int, Complex> series;
        if (std::abs(rho) < ctx.r) {
            // 1/(z - rho) = z^{-1} sum (rho/z)^k
            Complex term(1.0);
            for (int k = 0; k <= window; ++k, term *= rho) series[-1 - k] = term;
        } else {
            // 1/(z - rho) = -(1/rho) sum (z/rho)^k
            Complex term = -1.0 / rho;
            for (int k = 0; k <= window; ++k, term /= rho) series[k] = term;
        }
        acc = truncate(acc * LaurentPoly(std::move(series)));
    }
    return acc;
}

DiskFactorization disk0_inner_outer(const LaurentPoly& p, const AnnulusContext& ctx) {
    if (p.is_zero())
        throw OpError(ErrKind::ZeroPolynomial, "disk0_inner_outer", "cannot factor zero");
    if (!p.has_nonpositive_support())
        throw OpError(ErrKind::WrongSubspace, "disk0_inner_outer",
                      "expected support in (-inf, 0]");
    const DiskFactorization fd = poly_inner_outer(reflect_to_disk0(p, ctx), ctx);
    DiskFactorization out;
    out.inner.num = reflect_to_disk0(fd.inner.num, ctx);
    out.inner.den = reflect_to_disk0(fd.inner.den, ctx);
    out.outer = reflect_to_disk0(fd.outer, ctx);
    out.phase = fd.phase;
    out.domain = Space::Disk0Hardy;
    return out;
}

}  // namespace annpick

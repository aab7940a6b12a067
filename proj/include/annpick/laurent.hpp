#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "annpick/errors.hpp"

namespace annpick {

using Complex = std::complex<double>;

/// Which weighted sequence space an inner product is taken in.
/// Annulus admits any support; DiskHardy requires support in [0,inf),
/// Disk0Hardy in (-inf,0]. On their admissible supports all three use
/// the same weights, so the Hardy norms agree with the annulus norm.
enum class Space { Annulus, DiskHardy, Disk0Hardy };

/// A finitely supported two-sided coefficient sequence c_n, i.e. a
/// Laurent polynomial f(z) = sum c_n z^n. Exact zeros are pruned, so
/// every stored coefficient is nonzero and support bounds are tight.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(std::map<int, Complex> coeffs) : coeffs_(std::move(coeffs)) { prune(); }
    LaurentPoly(std::initializer_list<std::pair<const int, Complex>> init) : coeffs_(init) { prune(); }

    static LaurentPoly zero() { return LaurentPoly{}; }
    static LaurentPoly constant(Complex c) { return LaurentPoly{{0, c}}; }
    static LaurentPoly monomial(int n, Complex c = Complex(1.0)) { return LaurentPoly{{n, c}}; }

    bool is_zero() const noexcept { return coeffs_.empty(); }

    int support_min() const {
        if (is_zero()) throw std::logic_error("support_min of the zero function");
        return coeffs_.begin()->first;
    }
    int support_max() const {
        if (is_zero()) throw std::logic_error("support_max of the zero function");
        return coeffs_.rbegin()->first;
    }
    /// support_max - support_min; 0 for the zero function.
    int span() const { return is_zero() ? 0 : support_max() - support_min(); }

    Complex coeff(int n) const {
        auto it = coeffs_.find(n);
        return it == coeffs_.end() ? Complex(0.0) : it->second;
    }

    /// Sets c_n; writing an exact zero removes the term.
    void set_coeff(int n, Complex c) {
        if (c == Complex(0.0)) {
            coeffs_.erase(n);
        } else {
            coeffs_[n] = c;
        }
    }

    const std::map<int, Complex>& coeffs() const noexcept { return coeffs_; }
    std::size_t term_count() const noexcept { return coeffs_.size(); }

    bool has_nonnegative_support() const { return is_zero() || support_min() >= 0; }
    bool has_nonpositive_support() const { return is_zero() || support_max() <= 0; }

    /// Largest coefficient magnitude (0 for the zero function).
    double max_abs_coeff() const;

    LaurentPoly& operator+=(const LaurentPoly& rhs);
    LaurentPoly& operator-=(const LaurentPoly& rhs);
    LaurentPoly& operator*=(Complex s);

    friend LaurentPoly operator+(LaurentPoly lhs, const LaurentPoly& rhs) { return lhs += rhs; }
    friend LaurentPoly operator-(LaurentPoly lhs, const LaurentPoly& rhs) { return lhs -= rhs; }
    friend LaurentPoly operator*(Complex s, LaurentPoly f) { return f *= s; }
    friend LaurentPoly operator*(LaurentPoly f, Complex s) { return f *= s; }

private:
    void prune();

    std::map<int, Complex> coeffs_;
};

/// Radius, normalization point, truncation windows and tolerances shared
/// by every operation. Immutable after validation.
struct AnnulusContext {
    double r = 0.5;
    Complex z0 = Complex(0.0);  // defaults to sqrt(r) when left at 0
    int kernel_window = 60;
    double tol_exact = 1e-9;
    double tol_psd = 1e-10;
    double tol_numeric = 1e-9;
    std::uint64_t seed = 42;

    /// Fills z0 = sqrt(r) if unset and checks all invariants.
    static AnnulusContext make(double r);

    void validate() const;
    bool contains(Complex z) const { return r < std::abs(z) && std::abs(z) < 1.0; }
};

/// w_n = 1 for n >= 0 and r^{2n} (> 1) for n < 0.
double annulus_weight(int n, double r);

/// Direct summation of sum c_n z^n.
Complex eval_at(const LaurentPoly& f, Complex z);

/// Exact coefficient convolution.
LaurentPoly multiply(const LaurentPoly& f, const LaurentPoly& g);
inline LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g) { return multiply(f, g); }

/// num / den when den divides num exactly (residual below rel_tol times
/// the numerator scale); nullopt otherwise. Anchored at the larger end
/// coefficient of den for stability.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& num, const LaurentPoly& den,
                                        double rel_tol = 1e-8);

/// sum w_n f_n conj(g_n) with the weights of the requested space.
/// DiskHardy/Disk0Hardy enforce their support preconditions.
Complex inner_product(const LaurentPoly& f, const LaurentPoly& g, const AnnulusContext& ctx,
                      Space space = Space::Annulus);

double norm(const LaurentPoly& f, const AnnulusContext& ctx, Space space = Space::Annulus);

/// Moments <z^n f, f> for |n| <= window; exactly zero outside the span.
std::map<int, Complex> moment_vector(const LaurentPoly& f, const AnnulusContext& ctx, int window);

/// Truncated coefficient sequence of the kernel section at lambda:
/// conj(lambda)^n for n >= 0 and conj(lambda)^n r^{-2n} for n < 0,
/// kept for |n| <= ctx.kernel_window.
LaurentPoly kernel_expansion(Complex lambda, const AnnulusContext& ctx);

/// Certified bound on |f(lambda) - <f, kernel_expansion(lambda)>| from the
/// geometric decay of the omitted kernel coefficients.
double reproducing_tail_bound(const LaurentPoly& f, Complex lambda, const AnnulusContext& ctx);

/// The substitution z -> r/z: coefficient c_n moves to exponent -n with
/// factor r^n. An isometric involution of the annulus space exchanging
/// nonnegative and nonpositive supports.
LaurentPoly reflect_to_disk0(const LaurentPoly& f, const AnnulusContext& ctx);

}  // namespace annpick

#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "annpick/laurent.hpp"

namespace annpick {

/// The four kernels in play. The first three live on subsets of the plane
/// and are evaluated through kernel_eval; the two-variable ball kernel is
/// evaluated on explicit coordinate pairs through ball2_kernel.
enum class KernelId { AnnulusPick, Szego, Disk0Szego, DruryArveson2 };

const char* to_string(KernelId id);

/// Closed-form kernel evaluation. AnnulusPick requires both points in the
/// open annulus, Szego in the open unit disk, Disk0Szego in |z| > r.
Complex kernel_eval(KernelId id, Complex lambda, Complex mu, const AnnulusContext& ctx);

/// k2(z, w) = 1 / (1 - <z, w>) on the unit ball of C^2.
Complex ball2_kernel(const std::array<Complex, 2>& z, const std::array<Complex, 2>& w);

/// [ t^2 target(l_i, l_j) - phi_i conj(phi_j) source(l_i, l_j) ]_{ij}.
/// With target == source this is the scaled Pick matrix of phi on the grid.
Eigen::MatrixXcd pick_matrix(const std::vector<Complex>& phi_values,
                             const std::vector<Complex>& points, KernelId target, KernelId source,
                             double t, const AnnulusContext& ctx);

struct PsdResult {
    bool psd;
    double min_eigenvalue;
};

/// Hermitian eigenvalue test: psd iff min eigenvalue >= -tol * (max diagonal).
PsdResult psd_check(const Eigen::MatrixXcd& m, double tol, double hermitian_tol = 1e-9);

enum class BoundKind { LowerBoundOnMultNorm, PsdWitness };

const char* to_string(BoundKind kind);

/// Grid, matrix and eigenvalue evidence backing a multiplier-norm bound.
struct PickCertificate {
    std::vector<Complex> points;
    Eigen::MatrixXcd matrix;  // Pick matrix at t_star (kept in memory, not serialized)
    double min_eigenvalue = 0.0;
    BoundKind bound_kind = BoundKind::LowerBoundOnMultNorm;
    double t_star = 0.0;
    int grid_size = 0;
};

/// Deterministic boundary-biased lattice: 8 radii geometric between r+eps
/// and 1-eps, times grid_size equispaced angles.
std::vector<Complex> certification_grid(const AnnulusContext& ctx, int grid_size);

/// sup |phi| over the two boundary circles |z| in {r, 1}, dense angular
/// sampling plus local ternary refinement.
double boundary_sup_norm(const LaurentPoly& phi, const AnnulusContext& ctx);

/// Same, for an arbitrary evaluator (rational multipliers).
double boundary_sup_norm_fn(const std::function<Complex(Complex)>& phi,
                            const AnnulusContext& ctx);

struct MultNormBounds {
    double lower = 0.0;
    double upper = 0.0;
    double sup_norm = 0.0;
    PickCertificate certificate;
};

/// Certified lower bound (Pick-matrix bisection on the grid) and upper
/// bound (sup norm, doubled by sqrt(2) only for mixed support).
MultNormBounds mult_norm_bounds(const LaurentPoly& phi, const AnnulusContext& ctx, int grid_size);

/// Engine behind mult_norm_bounds. norm_equals_sup marks multipliers that
/// are analytic on one of the two sub-disks, where the multiplier norm is
/// exactly the boundary sup.
MultNormBounds mult_norm_bounds_fn(const std::function<Complex(Complex)>& phi,
                                   bool norm_equals_sup, const AnnulusContext& ctx,
                                   int grid_size);

/// ||f||_{H2(D0)} / (1 - r^2) + sup|g|, an upper bound on the norm of f+g
/// as a multiplier from the disk Hardy space into the annulus space.
double mixed_multiplier_bound(const LaurentPoly& f, const LaurentPoly& g,
                              const AnnulusContext& ctx);

struct MixedLowerBound {
    double lower = 0.0;
    PickCertificate certificate;
};

/// Companion lower bound for the mixed multiplier norm: bisection over the
/// two-kernel Pick matrix with target AnnulusPick and source Szego.
MixedLowerBound mixed_mult_lower_bound(const LaurentPoly& phi, const AnnulusContext& ctx,
                                       int grid_size, double bracket_hi);

}  // namespace annpick

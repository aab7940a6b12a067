#pragma once

#include <string>
#include <vector>

#include "annpick/hardy.hpp"
#include "annpick/kernels.hpp"

namespace annpick {

// The restriction of P_f : phi -> <phi f, f> to Laurent monomials. For
// finite Laurent data every moment outside the support span vanishes,
// so the window captures the whole functional.
struct MomentFunctional {
    int window = 0;
    std::map<int, Complex> values;
};

MomentFunctional moment_functional(const LaurentPoly& f, const AnnulusContext& ctx,
                                   int window = -1);

bool moments_equal(const LaurentPoly& f, const LaurentPoly& g, const AnnulusContext& ctx);

struct SubinnerEvidence {
    double mult_norm_lower = 0.0;
    double mult_norm_upper = 0.0;
    double sup_norm = 0.0;
    bool norm_exact = false;  // one-sided analytic: multiplier norm == sup
    double norm_equality_residual = 0.0;  // | ||phi h|| - ||h|| |
    PickCertificate certificate;
};

struct SubinnerResult {
    bool flag = false;
    SubinnerEvidence evidence;
};

// flag = (multiplier norm pinned to 1 within the certificate bounds) and
// (phi attains its norm on h). For one-sided analytic phi the norm is the
// boundary sup, which is exact.
SubinnerResult is_subinner(const RationalLaurent& phi, const LaurentPoly& h,
                           const AnnulusContext& ctx, int grid_size = 40);
SubinnerResult is_subinner(const LaurentPoly& phi, const LaurentPoly& h,
                           const AnnulusContext& ctx, int grid_size = 40);

enum class Ternary { False, True, Undecided };

const char* to_string(Ternary t);

struct FreeOuterResult {
    Ternary flag = Ternary::Undecided;
    std::string reason;
    Complex witness_root{0.0, 0.0};  // an offending interior root when flag is False
    bool has_witness = false;
};

FreeOuterResult is_free_outer(const LaurentPoly& f, const AnnulusContext& ctx);

enum class FactorPath { DiskAnalytic, Disk0Analytic, HeuristicSearch };

const char* to_string(FactorPath path);

struct FactorEvidence {
    double reassembly_residual = 0.0;  // relative, den-cleared coefficient comparison
    double norm_equality_residual = 0.0;
    double moment_match_residual = 0.0;
    Complex h_at_z0{0.0, 0.0};
    SubinnerResult subinner_check;  // carries the multiplier-norm certificate
    bool subinner_checked = false;
};

struct FactorizationResult {
    RationalLaurent subinner;
    LaurentPoly free_outer;
    FactorPath path = FactorPath::DiskAnalytic;
    bool certified = false;
    FactorEvidence evidence;
    double search_value = 0.0;        // heuristic path only
    double search_feasibility = 0.0;  // heuristic path only
};

// Analytic inputs go through the classical factorization, rephased so the
// outer factor is positive at z0. Two-sided inputs fall back to the
// extremal search and are never certified.
FactorizationResult factor_subinner_free_outer(const LaurentPoly& f, const AnnulusContext& ctx,
                                               int search_N = -1, int restarts = 20);

struct CyclicityResult {
    double residual = 0.0;
    double lower_bound = 0.0;
};

// residual = min ||p f - 1|| over Laurent p supported in [-degree, degree];
// lower_bound from evaluation functionals at interior roots of f.
CyclicityResult cyclicity_residual(const LaurentPoly& f, const AnnulusContext& ctx, int degree);

std::vector<double> cyclicity_curve(const LaurentPoly& f, const AnnulusContext& ctx,
                                    int max_degree);

struct ExtremalResult {
    LaurentPoly best_h;
    double value = 0.0;        // |best_h(z0)|
    double feasibility = 0.0;  // max moment mismatch
    int best_restart = 0;
    bool feasible = false;
};

// Multi-start penalized ascent of |h(z0)|^2 over the moment variety of f,
// followed by a Gauss-Newton feasibility polish. Deterministic given
// (ctx.seed, restarts). Heuristic: results are candidates, not certificates.
ExtremalResult extremal_search(const LaurentPoly& f, const AnnulusContext& ctx, int N,
                               int restarts);

}  // namespace annpick

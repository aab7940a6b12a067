#include "annpick/report.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "annpick/errors.hpp"
#include "annpick/fock.hpp"
#include "annpick/free_outer.hpp"
#include "annpick/hardy.hpp"
#include "annpick/kernels.hpp"

namespace annpick {

namespace {

LaurentPoly require_laurent(const std::optional<Json>& j, const char* command,
                            const char* which) {
    if (!j) {
        throw ValidationError(std::string(command) + " requires " + which);
    }
    return laurent_from_json(*j);
}

Complex require_point(const CommandRequest& req, const char* command) {
    if (!req.has_point) {
        throw ValidationError(std::string(command) + " requires a point (--re/--im)");
    }
    return req.point;
}

Json subinner_result_json(const SubinnerResult& sub) {
    return Json{{"flag", sub.flag},
                {"mult_norm_lower", sub.evidence.mult_norm_lower},
                {"mult_norm_upper", sub.evidence.mult_norm_upper},
                {"sup_norm", sub.evidence.sup_norm},
                {"norm_exact", sub.evidence.norm_exact},
                {"norm_equality_residual", sub.evidence.norm_equality_residual}};
}

// Relative coefficient residual of p * inner.den - inner.num * outer.
double disk_reassembly_residual(const LaurentPoly& p, const DiskFactorization& fac) {
    LaurentPoly lhs = multiply(p, fac.inner.den);
    LaurentPoly rhs = multiply(fac.inner.num, fac.outer);
    double scale = std::max(lhs.max_abs_coeff(), 1e-300);
    return (lhs - rhs).max_abs_coeff() / scale;
}

struct VerifyCheck {
    std::string name;
    bool pass = false;
    double residual = 0.0;
};

LaurentPoly random_laurent(std::mt19937_64& rng, int lo, int hi) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    LaurentPoly f;
    for (int n = lo; n <= hi; ++n) {
        f.set_coeff(n, Complex(gauss(rng), gauss(rng)));
    }
    return f;
}

std::vector<VerifyCheck> run_verify(const AnnulusContext& ctx) {
    std::vector<VerifyCheck> checks;
    std::mt19937_64 rng(ctx.seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);

    {
        LaurentPoly f = LaurentPoly::monomial(-1);
        double n = norm(f, ctx);
        double want = std::pow(ctx.r, -2.0);
        double res = std::abs(n * n - want);
        checks.push_back({"norm_formula", res <= 1e-12 * want, res});
    }
    {
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            LaurentPoly f = random_laurent(rng, -5, 5);
            double rho = ctx.r + (1.0 - ctx.r) * (0.2 + 0.15 * trial);
            Complex lambda = std::polar(rho, angle(rng));
            Complex direct = eval_at(f, lambda);
            Complex via_kernel = inner_product(f, kernel_expansion(lambda, ctx), ctx);
            double err = std::abs(direct - via_kernel);
            double bound = std::max(reproducing_tail_bound(f, lambda, ctx), 1e-8);
            worst = std::max(worst, err - bound);
        }
        checks.push_back({"reproducing_property", worst <= 0.0, std::max(worst, 0.0)});
    }
    {
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            LaurentPoly f = random_laurent(rng, 0, 6);
            double d = std::abs(norm(f, ctx, Space::DiskHardy) - norm(f, ctx));
            LaurentPoly g = reflect_to_disk0(f, ctx);
            double d0 = std::abs(norm(g, ctx, Space::Disk0Hardy) - norm(g, ctx));
            worst = std::max({worst, d, d0});
        }
        checks.push_back({"hardy_norm_equality", worst <= 1e-12, worst});
    }
    {
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            LaurentPoly f = random_laurent(rng, -4, 4);
            double a = norm(f, ctx);
            double b = norm(reflect_to_disk0(f, ctx), ctx);
            worst = std::max(worst, std::abs(a - b) / std::max(a, 1e-300));
        }
        checks.push_back({"reflection_isometry", worst <= 1e-12, worst});
    }
    {
        double worst = 0.0;
        for (int trial = 0; trial < 8; ++trial) {
            double rho1 = ctx.r + (1.0 - ctx.r) * 0.3;
            double rho2 = ctx.r + (1.0 - ctx.r) * 0.7;
            Complex l = std::polar(rho1, angle(rng));
            Complex m = std::polar(rho2, angle(rng));
            Complex a = kernel_eval(KernelId::AnnulusPick, l, m, ctx);
            Complex b = std::conj(kernel_eval(KernelId::AnnulusPick, m, l, ctx));
            worst = std::max(worst, std::abs(a - b));

            double c = (1.0 - ctx.r * ctx.r) / (1.0 + ctx.r * ctx.r);
            Complex ball = ball2_kernel(embed_point(l, ctx), embed_point(m, ctx));
            worst = std::max(worst, std::abs(a - c * ball) / std::abs(a));
        }
        checks.push_back({"kernel_symmetry_and_embedding", worst <= 1e-12, worst});
    }
    {
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            LaurentPoly p = random_laurent(rng, 0, 5);
            DiskFactorization fac = poly_inner_outer(p, ctx);
            worst = std::max(worst, disk_reassembly_residual(p, fac));
        }
        checks.push_back({"factor_reassembly", worst <= 1e-9, worst});
    }
    {
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            LaurentPoly p = random_laurent(rng, 0, 4);
            DiskFactorization fac = poly_inner_outer(p, ctx);
            LaurentPoly h = fejer_riesz_outer(autocorrelation(p), ctx);
            worst = std::max(worst,
                             (h - fac.outer).max_abs_coeff() /
                                 std::max(fac.outer.max_abs_coeff(), 1e-300));
        }
        checks.push_back({"fejer_riesz_agreement", worst <= 1e-8, worst});
    }
    {
        bool ok = true;
        for (int trial = 0; trial < 5; ++trial) {
            LaurentPoly p = random_laurent(rng, 0, 4);
            DiskFactorization fac = poly_inner_outer(p, ctx);
            ok = ok && moments_equal(p, fac.outer, ctx);
        }
        checks.push_back({"moment_invariance", ok, ok ? 0.0 : 1.0});
    }
    {
        IsometryCheck chk = da_isometry_check(LaurentPoly::constant(1.0), ctx, 40);
        double res = std::abs(chk.lhs - chk.rhs);
        checks.push_back({"fock_isometry_constant", res <= chk.tail_bound + 1e-10, res});
    }
    {
        DAEmbedding emb = da_embedding_coeffs(LaurentPoly::monomial(1), ctx, 12);
        LeftOuterResidual res = left_outer_residual(emb, ctx, 6);
        double gap = std::abs(res.residual - 1.0);
        checks.push_back({"left_outer_trivial", gap <= 1e-12, gap});
    }
    return checks;
}

const char* cyclic_verdict(const CyclicityResult& cyc) {
    if (cyc.residual <= 1e-3) return "true";
    if (cyc.lower_bound > 0.0) return "false";
    return "undetermined";
}

}  // namespace

Report run(const CommandRequest& req) {
    const auto start = std::chrono::steady_clock::now();
    req.ctx.validate();

    Json results = Json::object();
    Json certificates = Json::array();
    std::vector<std::string> warnings;
    bool certified = true;

    const std::string& cmd = req.command;
    const AnnulusContext& ctx = req.ctx;

    if (cmd == "norm") {
        LaurentPoly f = require_laurent(req.input, "norm", "--input");
        double n = norm(f, ctx);
        results["norm_sq"] = n * n;
        results["norm"] = n;
    } else if (cmd == "eval") {
        LaurentPoly f = require_laurent(req.input, "eval", "--input");
        Complex z = require_point(req, "eval");
        results["point"] = to_json(z);
        results["value"] = to_json(eval_at(f, z));
    } else if (cmd == "kernel") {
        Complex lambda = require_point(req, "kernel");
        if (!req.has_point2) {
            throw ValidationError("kernel requires a second point (--re2/--im2)");
        }
        Complex mu = req.point2;
        Complex value;
        if (req.kernel == "annulus") {
            value = kernel_eval(KernelId::AnnulusPick, lambda, mu, ctx);
        } else if (req.kernel == "szego") {
            value = kernel_eval(KernelId::Szego, lambda, mu, ctx);
        } else if (req.kernel == "disk0") {
            value = kernel_eval(KernelId::Disk0Szego, lambda, mu, ctx);
        } else if (req.kernel == "da2") {
            value = ball2_kernel(embed_point(lambda, ctx), embed_point(mu, ctx));
        } else {
            throw ValidationError("unknown kernel '" + req.kernel + "'");
        }
        results["kernel"] = req.kernel;
        results["lambda"] = to_json(lambda);
        results["mu"] = to_json(mu);
        results["value"] = to_json(value);
    } else if (cmd == "mult-norm") {
        LaurentPoly phi = require_laurent(req.input, "mult-norm", "--input");
        MultNormBounds bounds = mult_norm_bounds(phi, ctx, req.grid);
        results["lower"] = bounds.lower;
        results["upper"] = bounds.upper;
        results["sup_norm"] = bounds.sup_norm;
        results["norm_exact"] =
            phi.has_nonnegative_support() || phi.has_nonpositive_support();
        certificates.push_back(to_json(bounds.certificate));
    } else if (cmd == "mixed-bound") {
        LaurentPoly f, g;
        if (req.input2) {
            f = require_laurent(req.input, "mixed-bound", "--input");
            g = laurent_from_json(*req.input2);
            if (!f.has_nonpositive_support()) {
                throw ValidationError("mixed-bound: --input must have support in (-inf,0]");
            }
            if (!g.has_nonnegative_support()) {
                throw ValidationError("mixed-bound: --input2 must have support in [0,inf)");
            }
        } else {
            LaurentPoly phi = require_laurent(req.input, "mixed-bound", "--input");
            for (const auto& [n, c] : phi.coeffs()) {
                if (n < 0) {
                    f.set_coeff(n, c);
                } else {
                    g.set_coeff(n, c);
                }
            }
        }
        double upper = mixed_multiplier_bound(f, g, ctx);
        MixedLowerBound lower = mixed_mult_lower_bound(f + g, ctx, req.grid, upper + 1.0);
        results["upper"] = upper;
        results["lower"] = lower.lower;
        results["f"] = to_json(f);
        results["g"] = to_json(g);
        certificates.push_back(to_json(lower.certificate));
    } else if (cmd == "factor-disk") {
        LaurentPoly p = require_laurent(req.input, "factor-disk", "--input");
        if (p.is_zero()) throw ValidationError("factor-disk: zero input");
        DiskFactorization fac;
        if (p.has_nonnegative_support()) {
            fac = poly_inner_outer(p, ctx);
        } else if (p.has_nonpositive_support()) {
            fac = disk0_inner_outer(p, ctx);
        } else {
            throw ValidationError(
                "factor-disk expects one-sided support; use factor-annulus");
        }
        double residual = disk_reassembly_residual(p, fac);
        results["domain"] = fac.domain == Space::DiskHardy ? "disk" : "disk0";
        results["inner"] = to_json(fac.inner);
        results["outer"] = to_json(fac.outer);
        results["phase"] = to_json(fac.phase);
        results["reassembly_residual"] = residual;
        certified = residual <= ctx.tol_numeric;
    } else if (cmd == "factor-annulus") {
        LaurentPoly f = require_laurent(req.input, "factor-annulus", "--input");
        FactorizationResult fac =
            factor_subinner_free_outer(f, ctx, req.degree, req.restarts);
        results["path"] = to_string(fac.path);
        results["subinner"] = to_json(fac.subinner);
        results["free_outer"] = to_json(fac.free_outer);
        Json evidence{{"reassembly_residual", fac.evidence.reassembly_residual},
                      {"norm_equality_residual", fac.evidence.norm_equality_residual},
                      {"moment_match_residual", fac.evidence.moment_match_residual},
                      {"h_at_z0", to_json(fac.evidence.h_at_z0)}};
        if (fac.evidence.subinner_checked) {
            evidence["subinner"] = subinner_result_json(fac.evidence.subinner_check);
            certificates.push_back(
                to_json(fac.evidence.subinner_check.evidence.certificate));
        }
        results["evidence"] = std::move(evidence);
        if (fac.path == FactorPath::HeuristicSearch) {
            results["search_value"] = fac.search_value;
            results["search_feasibility"] = fac.search_feasibility;
            warnings.push_back(
                "two-sided support: extremal search path, result is a candidate");
        }
        certified = fac.certified;
    } else if (cmd == "free-outer") {
        LaurentPoly f = require_laurent(req.input, "free-outer", "--input");
        FreeOuterResult fo = is_free_outer(f, ctx);
        results["flag"] = to_string(fo.flag);
        results["reason"] = fo.reason;
        if (fo.has_witness) {
            results["witness_root"] = to_json(fo.witness_root);
        }
        certified = fo.flag != Ternary::Undecided;
        if (!certified) warnings.push_back("free-outer undecided: " + fo.reason);
    } else if (cmd == "subinner") {
        if (!req.input) throw ValidationError("subinner requires --input");
        LaurentPoly h = req.input2 ? laurent_from_json(*req.input2)
                                   : LaurentPoly::constant(1.0);
        SubinnerResult sub;
        if (req.input->is_object() && req.input->contains("num")) {
            RationalLaurent phi = rational_from_json(*req.input);
            results["phi"] = to_json(phi);
            sub = is_subinner(phi, h, ctx, req.grid);
        } else {
            LaurentPoly phi = laurent_from_json(*req.input);
            results["phi"] = to_json(phi);
            sub = is_subinner(phi, h, ctx, req.grid);
        }
        results["h"] = to_json(h);
        results["subinner"] = subinner_result_json(sub);
        if (!sub.evidence.certificate.points.empty()) {
            certificates.push_back(to_json(sub.evidence.certificate));
        }
        certified = sub.evidence.norm_exact;
        if (!certified) {
            warnings.push_back(
                "multiplier norm known only within grid bounds; verdict not exact");
        }
    } else if (cmd == "moments-equal") {
        LaurentPoly f = require_laurent(req.input, "moments-equal", "--input");
        LaurentPoly g = require_laurent(req.input2, "moments-equal", "--input2");
        MomentFunctional mf = moment_functional(f, ctx);
        MomentFunctional mg = moment_functional(g, ctx);
        int window = std::max(mf.window, mg.window);
        mf = moment_functional(f, ctx, window);
        mg = moment_functional(g, ctx, window);
        double mismatch = 0.0;
        for (int n = -window; n <= window; ++n) {
            Complex a = mf.values.count(n) ? mf.values.at(n) : Complex(0.0);
            Complex b = mg.values.count(n) ? mg.values.at(n) : Complex(0.0);
            mismatch = std::max(mismatch, std::abs(a - b));
        }
        results["equal"] = moments_equal(f, g, ctx);
        results["window"] = window;
        results["max_mismatch"] = mismatch;
    } else if (cmd == "cyclicity") {
        LaurentPoly f = require_laurent(req.input, "cyclicity", "--input");
        int degree = req.degree >= 0 ? req.degree : 8;
        CyclicityResult cyc = cyclicity_residual(f, ctx, degree);
        results["degree"] = degree;
        results["residual"] = cyc.residual;
        results["lower_bound"] = cyc.lower_bound;
        results["by_degree"] = cyclicity_curve(f, ctx, degree);
        results["verdict"] = cyclic_verdict(cyc);
        if (results["verdict"] == "undetermined") {
            certified = false;
            warnings.push_back("cyclicity undetermined at this degree");
        }
    } else if (cmd == "embed") {
        LaurentPoly f = require_laurent(req.input, "embed", "--input");
        DAEmbedding emb = da_embedding_coeffs(f, ctx, req.trunc_M);
        results["embedding"] = to_json(emb);
        certified = emb.tail_bound <= ctx.tol_numeric;
        if (!certified) warnings.push_back("embedding tail above tol_numeric");
    } else if (cmd == "isometry-check") {
        LaurentPoly f = require_laurent(req.input, "isometry-check", "--input");
        IsometryCheck chk = da_isometry_check(f, ctx, req.trunc_M);
        results["lhs"] = chk.lhs;
        results["rhs"] = chk.rhs;
        results["gap"] = chk.gap;
        results["tail_bound"] = chk.tail_bound;
        results["certified"] = chk.certified;
        certified = chk.certified;
        if (!certified) warnings.push_back("isometry tail above tol_numeric");
    } else if (cmd == "fock-residual") {
        LaurentPoly f = require_laurent(req.input, "fock-residual", "--input");
        int m_G = req.degree >= 0 ? req.degree : 8;
        DAEmbedding emb = da_embedding_coeffs(f, ctx, req.trunc_M);
        LeftOuterResidual res = left_outer_residual(emb, ctx, m_G);
        results = to_json(res);
        results["tail_bound"] = emb.tail_bound;
    } else if (cmd == "extremal-search") {
        LaurentPoly f = require_laurent(req.input, "extremal-search", "--input");
        if (f.is_zero()) throw ValidationError("extremal-search: zero input");
        int N = req.degree >= 0 ? req.degree : std::max(f.span(), 1);
        ExtremalResult ext = extremal_search(f, ctx, N, req.restarts);
        results["value"] = ext.value;
        results["feasibility"] = ext.feasibility;
        results["feasible"] = ext.feasible;
        results["best_restart"] = ext.best_restart;
        results["best_h"] = to_json(ext.best_h);
        certified = false;
        warnings.push_back("extremal search is heuristic: value is a candidate");
    } else if (cmd == "example-table") {
        Json rows = Json::array();
        const double lambdas[] = {0.0, 0.25, 0.7, 1.0, 2.0};
        for (double lambda : lambdas) {
            LaurentPoly f{{1, Complex(1.0)}, {0, Complex(-lambda)}};
            FactorizationResult fac = factor_subinner_free_outer(f, ctx);
            SubinnerResult sub = is_subinner(f, fac.free_outer, ctx, 0);
            FreeOuterResult fo = is_free_outer(f, ctx);
            CyclicityResult cyc = cyclicity_residual(f, ctx, 40);
            const char* cyclic = cyclic_verdict(cyc);

            bool any_flag = sub.flag || fo.flag == Ternary::True ||
                            std::string(cyclic) == "true";
            Json row{{"lambda", lambda},
                     {"subinner", sub.flag},
                     {"free_outer", to_string(fo.flag)},
                     {"cyclic", cyclic},
                     {"neither", !any_flag}};
            Json evidence{{"sup_norm", sub.evidence.sup_norm},
                          {"norm_equality_residual", sub.evidence.norm_equality_residual},
                          {"free_outer_reason", fo.reason},
                          {"cyclicity_residual", cyc.residual},
                          {"cyclicity_lower_bound", cyc.lower_bound}};
            if (fo.has_witness) evidence["witness_root"] = to_json(fo.witness_root);
            row["evidence"] = std::move(evidence);
            rows.push_back(std::move(row));

            if (fo.flag == Ternary::Undecided) {
                certified = false;
                warnings.push_back("free-outer undecided at lambda = " +
                                   std::to_string(lambda));
            }
            if (std::string(cyclic) == "undetermined") {
                certified = false;
                warnings.push_back("cyclicity undetermined at lambda = " +
                                   std::to_string(lambda));
            }
        }
        results["r"] = ctx.r;
        results["rows"] = std::move(rows);
    } else if (cmd == "verify") {
        std::vector<VerifyCheck> checks = run_verify(ctx);
        Json arr = Json::array();
        int passed = 0;
        for (const VerifyCheck& c : checks) {
            arr.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}});
            if (c.pass) {
                ++passed;
            } else {
                certified = false;
                warnings.push_back("verify check failed: " + c.name);
            }
        }
        results["checks"] = std::move(arr);
        results["passed"] = passed;
        results["failed"] = static_cast<int>(checks.size()) - passed;
    } else {
        throw ValidationError("unknown command '" + cmd + "'");
    }

    const auto stop = std::chrono::steady_clock::now();
    Report report;
    report.json = Json{
        {"command", cmd},
        {"context", to_json(ctx)},
        {"results", std::move(results)},
        {"certificates", std::move(certificates)},
        {"certified", certified},
        {"warnings", warnings},
        {"wall_time_ms",
         std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count()}};
    return report;
}

}  // namespace annpick

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "annpick/errors.hpp"
#include "annpick/report.hpp"

namespace {

void print_error(const char* type, const std::string& message, const char* kind = nullptr,
                 const char* op = nullptr) {
    annpick::Json err{{"type", type}, {"message", message}};
    if (kind) err["kind"] = kind;
    if (op) err["op"] = op;
    std::cerr << annpick::Json{{"error", std::move(err)}}.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Weighted Hardy space of the annulus r < |z| < 1: norms, Pick-matrix "
        "multiplier certificates, inner-outer and subinner/free-outer "
        "factorization, cyclicity residuals and the two-variable ball embedding. "
        "Reports are JSON on stdout."};
    app.get_formatter()->column_width(34);

    std::string command;
    app.add_option("command", command,
                   "One of: norm, eval, kernel, mult-norm, mixed-bound, factor-disk, "
                   "factor-annulus, free-outer, subinner, moments-equal, cyclicity, "
                   "embed, isometry-check, fock-residual, extremal-search, "
                   "example-table, verify")
        ->required();

    double r = 0.5;
    double tol = 1e-9;
    std::uint64_t seed = 42;
    int grid = 40;
    int degree = -1;
    int restarts = 20;
    int trunc_M = 40;
    std::string input, input2, out, kernel = "annulus";
    double re = 0.0, im = 0.0, re2 = 0.0, im2 = 0.0;

    app.add_option("--r", r, "Inner radius of the annulus")->capture_default_str();
    app.add_option("--tol", tol, "Numeric tolerance (tol_exact and tol_numeric)")
        ->capture_default_str();
    app.add_option("--seed", seed, "Seed for randomized search paths")
        ->capture_default_str();
    app.add_option("--grid", grid, "Angular grid size for Pick certificates")
        ->capture_default_str();
    app.add_option("--degree", degree,
                   "Command-specific degree: cyclicity window, free polynomial degree "
                   "(fock-residual), search window (factor-annulus, extremal-search); "
                   "-1 picks the command default");
    app.add_option("--restarts", restarts, "Restarts for the extremal search")
        ->capture_default_str();
    app.add_option("--trunc-M", trunc_M, "Embedding truncation order")
        ->capture_default_str();
    app.add_option("--input", input, "Input JSON file (Laurent coefficients)");
    app.add_option("--input2", input2, "Second input JSON file");
    app.add_option("--out", out, "Also write the report to this file");
    app.add_option("--kernel", kernel, "Kernel id: annulus, szego, disk0, da2")
        ->capture_default_str();
    auto* ore = app.add_option("--re", re, "Re of the evaluation point");
    app.add_option("--im", im, "Im of the evaluation point");
    auto* ore2 = app.add_option("--re2", re2, "Re of the second point");
    app.add_option("--im2", im2, "Im of the second point");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("ParseError", e.what());
        return 2;
    }

    try {
        annpick::CommandRequest req;
        req.command = command;
        req.ctx = annpick::AnnulusContext::make(r);
        req.ctx.tol_exact = tol;
        req.ctx.tol_numeric = tol;
        req.ctx.seed = seed;
        req.grid = grid;
        req.degree = degree;
        req.restarts = restarts;
        req.trunc_M = trunc_M;
        req.kernel = kernel;
        if (!input.empty()) req.input = annpick::load_json_file(input);
        if (!input2.empty()) req.input2 = annpick::load_json_file(input2);
        if (ore->count() > 0 || app.count("--im") > 0) {
            req.point = annpick::Complex(re, im);
            req.has_point = true;
        }
        if (ore2->count() > 0 || app.count("--im2") > 0) {
            req.point2 = annpick::Complex(re2, im2);
            req.has_point2 = true;
        }

        annpick::Report report = annpick::run(req);
        std::cout << report.json.dump(2) << "\n";
        if (!out.empty()) annpick::write_json_file(out, report.json);
        return 0;
    } catch (const annpick::OpError& e) {
        print_error("OpError", e.what(), annpick::to_string(e.kind()), e.op().c_str());
        return 3;
    } catch (const annpick::ParseError& e) {
        print_error("ParseError", e.what());
        return 2;
    } catch (const annpick::ValidationError& e) {
        print_error("ValidationError", e.what());
        return 2;
    }
}

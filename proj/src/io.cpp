#include "annpick/io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "annpick/errors.hpp"

namespace annpick {

namespace {

double number_field(const Json& j, const char* key, const char* where) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw ParseError(std::string(where) + ": missing numeric field '" + key + "'");
    }
    return j.at(key).get<double>();
}

}  // namespace

void expect_fields(const Json& j, std::initializer_list<const char*> allowed,
                   const char* where) {
    if (!j.is_object()) {
        throw ParseError(std::string(where) + ": expected a JSON object");
    }
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ParseError(std::string(where) + ": unknown field '" + item.key() + "'");
        }
    }
}

Json to_json(Complex z) {
    return Json{{"re", z.real()}, {"im", z.imag()}};
}

Complex complex_from_json(const Json& j, const char* where) {
    expect_fields(j, {"re", "im"}, where);
    return Complex(number_field(j, "re", where), number_field(j, "im", where));
}

Json to_json(const LaurentPoly& f) {
    Json arr = Json::array();
    for (const auto& [n, c] : f.coeffs()) {
        arr.push_back(Json{{"n", n}, {"re", c.real()}, {"im", c.imag()}});
    }
    return Json{{"coeffs", std::move(arr)}};
}

LaurentPoly laurent_from_json(const Json& j) {
    expect_fields(j, {"coeffs"}, "laurent");
    if (!j.contains("coeffs") || !j.at("coeffs").is_array()) {
        throw ParseError("laurent: missing array field 'coeffs'");
    }
    LaurentPoly f;
    std::set<int> seen;
    for (const auto& entry : j.at("coeffs")) {
        expect_fields(entry, {"n", "re", "im"}, "laurent coefficient");
        if (!entry.contains("n") || !entry.at("n").is_number_integer()) {
            throw ParseError("laurent coefficient: 'n' must be an integer");
        }
        int n = entry.at("n").get<int>();
        if (!seen.insert(n).second) {
            throw ParseError("laurent: duplicate exponent " + std::to_string(n));
        }
        f.set_coeff(n, Complex(number_field(entry, "re", "laurent coefficient"),
                               number_field(entry, "im", "laurent coefficient")));
    }
    return f;
}

Json to_json(const PolyRoots& pr) {
    Json roots = Json::array();
    for (Complex w : pr.roots) roots.push_back(to_json(w));
    return Json{{"leading", to_json(pr.leading)}, {"roots", std::move(roots)}};
}

PolyRoots poly_roots_from_json(const Json& j) {
    expect_fields(j, {"leading", "roots"}, "roots");
    PolyRoots pr;
    if (!j.contains("leading") || !j.contains("roots") || !j.at("roots").is_array()) {
        throw ParseError("roots: need 'leading' and array 'roots'");
    }
    pr.leading = complex_from_json(j.at("leading"), "roots.leading");
    for (const auto& entry : j.at("roots")) {
        pr.roots.push_back(complex_from_json(entry, "roots entry"));
    }
    return pr;
}

Json to_json(const RationalLaurent& phi) {
    return Json{{"num", to_json(phi.num)}, {"den", to_json(phi.den)}};
}

RationalLaurent rational_from_json(const Json& j) {
    expect_fields(j, {"num", "den"}, "rational");
    if (!j.contains("num") || !j.contains("den")) {
        throw ParseError("rational: need 'num' and 'den'");
    }
    RationalLaurent phi;
    phi.num = laurent_from_json(j.at("num"));
    phi.den = laurent_from_json(j.at("den"));
    if (phi.den.is_zero()) throw ParseError("rational: zero denominator");
    return phi;
}

Json to_json(const PickCertificate& cert) {
    Json points = Json::array();
    for (Complex z : cert.points) points.push_back(to_json(z));
    return Json{{"points", std::move(points)},
                {"t_star", cert.t_star},
                {"min_eigenvalue", cert.min_eigenvalue},
                {"grid_size", cert.grid_size},
                {"bound_kind", to_string(cert.bound_kind)}};
}

Json to_json(const AnnulusContext& ctx) {
    return Json{{"r", ctx.r},
                {"z0", to_json(ctx.z0)},
                {"kernel_window", ctx.kernel_window},
                {"tol_exact", ctx.tol_exact},
                {"tol_psd", ctx.tol_psd},
                {"tol_numeric", ctx.tol_numeric},
                {"seed", ctx.seed}};
}

Json to_json(const DAEmbedding& emb) {
    Json rows = Json::array();
    for (const auto& row : emb.b) {
        Json cols = Json::array();
        for (Complex c : row) cols.push_back(to_json(c));
        rows.push_back(std::move(cols));
    }
    return Json{{"r", emb.r},
                {"M", emb.M},
                {"b", std::move(rows)},
                {"tail_bound", emb.tail_bound}};
}

DAEmbedding embedding_from_json(const Json& j) {
    expect_fields(j, {"r", "M", "b", "tail_bound"}, "embedding");
    DAEmbedding emb;
    emb.r = number_field(j, "r", "embedding");
    if (!j.contains("M") || !j.at("M").is_number_integer()) {
        throw ParseError("embedding: 'M' must be an integer");
    }
    emb.M = j.at("M").get<int>();
    emb.tail_bound = number_field(j, "tail_bound", "embedding");
    if (!j.contains("b") || !j.at("b").is_array()) {
        throw ParseError("embedding: missing array field 'b'");
    }
    for (const auto& row : j.at("b")) {
        if (!row.is_array()) throw ParseError("embedding: 'b' rows must be arrays");
        std::vector<Complex> out;
        for (const auto& entry : row) {
            out.push_back(complex_from_json(entry, "embedding coefficient"));
        }
        emb.b.push_back(std::move(out));
    }
    const std::size_t want = static_cast<std::size_t>(emb.M) + 1;
    if (emb.b.size() != want) {
        throw ParseError("embedding: 'b' must have M+1 rows");
    }
    for (const auto& row : emb.b) {
        if (row.size() != want) throw ParseError("embedding: 'b' must have M+1 columns");
    }
    return emb;
}

Json to_json(const LeftOuterResidual& res) {
    return Json{{"m_G", res.m_G},
                {"by_degree", res.by_degree},
                {"residual", res.residual},
                {"rows", res.rows},
                {"cols", res.cols}};
}

Json to_json(const MomentFunctional& mf) {
    Json arr = Json::array();
    for (const auto& [n, v] : mf.values) {
        arr.push_back(Json{{"n", n}, {"re", v.real()}, {"im", v.imag()}});
    }
    return Json{{"window", mf.window}, {"moments", std::move(arr)}};
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

}  // namespace annpick

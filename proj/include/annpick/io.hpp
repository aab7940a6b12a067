#pragma once

#include <initializer_list>
#include <string>

#include <json.hpp>

#include "annpick/fock.hpp"
#include "annpick/free_outer.hpp"
#include "annpick/hardy.hpp"
#include "annpick/kernels.hpp"
#include "annpick/laurent.hpp"

namespace annpick {

// Ordered so that emitted reports are byte-stable for diffing.
using Json = nlohmann::ordered_json;

Json to_json(Complex z);
Complex complex_from_json(const Json& j, const char* where);

Json to_json(const LaurentPoly& f);
LaurentPoly laurent_from_json(const Json& j);

Json to_json(const PolyRoots& pr);
PolyRoots poly_roots_from_json(const Json& j);

Json to_json(const RationalLaurent& phi);
RationalLaurent rational_from_json(const Json& j);

// points, t_star, min_eigenvalue, grid_size, bound_kind; the matrix itself
// stays in memory.
Json to_json(const PickCertificate& cert);

Json to_json(const AnnulusContext& ctx);

Json to_json(const DAEmbedding& emb);
DAEmbedding embedding_from_json(const Json& j);

Json to_json(const LeftOuterResidual& res);

Json to_json(const MomentFunctional& mf);

// Rejects any field not in the allowed list.
void expect_fields(const Json& j, std::initializer_list<const char*> allowed,
                   const char* where);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace annpick

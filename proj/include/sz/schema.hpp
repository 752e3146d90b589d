#pragma once
// JSON documents of the command-line tool. Every top-level document carries
// "schema": "spherical-zeta/v1" and a "type"; rationals are "a/b" strings.
// Parsers throw SchemaError on malformed input.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sz/convex.hpp"
#include "sz/doubling.hpp"
#include "sz/lunavust.hpp"
#include "sz/padic.hpp"
#include "sz/zeta.hpp"

namespace sz {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "spherical-zeta/v1";

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json tagged(const std::string& type);
// Throws unless doc is an object of the given type; a missing "schema" is
// accepted only when allow_untagged (nested objects).
void expect_type(const Json& doc, const std::string& type, bool allow_untagged = false);
Json parse_document(const std::string& text);

Json rational_json(const Q& x);
Q rational_from(const Json& j);
Json vec_json(const QVec& v);
QVec vec_from(const Json& j, int len = -1);
Json mat_json(const QMat& m);
QMat mat_from(const Json& j, int ncols = -1);

Json cone_json(const Cone& c);
// Accepts generators (+ lineality), or inequalities/facets (+ equations); when
// both presentations are given they must agree.
Cone cone_from(const Json& j);

Json polyhedron_json(const Polyhedron& p);
Polyhedron polyhedron_from(const Json& j);
Json cells_json(const std::vector<Cell>& cells);

Json cyclotomic_json(const Cyclotomic& c, long p, int level);
Cyclotomic cyclotomic_from(const Json& j);

Json embedding_json(const ColoredCone& cc, const std::optional<EigenLattice>& lambda = {});
ColoredCone embedding_from(const Json& j);
std::optional<EigenLattice> eigen_lattice_from(const Json& j);

Json schwartz_bruhat_json(const SchwartzBruhat& f);
SchwartzBruhat schwartz_bruhat_from(const Json& j);

Json ratfun_json(const UniRatFun& f);
UniRatFun ratfun_from(const Json& j);
Json zeta_json(const ZetaResult& z);
ZetaResult zeta_from(const Json& j);

Json lagrangian_json(const SymplecticSpace& sp, const Lagrangian& l);
std::pair<SymplecticSpace, Lagrangian> lagrangian_from(const Json& j);

// "k,measure" rows followed by a "tail" row for the measure beyond the last shell.
std::string shells_csv(long first_k, const std::vector<std::string>& measures, const std::string& tail_label,
                       const std::string& tail);

}  // namespace sz

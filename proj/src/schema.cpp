#include "sz/schema.hpp"

#include <set>
#include <sstream>

namespace sz {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

long int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw SchemaError(std::string("field \"") + key + "\" must be an integer");
  return v.get<long>();
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw SchemaError(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

int checked_dim(long d) {
  if (d < 0 || d > 64) throw SchemaError("dimension out of range: " + std::to_string(d));
  return static_cast<int>(d);
}

}  // namespace

Json tagged(const std::string& type) {
  Json j = Json::object();
  j["schema"] = kSchemaVersion;
  j["type"] = type;
  return j;
}

void expect_type(const Json& doc, const std::string& type, bool allow_untagged) {
  if (!doc.is_object()) throw SchemaError("expected a JSON object of type " + type);
  if (doc.contains("schema")) {
    if (!doc["schema"].is_string() || doc["schema"].get<std::string>() != kSchemaVersion)
      throw SchemaError("unsupported schema, expected " + std::string(kSchemaVersion));
  } else if (!allow_untagged) {
    throw SchemaError("missing field \"schema\"");
  }
  if (doc.contains("type") && (!doc["type"].is_string() || doc["type"].get<std::string>() != type))
    throw SchemaError("expected a document of type " + type);
  if (!doc.contains("type") && !allow_untagged) throw SchemaError("missing field \"type\"");
}

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

Json rational_json(const Q& x) { return to_string(x); }

Q rational_from(const Json& j) {
  if (j.is_number_integer()) return Q(j.get<long>());
  if (!j.is_string()) throw SchemaError("expected a rational string \"a/b\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception&) {
    throw SchemaError("malformed rational \"" + j.get<std::string>() + "\"");
  }
}

Json vec_json(const QVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(rational_json(x));
  return a;
}

QVec vec_from(const Json& j, int len) {
  if (!j.is_array()) throw SchemaError("expected an array of rationals");
  QVec v;
  for (const auto& x : j) v.push_back(rational_from(x));
  if (len >= 0 && static_cast<int>(v.size()) != len)
    throw SchemaError("expected a vector of length " + std::to_string(len) + ", got " + std::to_string(v.size()));
  return v;
}

Json mat_json(const QMat& m) {
  Json a = Json::array();
  for (const auto& r : m) a.push_back(vec_json(r));
  return a;
}

QMat mat_from(const Json& j, int ncols) {
  if (!j.is_array()) throw SchemaError("expected an array of rows");
  QMat m;
  for (const auto& r : j) m.push_back(vec_from(r, ncols));
  if (ncols < 0 && !m.empty())
    for (const auto& r : m)
      if (r.size() != m[0].size()) throw SchemaError("ragged matrix");
  return m;
}

Json cone_json(const Cone& c) {
  Json j = tagged("cone");
  j["dim"] = c.dim();
  j["lineality"] = mat_json(c.lineality());
  j["rays"] = mat_json(c.proper_rays());
  j["equations"] = mat_json(c.equations());
  j["facets"] = mat_json(c.facets());
  return j;
}

Cone cone_from(const Json& j) {
  expect_type(j, "cone", true);
  int dim = checked_dim(int_field(j, "dim"));
  auto rows = [&](const char* key) { return j.contains(key) ? mat_from(j[key], dim) : QMat{}; };
  QMat lin = rows("lineality");
  bool has_gens = j.contains("generators") || j.contains("rays") || j.contains("lineality");
  bool has_ineqs = j.contains("inequalities") || j.contains("facets") || j.contains("equations");
  if (!has_gens && !has_ineqs) throw SchemaError("a cone needs generators or inequalities");
  std::optional<Cone> from_gens, from_ineqs;
  if (has_gens) {
    QMat gens = rows("generators");
    for (auto& r : rows("rays")) gens.push_back(r);
    for (auto& r : lin) {
      gens.push_back(r);
      gens.push_back(neg(r));
    }
    from_gens = gens.empty() ? Cone::zero(dim) : Cone::from_generators(dim, gens);
  }
  if (has_ineqs) {
    QMat ineqs = rows("inequalities");
    for (auto& r : rows("facets")) ineqs.push_back(r);
    from_ineqs = Cone::from_inequalities(dim, ineqs, rows("equations"));
  }
  if (from_gens && from_ineqs && *from_gens != *from_ineqs)
    throw SchemaError("generators and inequalities describe different cones");
  return from_gens ? *from_gens : *from_ineqs;
}

namespace {

Json affine_json(const AffineForm& a) {
  return Json{{"linear", vec_json(a.linear)}, {"constant", rational_json(a.constant)}};
}

AffineForm affine_from(const Json& j, int dim) {
  return AffineForm{vec_from(field(j, "linear"), dim), rational_from(field(j, "constant"))};
}

}  // namespace

Json polyhedron_json(const Polyhedron& p) {
  Json j = tagged("polyhedron");
  j["dim"] = p.dim();
  j["empty"] = p.is_empty();
  if (!p.is_empty()) {
    j["points"] = mat_json(p.vertices());
    j["rays"] = mat_json(p.recession_cone().rays());
  }
  Json eq = Json::array(), ge = Json::array();
  for (auto& a : p.equations()) eq.push_back(affine_json(a));
  for (auto& a : p.facets()) ge.push_back(affine_json(a));
  j["equations"] = eq;
  j["inequalities"] = ge;
  return j;
}

Polyhedron polyhedron_from(const Json& j) {
  expect_type(j, "polyhedron", true);
  int dim = checked_dim(int_field(j, "dim"));
  if (j.contains("empty") && j["empty"].is_boolean() && j["empty"].get<bool>()) return Polyhedron::empty(dim);
  std::optional<Polyhedron> g, h;
  if (j.contains("points")) {
    QMat pts = mat_from(j["points"], dim);
    QMat rays = j.contains("rays") ? mat_from(j["rays"], dim) : QMat{};
    g = pts.empty() ? Polyhedron::empty(dim) : Polyhedron::from_generators(dim, pts, rays);
  }
  if (j.contains("inequalities") || j.contains("equations")) {
    std::vector<AffineForm> ge, eq;
    auto read = [&](const char* key, std::vector<AffineForm>& out) {
      if (!j.contains(key)) return;
      if (!j[key].is_array()) throw SchemaError(std::string("\"") + key + "\" must be an array");
      for (auto& a : j[key]) out.push_back(affine_from(a, dim));
    };
    read("inequalities", ge);
    read("equations", eq);
    h = Polyhedron::from_constraints(dim, ge, eq);
  }
  if (!g && !h) throw SchemaError("a polyhedron needs points or inequalities");
  if (g && h && *g != *h) throw SchemaError("points and inequalities describe different polyhedra");
  return g ? *g : *h;
}

Json cells_json(const std::vector<Cell>& cells) {
  Json j = tagged("cells");
  Json list = Json::array();
  for (const auto& c : cells) {
    Json cell;
    cell["direction"] = cone_json(c.direction);
    cell["base"] = Json::array();
    for (auto& b : c.base) cell["base"].push_back(polyhedron_json(b));
    cell["sum"] = Json::array();
    for (auto& s : c.sum) cell["sum"].push_back(polyhedron_json(s));
    list.push_back(cell);
  }
  j["cells"] = list;
  return j;
}

Json cyclotomic_json(const Cyclotomic& c, long p, int level) {
  Json j;
  if (c.is_rational()) level = 0;
  j["p"] = p;
  j["M"] = level;
  j["coeffs"] = vec_json(c.dense_a(level));
  if (c.has_sqrt_part()) j["sqrt_coeffs"] = vec_json(c.dense_b(level));
  return j;
}

Cyclotomic cyclotomic_from(const Json& j) {
  if (j.is_string() || j.is_number_integer()) return Cyclotomic(rational_from(j));
  long p = int_field(j, "p");
  long level = int_field(j, "M");
  if (p < 2 || level < 0 || level > 12) throw SchemaError("cyclotomic needs p >= 2 and 0 <= M <= 12");
  QVec a = vec_from(field(j, "coeffs"));
  QVec b = j.contains("sqrt_coeffs") ? vec_from(j["sqrt_coeffs"]) : QVec{};
  long phi = phi_pm(p, static_cast<int>(level));
  if (static_cast<long>(a.size()) > phi || static_cast<long>(b.size()) > phi)
    throw SchemaError("more cyclotomic coefficients than the field degree");
  return Cyclotomic::from_dense(p, static_cast<int>(level), a, b);
}

Json embedding_json(const ColoredCone& cc, const std::optional<EigenLattice>& lambda) {
  const SphericalDatum& d = cc.datum;
  Json j = tagged("embedding");
  j["q_dim"] = d.q_dim;
  j["V"] = cone_json(d.valuation_cone);
  Json colors = Json::array();
  for (const auto& c : d.colors) colors.push_back(Json{{"name", c.name}, {"rho", vec_json(c.rho)}});
  j["colors"] = colors;
  j["C"] = cone_json(cc.cone);
  j["F"] = Json(std::vector<std::string>(cc.colors.begin(), cc.colors.end()));
  if (!d.lattice_basis.empty()) j["lattice"] = mat_json(d.lattice_basis);
  if (d.root) j["root"] = Json{{"family", family_name(d.root->family)}, {"n", d.root->n}};
  if (lambda) {
    j["chi_map"] = mat_json(lambda->chi_map);
    j["lambda_generators"] = mat_json(lambda->generators);
  }
  return j;
}

ColoredCone embedding_from(const Json& j) {
  expect_type(j, "embedding", true);
  ColoredCone cc;
  SphericalDatum& d = cc.datum;
  d.q_dim = checked_dim(int_field(j, "q_dim"));
  d.valuation_cone = cone_from(field(j, "V"));
  cc.cone = cone_from(field(j, "C"));
  if (d.valuation_cone.dim() != d.q_dim || cc.cone.dim() != d.q_dim)
    throw SchemaError("V and C must live in dimension q_dim");
  const Json& colors = field(j, "colors");
  if (!colors.is_array()) throw SchemaError("\"colors\" must be an array");
  std::set<std::string> names;
  for (const auto& c : colors) {
    Color col{string_field(c, "name"), vec_from(field(c, "rho"), d.q_dim)};
    if (!names.insert(col.name).second) throw SchemaError("duplicate color " + col.name);
    d.colors.push_back(col);
  }
  const Json& f = field(j, "F");
  if (!f.is_array()) throw SchemaError("\"F\" must be an array of color names");
  for (const auto& n : f) {
    if (!n.is_string() || !names.count(n.get<std::string>()))
      throw SchemaError("F names an unknown color: " + n.dump());
    cc.colors.insert(n.get<std::string>());
  }
  if (j.contains("lattice")) d.lattice_basis = mat_from(j["lattice"], d.q_dim);
  if (j.contains("root")) {
    const Json& r = j["root"];
    Family fam;
    try {
      fam = parse_family(string_field(r, "family"));
    } catch (const std::invalid_argument& e) {
      throw SchemaError(e.what());
    }
    long n = int_field(r, "n");
    if (n < 1 || n > 8) throw SchemaError("root datum rank out of range");
    d.root = build_root_datum(fam, static_cast<int>(n));
    if (d.root->ambient > d.q_dim) throw SchemaError("root datum larger than q_dim");
  }
  return cc;
}

std::optional<EigenLattice> eigen_lattice_from(const Json& j) {
  if (!j.contains("chi_map")) return std::nullopt;
  int q_dim = checked_dim(int_field(j, "q_dim"));
  EigenLattice l;
  l.chi_map = mat_from(j["chi_map"], q_dim);
  l.rank = static_cast<int>(l.chi_map.size());
  l.generators = j.contains("lambda_generators") ? mat_from(j["lambda_generators"], l.rank) : identity(l.rank);
  return l;
}

Json schwartz_bruhat_json(const SchwartzBruhat& f) {
  Json j = tagged("schwartz-bruhat");
  j["p"] = f.p();
  j["dim"] = f.dim();
  j["weight"] = rational_json(f.weight());
  Json terms = Json::array();
  for (const auto& [center, c] : f.terms())
    terms.push_back(Json{{"center", vec_json(center)}, {"level", f.level()}, {"coeff", cyclotomic_json(c, f.p(), c.level())}});
  j["terms"] = terms;
  return j;
}

SchwartzBruhat schwartz_bruhat_from(const Json& j) {
  expect_type(j, "schwartz-bruhat", true);
  long p = int_field(j, "p");
  if (p < 2 || p > 97) throw SchemaError("p out of range");
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) throw SchemaError("p must be prime");
  int dim = checked_dim(int_field(j, "dim"));
  if (dim < 1 || dim > 9) throw SchemaError("dim must be between 1 and 9");
  Q weight = j.contains("weight") ? rational_from(j["weight"]) : Q(0);
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) throw SchemaError("\"terms\" must be an array");
  std::vector<std::pair<Ball, Cyclotomic>> balls;
  for (const auto& t : terms) {
    long level = int_field(t, "level");
    if (level < -30 || level > 30) throw SchemaError("ball level out of range");
    QVec center = vec_from(field(t, "center"), dim);
    for (auto& x : center) {
      Z den = x.get_den();
      while (den % p == 0) den /= p;
      if (den != 1) throw SchemaError("ball centers must have p-power denominators");
    }
    Cyclotomic c = cyclotomic_from(field(t, "coeff"));
    if (!c.is_rational() && c.p() != p) throw SchemaError("coefficient lives over a different prime");
    balls.emplace_back(make_ball(p, center, level), c);
  }
  return SchwartzBruhat::from_terms(p, dim, weight, balls);
}

namespace {

Json pcoef_json(const PCoef& c, long p) {
  if (c.is_zero()) return cyclotomic_json(Cyclotomic(0), p, 0);
  if (c.is_constant()) return cyclotomic_json(c.constant(), p, c.constant().level());
  Json terms = Json::array();
  for (const auto& [mono, x] : c.terms()) terms.push_back(Json{{"exponents", mono}, {"coeff", cyclotomic_json(x, p, x.level())}});
  return Json{{"terms", terms}};
}

PCoef pcoef_from(const Json& j, int nparams) {
  if (!j.is_object() || !j.contains("terms")) return PCoef(cyclotomic_from(j), nparams);
  PCoef out(Cyclotomic(0), nparams);
  for (const auto& t : j["terms"]) {
    const Json& e = field(t, "exponents");
    if (!e.is_array() || static_cast<int>(e.size()) != nparams) throw SchemaError("exponent vector of wrong length");
    PCoef term(cyclotomic_from(field(t, "coeff")), nparams);
    for (int i = 0; i < nparams; ++i) {
      if (!e[i].is_number_integer()) throw SchemaError("exponents must be integers");
      int x = e[i].get<int>();
      if (x) term = term * PCoef::param(i, nparams, x);
    }
    out = out + term;
  }
  return out;
}

}  // namespace

Json ratfun_json(const UniRatFun& f) {
  Json j;
  j["q"] = f.p();
  j["params"] = f.params();
  auto poly = [&](const Poly& c) {
    Json a = Json::array();
    for (const auto& x : c) a.push_back(pcoef_json(x, f.p()));
    return a;
  };
  j["numerator"] = poly(f.num());
  j["denominator"] = poly(f.den());
  j["text"] = f.to_string();
  return j;
}

UniRatFun ratfun_from(const Json& j) {
  long p = int_field(j, "q");
  std::vector<std::string> params;
  if (j.contains("params")) {
    if (!j["params"].is_array()) throw SchemaError("\"params\" must be an array of names");
    for (auto& s : j["params"]) {
      if (!s.is_string()) throw SchemaError("\"params\" must be an array of names");
      params.push_back(s.get<std::string>());
    }
  }
  int np = static_cast<int>(params.size());
  auto poly = [&](const char* key) {
    const Json& a = field(j, key);
    if (!a.is_array()) throw SchemaError(std::string("\"") + key + "\" must be an array");
    Poly out;
    for (auto& c : a) out.push_back(pcoef_from(c, np));
    return out;
  };
  Poly num = poly("numerator"), den = poly("denominator");
  bool den_zero = true;
  for (auto& c : den) den_zero = den_zero && c.is_zero();
  if (den_zero) throw SchemaError("zero denominator");
  return UniRatFun::from_polys(p, num, den, params);
}

Json zeta_json(const ZetaResult& z) {
  Json j = tagged("zeta");
  j["variable"] = z.variable;
  j["normalization"] = z.normalization;
  Json f = ratfun_json(z.value);
  for (auto& [k, v] : f.items()) j[k] = v;
  return j;
}

ZetaResult zeta_from(const Json& j) {
  expect_type(j, "zeta", true);
  ZetaResult z;
  z.value = ratfun_from(j);
  z.variable = string_field(j, "variable");
  z.normalization = string_field(j, "normalization");
  return z;
}

Json lagrangian_json(const SymplecticSpace& sp, const Lagrangian& l) {
  Json j = tagged("lagrangian");
  j["dim_v"] = sp.d();
  j["basis"] = mat_json(l.basis);
  return j;
}

std::pair<SymplecticSpace, Lagrangian> lagrangian_from(const Json& j) {
  expect_type(j, "lagrangian", true);
  long d = int_field(j, "dim_v");
  if (d < 2 || d > 12 || d % 2) throw SchemaError("dim_v must be even, between 2 and 12");
  SymplecticSpace sp = SymplecticSpace::standard(static_cast<int>(d));
  Lagrangian l{mat_from(field(j, "basis"), 2 * static_cast<int>(d))};
  return {sp, l};
}

std::string shells_csv(long first_k, const std::vector<std::string>& measures, const std::string& tail_label,
                       const std::string& tail) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string r = "\"";
    for (char c : s) r += c == '"' ? std::string("\"\"") : std::string(1, c);
    return r + "\"";
  };
  std::ostringstream out;
  out << "k,measure\n";
  for (size_t i = 0; i < measures.size(); ++i) out << first_k + static_cast<long>(i) << ',' << quote(measures[i]) << '\n';
  out << quote(tail_label) << ',' << quote(tail) << '\n';
  return out.str();
}

}  // namespace sz

// szcli: JSON in, canonical text/JSON/CSV out.
// Exit codes: 0 success, 2 schema or usage error, 3 mathematical assertion failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sz/schema.hpp"

using namespace sz;

namespace {

struct MathFailure : std::runtime_error {
  Json report;
  MathFailure(const std::string& what, Json r) : std::runtime_error(what), report(std::move(r)) {}
};

struct Output {
  Json doc;
  std::string text;                // empty: render the JSON
  std::optional<std::string> csv;  // set only for table-producing commands
};

struct Options {
  long p = 0;
  int n = 0;
  std::string in, out, format = "json";
  uint64_t seed = 1;
  std::string chi = "trivial", xi = "basic", deep = "threshold:1", family = "C", vec, rep = "trivial",
              example;
  int depth = 0;
  bool gamma = false;
};

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream f(path);
  if (!f) throw SchemaError("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Json input(const Options& o, const std::string& type) {
  if (o.in.empty()) throw SchemaError("--in is required");
  Json doc = parse_document(read_all(o.in));
  expect_type(doc, type);
  return doc;
}

void need_prime(long p) {
  if (p < 2 || p > 97) throw SchemaError("--p must be a prime below 100");
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) throw SchemaError("--p must be prime");
}

void need_range(int n, int lo, int hi, const char* flag) {
  if (n < lo || n > hi)
    throw SchemaError(std::string(flag) + " must be between " + std::to_string(lo) + " and " + std::to_string(hi));
}

std::string rows_text(const QMat& m) {
  std::string s;
  for (size_t i = 0; i < m.size(); ++i) s += (i ? " " : "") + to_string(m[i]);
  return s.empty() ? "-" : s;
}

std::string cone_text(const Cone& c) {
  return "dim " + std::to_string(c.cone_dim()) + "/" + std::to_string(c.dim()) + "\nlineality " +
         rows_text(c.lineality()) + "\nrays " + rows_text(c.proper_rays()) + "\nequations " +
         rows_text(c.equations()) + "\nfacets " + rows_text(c.facets()) + "\n";
}

std::string poly_text(const Polyhedron& p) {
  if (p.is_empty()) return "empty";
  std::string s = "conv" + rows_text(p.vertices());
  return p.is_bounded() ? s : s + " + cone" + rows_text(p.recession_cone().rays());
}

// ---- cone ----

Output cone_make(const Options& o) {
  Cone c = cone_from(input(o, "cone"));
  return {cone_json(c), cone_text(c)};
}

Output cone_dual(const Options& o) {
  Cone c = dual_cone(cone_from(input(o, "cone")));
  return {cone_json(c), cone_text(c)};
}

Output cone_faces(const Options& o) {
  auto fs = faces(cone_from(input(o, "cone")));
  Json j = tagged("faces");
  j["faces"] = Json::array();
  std::string text;
  for (const auto& f : fs) {
    j["faces"].push_back(cone_json(f));
    text += "dim " + std::to_string(f.cone_dim()) + ": lineality " + rows_text(f.lineality()) + "; rays " +
            rows_text(f.proper_rays()) + "\n";
  }
  return {j, text};
}

Output cone_decompose(const Options& o) {
  Polyhedron e = polyhedron_from(input(o, "polyhedron"));
  std::vector<Cell> cells;
  if (o.deep == "always") {
    cells = cellular_decompose(e, AlwaysDeep());
  } else if (o.deep.rfind("threshold:", 0) == 0) {
    Q t;
    try {
      t = parse_rational(o.deep.substr(10));
    } catch (const std::exception&) {
      throw SchemaError("--deep threshold:<rational> expected");
    }
    cells = cellular_decompose(e, ThresholdOracle(t, e.recession_cone().facets()));
  } else {
    throw SchemaError("--deep must be threshold:<q> or always");
  }
  std::string text = std::to_string(cells.size()) + " cells\n";
  for (size_t i = 0; i < cells.size(); ++i) {
    text += "cell " + std::to_string(i) + ": direction " + rows_text(cells[i].direction.rays()) + "; base";
    for (auto& b : cells[i].base) text += " " + poly_text(b);
    text += "\n";
  }
  return {cells_json(cells), text};
}

// ---- embedding ----

ColoredCone embedding_input(const Options& o, std::optional<EigenLattice>* lambda = nullptr) {
  if (!o.example.empty()) {
    if (o.example != "mat2") throw SchemaError("--example must be mat2");
    if (lambda) *lambda = mat2_eigen_lattice();
    return mat2_example();
  }
  Json doc = input(o, "embedding");
  if (lambda) *lambda = eigen_lattice_from(doc);
  return embedding_from(doc);
}

Json checks_json(const std::vector<Check>& cs) {
  Json a = Json::array();
  for (const auto& c : cs) a.push_back(Json{{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return a;
}

std::string checks_text(const std::vector<Check>& cs) {
  std::string s;
  for (const auto& c : cs) s += (c.ok ? "ok   " : "FAIL ") + c.name + (c.detail.empty() ? "" : ": " + c.detail) + "\n";
  return s;
}

Output embedding_validate(const Options& o) {
  ValidationReport r = validate_colored_cone(embedding_input(o));
  Json j = tagged("validation");
  j["valid"] = r.valid;
  j["checks"] = checks_json(r.checks);
  j["witness"] = r.witness ? vec_json(*r.witness) : Json();
  Output out{j, "valid: " + std::string(r.valid ? "true" : "false") + "\n" + checks_text(r.checks)};
  if (!r.valid) throw MathFailure("colored cone is invalid", j);
  return out;
}

Output embedding_classify(const Options& o) {
  std::optional<EigenLattice> lambda;
  ColoredCone cc = embedding_input(o, &lambda);
  ValidationReport v = validate_colored_cone(cc);
  if (!v.valid) {
    Json j = tagged("validation");
    j["valid"] = false;
    j["checks"] = checks_json(v.checks);
    throw MathFailure("colored cone is invalid", j);
  }
  Classification c = classify_embedding(cc);
  Json j = tagged("classification");
  j["affine"] = c.affine.affine;
  if (c.affine.chi) j["affine_certificate"] = vec_json(*c.affine.chi);
  Json farkas = Json::object();
  for (const auto& [name, w] : c.affine.farkas) farkas[name] = rational_json(w);
  if (!c.affine.affine) j["farkas_certificate"] = farkas;
  j["quasiaffine"] = c.quasiaffine;
  j["wavefront"] = c.wavefront ? Json(*c.wavefront) : Json();
  j["toroidal"] = c.toroidal;
  auto yn = [](bool b) { return std::string(b ? "true" : "false"); };
  std::string text = "affine: " + yn(c.affine.affine) + "\nquasiaffine: " + yn(c.quasiaffine) +
                     "\nwavefront: " + (c.wavefront ? yn(*c.wavefront) : "unknown") + "\ntoroidal: " + yn(c.toroidal) +
                     "\n";
  if (lambda) {
    LambdaReport l = lambda_monoid_check(*lambda, cc);
    j["lambda"] = Json{{"ok", l.ok()},
                       {"simplicial", l.simplicial},
                       {"minimal_generators", mat_json(l.minimal_generators)},
                       {"positivity", checks_json(l.positivity)}};
    text += "lambda monoid: " + yn(l.ok()) + "\n";
  }
  return {j, text};
}

Output embedding_decolorize(const Options& o) {
  ColoredCone d = decolorize(embedding_input(o));
  return {embedding_json(d), "C " + rows_text(d.cone.rays()) + "\n"};
}

Output embedding_faces(const Options& o) {
  auto fs = colored_faces(embedding_input(o));
  Json j = tagged("colored-faces");
  j["faces"] = Json::array();
  std::string text;
  for (const auto& f : fs) {
    j["faces"].push_back(Json{{"cone", cone_json(f.cone)},
                              {"colors", std::vector<std::string>(f.colors.begin(), f.colors.end())},
                              {"orbit_rank", f.orbit_rank}});
    std::string cols;
    for (auto& c : f.colors) cols += (cols.empty() ? "" : ",") + c;
    text += "rank " + std::to_string(f.orbit_rank) + ": rays " + rows_text(f.cone.rays()) + "; colors {" + cols + "}\n";
  }
  return {j, text};
}

Output embedding_morphism(const Options& o) {
  Json doc = input(o, "morphism");
  if (!doc.contains("source") || !doc.contains("target") || !doc.contains("phi"))
    throw SchemaError("a morphism needs source, target and phi");
  ColoredCone s = embedding_from(doc["source"]), t = embedding_from(doc["target"]);
  QMat phi = mat_from(doc["phi"], s.datum.q_dim);
  if (static_cast<int>(phi.size()) != t.datum.q_dim) throw SchemaError("phi must have target q_dim rows");
  std::set<std::string> dom;
  if (doc.contains("dominant_colors"))
    for (auto& c : doc["dominant_colors"]) {
      if (!c.is_string()) throw SchemaError("dominant_colors must be names");
      dom.insert(c.get<std::string>());
    }
  bool ok = morphism_extends(phi, s, t, dom);
  Json j = tagged("morphism-result");
  j["extends"] = ok;
  return {j, std::string("extends: ") + (ok ? "true" : "false") + "\n"};
}

// ---- roots ----

RootDatum root_input(const Options& o) {
  Family f;
  try {
    f = parse_family(o.family);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  need_range(o.n, 1, 8, "--n");
  return build_root_datum(f, o.n);
}

Output roots_build(const Options& o) {
  RootDatum d = root_input(o);
  Json j = tagged("root-datum");
  j["family"] = family_name(d.family);
  j["n"] = d.n;
  j["ambient"] = d.ambient;
  j["simple_roots"] = mat_json(d.simple_roots);
  j["simple_coroots"] = mat_json(d.simple_coroots);
  j["fundamental_weights"] = mat_json(d.fundamental_weights);
  j["pairing"] = mat_json(d.pairing_matrix());
  std::string text = "simple roots " + rows_text(d.simple_roots) + "\nsimple coroots " + rows_text(d.simple_coroots) +
                     "\nfundamental weights " + rows_text(d.fundamental_weights) + "\n";
  return {j, text};
}

Output roots_orbit(const Options& o) {
  RootDatum d = root_input(o);
  QVec v;
  std::stringstream ss(o.vec);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      v.push_back(parse_rational(item));
    } catch (const std::exception&) {
      throw SchemaError("--v must be a comma-separated list of rationals");
    }
  }
  if (static_cast<int>(v.size()) < d.ambient) throw SchemaError("--v is shorter than the ambient rank");
  QMat orbit = weyl_orbit(d, v);
  Json j = tagged("orbit");
  j["orbit"] = mat_json(orbit);
  std::string text;
  for (auto& r : orbit) text += to_string(r) + "\n";
  std::string csv;
  for (auto& r : orbit) {
    for (size_t i = 0; i < r.size(); ++i) csv += (i ? "," : "") + to_string(r[i]);
    csv += "\n";
  }
  return {j, text, csv};
}

Output roots_chamber(const Options& o) {
  Cone c = antidominant_chamber(root_input(o));
  return {cone_json(c), cone_text(c)};
}

// ---- padic ----

// Without --in, a random function of weight 1/2 (weight 0 for integration).
SchwartzBruhat sb_input(const Options& o, std::mt19937_64& rng, const char* key = nullptr, Q weight = Q(1, 2)) {
  if (o.in.empty()) {
    need_prime(o.p);
    need_range(o.n, 1, 2, "--n");
    return random_schwartz_bruhat(o.p, o.n, weight, rng);
  }
  if (!key) return schwartz_bruhat_from(input(o, "schwartz-bruhat"));
  return schwartz_bruhat_from(input(o, "pair").at(key));
}

std::string sb_text(const SchwartzBruhat& f) {
  std::string s = "p " + std::to_string(f.p()) + ", dim " + std::to_string(f.dim()) + ", weight " + to_string(f.weight()) +
                  ", level " + std::to_string(f.level()) + "\n";
  for (const auto& [c, x] : f.terms()) s += "  " + to_string(c) + ": " + x.to_string() + "\n";
  return s;
}

Output padic_fourier(const Options& o) {
  std::mt19937_64 rng(o.seed);
  SchwartzBruhat f = fourier(sb_input(o, rng));
  return {schwartz_bruhat_json(f), sb_text(f)};
}

Output padic_act(const Options& o) {
  Json doc = input(o, "action");
  if (!doc.contains("function") || !doc.contains("g")) throw SchemaError("an action needs function and g");
  SchwartzBruhat f = schwartz_bruhat_from(doc["function"]);
  QMat g = mat_from(doc["g"], f.dim());
  if (static_cast<int>(g.size()) != f.dim()) throw SchemaError("g must be square of size dim");
  QVec b = doc.contains("b") ? vec_from(doc["b"], f.dim()) : QVec{};
  SchwartzBruhat h = act_affine(f, g, b);
  return {schwartz_bruhat_json(h), sb_text(h)};
}

Json value_doc(const std::string& type, const Cyclotomic& c, long p) {
  Json j = tagged(type);
  j["value"] = cyclotomic_json(c, p, c.level());
  j["text"] = c.to_string();
  return j;
}

Output padic_integrate(const Options& o) {
  std::mt19937_64 rng(o.seed);
  SchwartzBruhat f = sb_input(o, rng, nullptr, 0);
  Cyclotomic v = integrate(f);
  return {value_doc("integral", v, f.p()), v.to_string() + "\n"};
}

Output padic_inner(const Options& o) {
  std::mt19937_64 rng(o.seed);
  SchwartzBruhat f = sb_input(o, rng, "f"), g = sb_input(o, rng, "g");
  if (f.p() != g.p() || f.dim() != g.dim()) throw SchemaError("f and g must share p and dim");
  Cyclotomic v = l2_inner(f, g);
  return {value_doc("inner-product", v, f.p()), v.to_string() + "\n"};
}

// ---- zeta ----

TameCharacter chi_input(const Options& o) {
  need_prime(o.p);
  if (o.chi == "trivial") return TameCharacter::trivial(o.p);
  if (o.chi == "quadratic") return TameCharacter::quadratic(o.p);
  throw SchemaError("--chi must be trivial or quadratic");
}

Output zeta_output(const ZetaResult& z) { return {zeta_json(z), z.value.to_string() + "\n"}; }

std::vector<std::string> cyclo_strings(const std::vector<Cyclotomic>& xs) {
  std::vector<std::string> s;
  for (auto& x : xs) s.push_back(x.to_string());
  return s;
}

Output zeta_tate_cmd(const Options& o) {
  TameCharacter chi = chi_input(o);
  if (o.gamma) {
    GammaResult g = gamma_tate(chi, 20, o.seed);
    ZetaResult z{g.value, "t = q^{-s}", "gamma(s, " + chi.name() + ") = Z(1-s, chi^-1, Ff) / Z(s, chi, f)"};
    Output out = zeta_output(z);
    out.doc["samples_agreeing"] = g.samples_agreeing;
    return out;
  }
  SchwartzBruhat f;
  if (!o.in.empty()) {
    f = schwartz_bruhat_from(input(o, "schwartz-bruhat"));
    if (f.p() != o.p || f.dim() != 1) throw SchemaError("Tate integrals need a dim 1 function over --p");
  } else if (o.xi == "basic") {
    f = SchwartzBruhat::basic(o.p, 1);
  } else if (o.xi == "default") {
    f = default_tate_function(chi);
  } else {
    throw SchemaError("--xi must be basic or default (or pass --in)");
  }
  Output out = zeta_output(zeta_tate(chi, f));
  TateShells sh = tate_shells(chi, f);
  out.csv = shells_csv(sh.kmin, cyclo_strings(sh.coeffs), "k>=" + std::to_string(sh.tail_start),
                       sh.tail_value.to_string());
  return out;
}

Output zeta_igusa_cmd(const Options& o) {
  need_prime(o.p);
  need_range(o.n, 1, 3, "--n");
  if (o.format == "csv") {
    int m = o.depth > 0 ? o.depth : (o.n == 1 ? 6 : 3);
    ShellMeasures s = count_det_valuations(o.n, o.p, m);
    std::vector<std::string> ms;
    for (auto& x : s.shells) ms.push_back(to_string(x));
    return {Json(), "", shells_csv(0, ms, "k>=" + std::to_string(s.shells.size()), to_string(s.tail))};
  }
  if (!o.in.empty()) {
    SchwartzBruhat f = schwartz_bruhat_from(input(o, "schwartz-bruhat"));
    if (f.p() != o.p || f.dim() != o.n * o.n) throw SchemaError("the function must live on Mat_n over --p");
    return zeta_output(zeta_igusa_det(o.n, o.p, f));
  }
  return zeta_output(zeta_igusa_det(o.n, o.p));
}

Output zeta_gj_trivial_cmd(const Options& o) {
  need_prime(o.p);
  need_range(o.n, 1, 2, "--n");
  Output out = zeta_output(zeta_gj_trivial(o.n, o.p));
  Json ex = Json::array();
  for (auto& e : gj_trivial_exponents(o.n)) ex.push_back(rational_json(e));
  out.doc["satake_exponents"] = ex;
  return out;
}

Output zeta_gj_gl2_cmd(const Options& o) {
  need_prime(o.p);
  if (o.in.empty()) return zeta_output(zeta_gj_gl2_spherical(o.p));
  SchwartzBruhat f = schwartz_bruhat_from(input(o, "schwartz-bruhat"));
  if (f.p() != o.p || f.dim() != 4) throw SchemaError("the function must live on Mat_2 over --p");
  return zeta_output(zeta_gj_gl2_bik(o.p, f));
}

Output zeta_lfe_cmd(const Options& o) {
  need_prime(o.p);
  need_range(o.n, 1, 2, "--n");
  GjRep rep;
  if (o.rep == "trivial") {
    rep = GjRep::Trivial;
  } else if (o.rep == "spherical") {
    if (o.n != 2) throw SchemaError("--rep spherical needs --n 2");
    rep = GjRep::Gl2Spherical;
  } else {
    throw SchemaError("--rep must be trivial or spherical");
  }
  LfeReport r = check_lfe_gj(o.n, o.p, rep, standard_gj_samples(o.n, o.p, rep));
  Json j = tagged("lfe");
  j["ok"] = r.ok;
  j["gamma"] = ratfun_json(r.gamma);
  j["per_sample"] = Json::array();
  for (auto& g : r.per_sample) j["per_sample"].push_back(ratfun_json(g));
  j["detail"] = r.detail;
  if (!r.ok) throw MathFailure("local functional equation failed: " + r.detail, j);
  return {j, "gamma = " + r.gamma.to_string() + "\nsamples " + std::to_string(r.per_sample.size()) + ", all equal\n"};
}

// ---- doubling ----

std::pair<SymplecticSpace, Lagrangian> lagrangian_input(const Options& o) {
  if (!o.in.empty()) return lagrangian_from(input(o, "lagrangian"));
  need_range(o.n, 1, 3, "--n");
  std::mt19937_64 rng(o.seed);
  SymplecticSpace sp = SymplecticSpace::standard(2 * o.n);
  int j = static_cast<int>(rng() % (sp.m + 1));
  QMat g = block_diag(random_symplectic(sp.gram, rng), random_symplectic(sp.gram, rng));
  QMat basis = mat_mul(kappa_lagrangian(sp, j).basis, g);
  if (rng() % 2) basis = mat_mul(basis, random_symplectic(sp.gram_box, rng, 2));
  return {sp, Lagrangian{basis}};
}

Output doubling_kappa(const Options& o) {
  auto [sp, l] = lagrangian_input(o);
  check_lagrangian(sp, l.basis);
  int kp = intersection_dim(sp, l.basis, Side::Plus), km = intersection_dim(sp, l.basis, Side::Minus);
  Json j = tagged("kappa");
  j["kappa_plus"] = kp;
  j["kappa_minus"] = km;
  j["lagrangian"] = lagrangian_json(sp, l);
  if (kp != km) throw MathFailure("kappa+ and kappa- differ", j);
  return {j, "kappa " + std::to_string(kp) + "\n"};
}

Output doubling_fplus(const Options& o) {
  auto [sp, l] = lagrangian_input(o);
  int k = kappa(sp, l);
  WedgeVector w = plucker(l.basis);
  Q fp = f_plus(sp, w, Side::Plus), fm = f_plus(sp, w, Side::Minus);
  Json j = tagged("fplus");
  j["f_plus"] = rational_json(fp);
  j["f_minus"] = rational_json(fm);
  j["kappa"] = k;
  j["lagrangian"] = lagrangian_json(sp, l);
  if ((fp == 0) != (k > 0)) throw MathFailure("f+ vanishing disagrees with kappa", j);
  return {j, "f+ " + to_string(fp) + "\nf- " + to_string(fm) + "\nkappa " + std::to_string(k) + "\n"};
}

Output doubling_curve(const Options& o) {
  need_range(o.n, 1, 3, "--n");
  SymplecticSpace sp = SymplecticSpace::standard(2 * o.n);
  BoundaryCurve c = boundary_curve(sp.d());
  Json j = tagged("boundary-curve");
  j["dim_v"] = sp.d();
  j["fplus"] = c.fplus.to_string();
  j["order"] = c.fplus.order();
  j["fplus_at_one"] = rational_json(c.fplus_at_one);
  j["limit_kappa"] = c.limit_kappa;
  j["limit_matches"] = c.limit_matches;
  j["limit_lagrangian"] = lagrangian_json(sp, c.limit_lagrangian);
  if (!c.limit_matches) throw MathFailure("c(0) is not the Pluecker image of the limit lagrangian", j);
  return {j, "f+(c(t)) = " + c.fplus.to_string() + "\norder " + std::to_string(c.fplus.order()) + "\nlimit kappa " +
                 std::to_string(c.limit_kappa) + "\n"};
}

Output doubling_cone_cmd(const Options& o) {
  need_range(o.n, 1, 6, "--n");
  ColoredCone cc = doubling_cone(o.n);
  return {embedding_json(cc, doubling_eigen_lattice(o.n)), "C " + rows_text(cc.cone.rays()) + "\n"};
}

Output doubling_lmonoid(const Options& o) {
  need_range(o.n, 1, 4, "--n");
  LMonoidReport r = lmonoid_verify(o.n);
  Json j = tagged("lmonoid");
  j["equal"] = r.equal;
  j["weyl_hull"] = cone_json(r.weyl_hull);
  j["orbit_hull"] = cone_json(r.orbit_hull);
  j["orbit"] = mat_json(r.orbit);
  j["detail"] = r.detail;
  if (!r.equal) throw MathFailure("cones differ: " + r.detail, j);
  return {j, "equal: true\nrays " + rows_text(r.orbit_hull.rays()) + "\n"};
}

Output doubling_xp(const Options& o) {
  Family f;
  try {
    f = parse_family(o.family);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  need_range(o.n, 1, 6, "--n");
  ColoredCone cc = xp_affine_closure(f, o.n);
  return {embedding_json(cc), "C " + rows_text(cc.cone.rays()) + "\n"};
}

// ---- plumbing ----

void emit(const Options& o, const Output& out) {
  std::string body;
  if (o.format == "json") {
    if (out.doc.is_null()) throw SchemaError("this command only supports --format csv");
    body = out.doc.dump(2) + "\n";
  } else if (o.format == "text") {
    if (out.doc.is_null()) throw SchemaError("this command only supports --format csv");
    body = out.text.empty() ? out.doc.dump(2) + "\n" : out.text;
  } else {
    if (!out.csv) throw SchemaError("--format csv is not available for this command");
    body = *out.csv;
  }
  if (o.out.empty() || o.out == "-") {
    std::cout << body;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw SchemaError("cannot write " + o.out);
    f << body;
  }
}

enum Flag : unsigned { P = 1, N = 2, In = 4, Seed = 8, Family_ = 16, Vec = 32, Chi = 64, Xi = 128, Deep = 256,
                       Rep = 512, Example = 1024, Depth = 2048, Gamma = 4096 };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact combinatorics of spherical embeddings and p-adic zeta integrals"};
  app.require_subcommand(1);
  Options o;
  std::function<Output(const Options&)> action;

  auto leaf = [&](CLI::App* group, const std::string& name, const std::string& help, unsigned flags,
                  Output (*fn)(const Options&)) {
    CLI::App* s = group->add_subcommand(name, help);
    s->add_option("--out", o.out, "output file (default stdout)");
    s->add_option("--format", o.format, "json, text or csv")->check(CLI::IsMember({"json", "text", "csv"}));
    if (flags & P) s->add_option("--p", o.p, "prime");
    if (flags & N) s->add_option("--n", o.n, "rank");
    if (flags & In) s->add_option("--in", o.in, "input document ('-' for stdin)");
    if (flags & Seed) s->add_option("--seed", o.seed, "seed for randomized inputs");
    if (flags & Family_) s->add_option("--family", o.family, "A or C");
    if (flags & Vec) s->add_option("--v", o.vec, "comma-separated rationals")->required();
    if (flags & Chi) s->add_option("--chi", o.chi, "trivial or quadratic");
    if (flags & Xi) s->add_option("--xi", o.xi, "basic or default");
    if (flags & Deep) s->add_option("--deep", o.deep, "threshold:<q> or always");
    if (flags & Rep) s->add_option("--rep", o.rep, "trivial or spherical");
    if (flags & Example) s->add_option("--example", o.example, "built-in embedding (mat2)");
    if (flags & Depth) s->add_option("--depth", o.depth, "number of shells for --format csv");
    if (flags & Gamma) s->add_flag("--gamma", o.gamma, "compute the gamma factor from 20 random functions");
    s->callback([&action, fn] { action = fn; });
  };

  CLI::App* cone = app.add_subcommand("cone", "polyhedral cones")->require_subcommand(1);
  leaf(cone, "make", "canonical form of a cone", In, cone_make);
  leaf(cone, "dual", "dual cone", In, cone_dual);
  leaf(cone, "faces", "face lattice", In, cone_faces);
  leaf(cone, "decompose", "cellular decomposition of a polyhedron", In | Deep, cone_decompose);

  CLI::App* emb = app.add_subcommand("embedding", "colored cones")->require_subcommand(1);
  leaf(emb, "validate", "check the colored cone axioms", In | Example, embedding_validate);
  leaf(emb, "classify", "affine, quasi-affine, wavefront, toroidal", In | Example, embedding_classify);
  leaf(emb, "decolorize", "drop all colors", In | Example, embedding_decolorize);
  leaf(emb, "faces", "colored faces (orbits)", In | Example, embedding_faces);
  leaf(emb, "morphism", "does a lattice map extend to the embeddings", In, embedding_morphism);

  CLI::App* roots = app.add_subcommand("roots", "root data")->require_subcommand(1);
  leaf(roots, "build", "simple roots, coroots and weights", N | Family_, roots_build);
  leaf(roots, "orbit", "Weyl orbit of a vector", N | Family_ | Vec, roots_orbit);
  leaf(roots, "chamber", "antidominant chamber", N | Family_, roots_chamber);

  CLI::App* padic = app.add_subcommand("padic", "Schwartz-Bruhat functions")->require_subcommand(1);
  leaf(padic, "fourier", "Fourier transform", P | N | In | Seed, padic_fourier);
  leaf(padic, "act", "affine action f(xg + b)", In, padic_act);
  leaf(padic, "integrate", "integral over Q_p^n", P | N | In | Seed, padic_integrate);
  leaf(padic, "inner", "L2 inner product", P | N | In | Seed, padic_inner);

  CLI::App* zeta = app.add_subcommand("zeta", "local zeta integrals")->require_subcommand(1);
  leaf(zeta, "tate", "Tate zeta integral", P | In | Chi | Xi | Gamma | Seed, zeta_tate_cmd);
  leaf(zeta, "igusa-det", "zeta integral of |det|^s on Mat_n", P | N | In | Depth, zeta_igusa_cmd);
  leaf(zeta, "gj-trivial", "Godement-Jacquet integral, trivial representation", P | N, zeta_gj_trivial_cmd);
  leaf(zeta, "gj-gl2", "Godement-Jacquet integral, GL(2) spherical", P | In, zeta_gj_gl2_cmd);
  leaf(zeta, "lfe", "Godement-Jacquet local functional equation", P | N | Rep, zeta_lfe_cmd);

  CLI::App* dbl = app.add_subcommand("doubling", "symplectic doubling")->require_subcommand(1);
  leaf(dbl, "kappa", "kappa of a lagrangian", N | In | Seed, doubling_kappa);
  leaf(dbl, "fplus", "f+ and f- of a lagrangian", N | In | Seed, doubling_fplus);
  leaf(dbl, "curve", "boundary curve and its order", N, doubling_curve);
  leaf(dbl, "cone", "colored cone of the doubling monoid", N, doubling_cone_cmd);
  leaf(dbl, "lmonoid", "compare with the L-monoid cone", N, doubling_lmonoid);
  leaf(dbl, "xp", "colored cone of the Siegel parabolic closure", N | Family_, doubling_xp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    emit(o, action(o));
    return 0;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const MathFailure& e) {
    std::cerr << "assertion failed: " << e.what() << "\n";
    std::cerr << "witness: " << e.report.dump(2) << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "assertion failed: " << e.what() << "\n";
    return 3;
  }
}

#include "sz/lunavust.hpp"

#include <algorithm>
#include <stdexcept>

namespace sz {

const Color& SphericalDatum::color(const std::string& name) const {
  for (auto& c : colors)
    if (c.name == name) return c;
  throw std::out_of_range("unknown color " + name);
}

QMat SphericalDatum::lattice() const { return lattice_basis.empty() ? identity(q_dim) : lattice_basis; }

namespace {

// A point of relint(c) in v, if any: the relint point of c cap v works exactly
// when one exists.
std::optional<QVec> relint_meets(const Cone& c, const Cone& v) {
  QVec x = intersect(c, v).relint_point();
  if (c.in_relint(x)) return x;
  return std::nullopt;
}

}  // namespace

ValidationReport validate_colored_cone(const ColoredCone& cc) {
  ValidationReport r;
  const auto& d = cc.datum;
  const Cone& v = d.valuation_cone;
  auto add = [&](std::string name, bool ok, std::string detail = "") {
    r.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  bool dims = cc.cone.dim() == d.q_dim && v.dim() == d.q_dim;
  add("dimensions", dims);
  QMat rho_f;
  bool known = true;
  for (auto& n : cc.colors) {
    auto it = std::find_if(d.colors.begin(), d.colors.end(), [&](const Color& c) { return c.name == n; });
    if (it == d.colors.end()) {
      known = false;
      add("color " + n, false, "not a color of the datum");
    } else {
      rho_f.push_back(it->rho);
    }
  }
  if (!dims || !known) return r;

  add("strictly convex", cc.cone.is_pointed());

  std::string zero_colors;
  for (auto& n : cc.colors)
    if (is_zero(d.color(n).rho)) zero_colors += (zero_colors.empty() ? "" : ",") + n;
  add("rho(F) avoids 0", zero_colors.empty(), zero_colors);

  r.witness = relint_meets(cc.cone, v);
  add("relint(C) meets V", r.witness.has_value(), r.witness ? to_string(*r.witness) : "");

  // C is generated by rho(F) and elements of V iff C = cone(rho(F), C cap V).
  QMat gens = rho_f;
  for (auto& g : intersect(cc.cone, v).rays()) gens.push_back(g);
  bool generated = Cone::from_generators(d.q_dim, gens) == cc.cone;
  add("generated by rho(F) and V", generated);

  r.valid = std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.ok; });
  return r;
}

std::vector<ColoredFace> colored_faces(const ColoredCone& cc) {
  if (!validate_colored_cone(cc).valid) throw std::invalid_argument("invalid colored cone");
  std::vector<ColoredFace> out;
  for (auto& f : faces(cc.cone)) {
    if (!relint_meets(f, cc.datum.valuation_cone)) continue;
    ColoredFace cf{f, {}, f.cone_dim()};
    for (auto& n : cc.colors)
      if (f.contains(cc.datum.color(n).rho)) cf.colors.insert(n);
    out.push_back(std::move(cf));
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool morphism_extends(const QMat& phi, const ColoredCone& source, const ColoredCone& target,
                      const std::set<std::string>& dominant_colors) {
  int q1 = source.datum.q_dim, q2 = target.datum.q_dim;
  if (static_cast<int>(phi.size()) != q2)
    throw std::invalid_argument("phi must have target q_dim rows");
  for (auto& row : phi)
    if (static_cast<int>(row.size()) != q1) throw std::invalid_argument("phi must have source q_dim columns");
  Cone image_v = linear_image(phi, q2, source.datum.valuation_cone);
  if (!target.datum.valuation_cone.contains(image_v))
    throw std::invalid_argument("phi does not map the source valuation cone into the target one");

  if (!target.cone.contains(linear_image(phi, q2, source.cone))) return false;
  for (auto& n : source.colors)
    if (!dominant_colors.count(n) && !target.colors.count(n)) return false;
  return true;
}

AffineCertificate affine_test(const ColoredCone& cc) {
  const auto& d = cc.datum;
  int q = d.q_dim;
  std::vector<const Color*> outside;
  for (auto& c : d.colors)
    if (!cc.colors.count(c.name)) outside.push_back(&c);

  // Cone of (chi, s): chi <= 0 on V, chi = 0 on C, chi(rho(D)) >= s >= 0.
  QMat ineqs, eqs;
  auto lift = [&](const QVec& a, const Q& s) {
    QVec r = a;
    r.push_back(s);
    return r;
  };
  for (auto& g : d.valuation_cone.rays()) ineqs.push_back(lift(neg(g), 0));
  for (auto& g : cc.cone.rays()) eqs.push_back(lift(g, 0));
  for (auto* c : outside) ineqs.push_back(lift(c->rho, -1));
  ineqs.push_back(lift(zero_vec(q), 1));
  DDResult dd = double_description(q + 1, ineqs, eqs);

  AffineCertificate cert;
  for (auto& r : dd.rays) {
    if (sgn(r[q]) > 0) {
      cert.affine = true;
      cert.chi = primitive(QVec(r.begin(), r.begin() + q));
      return cert;
    }
  }

  // Alternative: mu >= 0, mu != 0 with sum mu_D rho(D) in V + span(C).
  Cone w = cone_sum(d.valuation_cone, Cone::from_generators(q, [&] {
                      QMat g = cc.cone.rays();
                      for (auto v : cc.cone.rays()) g.push_back(neg(v));
                      return g;
                    }()));
  int k = static_cast<int>(outside.size());
  QMat mu_ineqs;
  for (int i = 0; i < k; ++i) mu_ineqs.push_back(unit_vec(k, i));
  for (auto& h : w.halfspaces()) {
    QVec row(k);
    for (int i = 0; i < k; ++i) row[i] = dot(h, outside[i]->rho);
    mu_ineqs.push_back(row);
  }
  DDResult mu = double_description(k, mu_ineqs);
  if (mu.rays.empty()) throw std::logic_error("affine test: neither witness nor certificate");
  for (int i = 0; i < k; ++i)
    if (sgn(mu.rays[0][i])) cert.farkas[outside[i]->name] = mu.rays[0][i];
  return cert;
}

Classification classify_embedding(const ColoredCone& cc) {
  const auto& d = cc.datum;
  Classification c;
  c.affine = affine_test(cc);

  QMat rho;
  bool has_zero = false;
  for (auto& col : d.colors) {
    rho.push_back(col.rho);
    has_zero = has_zero || is_zero(col.rho);
  }
  c.quasiaffine = !has_zero && Cone::from_generators(d.q_dim, rho).is_pointed();

  if (d.root) {
    int extra = d.q_dim - d.root->ambient;
    QMat ineqs;
    for (auto& a : d.root->simple_roots) {
      QVec row = zero_vec(extra);
      for (auto& x : a) row.push_back(-x);
      ineqs.push_back(row);
    }
    c.wavefront = d.valuation_cone == Cone::from_inequalities(d.q_dim, ineqs);
  }
  c.toroidal = cc.colors.empty();
  return c;
}

ColoredCone decolorize(const ColoredCone& cc) {
  if (!validate_colored_cone(cc).valid) throw std::invalid_argument("invalid colored cone");
  return {cc.datum, intersect(cc.cone, cc.datum.valuation_cone), {}};
}

namespace {

// Coordinates of the functional a in the lattice basis, if a lies in its span.
std::optional<QVec> lattice_coords(const SphericalDatum& d, const QVec& a) {
  QMat l = d.lattice();
  return solve(transpose(l, d.q_dim), a, static_cast<int>(l.size()));
}

QVec from_lattice_coords(const SphericalDatum& d, const QVec& c) { return vec_mat(c, d.lattice()); }

}  // namespace

QMat spherical_roots(const SphericalDatum& d) {
  Cone nd = dual_cone(d.valuation_cone);
  QMat out;
  for (auto& r : nd.proper_rays()) {
    auto c = lattice_coords(d, neg(r));
    if (!c) throw std::invalid_argument("valuation cone dual leaves the lattice span");
    out.push_back(from_lattice_coords(d, primitive(*c)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

QMat cocharacter_basis(const SphericalDatum& d) {
  QMat l = d.lattice();
  if (static_cast<int>(l.size()) != d.q_dim || rank(l, d.q_dim) != d.q_dim)
    throw std::invalid_argument("lattice basis must be a basis of the dual of Q");
  return transpose(inverse(l), d.q_dim);  // rows: dual basis vectors
}

BoundaryFace boundary_face(const SphericalDatum& d, const QMat& theta) {
  QMat roots = spherical_roots(d);
  for (auto& t : theta)
    if (std::find(roots.begin(), roots.end(), t) == roots.end())
      throw std::invalid_argument(to_string(t) + " is not a spherical root");
  BoundaryFace bf;
  const Cone& v = d.valuation_cone;
  QMat eqs = v.equations();
  for (auto& t : theta) eqs.push_back(t);
  bf.face = Cone::from_inequalities(d.q_dim, v.facets(), eqs);

  // v = sum n_i b_i over the dual basis b; theta(v) = 0 becomes an integer
  // system in n with coefficients the lattice coordinates of theta.
  int r = d.q_dim;
  ZMat system;
  for (auto& t : theta) system.push_back(to_integer(*lattice_coords(d, t)));
  QMat dual = cocharacter_basis(d);
  for (auto& n : integer_kernel(system, r)) bf.lattice_basis.push_back(vec_mat(to_rational(n), dual));
  return bf;
}

bool cartan_positive(const SphericalDatum& d, const QVec& v) {
  for (auto& l : d.lattice())
    if (dot(l, v).get_den() != 1) throw std::invalid_argument(to_string(v) + " is not a cocharacter");
  return d.valuation_cone.contains(v);
}

bool LambdaReport::ok() const {
  return simplicial && std::all_of(positivity.begin(), positivity.end(), [](const Check& c) { return c.ok; });
}

LambdaReport lambda_monoid_check(const EigenLattice& lambda, const ColoredCone& cc) {
  LambdaReport rep;
  int r = lambda.rank;
  for (auto& g : lambda.generators)
    for (auto& x : g)
      if (x.get_den() != 1) throw std::invalid_argument("eigen-lattice generators must be integral");
  Cone lx = Cone::from_generators(r, lambda.generators);
  rep.simplicial = lx.is_pointed() && static_cast<int>(lx.proper_rays().size()) == lx.cone_dim();
  rep.minimal_generators = lx.proper_rays();  // primitive in Lambda coordinates

  QVec witness = cc.cone.relint_point();
  QVec omega_sum = zero_vec(r);
  for (auto& w : rep.minimal_generators) {
    QVec chi = lambda.chi(w);
    omega_sum = add(omega_sum, w);
    std::string tag = "omega " + to_string(w);
    bool nonneg = true;
    for (auto& g : cc.cone.rays()) nonneg = nonneg && sgn(dot(chi, g)) >= 0;
    rep.positivity.push_back({tag + ": chi >= 0 on C", nonneg, ""});
    if (!cc.cone.is_zero()) {
      Q val = dot(chi, witness);
      rep.positivity.push_back({tag + ": chi > 0 on relint(C)", sgn(val) > 0, to_string(val)});
    }
  }
  if (!rep.minimal_generators.empty()) {
    QVec chi = lambda.chi(omega_sum);
    Cone cv = intersect(cc.cone, cc.datum.valuation_cone);
    for (auto& g : cv.rays()) {
      Q val = dot(chi, g);
      rep.positivity.push_back({"relint omega: chi > 0 on ray " + to_string(g) + " of C cap V",
                                sgn(val) > 0, to_string(val)});
    }
  }
  return rep;
}

ColoredCone mat2_example() {
  SphericalDatum d;
  d.q_dim = 2;
  d.valuation_cone = Cone::from_inequalities(2, {{-1, 1}});
  d.colors = {{"D", {1, -1}}};
  d.root = build_root_datum(Family::A, 2);
  return {d, Cone::from_generators(2, {{1, -1}, {0, 1}}), {"D"}};
}

EigenLattice mat2_eigen_lattice() { return {1, {{1}}, {{1, 1}}}; }

}  // namespace sz

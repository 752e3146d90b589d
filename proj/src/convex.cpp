#include "sz/convex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace sz {

namespace {

class Bits {
 public:
  explicit Bits(size_t n = 0) : w_((n + 63) / 64, 0) {}
  void set(size_t i) { w_[i / 64] |= uint64_t(1) << (i % 64); }
  bool test(size_t i) const { return (w_[i / 64] >> (i % 64)) & 1; }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (size_t i = 0; i < w_.size(); ++i) r.w_[i] &= o.w_[i];
    return r;
  }
  bool subset_of(const Bits& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  int count() const {
    int c = 0;
    for (auto w : w_) c += __builtin_popcountll(w);
    return c;
  }
  friend bool operator==(const Bits& a, const Bits& b) { return a.w_ == b.w_; }
  friend bool operator<(const Bits& a, const Bits& b) { return a.w_ < b.w_; }

 private:
  std::vector<uint64_t> w_;
};

void check_rows(int dim, const QMat& m) {
  for (auto& r : m)
    if (static_cast<int>(r.size()) != dim) throw std::invalid_argument("dimension mismatch");
}

QMat sorted_primitive(const QMat& m) {
  std::set<QVec> s;
  for (auto& r : m)
    if (!is_zero(r)) s.insert(primitive(r));
  return QMat(s.begin(), s.end());
}

}  // namespace

DDResult double_description(int d, const QMat& ineqs, const QMat& eqs) {
  check_rows(d, ineqs);
  check_rows(d, eqs);
  DDResult out;
  QMat all = eqs;
  all.insert(all.end(), ineqs.begin(), ineqs.end());
  out.lineality = canonical_basis(nullspace(all, d), d);

  // Coordinates on W = L^perp cut out by the equations.
  QMat wdef = eqs;
  wdef.insert(wdef.end(), out.lineality.begin(), out.lineality.end());
  QMat basis = nullspace(wdef, d);
  int k = static_cast<int>(basis.size());
  if (k == 0) return out;

  // Integer arithmetic from here on: constraints and rays are primitive.
  using ZVec = std::vector<Z>;
  auto to_z = [](const QVec& q) {
    QVec p = primitive(q);
    ZVec z(p.size());
    for (size_t i = 0; i < p.size(); ++i) z[i] = p[i].get_num();
    return z;
  };
  auto zdot = [](const ZVec& x, const ZVec& y) {
    Z s = 0;
    for (size_t i = 0; i < x.size(); ++i)
      if (sgn(x[i]) && sgn(y[i])) s += x[i] * y[i];
    return s;
  };
  auto zprim = [](ZVec& x) {
    Z g = 0;
    for (auto& c : x) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1)
      for (auto& c : x) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  };

  QMat aq;
  for (auto& row : ineqs) {
    QVec r(k);
    for (int j = 0; j < k; ++j) r[j] = dot(basis[j], row);
    if (!is_zero(r)) aq.push_back(r);
  }
  aq = sorted_primitive(aq);
  size_t m = aq.size();
  std::vector<ZVec> a;
  for (auto& r : aq) a.push_back(to_z(r));

  // Initial simplicial cone from k independent rows.
  std::vector<size_t> init;
  QMat chosen;
  for (size_t i = 0; i < m && static_cast<int>(init.size()) < k; ++i) {
    QMat trial = chosen;
    trial.push_back(aq[i]);
    if (rank(trial, k) > static_cast<int>(chosen.size())) {
      chosen = std::move(trial);
      init.push_back(i);
    }
  }
  if (static_cast<int>(init.size()) < k) throw std::logic_error("double description: rank defect");
  QMat inv = inverse(chosen);
  struct ZRay {
    ZVec y;
    Bits zero;
  };
  std::vector<ZRay> rays;
  for (int j = 0; j < k; ++j) {
    QVec col(k);
    for (int i = 0; i < k; ++i) col[i] = inv[i][j];
    ZRay r{to_z(col), Bits(m)};
    for (int i = 0; i < k; ++i)
      if (i != j) r.zero.set(init[i]);
    rays.push_back(std::move(r));
  }
  std::vector<bool> used(m, false);
  for (size_t i : init) used[i] = true;

  for (size_t c = 0; c < m; ++c) {
    if (used[c]) continue;
    std::vector<Z> s(rays.size());
    std::vector<size_t> pos, neg, zer;
    for (size_t r = 0; r < rays.size(); ++r) {
      s[r] = zdot(a[c], rays[r].y);
      int sg = sgn(s[r]);
      (sg > 0 ? pos : sg < 0 ? neg : zer).push_back(r);
    }
    for (size_t r : zer) rays[r].zero.set(c);
    if (neg.empty()) continue;
    std::vector<ZRay> next;
    for (size_t r : pos) next.push_back(rays[r]);
    for (size_t r : zer) next.push_back(rays[r]);
    for (size_t p : pos)
      for (size_t n : neg) {
        Bits common = rays[p].zero & rays[n].zero;
        if (common.count() < k - 2) continue;
        bool adjacent = true;
        for (size_t t = 0; t < rays.size() && adjacent; ++t)
          if (t != p && t != n && common.subset_of(rays[t].zero)) adjacent = false;
        if (!adjacent) continue;
        ZVec y(k);
        bool nonzero = false;
        for (int i = 0; i < k; ++i) {
          y[i] = s[p] * rays[n].y[i] - s[n] * rays[p].y[i];
          nonzero = nonzero || sgn(y[i]);
        }
        if (!nonzero) continue;
        zprim(y);
        ZRay nr{std::move(y), common};
        nr.zero.set(c);
        next.push_back(std::move(nr));
      }
    rays = std::move(next);
  }

  QMat xs;
  for (auto& r : rays) {
    QVec x = zero_vec(d);
    for (int j = 0; j < k; ++j)
      if (sgn(r.y[j])) x = add(x, scale(basis[j], Q(r.y[j])));
    xs.push_back(x);
  }
  out.rays = sorted_primitive(xs);
  return out;
}

// ---- Cone ----

Cone Cone::from_inequalities(int dim, const QMat& ineqs, const QMat& eqs) {
  DDResult v = double_description(dim, ineqs, eqs);
  QMat gens = v.lineality;
  for (auto& l : v.lineality) gens.push_back(neg(l));
  gens.insert(gens.end(), v.rays.begin(), v.rays.end());
  DDResult h = double_description(dim, gens);
  Cone c;
  c.dim_ = dim;
  c.lin_ = v.lineality;
  c.rays_ = v.rays;
  c.eqs_ = h.lineality;
  c.facets_ = h.rays;
  return c;
}

Cone Cone::from_generators(int dim, const QMat& gens) {
  check_rows(dim, gens);
  DDResult h = double_description(dim, gens);
  QMat ineqs = h.rays;
  return from_inequalities(dim, ineqs, h.lineality);
}

Cone Cone::zero(int dim) { return from_generators(dim, {}); }
Cone Cone::full(int dim) { return from_inequalities(dim, {}); }

QMat Cone::rays() const {
  QMat r;
  for (auto& l : lin_) {
    r.push_back(l);
    r.push_back(neg(l));
  }
  r.insert(r.end(), rays_.begin(), rays_.end());
  std::sort(r.begin(), r.end());
  return r;
}

QMat Cone::halfspaces() const {
  QMat r;
  for (auto& e : eqs_) {
    r.push_back(e);
    r.push_back(neg(e));
  }
  r.insert(r.end(), facets_.begin(), facets_.end());
  std::sort(r.begin(), r.end());
  return r;
}

void Cone::check_dim(const QVec& v) const {
  if (static_cast<int>(v.size()) != dim_) throw std::invalid_argument("dimension mismatch");
}

bool Cone::contains(const QVec& v) const {
  check_dim(v);
  for (auto& e : eqs_)
    if (sgn(dot(e, v))) return false;
  for (auto& f : facets_)
    if (sgn(dot(f, v)) < 0) return false;
  return true;
}

bool Cone::in_relint(const QVec& v) const {
  check_dim(v);
  for (auto& e : eqs_)
    if (sgn(dot(e, v))) return false;
  for (auto& f : facets_)
    if (sgn(dot(f, v)) <= 0) return false;
  return true;
}

bool Cone::contains(const Cone& o) const {
  if (o.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
  for (auto& r : o.rays())
    if (!contains(r)) return false;
  return true;
}

QVec Cone::relint_point() const {
  QVec s = zero_vec(dim_);
  for (auto& r : rays_) s = add(s, r);
  return s;
}

Cone Cone::face_with_rays(const std::vector<size_t>& idx) const {
  Cone f;
  f.dim_ = dim_;
  f.lin_ = lin_;
  for (size_t i : idx) f.rays_.push_back(rays_[i]);
  std::sort(f.rays_.begin(), f.rays_.end());
  QMat span = lin_;
  span.insert(span.end(), f.rays_.begin(), f.rays_.end());
  f.eqs_ = canonical_basis(nullspace(span, dim_), dim_);
  int fd = dim_ - static_cast<int>(f.eqs_.size());
  std::set<QVec> fac;
  for (auto& g : facets_) {
    QMat sub = lin_;
    for (auto& r : f.rays_)
      if (!sgn(dot(g, r))) sub.push_back(r);
    if (sub.size() == span.size()) continue;
    if (rank(sub, dim_) != fd - 1) continue;
    fac.insert(primitive(project_off(g, f.eqs_)));
  }
  f.facets_.assign(fac.begin(), fac.end());
  return f;
}

Cone dual_cone(const Cone& c) {
  return Cone::from_generators(c.dim(), c.halfspaces());
}

Cone intersect(const Cone& a, const Cone& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  QMat h = a.halfspaces(), hb = b.halfspaces();
  h.insert(h.end(), hb.begin(), hb.end());
  return Cone::from_inequalities(a.dim(), h);
}

Cone cone_sum(const Cone& a, const Cone& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  QMat g = a.rays(), gb = b.rays();
  g.insert(g.end(), gb.begin(), gb.end());
  return Cone::from_generators(a.dim(), g);
}

namespace {

// Faces as sets of tight facet indices closed under the Galois connection.
std::vector<std::vector<size_t>> face_ray_sets(const QMat& rays, const QMat& facets) {
  size_t nr = rays.size(), nf = facets.size();
  std::vector<Bits> tight_rays(nf, Bits(nr));
  for (size_t f = 0; f < nf; ++f)
    for (size_t r = 0; r < nr; ++r)
      if (!sgn(dot(facets[f], rays[r]))) tight_rays[f].set(r);
  Bits all(nr);
  for (size_t r = 0; r < nr; ++r) all.set(r);

  auto close = [&](const Bits& s) {
    Bits c = all;
    for (size_t f = 0; f < nf; ++f)
      if (s.subset_of(tight_rays[f])) c = c & tight_rays[f];
    return c;
  };
  std::set<Bits> seen{all};
  std::vector<Bits> queue{all};
  while (!queue.empty()) {
    Bits cur = queue.back();
    queue.pop_back();
    for (size_t f = 0; f < nf; ++f) {
      if (cur.subset_of(tight_rays[f])) continue;
      Bits next = close(cur & tight_rays[f]);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  std::vector<std::vector<size_t>> out;
  for (auto& b : seen) {
    std::vector<size_t> idx;
    for (size_t r = 0; r < nr; ++r)
      if (b.test(r)) idx.push_back(r);
    out.push_back(idx);
  }
  return out;
}

}  // namespace

std::vector<Cone> faces(const Cone& c) {
  std::vector<Cone> out;
  for (auto& idx : face_ray_sets(c.proper_rays(), c.facets())) out.push_back(c.face_with_rays(idx));
  std::sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) {
    if (a.cone_dim() != b.cone_dim()) return a.cone_dim() < b.cone_dim();
    return a.rays() < b.rays();
  });
  return out;
}

Cone face_containing(const Cone& c, const QVec& v) {
  if (!c.contains(v)) throw std::invalid_argument("point not in cone");
  QMat tight;
  for (auto& f : c.facets())
    if (!sgn(dot(f, v))) tight.push_back(f);
  std::vector<size_t> idx;
  const QMat& rays = c.proper_rays();
  for (size_t r = 0; r < rays.size(); ++r) {
    bool ok = true;
    for (auto& f : tight) ok = ok && !sgn(dot(f, rays[r]));
    if (ok) idx.push_back(r);
  }
  return c.face_with_rays(idx);
}

Cone linear_image(const QMat& m, int target_dim, const Cone& c) {
  QMat gens;
  for (auto& r : c.rays()) {
    QVec v = mat_vec(m, r);
    if (static_cast<int>(v.size()) != target_dim) throw std::invalid_argument("dimension mismatch");
    gens.push_back(v);
  }
  return Cone::from_generators(target_dim, gens);
}

// ---- Polyhedron ----

namespace {

QVec homog(const QVec& x, const Q& t) {
  QVec r = x;
  r.push_back(t);
  return r;
}

AffineForm to_form(const QVec& h) {
  return {QVec(h.begin(), h.end() - 1), h.back()};
}

}  // namespace

Polyhedron Polyhedron::from_homogenization(const Cone& k) {
  Polyhedron p;
  p.dim_ = k.dim() - 1;
  bool nonempty = false;
  for (auto& r : k.proper_rays())
    if (sgn(r.back()) > 0) nonempty = true;
  p.k_ = nonempty ? k : Cone::zero(k.dim());
  return p;
}

Polyhedron Polyhedron::empty(int dim) {
  Polyhedron p;
  p.dim_ = dim;
  p.k_ = Cone::zero(dim + 1);
  return p;
}

Polyhedron Polyhedron::from_constraints(int dim, const std::vector<AffineForm>& ge,
                                        const std::vector<AffineForm>& eq) {
  QMat ineqs{unit_vec(dim + 1, dim)}, eqs;
  for (auto& a : ge) {
    if (static_cast<int>(a.linear.size()) != dim) throw std::invalid_argument("dimension mismatch");
    ineqs.push_back(homog(a.linear, a.constant));
  }
  for (auto& a : eq) {
    if (static_cast<int>(a.linear.size()) != dim) throw std::invalid_argument("dimension mismatch");
    eqs.push_back(homog(a.linear, a.constant));
  }
  return from_homogenization(Cone::from_inequalities(dim + 1, ineqs, eqs));
}

Polyhedron Polyhedron::from_generators(int dim, const QMat& points, const QMat& rays) {
  if (points.empty()) return empty(dim);
  QMat gens;
  for (auto& p : points) {
    if (static_cast<int>(p.size()) != dim) throw std::invalid_argument("dimension mismatch");
    gens.push_back(homog(p, 1));
  }
  for (auto& r : rays) {
    if (static_cast<int>(r.size()) != dim) throw std::invalid_argument("dimension mismatch");
    gens.push_back(homog(r, 0));
  }
  return from_homogenization(Cone::from_generators(dim + 1, gens));
}

Polyhedron Polyhedron::from_cone(const Cone& c) {
  return from_generators(c.dim(), {zero_vec(c.dim())}, c.rays());
}

bool Polyhedron::is_bounded() const {
  if (!k_.is_pointed()) return false;
  for (auto& r : k_.proper_rays())
    if (!sgn(r.back())) return false;
  return true;
}

std::vector<AffineForm> Polyhedron::equations() const {
  std::vector<AffineForm> out;
  if (is_empty()) return out;
  for (auto& e : k_.equations()) out.push_back(to_form(e));
  return out;
}

std::vector<AffineForm> Polyhedron::facets() const {
  std::vector<AffineForm> out;
  if (is_empty()) return out;
  for (auto& f : k_.facets()) {
    // The facet at infinity contains no ray with t > 0.
    bool finite = false;
    for (auto& r : k_.proper_rays())
      if (sgn(r.back()) > 0 && !sgn(dot(f, r))) finite = true;
    if (finite) out.push_back(to_form(f));
  }
  return out;
}

std::vector<AffineForm> Polyhedron::constraints() const {
  std::vector<AffineForm> out;
  for (auto& e : equations()) {
    out.push_back(e);
    out.push_back({neg(e.linear), -e.constant});
  }
  for (auto& f : facets()) out.push_back(f);
  return out;
}

QMat Polyhedron::vertices() const {
  QMat out;
  for (auto& r : k_.proper_rays())
    if (sgn(r.back()) > 0) out.push_back(scale(QVec(r.begin(), r.end() - 1), 1 / r.back()));
  std::sort(out.begin(), out.end());
  return out;
}

Cone Polyhedron::recession_cone() const {
  QMat gens;
  for (auto& r : k_.rays())
    if (!sgn(r.back())) gens.push_back(QVec(r.begin(), r.end() - 1));
  return Cone::from_generators(dim_, gens);
}

bool Polyhedron::contains(const QVec& x) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("dimension mismatch");
  return !is_empty() && k_.contains(homog(x, 1));
}

bool Polyhedron::in_relint(const QVec& x) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("dimension mismatch");
  return !is_empty() && k_.in_relint(homog(x, 1));
}

bool Polyhedron::contains(const Polyhedron& o) const {
  if (o.is_empty()) return true;
  for (auto& r : o.k_.rays())
    if (!k_.contains(r)) return false;
  return true;
}

QVec Polyhedron::relint_point() const {
  if (is_empty()) throw std::domain_error("empty polyhedron");
  QVec s = k_.relint_point();
  return scale(QVec(s.begin(), s.end() - 1), 1 / s.back());
}

Polyhedron Polyhedron::translate(const QVec& v) const {
  if (is_empty()) return *this;
  QMat gens;
  for (auto& r : k_.rays()) {
    QVec g = r;
    for (int i = 0; i < dim_; ++i) g[i] += r.back() * v[i];
    gens.push_back(g);
  }
  return from_homogenization(Cone::from_generators(dim_ + 1, gens));
}

Polyhedron minkowski_sum(const Polyhedron& a, const Polyhedron& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  if (a.is_empty() || b.is_empty()) return Polyhedron::empty(a.dim());
  QMat pts, rays;
  auto split = [&](const Polyhedron& p, QMat& fin) {
    for (auto& r : p.homogenization().rays()) {
      QVec x(r.begin(), r.end() - 1);
      if (sgn(r.back())) fin.push_back(scale(x, 1 / r.back()));
      else rays.push_back(x);
    }
  };
  QMat pa, pb;
  split(a, pa);
  split(b, pb);
  for (auto& x : pa)
    for (auto& y : pb) pts.push_back(add(x, y));
  return Polyhedron::from_generators(a.dim(), pts, rays);
}

Polyhedron minkowski_sum(const Polyhedron& a, const Cone& c) {
  return minkowski_sum(a, Polyhedron::from_cone(c));
}

Polyhedron intersect(const Polyhedron& a, const Polyhedron& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  if (a.is_empty() || b.is_empty()) return Polyhedron::empty(a.dim());
  return Polyhedron::from_homogenization(intersect(a.homogenization(), b.homogenization()));
}

std::vector<Polyhedron> faces(const Polyhedron& p) {
  std::vector<Polyhedron> out;
  if (p.is_empty()) return out;
  for (auto& f : faces(p.homogenization())) {
    Polyhedron q = Polyhedron::from_homogenization(f);
    if (!q.is_empty()) out.push_back(q);
  }
  return out;
}

Polyhedron unique_face_of(const Polyhedron& p, const Polyhedron& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("dimension mismatch");
  if (p.is_empty()) throw std::invalid_argument("empty polyhedron has no relative interior");
  if (!q.contains(p)) throw std::invalid_argument("first polyhedron is not contained in the second");
  QVec x = p.relint_point();
  x.push_back(1);
  Cone k = face_containing(q.homogenization(), x);
  return Polyhedron::from_homogenization(k);
}

RecessionBottom recession_and_bottom(const Polyhedron& e) {
  if (e.is_empty()) throw std::domain_error("empty polyhedron");
  const Cone& k = e.homogenization();
  if (!k.is_pointed()) throw std::domain_error("polyhedron contains an affine line");
  RecessionBottom out;
  out.recession = e.recession_cone();
  // Bounded faces are the faces all of whose rays have t > 0.
  const QMat& rays = k.proper_rays();
  std::vector<std::vector<size_t>> bounded;
  for (auto& idx : face_ray_sets(rays, k.facets())) {
    if (idx.empty()) continue;
    bool ok = true;
    for (size_t r : idx) ok = ok && sgn(rays[r].back()) > 0;
    if (ok) bounded.push_back(idx);
  }
  for (auto& f : bounded) {
    bool maximal = true;
    for (auto& g : bounded)
      if (g.size() > f.size() && std::includes(g.begin(), g.end(), f.begin(), f.end())) maximal = false;
    if (!maximal) continue;
    QMat pts;
    for (size_t r : f) pts.push_back(scale(QVec(rays[r].begin(), rays[r].end() - 1), 1 / rays[r].back()));
    out.bottom.push_back(Polyhedron::from_generators(e.dim(), pts));
  }
  std::sort(out.bottom.begin(), out.bottom.end(),
            [](const Polyhedron& a, const Polyhedron& b) { return a.vertices() < b.vertices(); });
  return out;
}

// ---- deep translates and cellular decomposition ----

bool ThresholdOracle::deep(const std::vector<Polyhedron>& b, const Cone& f) const {
  if (f.is_zero()) return true;
  const QMat& phi = phi_.empty() ? f.facets() : phi_;
  for (auto& h : phi) {
    bool vanishes = true;
    for (auto& r : f.rays())
      if (sgn(dot(h, r))) vanishes = false;
    if (vanishes) continue;
    for (auto& piece : b)
      for (auto& v : piece.vertices())
        if (dot(h, v) < threshold_) return false;
  }
  return true;
}

namespace {

QVec ray_sum(const Cone& f) {
  QVec u = zero_vec(f.dim());
  for (auto& r : f.rays()) u = add(u, r);
  return u;
}

std::vector<Polyhedron> translate_all(const std::vector<Polyhedron>& b, const QVec& v) {
  std::vector<Polyhedron> out;
  for (auto& p : b) out.push_back(p.translate(v));
  return out;
}

}  // namespace

QVec find_deep_translate(const std::vector<Polyhedron>& b, const Cone& f, const DeepOracle& deep,
                         int max_doublings) {
  if (f.is_zero()) {
    if (!deep.deep(b, f)) throw std::runtime_error("oracle violates the {0}-deep axiom");
    return zero_vec(f.dim());
  }
  QVec u = ray_sum(f);
  Q k = 1;
  for (int i = 0; i <= max_doublings; ++i, k *= 2) {
    QVec v = scale(u, k);
    if (deep.deep(translate_all(b, v), f)) return v;
  }
  throw std::runtime_error("no deep translate found within the doubling bound (non-monotone oracle?)");
}

namespace {

struct Piece {
  Polyhedron p;
  Cone rec;
  std::vector<Polyhedron> bottom;
};

// Splits e along alpha_i(x) = abar_i(v) for the facets with abar_i(v) > 0 and
// keeps the pieces of full dimension.
std::vector<Polyhedron> split_pieces(const Polyhedron& e, const QVec& v) {
  int d = e.dim();
  int full = e.affine_dim();
  std::vector<Polyhedron> pieces{e};
  for (auto& a : e.facets()) {
    Q level = dot(a.linear, v);
    if (sgn(level) <= 0) continue;
    AffineForm up{a.linear, a.constant - level}, down{neg(a.linear), level - a.constant};
    std::vector<Polyhedron> next;
    for (auto& p : pieces)
      for (auto& h : {up, down}) {
        Polyhedron q = intersect(p, Polyhedron::from_constraints(d, {h}));
        if (q.affine_dim() == full) next.push_back(q);
      }
    pieces = std::move(next);
  }
  return pieces;
}

void decompose_into(const Polyhedron& e, const DeepOracle& deep, int max_doublings,
                    std::vector<Piece>& out) {
  RecessionBottom rb = recession_and_bottom(e);
  if (deep.deep(rb.bottom, rb.recession)) {
    out.push_back({e, rb.recession, rb.bottom});
    return;
  }
  QVec u = ray_sum(rb.recession);
  Q k = 1;
  std::vector<Piece> best;
  for (int i = 0; i <= max_doublings; ++i, k *= 2) {
    QVec v = scale(u, k);
    if (!deep.deep(translate_all(rb.bottom, v), rb.recession)) continue;
    std::vector<Piece> cur;
    bool all_deep = true;
    for (auto& p : split_pieces(e, v)) {
      RecessionBottom prb = recession_and_bottom(p);
      if (!deep.deep(prb.bottom, prb.recession)) all_deep = false;
      cur.push_back({p, prb.recession, prb.bottom});
    }
    if (all_deep) {
      out.insert(out.end(), cur.begin(), cur.end());
      return;
    }
    if (best.empty()) best = cur;
    if (i == max_doublings) break;
  }
  if (best.empty()) throw std::runtime_error("no deep translate found within the doubling bound");
  // Pieces with smaller recession cones are decomposed recursively.
  for (auto& pc : best) {
    if (deep.deep(pc.bottom, pc.rec)) out.push_back(pc);
    else if (pc.rec.cone_dim() < rb.recession.cone_dim()) decompose_into(pc.p, deep, max_doublings, out);
    else throw std::runtime_error("oracle is not monotone under translation");
  }
}

}  // namespace

std::vector<Cell> cellular_decompose(const Polyhedron& e, const DeepOracle& deep, int max_doublings) {
  RecessionBottom rb = recession_and_bottom(e);
  if (!rb.recession.is_pointed()) throw std::domain_error("recession cone is not strictly convex");
  std::vector<Piece> pieces;
  decompose_into(e, deep, max_doublings, pieces);
  std::map<QMat, Cell> cells;
  for (auto& pc : pieces) {
    Cell& c = cells[pc.rec.rays()];
    c.direction = pc.rec;
    c.base.insert(c.base.end(), pc.bottom.begin(), pc.bottom.end());
    c.sum.push_back(pc.p);
  }
  std::vector<Cell> out;
  for (auto& [key, c] : cells) out.push_back(c);
  std::sort(out.begin(), out.end(), [](const Cell& a, const Cell& b) {
    if (a.direction.cone_dim() != b.direction.cone_dim())
      return a.direction.cone_dim() > b.direction.cone_dim();
    return a.direction.rays() < b.direction.rays();
  });
  return out;
}

}  // namespace sz

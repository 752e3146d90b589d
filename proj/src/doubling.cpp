#include "sz/doubling.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>

#include "sz/cyclotomic.hpp"

namespace sz {

namespace {

// Calls fn on every sorted k-subset of [0, n).
template <class Fn>
void for_subsets(int n, int k, Fn fn) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// e_I ^ e_J = sign * e_{I u J} for disjoint sorted I, J.
int merge_sign(const std::vector<int>& a, const std::vector<int>& b) {
  long inv = 0;
  for (int x : a)
    for (int y : b)
      if (x > y) ++inv;
  return inv % 2 ? -1 : 1;
}

QVec concat(const QVec& a, const QVec& b) {
  QVec r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

}  // namespace

SymplecticSpace SymplecticSpace::standard(int dim_v) {
  if (dim_v < 2 || dim_v % 2) throw std::invalid_argument("dim V must be even and positive");
  SymplecticSpace sp;
  sp.m = dim_v / 2;
  int d = dim_v;
  sp.gram.assign(d, QVec(d, 0));
  for (int i = 0; i < sp.m; ++i) {
    sp.gram[i][d - 1 - i] = 1;
    sp.gram[d - 1 - i][i] = -1;
  }
  sp.gram_box.assign(2 * d, QVec(2 * d, 0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      sp.gram_box[i][j] = sp.gram[i][j];
      sp.gram_box[d + i][d + j] = -sp.gram[i][j];
    }
  return sp;
}

bool is_lagrangian(const SymplecticSpace& sp, const QMat& basis) {
  int d = sp.d();
  if (static_cast<int>(basis.size()) != d) return false;
  for (const auto& r : basis)
    if (static_cast<int>(r.size()) != 2 * d) return false;
  if (rank(basis, 2 * d) != d) return false;
  QMat bg = mat_mul(basis, sp.gram_box);
  for (const auto& x : bg)
    for (const auto& y : basis)
      if (dot(x, y) != 0) return false;
  return true;
}

void check_lagrangian(const SymplecticSpace& sp, const QMat& basis) {
  if (!is_lagrangian(sp, basis)) throw std::invalid_argument("not a lagrangian of V^box");
}

QMat side_basis(const SymplecticSpace& sp, Side side) {
  int d = sp.d();
  QMat b;
  for (int i = 0; i < d; ++i) b.push_back(unit_vec(2 * d, side == Side::Plus ? i : d + i));
  return b;
}

int intersection_dim(const SymplecticSpace& sp, const QMat& basis, Side side) {
  int d = sp.d();
  QMat all = basis;
  for (const auto& r : side_basis(sp, side)) all.push_back(r);
  return rank(basis, 2 * d) + d - rank(all, 2 * d);
}

int kappa(const SymplecticSpace& sp, const Lagrangian& l, Side side) {
  check_lagrangian(sp, l.basis);
  int kp = intersection_dim(sp, l.basis, Side::Plus);
  int km = intersection_dim(sp, l.basis, Side::Minus);
  if (kp != km)
    throw std::logic_error("kappa+ = " + std::to_string(kp) + " differs from kappa- = " +
                           std::to_string(km));
  return side == Side::Plus ? kp : km;
}

Lagrangian diagonal_lagrangian(const SymplecticSpace& sp) { return kappa_lagrangian(sp, 0); }

Lagrangian kappa_lagrangian(const SymplecticSpace& sp, int j) {
  int d = sp.d();
  if (j < 0 || j > sp.m) throw std::invalid_argument("kappa must lie in [0, dim V / 2]");
  Lagrangian l;
  QVec zero = zero_vec(d);
  for (int i = 0; i < sp.m; ++i) {
    QVec e = unit_vec(d, i), f = unit_vec(d, d - 1 - i);
    if (i < j) {
      l.basis.push_back(concat(e, zero));
      l.basis.push_back(concat(zero, f));
    } else {
      l.basis.push_back(concat(e, e));
      l.basis.push_back(concat(f, f));
    }
  }
  return l;
}

Q WedgeVector::at(const std::vector<int>& idx) const {
  auto it = coords.find(idx);
  return it == coords.end() ? Q(0) : it->second;
}

namespace {

// All maximal minors of the rows, by Laplace expansion along the last row:
// minors of the first r rows are indexed by column bitmasks.
std::map<std::vector<int>, Q> maximal_minors(const QMat& rows, int n) {
  if (n > 62) throw std::invalid_argument("ambient dimension too large");
  std::map<uint64_t, Q> cur{{0, Q(1)}};
  for (size_t r = 0; r < rows.size(); ++r) {
    std::map<uint64_t, Q> next;
    for (const auto& [mask, m] : cur)
      for (int j = 0; j < n; ++j) {
        if ((mask >> j & 1) || rows[r][j] == 0) continue;
        int below = std::popcount(mask & ((uint64_t(1) << j) - 1));
        Q term = rows[r][j] * m;
        if ((r + below) % 2) term = -term;
        next[mask | uint64_t(1) << j] += term;
      }
    cur.clear();
    for (auto& [mask, m] : next)
      if (m != 0) cur.emplace(mask, m);
  }
  std::map<std::vector<int>, Q> out;
  for (const auto& [mask, m] : cur) {
    std::vector<int> idx;
    for (int j = 0; j < n; ++j)
      if (mask >> j & 1) idx.push_back(j);
    out.emplace(std::move(idx), m);
  }
  return out;
}

}  // namespace

WedgeVector plucker(const QMat& basis, const Q& scale) {
  if (basis.empty()) throw std::invalid_argument("empty basis");
  if (scale == 0) throw std::invalid_argument("scale must be nonzero");
  WedgeVector w;
  w.ambient = static_cast<int>(basis[0].size());
  w.k = static_cast<int>(basis.size());
  w.coords = maximal_minors(basis, w.ambient);
  if (w.coords.empty()) throw std::invalid_argument("degenerate basis");
  if (scale != 1)
    for (auto& [idx, v] : w.coords) v *= scale;
  return w;
}

bool proportional(const WedgeVector& a, const WedgeVector& b) {
  if (a.ambient != b.ambient || a.k != b.k) return false;
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.coords.size() != b.coords.size()) return false;
  Q ratio = b.coords.begin()->second / a.coords.begin()->second;
  for (const auto& [i, v] : a.coords)
    if (b.at(i) != v * ratio) return false;
  return true;
}

WedgeVector scaled(const WedgeVector& w, const Q& c) {
  WedgeVector r = w;
  r.coords.clear();
  if (c != 0)
    for (const auto& [i, v] : w.coords) r.coords[i] = v * c;
  return r;
}

WedgeVector exterior_action(const WedgeVector& w, const QMat& g) {
  WedgeVector r;
  r.ambient = w.ambient;
  r.k = w.k;
  for (const auto& [idx, v] : w.coords) {
    QMat rows;
    for (int i : idx) rows.push_back(g[i]);
    for (const auto& [j, u] : maximal_minors(rows, w.ambient)) {
      Q& slot = r.coords[j];
      slot += v * u;
      if (slot == 0) r.coords.erase(j);
    }
  }
  return r;
}

int contraction_rank(const WedgeVector& w) {
  int n = w.ambient;
  std::map<std::vector<int>, int> col;
  for_subsets(n, w.k + 1, [&](const std::vector<int>& idx) {
    int c = static_cast<int>(col.size());
    col[idx] = c;
  });
  QMat m(n, QVec(col.size(), 0));
  for (int j = 0; j < n; ++j)
    for (const auto& [idx, v] : w.coords) {
      if (std::binary_search(idx.begin(), idx.end(), j)) continue;
      std::vector<int> u = idx;
      u.insert(std::upper_bound(u.begin(), u.end(), j), j);
      m[j][col[u]] += v * merge_sign(idx, {j});
    }
  return rank(m, static_cast<int>(col.size()));
}

Q f_plus(const SymplecticSpace& sp, const WedgeVector& w, Side side) {
  int d = sp.d();
  if (w.ambient != 2 * d || w.k != d) throw std::invalid_argument("wedge of the wrong degree");
  std::vector<int> lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    lo[i] = i;
    hi[i] = d + i;
  }
  // w ^ v+ only sees the coordinate on the V- block, and vice versa
  if (side == Side::Plus) return w.at(hi) * merge_sign(hi, lo);
  return w.at(lo) * merge_sign(lo, hi);
}

QMat transvection(const QMat& gram, const QVec& v, const Q& c) {
  int n = static_cast<int>(gram.size());
  QVec jv = mat_vec(gram, v);
  QMat g = identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i][j] += c * jv[i] * v[j];
  return g;
}

QMat random_symplectic(const QMat& gram, std::mt19937_64& rng, int words) {
  int n = static_cast<int>(gram.size());
  static const Q cs[] = {Q(1), Q(-1), Q(2), Q(1, 2), Q(-1, 2)};
  QMat g = identity(n);
  for (int w = 0; w < words; ++w) {
    QVec v(n, 0);
    while (is_zero(v))
      for (auto& x : v) x = static_cast<long>(rng() % 3) - 1;
    g = mat_mul(g, transvection(gram, v, cs[rng() % 5]));
  }
  return g;
}

QMat block_diag(const QMat& a, const QMat& b) {
  size_t na = a.size(), nb = b.size();
  QMat r(na + nb, QVec(na + nb, 0));
  for (size_t i = 0; i < na; ++i)
    for (size_t j = 0; j < na; ++j) r[i][j] = a[i][j];
  for (size_t i = 0; i < nb; ++i)
    for (size_t j = 0; j < nb; ++j) r[na + i][na + j] = b[i][j];
  return r;
}

long LaurentPoly::order() const {
  for (size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) return low + static_cast<long>(i);
  throw std::domain_error("order of the zero polynomial");
}

long LaurentPoly::degree() const {
  for (size_t i = coeffs.size(); i-- > 0;)
    if (coeffs[i] != 0) return low + static_cast<long>(i);
  throw std::domain_error("degree of the zero polynomial");
}

std::string LaurentPoly::to_string() const {
  std::vector<std::pair<Q, std::string>> atoms;
  for (size_t i = coeffs.size(); i-- > 0;) {
    long e = low + static_cast<long>(i);
    std::string m = e == 0 ? "" : e == 1 ? "t" : "t^" + std::to_string(e);
    atoms.emplace_back(coeffs[i], m);
  }
  return format_sum(atoms);
}

BoundaryCurve boundary_curve(int dim_v) {
  SymplecticSpace sp = SymplecticSpace::standard(dim_v);
  int d = sp.d();
  QVec zero = zero_vec(d), v = unit_vec(d, 0), w = unit_vec(d, d - 1);
  QMat b;
  for (int i = 1; i < d - 1; ++i) b.push_back(concat(unit_vec(d, i), unit_vec(d, i)));
  auto rows = [&](const Q& t) {
    QMat r = {concat(v, scale(v, t)), concat(w, scale(w, 1 / t))};
    r.insert(r.end(), b.begin(), b.end());
    return r;
  };
  // Every coordinate of c(t) is a Laurent polynomial with exponents in [-1, 3];
  // fit on 7 points, the two extra points certify the fit.
  const long lo = -1, hi = 3;
  const int unknowns = static_cast<int>(hi - lo + 1), pts = unknowns + 2;
  std::vector<WedgeVector> samples;
  QMat vand;
  for (int i = 1; i <= pts; ++i) {
    Q t(i);
    samples.push_back(plucker(rows(t), t));
    QVec row;
    for (long e = lo; e <= hi; ++e) row.push_back(qpow(t, e));
    vand.push_back(row);
  }
  QMat square(vand.begin(), vand.begin() + unknowns);
  QMat inv = inverse(square);
  std::map<std::vector<int>, QVec> series;
  for (int i = 0; i < pts; ++i)
    for (const auto& [idx, x] : samples[i].coords) series[idx];
  BoundaryCurve out;
  out.limit.ambient = 2 * d;
  out.limit.k = d;
  std::vector<int> hiblock(d), loblock(d);
  for (int i = 0; i < d; ++i) {
    loblock[i] = i;
    hiblock[i] = d + i;
  }
  for (auto& [idx, coeffs] : series) {
    QVec vals;
    for (int i = 0; i < unknowns; ++i) vals.push_back(samples[i].at(idx));
    coeffs = mat_vec(inv, vals);
    for (int i = unknowns; i < pts; ++i)
      if (dot(vand[i], coeffs) != samples[i].at(idx))
        throw std::logic_error("curve coordinate is not a Laurent polynomial in the expected range");
    if (coeffs[-lo] != 0) out.limit.coords[idx] = coeffs[-lo];
  }
  Q sign = merge_sign(hiblock, loblock);
  out.fplus.low = lo;
  out.fplus.coeffs.assign(unknowns, 0);
  if (series.count(hiblock))
    for (int i = 0; i < unknowns; ++i) out.fplus.coeffs[i] = series[hiblock][i] * sign;
  out.fplus_at_one = f_plus(sp, samples[0]);
  Lagrangian lim;
  lim.basis = {concat(v, zero), concat(zero, w)};
  lim.basis.insert(lim.basis.end(), b.begin(), b.end());
  out.limit_lagrangian = lim;
  out.limit_kappa = kappa(sp, lim);
  out.limit_matches = proportional(out.limit, plucker(lim.basis));
  return out;
}

ColoredCone doubling_cone(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("doubling_cone supports 1 <= n <= 4");
  SphericalDatum d;
  d.q_dim = n + 1;
  d.root = build_root_datum(Family::C, n);
  QMat ineqs;
  for (const auto& a : d.root->simple_roots) ineqs.push_back(concat({Q(0)}, neg(a)));
  d.valuation_cone = Cone::from_inequalities(n + 1, ineqs);
  QMat gens;
  std::set<std::string> names;
  for (int i = 0; i < n; ++i) {
    Color c{"D" + std::to_string(i + 1), concat({Q(0)}, d.root->simple_coroots[i])};
    gens.push_back(c.rho);
    names.insert(c.name);
    d.colors.push_back(c);
  }
  QVec low = concat({Q(1)}, neg(unit_vec(n, 0)));
  if (!d.valuation_cone.contains(low)) throw std::logic_error("(1, -eps_1) is not in V");
  gens.push_back(low);
  return {d, Cone::from_generators(n + 1, gens), names};
}

EigenLattice doubling_eigen_lattice(int n) {
  EigenLattice e;
  e.rank = 1;
  e.generators = {{Q(1)}};
  e.chi_map = {unit_vec(n + 1, 0)};
  return e;
}

LMonoidReport lmonoid_verify(int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("lmonoid_verify supports 1 <= n <= 3");
  ColoredCone cc = doubling_cone(n);
  const RootDatum& rd = *cc.datum.root;
  Cone cv = intersect(cc.cone, cc.datum.valuation_cone);
  QMat a_gens;
  for (const auto& r : cv.rays())
    for (const auto& x : weyl_orbit(rd, r)) a_gens.push_back(x);
  LMonoidReport rep;
  rep.orbit = weyl_orbit(rd, concat({Q(1)}, neg(unit_vec(n, 0))));
  rep.weyl_hull = Cone::from_generators(n + 1, a_gens);
  rep.orbit_hull = Cone::from_generators(n + 1, rep.orbit);
  rep.equal = rep.weyl_hull == rep.orbit_hull;
  if (static_cast<int>(rep.orbit.size()) != 2 * n) {
    rep.equal = false;
    rep.detail = "orbit of (1, -eps_1) has " + std::to_string(rep.orbit.size()) + " elements";
  } else if (!rep.equal) {
    for (const auto& r : rep.weyl_hull.rays())
      if (!rep.orbit_hull.contains(r)) rep.detail += "ray " + to_string(r) + " only in A; ";
    for (const auto& r : rep.orbit_hull.rays())
      if (!rep.weyl_hull.contains(r)) rep.detail += "ray " + to_string(r) + " only in B; ";
  } else {
    rep.detail = "equal";
  }
  return rep;
}

SphericalDatum xp_data(Family family, int n) {
  if (family != Family::C) throw std::invalid_argument("xp_data supports Sp with the Siegel parabolic only");
  if (n < 1) throw std::invalid_argument("n must be positive");
  SphericalDatum d;
  d.q_dim = 1;
  d.valuation_cone = Cone::full(1);
  d.colors = {{"D_alpha" + std::to_string(2 * n), {Q(1)}}};
  return d;
}

ColoredCone xp_affine_closure(Family family, int n) {
  SphericalDatum d = xp_data(family, n);
  std::string name = d.colors[0].name;
  Cone c = Cone::from_generators(1, {d.colors[0].rho});
  return {d, c, {name}};
}

}  // namespace sz

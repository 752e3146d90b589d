#include "sz/rootdata.hpp"

#include <deque>
#include <set>
#include <stdexcept>

namespace sz {

Family parse_family(const std::string& s) {
  if (s == "A") return Family::A;
  if (s == "C") return Family::C;
  throw std::invalid_argument("unsupported root system family: " + s);
}

std::string family_name(Family f) { return f == Family::A ? "A" : "C"; }

RootDatum build_root_datum(Family family, int n) {
  if (n < 1) throw std::invalid_argument("rank must be positive");
  RootDatum d;
  d.family = family;
  d.n = n;
  d.ambient = n;
  for (int i = 0; i + 1 < n; ++i) {
    QVec a = zero_vec(n);
    a[i] = 1;
    a[i + 1] = -1;
    d.simple_roots.push_back(a);
    d.simple_coroots.push_back(a);
  }
  if (family == Family::C) {
    QVec a = zero_vec(n), c = zero_vec(n);
    a[n - 1] = 2;
    c[n - 1] = 1;
    d.simple_roots.push_back(a);
    d.simple_coroots.push_back(c);
  }
  int nw = family == Family::C ? n : n - 1;
  for (int i = 0; i < nw; ++i) {
    QVec w = zero_vec(n);
    for (int j = 0; j <= i; ++j) w[j] = 1;
    d.fundamental_weights.push_back(w);
  }
  for (size_t i = 0; i < d.simple_roots.size(); ++i) {
    QMat m = identity(n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m[r][c] -= d.simple_coroots[i][r] * d.simple_roots[i][c];
    d.weyl_generators.push_back(m);
  }
  return d;
}

QMat RootDatum::pairing_matrix() const {
  QMat m(simple_roots.size(), QVec(simple_coroots.size()));
  for (size_t i = 0; i < simple_roots.size(); ++i)
    for (size_t j = 0; j < simple_coroots.size(); ++j) m[i][j] = dot(simple_roots[i], simple_coroots[j]);
  return m;
}

QMat weyl_orbit(const RootDatum& d, const QVec& v) {
  if (static_cast<int>(v.size()) < d.ambient) throw std::invalid_argument("dimension mismatch");
  size_t extra = v.size() - d.ambient;
  std::set<QVec> seen{v};
  std::deque<QVec> queue{v};
  while (!queue.empty()) {
    QVec cur = queue.front();
    queue.pop_front();
    QVec tail(cur.begin() + extra, cur.end());
    for (auto& g : d.weyl_generators) {
      QVec img = mat_vec(g, tail);
      QVec next(cur.begin(), cur.begin() + extra);
      next.insert(next.end(), img.begin(), img.end());
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return QMat(seen.begin(), seen.end());
}

QMat RootDatum::roots() const {
  // Roots are functionals; in these coordinates the reflections are
  // orthogonal, so the same matrices act on them.
  std::set<QVec> all;
  for (auto& a : simple_roots)
    for (auto& r : weyl_orbit(*this, a)) all.insert(r);
  return QMat(all.begin(), all.end());
}

Cone antidominant_chamber(const RootDatum& d) {
  QMat ineqs;
  for (auto& a : d.simple_roots) ineqs.push_back(neg(a));
  return Cone::from_inequalities(d.ambient, ineqs);
}

QMat std_so_odd_weights(int n) {
  if (n < 1) throw std::invalid_argument("rank must be positive");
  QMat w;
  for (int i = 0; i < n; ++i) w.push_back(neg(unit_vec(n, i)));
  w.push_back(zero_vec(n));
  for (int i = n - 1; i >= 0; --i) w.push_back(unit_vec(n, i));
  return w;
}

}  // namespace sz

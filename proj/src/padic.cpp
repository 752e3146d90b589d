#include "sz/padic.hpp"

#include <algorithm>
#include <stdexcept>

namespace sz {

Q reduce_mod_pk(const Q& c, long p, long k) {
  if (sgn(c) == 0) return 0;
  long v = valuation(c, p);
  if (v >= k) return 0;
  long s = std::max({0L, -k, -v});
  Q big = c * Q(ipow(p, s));  // now in Z_(p)
  Z mod = ipow(p, k + s);
  Z inv;
  mpz_invert(inv.get_mpz_t(), big.get_den().get_mpz_t(), mod.get_mpz_t());
  Z r = big.get_num() * inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
  Q out(r, ipow(p, s));
  out.canonicalize();
  return out;
}

Ball make_ball(long p, const QVec& center, long level) {
  Ball b{center, level};
  for (auto& x : b.center) x = reduce_mod_pk(x, p, level);
  return b;
}

bool ball_contains(long p, const Ball& b, const QVec& x) {
  for (size_t i = 0; i < x.size(); ++i)
    if (reduce_mod_pk(x[i], p, b.level) != b.center[i]) return false;
  return true;
}

namespace {

// All canonical centers at `to` inside the canonical ball (c, from).
template <class F>
void for_each_child(long p, const QVec& c, long from, long to, F&& fn) {
  int n = static_cast<int>(c.size());
  long per = ipow(p, to - from).get_si();
  Q step(ipow(p, std::max(0L, from)), ipow(p, std::max(0L, -from)));
  std::vector<long> j(n, 0);
  QVec x = c;
  while (true) {
    fn(x);
    int i = 0;
    while (i < n && j[i] == per - 1) {
      j[i] = 0;
      x[i] = c[i];
      ++i;
    }
    if (i == n) return;
    ++j[i];
    x[i] += step;
  }
}

Q p_power(long p, long e) { return e >= 0 ? Q(ipow(p, e)) : Q(Z(1), ipow(p, -e)); }

}  // namespace

SchwartzBruhat::SchwartzBruhat(long p, int dim, Q weight) : p_(p), dim_(dim), weight_(std::move(weight)) {
  if (weight_ != 0 && weight_ != Q(1, 2) && weight_ != 1)
    throw std::invalid_argument("density weight must be 0, 1/2 or 1");
}

SchwartzBruhat SchwartzBruhat::ball(long p, const QVec& center, long level, const Cyclotomic& coeff,
                                    Q weight) {
  return from_terms(p, static_cast<int>(center.size()), std::move(weight), {{Ball{center, level}, coeff}});
}

SchwartzBruhat SchwartzBruhat::basic(long p, int dim, Q weight) {
  return ball(p, zero_vec(dim), 0, 1, std::move(weight));
}

SchwartzBruhat SchwartzBruhat::from_terms(long p, int dim, Q weight,
                                          const std::vector<std::pair<Ball, Cyclotomic>>& terms) {
  SchwartzBruhat f(p, dim, std::move(weight));
  long level = 0;
  bool any = false;
  for (auto& [b, c] : terms) {
    if (static_cast<int>(b.center.size()) != dim) throw std::invalid_argument("ball dimension mismatch");
    level = any ? std::max(level, b.level) : b.level;
    any = true;
  }
  std::map<QVec, Cyclotomic> acc;
  for (auto& [b, c] : terms) {
    if (c.is_zero()) continue;
    Ball cb = make_ball(p, b.center, b.level);
    for_each_child(p, cb.center, cb.level, level, [&](const QVec& x) { acc[x] += c; });
  }
  f.finish(level, std::move(acc));
  return f;
}

SchwartzBruhat canonicalize(long p, int dim, Q weight,
                            const std::vector<std::pair<Ball, Cyclotomic>>& terms) {
  return SchwartzBruhat::from_terms(p, dim, std::move(weight), terms);
}

void SchwartzBruhat::finish(long level, std::map<QVec, Cyclotomic> terms) {
  for (auto it = terms.begin(); it != terms.end();)
    it = it->second.is_zero() ? terms.erase(it) : std::next(it);
  long children = ipow(p_, dim_).get_si();
  while (!terms.empty()) {
    std::map<QVec, std::pair<long, Cyclotomic>> parents;
    bool ok = true;
    for (auto& [c, v] : terms) {
      QVec pc = c;
      for (auto& x : pc) x = reduce_mod_pk(x, p_, level - 1);
      auto [it, fresh] = parents.try_emplace(pc, 0, v);
      if (!fresh && it->second.second != v) {
        ok = false;
        break;
      }
      ++it->second.first;
    }
    if (!ok) break;
    for (auto& [c, cv] : parents) ok = ok && cv.first == children;
    if (!ok) break;
    std::map<QVec, Cyclotomic> next;
    for (auto& [c, cv] : parents) next.emplace(c, cv.second);
    terms = std::move(next);
    --level;
  }
  level_ = terms.empty() ? 0 : level;
  terms_ = std::move(terms);
}

SchwartzBruhat SchwartzBruhat::with_weight(Q w) const {
  SchwartzBruhat f = *this;
  f.weight_ = std::move(w);
  SchwartzBruhat check(p_, dim_, f.weight_);  // validates
  return f;
}

Cyclotomic SchwartzBruhat::operator()(const QVec& x) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("point dimension mismatch");
  QVec c = x;
  for (auto& v : c) v = reduce_mod_pk(v, p_, level_);
  auto it = terms_.find(c);
  return it == terms_.end() ? Cyclotomic() : it->second;
}

std::map<QVec, Cyclotomic> SchwartzBruhat::refined(long level) const {
  if (level < level_) throw std::invalid_argument("refinement must be finer");
  std::map<QVec, Cyclotomic> out;
  for (auto& [c, v] : terms_) for_each_child(p_, c, level_, level, [&](const QVec& x) { out.emplace(x, v); });
  return out;
}

SchwartzBruhat SchwartzBruhat::operator-() const { return Cyclotomic(-1) * *this; }

SchwartzBruhat operator+(const SchwartzBruhat& a, const SchwartzBruhat& b) {
  if (a.p_ != b.p_ || a.dim_ != b.dim_ || a.weight_ != b.weight_)
    throw std::invalid_argument("incompatible Schwartz-Bruhat functions");
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  long level = std::max(a.level_, b.level_);
  auto acc = a.refined(level);
  for (auto& [c, v] : b.refined(level)) acc[c] += v;
  SchwartzBruhat f(a.p_, a.dim_, a.weight_);
  f.finish(level, std::move(acc));
  return f;
}

SchwartzBruhat operator-(const SchwartzBruhat& a, const SchwartzBruhat& b) { return a + (-b); }

SchwartzBruhat operator*(const Cyclotomic& c, const SchwartzBruhat& f) {
  SchwartzBruhat g(f.p_, f.dim_, f.weight_);
  std::map<QVec, Cyclotomic> t;
  for (auto& [x, v] : f.terms_) t.emplace(x, c * v);
  g.finish(f.level_, std::move(t));
  return g;
}

bool operator==(const SchwartzBruhat& a, const SchwartzBruhat& b) {
  return a.p_ == b.p_ && a.dim_ == b.dim_ && a.weight_ == b.weight_ && a.level_ == b.level_ &&
         a.terms_ == b.terms_;
}

SchwartzBruhat fourier(const SchwartzBruhat& f) {
  long p = f.p_;
  int n = f.dim_;
  Q w = f.weight_ == Q(1, 2) ? f.weight_ : Q(1 - f.weight_);
  SchwartzBruhat out(p, n, w);
  if (f.is_zero()) return out;

  // Grid: support p^{-d} Z_p^n at level L, N = p^{L+d} points per axis.
  long L = f.level_;
  long d = -L;
  for (auto& [c, v] : f.terms_)
    for (auto& x : c)
      if (sgn(x)) d = std::max(d, -valuation(x, p));
  long e = L + d;
  if (e > kMaxCycloLevel) throw std::overflow_error("Fourier transform needs too deep a cyclotomic field");
  long N = ipow(p, e).get_si();
  long total = 1;
  for (int i = 0; i < n; ++i) total *= N;
  std::vector<Cyclotomic> grid(total);
  Q pd = p_power(p, d);
  for (auto& [c, v] : f.terms_) {
    long idx = 0;
    for (int i = n - 1; i >= 0; --i) idx = idx * N + Q(c[i] * pd).get_num().get_si();
    grid[idx] = v;
  }

  std::vector<Cyclotomic> zp(N);
  for (long k = 0; k < N; ++k) zp[k] = Cyclotomic::zeta(p, static_cast<int>(e), k);
  Cyclotomic norm = Cyclotomic(p_power(p, -L));
  long stride = 1;
  std::vector<Cyclotomic> line(N), res(N);
  for (int axis = 0; axis < n; ++axis) {
    for (long base = 0; base < total; ++base) {
      if ((base / stride) % N != 0) continue;
      bool any = false;
      for (long j = 0; j < N; ++j) {
        line[j] = grid[base + j * stride];
        any = any || !line[j].is_zero();
      }
      if (!any) continue;
      for (long i = 0; i < N; ++i) {
        Cyclotomic acc;
        for (long j = 0; j < N; ++j)
          if (!line[j].is_zero()) acc += line[j] * zp[(i * j) % N];
        res[i] = acc * norm;
      }
      for (long i = 0; i < N; ++i) grid[base + i * stride] = res[i];
    }
    stride *= N;
  }

  // Output point i has coordinates i / p^L, at level d.
  Q pl = p_power(p, -L);
  std::map<QVec, Cyclotomic> terms;
  for (long idx = 0; idx < total; ++idx) {
    if (grid[idx].is_zero()) continue;
    QVec y(n);
    long r = idx;
    for (int i = 0; i < n; ++i) {
      y[i] = Q(r % N) * pl;
      r /= N;
    }
    terms.emplace(std::move(y), grid[idx]);
  }
  out.finish(d, std::move(terms));
  return out;
}

SchwartzBruhat reflect(const SchwartzBruhat& f) {
  std::vector<std::pair<Ball, Cyclotomic>> t;
  for (auto& [c, v] : f.terms()) t.push_back({Ball{neg(c), f.level()}, v});
  return SchwartzBruhat::from_terms(f.p(), f.dim(), f.weight(), t);
}

QMat SmithZp::d() const {
  int n = static_cast<int>(exponents.size());
  QMat m(n, QVec(n, Q(0)));
  for (int i = 0; i < n; ++i) m[i][i] = p_power(p, exponents[i]);
  return m;
}

SmithZp smith_zp(const QMat& g, long p) {
  int n = static_cast<int>(g.size());
  for (auto& r : g)
    if (static_cast<int>(r.size()) != n) throw std::invalid_argument("smith_zp needs a square matrix");
  QMat a = g, ui = identity(n), vi = identity(n);
  SmithZp s;
  s.p = p;
  for (int r = 0; r < n; ++r) {
    int bi = -1, bj = -1;
    long best = 0;
    for (int i = r; i < n; ++i)
      for (int j = r; j < n; ++j)
        if (sgn(a[i][j])) {
          long v = valuation(a[i][j], p);
          if (bi < 0 || v < best) {
            bi = i, bj = j, best = v;
          }
        }
    if (bi < 0) throw std::domain_error("smith_zp: singular matrix");
    if (bi != r) {
      std::swap(a[bi], a[r]);
      for (int k = 0; k < n; ++k) std::swap(ui[k][bi], ui[k][r]);
    }
    if (bj != r) {
      for (int k = 0; k < n; ++k) std::swap(a[k][bj], a[k][r]);
      std::swap(vi[bj], vi[r]);
    }
    for (int i = r + 1; i < n; ++i) {
      if (!sgn(a[i][r])) continue;
      Q m = a[i][r] / a[r][r];
      for (int k = r; k < n; ++k) a[i][k] -= m * a[r][k];
      for (int k = 0; k < n; ++k) ui[k][r] += m * ui[k][i];
    }
    for (int j = r + 1; j < n; ++j) {
      if (!sgn(a[r][j])) continue;
      Q m = a[r][j] / a[r][r];
      for (int k = r; k < n; ++k) a[k][j] -= m * a[k][r];
      for (int k = 0; k < n; ++k) vi[r][k] += m * vi[j][k];
    }
    Q unit = a[r][r] / p_power(p, best);
    for (int k = 0; k < n; ++k) ui[k][r] *= unit;
    s.exponents.push_back(best);
  }
  s.u = ui;
  s.v = vi;
  return s;
}

SchwartzBruhat act_affine(const SchwartzBruhat& f, const QMat& g, const QVec& b) {
  int n = f.dim();
  long p = f.p();
  if (static_cast<int>(g.size()) != n) throw std::invalid_argument("matrix size mismatch");
  Q dt = det(g);
  if (sgn(dt) == 0) throw std::domain_error("act_affine: singular matrix");
  QVec shift = b.empty() ? zero_vec(n) : b;
  QMat gi = inverse(g);
  SmithZp s = smith_zp(gi, p);
  long amax = s.exponents.back();

  // {x : x g + b in c + p^L Z_p^n} = (c - b) g^-1 + p^L Z_p^n D V.
  std::vector<std::pair<Ball, Cyclotomic>> terms;
  long L = f.level();
  long M = L + amax;
  std::vector<long> counts(n);
  QMat gens(n);
  for (int i = 0; i < n; ++i) {
    counts[i] = ipow(p, amax - s.exponents[i]).get_si();
    gens[i] = scale(s.v[i], p_power(p, L + s.exponents[i]));
  }
  for (auto& [c, v] : f.terms()) {
    QVec base = vec_mat(sub(c, shift), gi);
    std::vector<long> t(n, 0);
    while (true) {
      QVec x = base;
      for (int i = 0; i < n; ++i)
        if (t[i]) x = add(x, scale(gens[i], t[i]));
      terms.push_back({make_ball(p, x, M), v});
      int i = 0;
      while (i < n && t[i] == counts[i] - 1) t[i++] = 0;
      if (i == n) break;
      ++t[i];
    }
  }
  long vdet = valuation(dt, p);
  Cyclotomic twist = 1;
  if (f.weight() == 1) twist = Cyclotomic(p_power(p, -vdet));
  else if (f.weight() == Q(1, 2)) twist = Cyclotomic::sqrt_p(p).pow(-vdet);
  return twist * SchwartzBruhat::from_terms(p, n, f.weight(), terms);
}

Cyclotomic integrate(const SchwartzBruhat& f) {
  if (f.weight() == Q(1, 2)) throw std::domain_error("no scalar integral of a half-density");
  Cyclotomic acc;
  for (auto& [c, v] : f.terms()) acc += v;
  return acc * Cyclotomic(p_power(f.p(), -f.dim() * f.level()));
}

Cyclotomic l2_inner(const SchwartzBruhat& f, const SchwartzBruhat& g) {
  if (f.weight() != Q(1, 2) || g.weight() != Q(1, 2))
    throw std::invalid_argument("l2_inner needs weight 1/2 on both sides");
  if (f.p() != g.p() || f.dim() != g.dim()) throw std::invalid_argument("incompatible functions");
  if (f.is_zero() || g.is_zero()) return Cyclotomic();
  long level = std::max(f.level(), g.level());
  auto a = f.refined(level), b = g.refined(level);
  Cyclotomic acc;
  for (auto& [c, v] : a) {
    auto it = b.find(c);
    if (it != b.end()) acc += v * it->second.conj();
  }
  return acc * Cyclotomic(p_power(f.p(), -f.dim() * level));
}

SchwartzBruhat random_schwartz_bruhat(long p, int dim, Q weight, std::mt19937_64& rng,
                                      const RandomSBOptions& opt) {
  auto uni = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  long spread = std::min(opt.max_spread, 2 * opt.max_abs_level);
  long lo = uni(-opt.max_abs_level, opt.max_abs_level - spread);
  long hi = lo + spread;
  int nterms = static_cast<int>(uni(1, opt.max_terms));
  std::vector<std::pair<Ball, Cyclotomic>> terms;
  for (int t = 0; t < nterms; ++t) {
    long level = uni(lo, hi);
    long range = ipow(p, level - lo).get_si();
    QVec c(dim);
    for (auto& x : c) x = Q(uni(0, range - 1)) * p_power(p, lo);
    long num = uni(-4, 4);
    if (num == 0) num = 1;
    Cyclotomic coeff(Q(num, uni(1, 3)));
    if (!opt.rational_coeffs && uni(0, 2) == 0) coeff *= Cyclotomic::zeta(p, 1, uni(1, p - 1));
    terms.push_back({Ball{c, level}, coeff});
  }
  return SchwartzBruhat::from_terms(p, dim, std::move(weight), terms);
}

}  // namespace sz

#include "sz/cyclotomic.hpp"

#include <stdexcept>

namespace sz {

namespace {

long pm(long p, int level) {
  long n = 1;
  for (int i = 0; i < level; ++i) n *= p;
  return n;
}

long legendre(long a, long p) {
  long r = 1, b = a % p;
  for (long e = (p - 1) / 2; e > 0; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return r == 1 ? 1 : -1;
}

using Dense = QVec;

int deg(const Dense& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (sgn(f[i])) return i;
  return -1;
}

}  // namespace

long phi_pm(long p, int level) { return level == 0 ? 1 : pm(p, level) - pm(p, level - 1); }

std::string format_sum(const std::vector<std::pair<Q, std::string>>& atoms) {
  std::string s;
  bool first = true;
  for (auto& [c, m] : atoms) {
    if (!sgn(c)) continue;
    Q a = abs(c);
    std::string body;
    if (m.empty()) body = sz::to_string(a);
    else if (a == 1) body = m;
    else body = sz::to_string(a) + "*" + m;
    if (first) s += (sgn(c) < 0 ? "-" : "") + body;
    else s += (sgn(c) < 0 ? " - " : " + ") + body;
    first = false;
  }
  return first ? "0" : s;
}

Cyclotomic::Cyclotomic(const Q& r) {
  if (sgn(r)) {
    a_[0] = r;
    a_[0].canonicalize();
  }
}

void Cyclotomic::add_reduced(Sparse& s, long p, int level, long e, const Q& c) {
  if (!sgn(c)) return;
  if (level == 0) {
    Q& slot = s[0];
    slot += c;
    if (!sgn(slot)) s.erase(0);
    return;
  }
  long n = pm(p, level), step = n / p, ph = n - step;
  e %= n;
  if (e < 0) e += n;
  auto bump = [&](long k, const Q& v) {
    auto [it, fresh] = s.emplace(k, v);
    if (!fresh) {
      it->second += v;
      if (!sgn(it->second)) s.erase(it);
    }
  };
  if (e < ph) {
    bump(e, c);
  } else {
    Q m = -c;
    for (long j = 1; j < p; ++j) bump(e - j * step, m);
  }
}

Cyclotomic Cyclotomic::zeta(long p, int level, long k) {
  if (level > kMaxCycloLevel) throw std::overflow_error("cyclotomic level exceeds bound");
  Cyclotomic x;
  x.p_ = p;
  x.level_ = level;
  add_reduced(x.a_, p, level, k, Q(1));
  x.normalize();
  return x;
}

Cyclotomic Cyclotomic::sqrt_p(long p) {
  Cyclotomic x;
  x.p_ = p;
  if (p == 2) {
    x.level_ = 3;
    add_reduced(x.a_, 2, 3, 1, Q(1));
    add_reduced(x.a_, 2, 3, 7, Q(1));
  } else if (p % 4 == 1) {
    x.level_ = 1;
    for (long j = 1; j < p; ++j) add_reduced(x.a_, p, 1, j, Q(legendre(j, p)));
  } else {
    x.b_[0] = 1;
  }
  x.normalize();
  return x;
}

Cyclotomic Cyclotomic::from_dense(long p, int level, const QVec& a, const QVec& b) {
  if (level > kMaxCycloLevel) throw std::overflow_error("cyclotomic level exceeds bound");
  Cyclotomic x;
  x.p_ = p;
  x.level_ = level;
  auto canon = [](Q c) {
    c.canonicalize();
    return c;
  };
  for (size_t i = 0; i < a.size(); ++i) add_reduced(x.a_, p, level, static_cast<long>(i), canon(a[i]));
  if (!b.empty() && p % 4 != 3) {
    Cyclotomic r = sqrt_p(p), bb;
    bb.p_ = p;
    bb.level_ = level;
    for (size_t i = 0; i < b.size(); ++i) add_reduced(bb.a_, p, level, static_cast<long>(i), canon(b[i]));
    bb.normalize();
    x.normalize();
    return x + bb * r;
  }
  for (size_t i = 0; i < b.size(); ++i) add_reduced(x.b_, p, level, static_cast<long>(i), canon(b[i]));
  x.normalize();
  return x;
}

Q Cyclotomic::rational_value() const {
  if (!is_rational()) throw std::domain_error("not a rational number");
  auto it = a_.find(0);
  return it == a_.end() ? Q(0) : it->second;
}

Cyclotomic::Sparse Cyclotomic::raised(const Sparse& s, int to) const {
  if (to == level_ || p_ == 0) return s;
  Sparse r;
  long f = pm(p_, to - level_);
  for (auto& [e, c] : s) add_reduced(r, p_, to, e * f, c);
  return r;
}

QVec Cyclotomic::dense_a(int level) const {
  QVec v(phi_pm(p_ ? p_ : 2, level), Q(0));
  for (auto& [e, c] : raised(a_, level)) v[e] = c;
  return v;
}

QVec Cyclotomic::dense_b(int level) const {
  QVec v(phi_pm(p_ ? p_ : 2, level), Q(0));
  for (auto& [e, c] : raised(b_, level)) v[e] = c;
  return v;
}

void Cyclotomic::normalize() {
  while (level_ > 0) {
    bool down = true;
    for (auto* s : {&a_, &b_})
      for (auto& [e, c] : *s) {
        if (level_ == 1 ? e != 0 : e % p_ != 0) down = false;
      }
    if (!down) break;
    if (level_ > 1)
      for (auto* s : {&a_, &b_}) {
        Sparse t;
        for (auto& [e, c] : *s) t[e / p_] = c;
        *s = std::move(t);
      }
    --level_;
  }
}

void unify(Cyclotomic& x, Cyclotomic& y) {
  if (x.p_ == 0) x.p_ = y.p_;
  if (y.p_ == 0) y.p_ = x.p_;
  if (x.p_ != y.p_) throw std::invalid_argument("cyclotomic prime mismatch");
  int l = std::max(x.level_, y.level_);
  x.a_ = x.raised(x.a_, l);
  x.b_ = x.raised(x.b_, l);
  x.level_ = l;
  y.a_ = y.raised(y.a_, l);
  y.b_ = y.raised(y.b_, l);
  y.level_ = l;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto* s : {&r.a_, &r.b_})
    for (auto& [e, c] : *s) c = -c;
  return r;
}

Cyclotomic operator+(const Cyclotomic& x0, const Cyclotomic& y0) {
  if (y0.is_zero()) return x0;
  if (x0.is_zero()) return y0;
  Cyclotomic x = x0, y = y0;
  unify(x, y);
  for (auto& [e, c] : y.a_) Cyclotomic::add_reduced(x.a_, x.p_, x.level_, e, c);
  for (auto& [e, c] : y.b_) Cyclotomic::add_reduced(x.b_, x.p_, x.level_, e, c);
  x.normalize();
  return x;
}

Cyclotomic operator-(const Cyclotomic& x, const Cyclotomic& y) { return x + (-y); }

Cyclotomic::Sparse Cyclotomic::mul_sparse(const Sparse& x, const Sparse& y, long p, int level) {
  Sparse r;
  for (auto& [e1, c1] : x)
    for (auto& [e2, c2] : y) add_reduced(r, p, level, e1 + e2, c1 * c2);
  return r;
}

Cyclotomic operator*(const Cyclotomic& x0, const Cyclotomic& y0) {
  if (x0.is_zero() || y0.is_zero()) return Cyclotomic();
  if (x0.is_rational() && y0.is_rational()) {
    Cyclotomic r(x0.rational_value() * y0.rational_value());
    r.p_ = x0.p_ ? x0.p_ : y0.p_;
    return r;
  }
  Cyclotomic x = x0, y = y0;
  unify(x, y);
  long p = x.p_;
  int l = x.level_;
  Cyclotomic r;
  r.p_ = p;
  r.level_ = l;
  r.a_ = Cyclotomic::mul_sparse(x.a_, y.a_, p, l);
  if (!x.b_.empty() || !y.b_.empty()) {
    auto bb = Cyclotomic::mul_sparse(x.b_, y.b_, p, l);
    for (auto& [e, c] : bb) Cyclotomic::add_reduced(r.a_, p, l, e, c * p);
    r.b_ = Cyclotomic::mul_sparse(x.a_, y.b_, p, l);
    for (auto& [e, c] : Cyclotomic::mul_sparse(x.b_, y.a_, p, l))
      Cyclotomic::add_reduced(r.b_, p, l, e, c);
  }
  r.normalize();
  return r;
}

Cyclotomic::Sparse Cyclotomic::inv_sparse(const Sparse& x, long p, int level) {
  if (x.empty()) throw std::domain_error("division by zero");
  Sparse r;
  if (x.size() == 1) {
    auto& [e, c] = *x.begin();
    add_reduced(r, p, level, -e, 1 / c);
    return r;
  }
  long n = pm(p, level), step = n / p;
  Dense f(n - step + 1, Q(0));
  for (long j = 0; j < p; ++j) f[j * step] = 1;
  Dense g(n - step, Q(0));
  for (auto& [e, c] : x) g[e] = c;
  // Extended Euclid: s1 * g = r1 (mod f).
  Dense r0 = f, r1 = g, s0 = {Q(0)}, s1 = {Q(1)};
  while (deg(r1) > 0) {
    int d1 = deg(r1);
    Dense qt(std::max(deg(r0) - d1 + 1, 1), Q(0));
    Dense rem = r0;
    for (int d = deg(rem); d >= d1; d = deg(rem)) {
      Q c = rem[d] / r1[d1];
      qt[d - d1] = c;
      for (int i = 0; i <= d1; ++i)
        if (sgn(r1[i])) rem[i + d - d1] -= c * r1[i];
    }
    Dense ns(std::max(s0.size(), qt.size() + s1.size()), Q(0));
    for (size_t i = 0; i < s0.size(); ++i) ns[i] += s0[i];
    for (size_t i = 0; i < qt.size(); ++i) {
      if (!sgn(qt[i])) continue;
      for (size_t j = 0; j < s1.size(); ++j)
        if (sgn(s1[j])) ns[i + j] -= qt[i] * s1[j];
    }
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(ns);
  }
  if (deg(r1) < 0) throw std::domain_error("division by zero");
  Q c = 1 / r1[0];
  for (size_t i = 0; i < s1.size(); ++i) add_reduced(r, p, level, static_cast<long>(i), s1[i] * c);
  return r;
}

Cyclotomic Cyclotomic::inv() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (is_rational()) {
    Cyclotomic r(1 / rational_value());
    r.p_ = p_;
    return r;
  }
  if (b_.empty()) {
    Cyclotomic r;
    r.p_ = p_;
    r.level_ = level_;
    r.a_ = inv_sparse(a_, p_, level_);
    r.normalize();
    return r;
  }
  Cyclotomic a, b;
  a.p_ = b.p_ = p_;
  a.level_ = b.level_ = level_;
  a.a_ = a_;
  b.a_ = b_;
  Cyclotomic norm = a * a - b * b * Cyclotomic(Q(p_));
  Cyclotomic ni = norm.inv();
  Cyclotomic conj_sqrt = a - b * sqrt_p(p_);
  return conj_sqrt * ni;
}

Cyclotomic operator/(const Cyclotomic& x, const Cyclotomic& y) { return x * y.inv(); }

Cyclotomic Cyclotomic::conj() const {
  Cyclotomic r;
  r.p_ = p_;
  r.level_ = level_;
  for (auto& [e, c] : a_) add_reduced(r.a_, p_, level_, -e, c);
  for (auto& [e, c] : b_) add_reduced(r.b_, p_, level_, -e, c);
  r.normalize();
  return r;
}

Cyclotomic Cyclotomic::pow(long e) const {
  Cyclotomic base = e >= 0 ? *this : inv();
  Cyclotomic r(Q(1));
  for (long k = e >= 0 ? e : -e; k > 0; k >>= 1) {
    if (k & 1) r = r * base;
    if (k > 1) base = base * base;
  }
  return r;
}

bool operator==(const Cyclotomic& x, const Cyclotomic& y) {
  if (x.is_zero() || y.is_zero()) return x.is_zero() && y.is_zero();
  if (x.p_ && y.p_ && x.p_ != y.p_) return false;
  return x.level_ == y.level_ && x.a_ == y.a_ && x.b_ == y.b_;
}

std::vector<Cyclotomic::Term> Cyclotomic::terms(int at_level) const {
  std::vector<Term> out;
  for (auto& [e, c] : raised(a_, at_level)) out.push_back({c, e, false});
  for (auto& [e, c] : raised(b_, at_level)) out.push_back({c, e, true});
  return out;
}

std::string Cyclotomic::to_string(int at_level) const {
  std::vector<std::pair<Q, std::string>> atoms;
  for (auto& t : terms(at_level)) {
    std::string m;
    if (t.z_exp == 1) m = "z";
    else if (t.z_exp > 1) m = "z^" + std::to_string(t.z_exp);
    if (t.sqrt) m += m.empty() ? "sqrtq" : "*sqrtq";
    atoms.emplace_back(t.coeff, m);
  }
  return format_sum(atoms);
}

}  // namespace sz

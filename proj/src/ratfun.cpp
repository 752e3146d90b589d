#include "sz/ratfun.hpp"

#include <algorithm>
#include <stdexcept>

namespace sz {

// ---- PCoef ----

PCoef::PCoef(const Cyclotomic& c, int nparams) : n_(nparams) {
  if (!c.is_zero()) m_[Mono(nparams, 0)] = c;
}

PCoef PCoef::param(int i, int nparams, int exponent) {
  PCoef r;
  r.n_ = nparams;
  Mono m(nparams, 0);
  m[i] = exponent;
  r.m_[m] = Cyclotomic(Q(1));
  return r;
}

void PCoef::add(const Mono& k, const Cyclotomic& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = m_.emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) m_.erase(it);
  }
}

bool PCoef::is_constant() const {
  if (m_.empty()) return true;
  if (m_.size() > 1) return false;
  for (int e : m_.begin()->first)
    if (e) return false;
  return true;
}

Cyclotomic PCoef::constant() const {
  if (!is_constant()) throw std::domain_error("parametric coefficient is not constant");
  return m_.empty() ? Cyclotomic() : m_.begin()->second;
}

PCoef PCoef::operator-() const {
  PCoef r = *this;
  for (auto& [k, c] : r.m_) c = -c;
  return r;
}

PCoef operator+(const PCoef& a, const PCoef& b) {
  PCoef r = a;
  r.n_ = std::max(a.n_, b.n_);
  for (auto& [k, c] : b.m_) r.add(k, c);
  return r;
}

PCoef operator-(const PCoef& a, const PCoef& b) { return a + (-b); }

PCoef operator*(const PCoef& a, const PCoef& b) {
  PCoef r;
  r.n_ = std::max(a.n_, b.n_);
  for (auto& [k1, c1] : a.m_)
    for (auto& [k2, c2] : b.m_) {
      PCoef::Mono k(r.n_, 0);
      for (int i = 0; i < r.n_; ++i) k[i] = k1[i] + k2[i];
      r.add(k, c1 * c2);
    }
  return r;
}

Cyclotomic PCoef::substitute(const std::vector<Cyclotomic>& values) const {
  Cyclotomic s;
  for (auto& [k, c] : m_) {
    Cyclotomic t = c;
    for (int i = 0; i < n_; ++i)
      if (k[i]) t *= values.at(i).pow(k[i]);
    s += t;
  }
  return s;
}

int PCoef::max_level() const {
  int l = 0;
  for (auto& [k, c] : m_) l = std::max(l, c.level());
  return l;
}

// ---- polynomial helpers ----

namespace {

void trim(Poly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

Poly padd(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] = r[i] + a[i];
    if (i < b.size()) r[i] = r[i] + b[i];
  }
  trim(r);
  return r;
}

Poly pneg(const Poly& a) {
  Poly r = a;
  for (auto& c : r) c = -c;
  return r;
}

Poly pmul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) r[i + j] = r[i + j] + a[i] * b[j];
  }
  trim(r);
  return r;
}

Poly pscale(const Poly& a, const PCoef& c) {
  Poly r = a;
  for (auto& x : r) x = x * c;
  trim(r);
  return r;
}

bool has_params(const Poly& f) {
  for (auto& c : f)
    if (!c.is_constant()) return true;
  return false;
}

// Division with remainder for parameter-free polynomials.
void pdivmod(const Poly& a, const Poly& b, Poly& quo, Poly& rem) {
  int n = b.front().nparams();
  rem = a;
  quo.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, PCoef(Cyclotomic(), n));
  Cyclotomic lead_inv = b.back().constant().inv();
  while (rem.size() >= b.size() && !rem.empty()) {
    size_t d = rem.size() - b.size();
    Cyclotomic c = rem.back().constant() * lead_inv;
    quo[d] = PCoef(c, n);
    PCoef pc(c, n);
    for (size_t i = 0; i < b.size(); ++i) rem[i + d] = rem[i + d] - b[i] * pc;
    rem.pop_back();
    trim(rem);
  }
  trim(quo);
}

Poly pgcd(Poly a, Poly b) {
  while (!b.empty()) {
    Poly q, r;
    pdivmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  Cyclotomic inv = a.back().constant().inv();
  return pscale(a, PCoef(inv, a.back().nparams()));
}

std::string mono_string(const PCoef::Mono& m, const std::vector<std::string>& names) {
  std::string s;
  for (size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (m[i] != 1) s += "^" + std::to_string(m[i]);
  }
  return s;
}

bool graded_lex_less(const PCoef::Mono& a, const PCoef::Mono& b) {
  int da = 0, db = 0;
  for (int e : a) da += e;
  for (int e : b) db += e;
  if (da != db) return da < db;
  return a > b;  // x1 before x2 within a degree
}

}  // namespace

// ---- UniRatFun ----

UniRatFun::UniRatFun(long p, const Cyclotomic& c, std::vector<std::string> params)
    : p_(p), params_(std::move(params)) {
  int n = static_cast<int>(params_.size());
  num_ = {PCoef(c, n)};
  den_ = {PCoef(Cyclotomic(Q(1)), n)};
  trim(num_);
}

UniRatFun UniRatFun::var(long p, std::vector<std::string> params) {
  UniRatFun r(p, Cyclotomic(Q(1)), std::move(params));
  int n = static_cast<int>(r.params_.size());
  r.num_ = {PCoef(Cyclotomic(), n), PCoef(Cyclotomic(Q(1)), n)};
  return r;
}

UniRatFun UniRatFun::param(long p, std::vector<std::string> params, int i) {
  UniRatFun r(p, Cyclotomic(Q(1)), std::move(params));
  r.num_ = {PCoef::param(i, static_cast<int>(r.params_.size()))};
  return r;
}

UniRatFun UniRatFun::from_polys(long p, Poly num, Poly den, std::vector<std::string> params) {
  UniRatFun r;
  r.p_ = p;
  r.params_ = std::move(params);
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  trim(r.num_);
  trim(r.den_);
  if (r.den_.empty()) throw std::domain_error("zero denominator");
  r.normalize();
  return r;
}

void UniRatFun::normalize() {
  int n = static_cast<int>(params_.size());
  for (auto* f : {&num_, &den_})
    for (auto& c : *f)
      if (c.nparams() != n) c = c + PCoef(Cyclotomic(), n);
  trim(num_);
  trim(den_);
  if (num_.empty()) {
    den_ = {PCoef(Cyclotomic(Q(1)), n)};
    return;
  }
  size_t shift = 0;
  while (num_[shift].is_zero() && den_[shift].is_zero()) ++shift;
  if (shift) {
    num_.erase(num_.begin(), num_.begin() + shift);
    den_.erase(den_.begin(), den_.begin() + shift);
  }
  if (!has_params(num_) && !has_params(den_)) {
    Poly g = pgcd(num_, den_);
    if (g.size() > 1) {
      Poly q, r;
      pdivmod(num_, g, q, r);
      num_ = q;
      pdivmod(den_, g, q, r);
      den_ = q;
    }
  }
  size_t low = 0;
  while (den_[low].is_zero()) ++low;
  if (den_[low].is_constant()) {
    PCoef inv(den_[low].constant().inv(), n);
    num_ = pscale(num_, inv);
    den_ = pscale(den_, inv);
  }
}

UniRatFun UniRatFun::operator-() const {
  UniRatFun r = *this;
  r.num_ = pneg(num_);
  return r;
}

namespace {
long common_p(const UniRatFun& a, const UniRatFun& b) {
  if (a.p() && b.p() && a.p() != b.p()) throw std::invalid_argument("rational functions over different q");
  if (a.params().size() != b.params().size() && !a.params().empty() && !b.params().empty())
    throw std::invalid_argument("parameter mismatch");
  return a.p() ? a.p() : b.p();
}
const std::vector<std::string>& common_params(const UniRatFun& a, const UniRatFun& b) {
  return a.params().size() >= b.params().size() ? a.params() : b.params();
}
}  // namespace

UniRatFun operator+(const UniRatFun& a, const UniRatFun& b) {
  long p = common_p(a, b);
  if (a.den_.size() == b.den_.size() && a.den_ == b.den_)
    return UniRatFun::from_polys(p, padd(a.num_, b.num_), a.den_, common_params(a, b));
  return UniRatFun::from_polys(p, padd(pmul(a.num_, b.den_), pmul(b.num_, a.den_)),
                               pmul(a.den_, b.den_), common_params(a, b));
}

UniRatFun operator-(const UniRatFun& a, const UniRatFun& b) { return a + (-b); }

UniRatFun operator*(const UniRatFun& a, const UniRatFun& b) {
  long p = common_p(a, b);
  return UniRatFun::from_polys(p, pmul(a.num_, b.num_), pmul(a.den_, b.den_), common_params(a, b));
}

UniRatFun operator/(const UniRatFun& a, const UniRatFun& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero function");
  long p = common_p(a, b);
  return UniRatFun::from_polys(p, pmul(a.num_, b.den_), pmul(a.den_, b.num_), common_params(a, b));
}

UniRatFun UniRatFun::pow(int e) const {
  UniRatFun base = e >= 0 ? *this : UniRatFun(p_, Cyclotomic(Q(1)), params_) / *this;
  UniRatFun r(p_, Cyclotomic(Q(1)), params_);
  for (int k = e >= 0 ? e : -e; k > 0; --k) r = r * base;
  return r;
}

bool UniRatFun::equals(const UniRatFun& o) const {
  Poly l = pmul(num_, o.den_), r = pmul(o.num_, den_);
  return padd(l, pneg(r)).empty();
}

UniRatFun UniRatFun::scale_var(const Cyclotomic& c) const {
  int n = static_cast<int>(params_.size());
  Poly a = num_, b = den_;
  Cyclotomic ck(Q(1));
  for (size_t k = 0; k < std::max(a.size(), b.size()); ++k) {
    PCoef f(ck, n);
    if (k < a.size()) a[k] = a[k] * f;
    if (k < b.size()) b[k] = b[k] * f;
    ck = ck * c;
  }
  return from_polys(p_, a, b, params_);
}

UniRatFun UniRatFun::invert_var(const Cyclotomic& c) const {
  int n = static_cast<int>(params_.size());
  size_t D = std::max(num_.size(), den_.size()) - 1;
  Poly a(D + 1, PCoef(Cyclotomic(), n)), b(D + 1, PCoef(Cyclotomic(), n));
  Cyclotomic ck(Q(1));
  for (size_t k = 0; k <= D; ++k) {
    PCoef f(ck, n);
    if (k < num_.size()) a[D - k] = num_[k] * f;
    if (k < den_.size()) b[D - k] = den_[k] * f;
    ck = ck * c;
  }
  return from_polys(p_, a, b, params_);
}

Cyclotomic UniRatFun::evaluate(const Cyclotomic& t) const {
  if (has_params(num_) || has_params(den_)) throw std::domain_error("evaluate needs parameter values");
  auto horner = [&](const Poly& f) {
    Cyclotomic s;
    for (size_t i = f.size(); i-- > 0;) s = s * t + f[i].constant();
    return s;
  };
  Cyclotomic d = horner(den_);
  if (d.is_zero()) throw std::domain_error("evaluation at a pole");
  return horner(num_) / d;
}

UniRatFun UniRatFun::substitute_params(const std::vector<Cyclotomic>& values) const {
  Poly a, b;
  for (auto& c : num_) a.push_back(PCoef(c.substitute(values), 0));
  for (auto& c : den_) b.push_back(PCoef(c.substitute(values), 0));
  return from_polys(p_, a, b, {});
}

std::vector<Cyclotomic> UniRatFun::series(int K) const {
  if (den_.empty() || den_[0].is_zero()) throw std::domain_error("pole at t = 0");
  Cyclotomic d0inv = den_[0].constant().inv();
  std::vector<Cyclotomic> s(K + 1);
  for (int k = 0; k <= K; ++k) {
    Cyclotomic v = k < static_cast<int>(num_.size()) ? num_[k].constant() : Cyclotomic();
    for (int j = 1; j <= k && j < static_cast<int>(den_.size()); ++j)
      v -= den_[j].constant() * s[k - j];
    s[k] = v * d0inv;
  }
  return s;
}

int UniRatFun::render_level() const {
  int l = 0;
  for (auto* f : {&num_, &den_})
    for (auto& c : *f) l = std::max(l, c.max_level());
  return l;
}

std::string UniRatFun::to_string() const {
  int level = render_level();
  std::vector<std::string> names = params_;
  auto render = [&](const Poly& f, bool& multi) {
    std::vector<std::pair<Q, std::string>> atoms;
    for (size_t k = 0; k < f.size(); ++k) {
      std::vector<PCoef::Mono> monos;
      for (auto& [m, c] : f[k].terms()) monos.push_back(m);
      std::sort(monos.begin(), monos.end(), graded_lex_less);
      for (auto& m : monos) {
        const Cyclotomic& c = f[k].terms().at(m);
        for (auto& t : c.terms(level)) {
          std::vector<std::string> parts;
          if (t.z_exp == 1) parts.push_back("z");
          else if (t.z_exp > 1) parts.push_back("z^" + std::to_string(t.z_exp));
          if (t.sqrt) parts.push_back("sqrtq");
          std::string ms = mono_string(m, names);
          if (!ms.empty()) parts.push_back(ms);
          if (k == 1) parts.push_back("t");
          else if (k > 1) parts.push_back("t^" + std::to_string(k));
          std::string joined;
          for (auto& s : parts) joined += (joined.empty() ? "" : "*") + s;
          atoms.emplace_back(t.coeff, joined);
        }
      }
    }
    multi = atoms.size() > 1;
    return format_sum(atoms);
  };
  bool mn = false, md = false;
  std::string n = render(num_, mn), d = render(den_, md);
  if (d == "1") return n;
  bool wrap = mn || n.find('/') != std::string::npos;
  return (wrap ? "(" + n + ")" : n) + "/" + (md ? "(" + d + ")" : d);
}

// ---- linear solve and Pade ----

CycloSolve cyclo_solve(std::vector<std::vector<Cyclotomic>> a, std::vector<Cyclotomic> b,
                       int ncols) {
  size_t m = a.size();
  for (size_t i = 0; i < m; ++i) a[i].push_back(b[i]);
  std::vector<int> pivots;
  size_t r = 0;
  for (int c = 0; c < ncols && r < m; ++c) {
    size_t piv = r;
    while (piv < m && a[piv][c].is_zero()) ++piv;
    if (piv == m) continue;
    std::swap(a[r], a[piv]);
    Cyclotomic inv = a[r][c].inv();
    for (int j = c; j <= ncols; ++j) a[r][j] = a[r][j] * inv;
    for (size_t i = 0; i < m; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      Cyclotomic f = a[i][c];
      for (int j = c; j <= ncols; ++j)
        if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  CycloSolve out;
  for (size_t i = r; i < m; ++i)
    if (!a[i][ncols].is_zero()) return out;
  out.consistent = true;
  out.x.assign(ncols, Cyclotomic());
  for (size_t i = 0; i < pivots.size(); ++i) out.x[pivots[i]] = a[i][ncols];
  return out;
}

UniRatFun pade_reconstruct(long p, const std::vector<Cyclotomic>& c, int d_num, int d_den,
                           int slack) {
  int K = static_cast<int>(c.size()) - 1;
  if (slack < 2) throw std::invalid_argument("pade slack must be at least 2");
  if (K < d_num + d_den + slack)
    throw std::invalid_argument("not enough coefficients for the requested degree bounds");
  auto coef = [&](int k) { return k < 0 ? Cyclotomic() : c[k]; };
  for (int e = 0; e <= d_den; ++e) {
    std::vector<std::vector<Cyclotomic>> rows;
    std::vector<Cyclotomic> rhs;
    for (int k = d_num + 1; k <= K; ++k) {
      std::vector<Cyclotomic> row(e);
      for (int j = 1; j <= e; ++j) row[j - 1] = coef(k - j);
      rows.push_back(row);
      rhs.push_back(-coef(k));
    }
    CycloSolve s = cyclo_solve(rows, rhs, e);
    if (!s.consistent) continue;
    Poly den(e + 1), num(d_num + 1);
    den[0] = PCoef(Cyclotomic(Q(1)), 0);
    for (int j = 1; j <= e; ++j) den[j] = PCoef(s.x[j - 1], 0);
    for (int k = 0; k <= d_num; ++k) {
      Cyclotomic v = coef(k);
      for (int j = 1; j <= e && j <= k; ++j) v += s.x[j - 1] * coef(k - j);
      num[k] = PCoef(v, 0);
    }
    return UniRatFun::from_polys(p, num, den);
  }
  throw std::runtime_error("no rational function of the given degree matches the series");
}

}  // namespace sz

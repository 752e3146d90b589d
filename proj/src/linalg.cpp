#include "sz/linalg.hpp"

#include <stdexcept>

namespace sz {

std::string to_string(const Q& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_string(const QVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

Q parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto ok_int = [](const std::string& t, bool allow_sign) {
    size_t i = 0;
    if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!ok_int(num, true) || !ok_int(den, false)) throw std::invalid_argument("bad rational: " + s);
  if (num[0] == '+') num = num.substr(1);
  Z n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  Q r(n, d);
  r.canonicalize();
  return r;
}

QVec zero_vec(int n) { return QVec(n, Q(0)); }

QVec unit_vec(int n, int i) {
  QVec v(n, Q(0));
  v[i] = 1;
  return v;
}

Q dot(const QVec& a, const QVec& b) {
  Q s = 0;
  for (size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) && sgn(b[i])) s += a[i] * b[i];
  return s;
}

QVec add(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVec sub(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVec scale(const QVec& a, const Q& c) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

QVec neg(const QVec& a) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

bool is_zero(const QVec& v) {
  for (auto& x : v)
    if (sgn(x)) return false;
  return true;
}

QVec primitive(const QVec& v) {
  Z l = 1;
  for (auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Z> ints(v.size());
  Z g = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    ints[i] = v[i].get_num() * (l / v[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
  }
  QVec r(v.size());
  if (g == 0) return zero_vec(static_cast<int>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) r[i] = Q(ints[i] / g);
  return r;
}

QMat identity(int n) {
  QMat m(n, QVec(n, Q(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

QMat transpose(const QMat& m, int ncols) {
  QMat t(ncols, QVec(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (int j = 0; j < ncols; ++j) t[j][i] = m[i][j];
  return t;
}

QMat mat_mul(const QMat& a, const QMat& b) {
  if (a.empty()) return {};
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  QMat r(n, QVec(m, Q(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (!sgn(a[i][l])) continue;
      for (size_t j = 0; j < m; ++j)
        if (sgn(b[l][j])) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

QVec vec_mat(const QVec& x, const QMat& m) {
  size_t cols = m.empty() ? 0 : m[0].size();
  QVec r(cols, Q(0));
  for (size_t i = 0; i < m.size(); ++i) {
    if (!sgn(x[i])) continue;
    for (size_t j = 0; j < cols; ++j)
      if (sgn(m[i][j])) r[j] += x[i] * m[i][j];
  }
  return r;
}

QVec mat_vec(const QMat& m, const QVec& x) {
  QVec r(m.size());
  for (size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], x);
  return r;
}

Rref rref(QMat m, int ncols) {
  Rref out;
  size_t r = 0;
  for (int c = 0; c < ncols && r < m.size(); ++c) {
    size_t piv = r;
    while (piv < m.size() && !sgn(m[piv][c])) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    Q inv = 1 / m[r][c];
    for (int j = c; j < ncols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == r || !sgn(m[i][c])) continue;
      Q f = m[i][c];
      for (int j = c; j < ncols; ++j)
        if (sgn(m[r][j])) m[i][j] -= f * m[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

int rank(const QMat& m, int ncols) { return static_cast<int>(rref(m, ncols).pivots.size()); }

QMat nullspace(const QMat& m, int ncols) {
  Rref r = rref(m, ncols);
  std::vector<bool> is_piv(ncols, false);
  for (int c : r.pivots) is_piv[c] = true;
  QMat basis;
  for (int f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    QVec v(ncols, Q(0));
    v[f] = 1;
    for (size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

QMat canonical_basis(const QMat& m, int ncols) {
  Rref r = rref(m, ncols);
  for (auto& row : r.rows) row = primitive(row);
  return r.rows;
}

QVec project_off(const QVec& v, const QMat& basis) {
  if (basis.empty()) return v;
  size_t k = basis.size();
  QMat gram(k, QVec(k));
  QVec rhs(k);
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) gram[i][j] = dot(basis[i], basis[j]);
    rhs[i] = dot(basis[i], v);
  }
  auto c = solve(gram, rhs, static_cast<int>(k));
  QVec r = v;
  for (size_t i = 0; i < k; ++i)
    if (sgn((*c)[i])) r = sub(r, scale(basis[i], (*c)[i]));
  return r;
}

Q det(QMat m) {
  size_t n = m.size();
  Q d = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && !sgn(m[piv][c])) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (!sgn(m[i][c])) continue;
      Q f = m[i][c] / m[c][c];
      for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return d;
}

QMat inverse(QMat m) {
  int n = static_cast<int>(m.size());
  for (int i = 0; i < n; ++i) {
    m[i].resize(2 * n, Q(0));
    m[i][n + i] = 1;
  }
  Rref r = rref(m, 2 * n);
  if (static_cast<int>(r.pivots.size()) < n || r.pivots[n - 1] != n - 1)
    throw std::domain_error("singular matrix");
  QMat inv(n, QVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = r.rows[i][n + j];
  return inv;
}

std::optional<QVec> solve(QMat a, QVec b, int ncols) {
  for (size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
  Rref r = rref(a, ncols + 1);
  QVec x(ncols, Q(0));
  for (size_t i = 0; i < r.pivots.size(); ++i) {
    if (r.pivots[i] == ncols) return std::nullopt;
    x[r.pivots[i]] = r.rows[i][ncols];
  }
  return x;
}

namespace {

// Integer row echelon form by Euclidean elimination. The same row operations
// are applied to `track` when given.
void integer_echelon(ZMat& m, int ncols, ZMat* track) {
  size_t r = 0;
  auto swap_rows = [&](size_t i, size_t j) {
    std::swap(m[i], m[j]);
    if (track) std::swap((*track)[i], (*track)[j]);
  };
  auto sub_rows = [&](size_t i, size_t j, const Z& q) {  // row_i -= q row_j
    for (int c = 0; c < ncols; ++c) m[i][c] -= q * m[j][c];
    if (track)
      for (size_t c = 0; c < (*track)[i].size(); ++c) (*track)[i][c] -= q * (*track)[j][c];
  };
  for (int c = 0; c < ncols && r < m.size(); ++c) {
    while (true) {
      size_t best = m.size();
      for (size_t i = r; i < m.size(); ++i)
        if (sgn(m[i][c]) && (best == m.size() || abs(m[i][c]) < abs(m[best][c]))) best = i;
      if (best == m.size()) break;
      swap_rows(r, best);
      bool done = true;
      for (size_t i = r + 1; i < m.size(); ++i) {
        if (!sgn(m[i][c])) continue;
        Z q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
        sub_rows(i, r, q);
        if (sgn(m[i][c])) done = false;
      }
      if (done) break;
    }
    if (r < m.size() && sgn(m[r][c])) ++r;
  }
}

}  // namespace

ZMat hermite_rows(ZMat m, int ncols) {
  integer_echelon(m, ncols, nullptr);
  ZMat out;
  for (auto& row : m) {
    bool nz = false;
    for (auto& x : row) nz = nz || sgn(x);
    if (nz) out.push_back(row);
  }
  for (size_t i = 0; i < out.size(); ++i) {
    int c = 0;
    while (!sgn(out[i][c])) ++c;
    if (sgn(out[i][c]) < 0)
      for (auto& x : out[i]) x = -x;
    for (size_t j = 0; j < i; ++j) {
      Z q;
      mpz_fdiv_q(q.get_mpz_t(), out[j][c].get_mpz_t(), out[i][c].get_mpz_t());
      if (sgn(q))
        for (int k = 0; k < ncols; ++k) out[j][k] -= q * out[i][k];
    }
  }
  return out;
}

ZMat integer_kernel(const ZMat& m, int ncols) {
  // Echelonize m^T while tracking the unimodular transform.
  ZMat t(ncols, ZVec(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (int j = 0; j < ncols; ++j) t[j][i] = m[i][j];
  ZMat u(ncols, ZVec(ncols, Z(0)));
  for (int i = 0; i < ncols; ++i) u[i][i] = 1;
  integer_echelon(t, static_cast<int>(m.size()), &u);
  ZMat ker;
  for (int i = 0; i < ncols; ++i) {
    bool zero = true;
    for (auto& x : t[i]) zero = zero && !sgn(x);
    if (zero) ker.push_back(u[i]);
  }
  return hermite_rows(ker, ncols);
}

ZVec to_integer(const QVec& v) {
  ZVec z(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].get_den() != 1) throw std::invalid_argument("non-integral vector " + to_string(v));
    z[i] = v[i].get_num();
  }
  return z;
}

QVec to_rational(const ZVec& v) {
  QVec q(v.size());
  for (size_t i = 0; i < v.size(); ++i) q[i] = Q(v[i]);
  return q;
}

long valuation(const Z& x, long p) {
  if (x == 0) throw std::domain_error("valuation of zero");
  Z t = abs(x);
  long v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++v;
  }
  return v;
}

long valuation(const Q& x, long p) {
  return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

Z ipow(long base, long e) {
  Z r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

Q qpow(const Q& base, long e) {
  Q r = 1;
  Q b = e >= 0 ? base : Q(1 / base);
  for (long i = 0; i < (e >= 0 ? e : -e); ++i) r *= b;
  return r;
}

}  // namespace sz

#pragma once
// Elements of Q(zeta_{p^M}) with q^{1/2} = sqrt(p) adjoined.
//
// For p = 2 and p = 1 mod 4 the square root already lies in a p-power
// cyclotomic field and is stored there. For p = 3 mod 4 it does not, so a
// second coordinate b carries the sqrt(p) part: x = a + b*sqrt(p).

#include <map>
#include <string>
#include <vector>

#include "sz/linalg.hpp"

namespace sz {

constexpr int kMaxCycloLevel = 6;

class Cyclotomic {
 public:
  Cyclotomic() = default;
  Cyclotomic(const Q& r);  // NOLINT: rationals embed everywhere
  Cyclotomic(long r) : Cyclotomic(Q(r)) {}

  // zeta_{p^level}^k
  static Cyclotomic zeta(long p, int level, long k);
  // The fixed square root of p (the q^{1/2} of the zeta module).
  static Cyclotomic sqrt_p(long p);
  // Dense coefficients in the basis 1, z, ..., z^{phi-1} (and sqrt(p)*z^i).
  static Cyclotomic from_dense(long p, int level, const QVec& a, const QVec& b = {});

  long p() const { return p_; }
  int level() const { return level_; }
  bool is_zero() const { return a_.empty() && b_.empty(); }
  bool is_rational() const { return b_.empty() && level_ == 0; }
  Q rational_value() const;  // throws unless is_rational()

  QVec dense_a(int level) const;
  QVec dense_b(int level) const;
  bool has_sqrt_part() const { return !b_.empty(); }

  Cyclotomic conj() const;
  Cyclotomic inv() const;
  Cyclotomic pow(long e) const;

  Cyclotomic operator-() const;
  friend Cyclotomic operator+(const Cyclotomic& x, const Cyclotomic& y);
  friend Cyclotomic operator-(const Cyclotomic& x, const Cyclotomic& y);
  friend Cyclotomic operator*(const Cyclotomic& x, const Cyclotomic& y);
  friend Cyclotomic operator/(const Cyclotomic& x, const Cyclotomic& y);
  Cyclotomic& operator+=(const Cyclotomic& y) { return *this = *this + y; }
  Cyclotomic& operator-=(const Cyclotomic& y) { return *this = *this - y; }
  Cyclotomic& operator*=(const Cyclotomic& y) { return *this = *this * y; }
  friend bool operator==(const Cyclotomic& x, const Cyclotomic& y);
  friend bool operator!=(const Cyclotomic& x, const Cyclotomic& y) { return !(x == y); }

  // Rendering at a given level >= level(): "1/3*z^2 - sqrtq".
  std::string to_string(int at_level) const;
  std::string to_string() const { return to_string(level_); }

  // Raw terms at a given level, used by the polynomial printer.
  struct Term {
    Q coeff;
    long z_exp;
    bool sqrt;
  };
  std::vector<Term> terms(int at_level) const;

 private:
  using Sparse = std::map<long, Q>;
  long p_ = 0;  // 0: plain rational, compatible with every p
  int level_ = 0;
  Sparse a_, b_;

  void normalize();
  Sparse raised(const Sparse& s, int to) const;
  static void add_reduced(Sparse& s, long p, int level, long e, const Q& c);
  static Sparse mul_sparse(const Sparse& x, const Sparse& y, long p, int level);
  static Sparse inv_sparse(const Sparse& x, long p, int level);
  friend void unify(Cyclotomic& x, Cyclotomic& y);
};

long phi_pm(long p, int level);

// Joins (coefficient, monomial) pairs as "c*m + c*m - ..."; empty -> "0".
std::string format_sum(const std::vector<std::pair<Q, std::string>>& atoms);

}  // namespace sz

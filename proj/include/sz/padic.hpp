#pragma once
// Schwartz-Bruhat functions on Q_p^n with exact cyclotomic values.
//
// psi is the standard unramified character psi(x) = exp(2 pi i {x}_p), the
// additive measure gives Z_p^n volume 1 (self-dual for psi).

#include <map>
#include <random>
#include <vector>

#include "sz/cyclotomic.hpp"

namespace sz {

// Canonical representative of c + p^k Z_p: the unique r in Z[1/p] with
// 0 <= r < p^k and r - c in p^k Z_p. c may have denominators prime to p.
Q reduce_mod_pk(const Q& c, long p, long k);

struct Ball {
  QVec center;  // canonical representatives
  long level = 0;
  friend bool operator==(const Ball& a, const Ball& b) {
    return a.level == b.level && a.center == b.center;
  }
  friend bool operator<(const Ball& a, const Ball& b) {
    return a.level != b.level ? a.level < b.level : a.center < b.center;
  }
};

Ball make_ball(long p, const QVec& center, long level);
bool ball_contains(long p, const Ball& b, const QVec& x);

class SchwartzBruhat {
 public:
  SchwartzBruhat() = default;
  SchwartzBruhat(long p, int dim, Q weight = 0);

  // Indicator of center + p^level Z_p^n times coeff; the result is canonical.
  static SchwartzBruhat ball(long p, const QVec& center, long level, const Cyclotomic& coeff = 1,
                             Q weight = 0);
  // 1_{Z_p^n}
  static SchwartzBruhat basic(long p, int dim, Q weight = 0);
  // From an arbitrary list of possibly overlapping terms.
  static SchwartzBruhat from_terms(long p, int dim, Q weight,
                                   const std::vector<std::pair<Ball, Cyclotomic>>& terms);

  long p() const { return p_; }
  int dim() const { return dim_; }
  const Q& weight() const { return weight_; }
  SchwartzBruhat with_weight(Q w) const;
  // Common level of all balls; the coarsest level at which f is constant.
  long level() const { return level_; }
  // Sorted by center; pairwise disjoint, no zero coefficients.
  const std::map<QVec, Cyclotomic>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Cyclotomic operator()(const QVec& x) const;
  // Same function with every ball split down to the given finer level.
  std::map<QVec, Cyclotomic> refined(long level) const;

  SchwartzBruhat operator-() const;
  friend SchwartzBruhat operator+(const SchwartzBruhat& a, const SchwartzBruhat& b);
  friend SchwartzBruhat operator-(const SchwartzBruhat& a, const SchwartzBruhat& b);
  friend SchwartzBruhat operator*(const Cyclotomic& c, const SchwartzBruhat& f);
  friend bool operator==(const SchwartzBruhat& a, const SchwartzBruhat& b);
  friend bool operator!=(const SchwartzBruhat& a, const SchwartzBruhat& b) { return !(a == b); }

 private:
  long p_ = 0;
  int dim_ = 0;
  Q weight_ = 0;
  long level_ = 0;
  std::map<QVec, Cyclotomic> terms_;

  // Merges terms already at `level`, drops zeros and coarsens as far as possible.
  void finish(long level, std::map<QVec, Cyclotomic> terms);
  friend SchwartzBruhat fourier(const SchwartzBruhat& f);
};

// Re-expands arbitrary terms into canonical form (same as from_terms).
SchwartzBruhat canonicalize(long p, int dim, Q weight,
                            const std::vector<std::pair<Ball, Cyclotomic>>& terms);

// F f(y) = integral of f(x) psi(<x, y>) dx. Weight 1/2 is kept, 0 and 1 swap.
SchwartzBruhat fourier(const SchwartzBruhat& f);

// f(-x)
SchwartzBruhat reflect(const SchwartzBruhat& f);

// x -> f(x g + b) |det g|^weight, x a row vector. Throws on singular g.
SchwartzBruhat act_affine(const SchwartzBruhat& f, const QMat& g, const QVec& b = {});

// g = U D V with U, V in GL(n, Z_(p)) (entries rationals with denominators
// prime to p, unit determinant) and D = diag(p^a_1, ..., p^a_n), a ascending.
struct SmithZp {
  long p = 0;
  QMat u, v;
  std::vector<long> exponents;
  QMat d() const;
};
SmithZp smith_zp(const QMat& g, long p);

// Sum of coeff * q^{-n level}. Throws std::domain_error at weight 1/2.
Cyclotomic integrate(const SchwartzBruhat& f);

// Sum of f conj(g) over the common refinement. Both must have weight 1/2.
Cyclotomic l2_inner(const SchwartzBruhat& f, const SchwartzBruhat& g);

struct RandomSBOptions {
  int max_terms = 6;
  long max_abs_level = 2;
  long max_spread = 2;  // finest level minus coarsest center valuation
  bool rational_coeffs = false;
};
SchwartzBruhat random_schwartz_bruhat(long p, int dim, Q weight, std::mt19937_64& rng,
                                      const RandomSBOptions& opt = {});

}  // namespace sz

#pragma once
// Univariate rational functions in t = q^{-s}. Coefficients are Laurent
// polynomials in formal parameters (Satake symbols) over Cyclotomic.

#include <map>
#include <string>
#include <vector>

#include "sz/cyclotomic.hpp"

namespace sz {

// Laurent polynomial in nparams formal parameters.
class PCoef {
 public:
  using Mono = std::vector<int>;
  PCoef() = default;
  PCoef(const Cyclotomic& c, int nparams);
  static PCoef param(int i, int nparams, int exponent = 1);

  int nparams() const { return n_; }
  bool is_zero() const { return m_.empty(); }
  bool is_constant() const;
  Cyclotomic constant() const;  // throws unless is_constant()
  const std::map<Mono, Cyclotomic>& terms() const { return m_; }

  PCoef operator-() const;
  friend PCoef operator+(const PCoef& a, const PCoef& b);
  friend PCoef operator-(const PCoef& a, const PCoef& b);
  friend PCoef operator*(const PCoef& a, const PCoef& b);
  friend bool operator==(const PCoef& a, const PCoef& b) { return a.m_ == b.m_; }

  Cyclotomic substitute(const std::vector<Cyclotomic>& values) const;
  int max_level() const;

 private:
  int n_ = 0;
  std::map<Mono, Cyclotomic> m_;
  void add(const Mono& k, const Cyclotomic& c);
};

using Poly = std::vector<PCoef>;

class UniRatFun {
 public:
  UniRatFun() = default;
  UniRatFun(long p, const Cyclotomic& c, std::vector<std::string> params = {});
  static UniRatFun var(long p, std::vector<std::string> params = {});
  static UniRatFun from_polys(long p, Poly num, Poly den, std::vector<std::string> params = {});
  static UniRatFun param(long p, std::vector<std::string> params, int i);

  long p() const { return p_; }
  const std::vector<std::string>& params() const { return params_; }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.empty(); }
  int num_degree() const { return static_cast<int>(num_.size()) - 1; }
  int den_degree() const { return static_cast<int>(den_.size()) - 1; }

  UniRatFun operator-() const;
  friend UniRatFun operator+(const UniRatFun& a, const UniRatFun& b);
  friend UniRatFun operator-(const UniRatFun& a, const UniRatFun& b);
  friend UniRatFun operator*(const UniRatFun& a, const UniRatFun& b);
  friend UniRatFun operator/(const UniRatFun& a, const UniRatFun& b);
  UniRatFun pow(int e) const;

  // Exact cross-multiplication test.
  bool equals(const UniRatFun& o) const;

  // t -> c*t
  UniRatFun scale_var(const Cyclotomic& c) const;
  // t -> c/t, re-polynomialized
  UniRatFun invert_var(const Cyclotomic& c) const;
  Cyclotomic evaluate(const Cyclotomic& t) const;
  UniRatFun substitute_params(const std::vector<Cyclotomic>& values) const;
  // Power series coefficients c_0..c_K; requires den(0) invertible constant.
  std::vector<Cyclotomic> series(int K) const;

  std::string to_string() const;
  // Coefficients at the common rendering level, for JSON output.
  int render_level() const;

 private:
  long p_ = 0;
  std::vector<std::string> params_;
  Poly num_, den_;
  void normalize();
};

// Reconstructs a rational function from c_0..c_K with deg num <= d_num and
// deg den <= d_den, requiring K >= d_num + d_den + slack. The unused
// equations certify the result; inconsistency throws std::runtime_error.
UniRatFun pade_reconstruct(long p, const std::vector<Cyclotomic>& c, int d_num, int d_den,
                           int slack = 2);

// Gaussian elimination over Cyclotomic; empty optional when inconsistent.
struct CycloSolve {
  bool consistent = false;
  std::vector<Cyclotomic> x;
};
CycloSolve cyclo_solve(std::vector<std::vector<Cyclotomic>> a, std::vector<Cyclotomic> b,
                       int ncols);

}  // namespace sz

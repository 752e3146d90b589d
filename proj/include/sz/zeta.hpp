#pragma once
// Local zeta integrals as exact rational functions of t = q^{-s}.
//
// Conventions: additive measure with vol(Z_p^n) = 1, multiplicative measure
// d*x = dx / ((1 - q^{-1}) |x|) on Q_p^x (vol Z_p^x = 1), and on GL(n)
// d*g = dg / (c_n |det g|^n) with c_n = prod_{i<=n} (1 - q^{-i}) so that
// vol GL(n, Z_p) = 1.

#include <random>
#include <string>
#include <vector>

#include "sz/padic.hpp"
#include "sz/ratfun.hpp"

namespace sz {

// Character of Z_p^x trivial on 1 + p^level Z_p, extended by chi(p) = 1.
// Only characters with values +-1 are representable in Q(zeta_{p^M}).
struct TameCharacter {
  long p = 0;
  int level = 0;       // 0 for the trivial character
  long generator = 1;  // generates (Z/p^level)^x
  Cyclotomic value = 1;

  static TameCharacter trivial(long p);
  // Legendre symbol for odd p; the character of conductor 4 for p = 2.
  static TameCharacter quadratic(long p);

  bool is_trivial() const { return level == 0; }
  long modulus() const;
  Cyclotomic operator()(const Q& unit) const;
  TameCharacter inverse() const;
  std::string name() const;
};

struct ZetaResult {
  UniRatFun value;
  std::string variable = "t = q^{-s}";
  std::string normalization;
};

// Z(s, chi, f) = integral of f(x) chi(x) |x|^s d*x. f has dim 1; its weight is ignored.
ZetaResult zeta_tate(const TameCharacter& chi, const SchwartzBruhat& f);

// Shell decomposition used by the Tate integral and its certificate:
// coefficient of t^k for k in [kmin, kmin + size), plus tail = value of f near 0
// (the shells k >= tail_start all carry that value times chi's mean).
struct TateShells {
  long kmin = 0;
  std::vector<Cyclotomic> coeffs;
  long tail_start = 0;
  Cyclotomic tail_value = 0;
};
TateShells tate_shells(const TameCharacter& chi, const SchwartzBruhat& f);

// Z(1-s, chi^{-1}, F f) as a function of t: t -> q^{-1}/t applied to Z(s).
UniRatFun dual_side(const UniRatFun& z_of_t);

// gamma = Z(1-s, chi^{-1}, F f) / Z(s, chi, f).
struct GammaResult {
  UniRatFun value;
  int samples_agreeing = 0;  // random samples with Z != 0 that reproduced value
};
// Default test function: 1_{Z_p} for trivial chi, 1_{1 + p^level Z_p} otherwise.
SchwartzBruhat default_tate_function(const TameCharacter& chi);
UniRatFun gamma_from(const TameCharacter& chi, const SchwartzBruhat& f);
// Throws std::runtime_error (with the offending function) if a random sample disagrees.
GammaResult gamma_tate(const TameCharacter& chi, int samples = 20, uint64_t seed = 1);

// Measures mu(v(det x) = k) for k < m on Mat_n(Z_p), plus mu(v >= m).
struct ShellMeasures {
  long p = 0;
  int n = 0;
  std::vector<Q> shells;
  Q tail;
};
// n = 1, 2 for any depth within budget; n = 3 by brute force only when p^{9m} <= 2^20.
ShellMeasures count_det_valuations(int n, long p, int m);
// Weighted by f (dim n^2, weight 0, support in Mat_n(Z_p), level <= m): entry k is
// the integral of f over {v(det) = k}, k < m. n <= 2.
std::vector<Cyclotomic> count_det_valuations_weighted(int n, long p, int m,
                                                      const SchwartzBruhat& f);

// Z(s, f) = integral of f(x) |det x|^s dx over Mat_n(Q_p). f defaults to 1_{Mat_n(Z_p)}.
// General f needs n <= 2; n = 3 only for the default f.
ZetaResult zeta_igusa_det(int n, long p);
ZetaResult zeta_igusa_det(int n, long p, const SchwartzBruhat& f);

// Exact evaluation certificate: |Z(t) - sum_{k<m} c_k t^k| <= tail_mass * t^m at
// t = q^{-3}, q^{-4}, q^{-5}, plus exact agreement of the power series up to m.
struct Certificate {
  bool ok = false;
  int depth = 0;
  std::string detail;
};
Certificate certify_igusa_basic(int n, long p, const UniRatFun& z, int depth);
Certificate certify_tate(const TameCharacter& chi, const SchwartzBruhat& f, const UniRatFun& z,
                         int depth = 12);

// integral over GL(n) of |det g|^{lambda + n/2} 1_{Mat_n(Z_p)}(g) d*g, t = q^{-lambda}.
ZetaResult zeta_gj_trivial(int n, long p);
// Trivial representation, general xi: integral of xi(g) |det g|^{mu - 1/2 + n/2} d*g,
// t = q^{-mu}. Equals zeta_gj_trivial at lambda = mu - 1/2 for the basic xi.
ZetaResult zeta_gj(int n, long p, const SchwartzBruhat& xi);

// Satake exponents (n-1)/2, ..., -(n-1)/2: zeta_gj_trivial = unit * prod 1/(1 - q^{e - 1/2} t).
std::vector<Q> gj_trivial_exponents(int n);

// GL(2) spherical matrix coefficient with Satake parameters (a1, a2) carried as
// formal parameters "a1", "a2". lambda normalization as zeta_gj_trivial.
ZetaResult zeta_gj_gl2_spherical(long p);
// Right K-cosets in K diag(p^a, p^b) K (a >= b), i.e. its d*g volume. Closed form.
Q gl2_cell_volume(long p, long a, long b);
// Same by enumeration of Mat_2(Z/p^{a+b+1}); small a + b only.
Q gl2_cell_volume_enumerated(long p, long a, long b);
// Macdonald's spherical function at diag(p^{b+k}, p^b) times the cell volume, as a
// polynomial in the parameters (inverse = true uses a1^{-1}, a2^{-1}).
PCoef gl2_cell_term(long p, long b, long k, bool inverse);
// Truncated Cartan sum of zeta_gj_gl2_spherical through total degree `degree` in t.
std::vector<PCoef> gl2_cartan_series(long p, int degree);
// GJ integral (mu normalization, t = q^{-mu}) of a bi-GL(2, Z_p)-invariant xi
// (dim 4, coordinates x11 x12 x21 x22). Throws std::invalid_argument if xi is
// visibly not bi-invariant on diagonal representatives.
ZetaResult zeta_gj_gl2_bik(long p, const SchwartzBruhat& xi, bool contragredient = false);

enum class GjRep { Trivial, Gl2Spherical };
struct LfeReport {
  bool ok = false;
  UniRatFun gamma;
  std::vector<UniRatFun> per_sample;
  std::string detail;
};
// gamma = Z(1 - mu, F xi, beta-check) / Z(mu, xi, beta) for every sample.
LfeReport check_lfe_gj(int n, long p, GjRep rep, const std::vector<SchwartzBruhat>& samples);
// The standard samples: basic, 1_{p Mat}, 1_{I + p Mat} (trivial) or basic,
// 1_{p Mat}, 1_{p^{-1} Mat}, 1_{GL(2,Z_p)} (spherical).
std::vector<SchwartzBruhat> standard_gj_samples(int n, long p, GjRep rep);

}  // namespace sz

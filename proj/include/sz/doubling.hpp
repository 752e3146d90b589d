#pragma once
// Symplectic doubling: lagrangians in V + (-V), the kappa invariant, the
// Pluecker embedding and f+-, and the colored cone of the doubling monoid.
//
// V has basis e_1..e_m, f_m..f_1 (coordinates 0..d-1, d = 2m) with
// <e_i|f_j> = delta_ij; vectors are rows and <x|y> = x J y^T. V^box = V + V
// has Gram diag(J, -J); V^+ = V + 0 and V^- = 0 + V.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "sz/linalg.hpp"
#include "sz/lunavust.hpp"

namespace sz {

struct SymplecticSpace {
  int m = 0;
  QMat gram;      // d x d
  QMat gram_box;  // 2d x 2d
  int d() const { return 2 * m; }
  static SymplecticSpace standard(int dim_v);  // dim_v even, >= 2
};

enum class Side { Plus, Minus };

// d x 2d row basis of a subspace of V^box.
struct Lagrangian {
  QMat basis;
};

// Throws std::invalid_argument unless rows are independent, there are d of
// them and the doubled form vanishes on them.
void check_lagrangian(const SymplecticSpace& sp, const QMat& basis);
bool is_lagrangian(const SymplecticSpace& sp, const QMat& basis);

// dim(span(basis) cap V^side) for any subspace; no lagrangian check.
int intersection_dim(const SymplecticSpace& sp, const QMat& basis, Side side);
// kappa of a lagrangian; computes both sides and throws std::logic_error if they differ.
int kappa(const SymplecticSpace& sp, const Lagrangian& l, Side side = Side::Plus);

QMat side_basis(const SymplecticSpace& sp, Side side);
Lagrangian diagonal_lagrangian(const SymplecticSpace& sp);
// (F e_i, 0) + (0, F f_i) for i <= j, plus the diagonal of the rest: kappa = j.
Lagrangian kappa_lagrangian(const SymplecticSpace& sp, int j);

// Coordinates on wedge^k Q^N indexed by sorted k-subsets; zeros omitted.
struct WedgeVector {
  int ambient = 0;
  int k = 0;
  std::map<std::vector<int>, Q> coords;
  Q at(const std::vector<int>& idx) const;
  bool is_zero() const { return coords.empty(); }
};

// scale * (wedge of the rows). Throws std::invalid_argument on dependent rows.
WedgeVector plucker(const QMat& basis, const Q& scale = 1);
bool proportional(const WedgeVector& a, const WedgeVector& b);
// w . wedge(g), rows acted on the right.
WedgeVector exterior_action(const WedgeVector& w, const QMat& g);
WedgeVector scaled(const WedgeVector& w, const Q& c);
// Rank of the contraction map Q^N -> wedge^{k+1}, x -> w ^ x; w is decomposable
// exactly when this rank is N - k.
int contraction_rank(const WedgeVector& w);

// The coordinate of w ^ v^side in wedge^max V^box (w of degree d).
Q f_plus(const SymplecticSpace& sp, const WedgeVector& w, Side side = Side::Plus);

// x -> x + c <x|v> v on V with Gram `gram`.
QMat transvection(const QMat& gram, const QVec& v, const Q& c);
// Product of `words` random transvections with small integral v.
QMat random_symplectic(const QMat& gram, std::mt19937_64& rng, int words = 6);
QMat block_diag(const QMat& a, const QMat& b);

struct LaurentPoly {
  long low = 0;  // exponent of coeffs[0]
  std::vector<Q> coeffs;
  long order() const;  // lowest exponent with nonzero coefficient; throws on zero
  long degree() const;
  std::string to_string() const;
};

// c(t) = t ((v,tv) ^ (w,t^{-1}w) ^ b) with V = <e_1, f_1> + rest.
struct BoundaryCurve {
  LaurentPoly fplus;      // f+(c(t))
  Q fplus_at_one;         // nonzero: c(1) is in the open orbit
  WedgeVector limit;      // c(0)
  Lagrangian limit_lagrangian;
  int limit_kappa = 0;
  bool limit_matches = false;  // c(0) is the Pluecker image of limit_lagrangian
};
BoundaryCurve boundary_curve(int dim_v);

// Colored cone over Z + X_*(A) for G_m x Sp(2n); colors D1..Dn with
// rho(D_i) = (0, alpha_i-check), plus the ray (1, -eps_1).
ColoredCone doubling_cone(int n);
EigenLattice doubling_eigen_lattice(int n);

struct LMonoidReport {
  bool equal = false;
  Cone weyl_hull;   // A: Weyl translates of C cap V
  Cone orbit_hull;  // B: Weyl orbit of (1, -eps_1)
  QMat orbit;
  std::string detail;
};
LMonoidReport lmonoid_verify(int n);

// Siegel parabolic of Sp(V^box), dim V = 2n: Q = X_*(M_ab) (x) Q = Q, V = Q,
// one color (the removed simple coroot) with rho = 1. Only family C.
SphericalDatum xp_data(Family family, int n);
// (cone(rho(D^B)), D^B): the colored cone of the affine closure.
ColoredCone xp_affine_closure(Family family, int n);

}  // namespace sz

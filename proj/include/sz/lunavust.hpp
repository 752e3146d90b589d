#pragma once
// Luna-Vust combinatorics of simple spherical embeddings: colored cones over
// a valuation cone V inside Q = X_*(A_X) (x) Q.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sz/convex.hpp"
#include "sz/rootdata.hpp"

namespace sz {

struct Color {
  std::string name;
  QVec rho;
};

struct SphericalDatum {
  int q_dim = 0;
  Cone valuation_cone;
  std::vector<Color> colors;
  // Basis of Lambda(X) as functionals on Q (rows); the standard basis when empty.
  QMat lattice_basis;
  // When set, the group acts on the trailing root.ambient coordinates of Q.
  std::optional<RootDatum> root;

  const Color& color(const std::string& name) const;  // throws std::out_of_range
  QMat lattice() const;                               // lattice_basis or identity
};

struct ColoredCone {
  SphericalDatum datum;
  Cone cone;
  std::set<std::string> colors;
};

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct ValidationReport {
  bool valid = false;
  std::vector<Check> checks;
  std::optional<QVec> witness;  // a point of relint(C) in V when it exists
};

ValidationReport validate_colored_cone(const ColoredCone& cc);

struct ColoredFace {
  Cone cone;
  std::set<std::string> colors;
  // Faces are listed from C down to its minimal face; a larger face
  // corresponds to a smaller orbit, and orbit_rank is the face dimension.
  int orbit_rank = 0;
};

// Throws std::invalid_argument for an invalid colored cone.
std::vector<ColoredFace> colored_faces(const ColoredCone& cc);

// phi is a (target q_dim) x (source q_dim) matrix. Throws std::invalid_argument
// when phi does not map the source valuation cone into the target one.
bool morphism_extends(const QMat& phi, const ColoredCone& source, const ColoredCone& target,
                      const std::set<std::string>& dominant_colors);

struct AffineCertificate {
  bool affine = false;
  // chi <= 0 on V, chi = 0 on C, chi > 0 on rho(D) for colors D outside F.
  std::optional<QVec> chi;
  // Otherwise: nonnegative weights on the colors outside F, not all zero, whose
  // rho-combination lies in V + span(C).
  std::map<std::string, Q> farkas;
};

struct Classification {
  AffineCertificate affine;
  bool quasiaffine = false;
  std::optional<bool> wavefront;  // unset without a root datum
  bool toroidal = false;
};

// The color list of the datum plays the role of D^B.
Classification classify_embedding(const ColoredCone& cc);
AffineCertificate affine_test(const ColoredCone& cc);

ColoredCone decolorize(const ColoredCone& cc);

// Primitive integral generators of the extremal rays of {a : a <= 0 on V},
// in the coordinates of Q^dual, sorted.
QMat spherical_roots(const SphericalDatum& d);

struct BoundaryFace {
  Cone face;             // V cap theta^perp
  QMat lattice_basis;    // basis of theta^perp cap X_*(A_X), in Q coordinates
};
// Throws std::invalid_argument unless every row of theta is a spherical root.
BoundaryFace boundary_face(const SphericalDatum& d, const QMat& theta);
// The cocharacter lattice dual to the lattice basis, in Q coordinates.
QMat cocharacter_basis(const SphericalDatum& d);

// Throws std::invalid_argument when v is not a cocharacter.
bool cartan_positive(const SphericalDatum& d, const QVec& v);

struct EigenLattice {
  int rank = 0;
  QMat generators;  // monoid generators of Lambda_X, Lambda coordinates
  QMat chi_map;     // row i: chi of the i-th basis vector of Lambda, on Q
  QVec chi(const QVec& omega) const { return vec_mat(omega, chi_map); }
};

struct LambdaReport {
  bool simplicial = false;
  QMat minimal_generators;
  std::vector<Check> positivity;
  bool ok() const;
};

LambdaReport lambda_monoid_check(const EigenLattice& lambda, const ColoredCone& cc);

// GL(2) acting on Mat_2: the running example.
ColoredCone mat2_example();
EigenLattice mat2_eigen_lattice();

}  // namespace sz

#pragma once
// Split root data of types A (GL(n)) and C (Sp(2n)) in epsilon coordinates.
// Roots and weights are functionals (eps*), coroots are vectors (eps).

#include <string>
#include <vector>

#include "sz/convex.hpp"

namespace sz {

enum class Family { A, C };

Family parse_family(const std::string& s);
std::string family_name(Family f);

struct RootDatum {
  Family family = Family::A;
  int n = 0;        // GL(n) or Sp(2n)
  int ambient = 0;  // rank of the epsilon lattice
  QMat simple_roots;
  QMat simple_coroots;
  QMat fundamental_weights;
  // Simple reflections v -> v - <alpha_i, v> coroot_i on epsilon coordinates.
  std::vector<QMat> weyl_generators;

  // Entry (i, j) is <simple_roots[i], simple_coroots[j]>.
  QMat pairing_matrix() const;
  // All roots, as the Weyl orbit of the simple roots.
  QMat roots() const;
};

RootDatum build_root_datum(Family family, int n);

// Weyl orbit of v. If v is longer than the ambient rank, the group acts on the
// trailing coordinates and the leading ones stay fixed. Sorted, deduplicated.
QMat weyl_orbit(const RootDatum& d, const QVec& v);

// {v : <alpha, v> <= 0 for every simple root alpha}
Cone antidominant_chamber(const RootDatum& d);

// -eps_1, ..., -eps_n, 0, eps_n, ..., eps_1
QMat std_so_odd_weights(int n);

}  // namespace sz

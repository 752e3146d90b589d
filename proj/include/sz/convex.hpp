#pragma once
// Exact rational polyhedral geometry.
//
// A Cone keeps both presentations in canonical form:
//   lineality basis (RREF rows, primitive) and proper rays in the orthogonal
//   complement of the lineality space, primitive and sorted;
//   equations spanning span(C)^perp (RREF, primitive) and facet normals
//   projected onto span(C), primitive and sorted.
// Two cones are equal iff these four lists agree.

#include <string>
#include <vector>

#include "sz/linalg.hpp"

namespace sz {

// Cone {x : eqs x = 0, ineqs x >= 0}: lineality basis and extreme rays of the
// pointed part, computed by incremental double description.
struct DDResult {
  QMat lineality;
  QMat rays;
};
DDResult double_description(int dim, const QMat& ineqs, const QMat& eqs = {});

class Cone {
 public:
  Cone() = default;
  static Cone from_generators(int dim, const QMat& gens);
  static Cone from_inequalities(int dim, const QMat& ineqs, const QMat& eqs = {});
  static Cone zero(int dim);
  static Cone full(int dim);

  int dim() const { return dim_; }
  const QMat& lineality() const { return lin_; }
  const QMat& proper_rays() const { return rays_; }
  const QMat& equations() const { return eqs_; }
  const QMat& facets() const { return facets_; }
  // Generators: +-lineality followed by proper rays, sorted.
  QMat rays() const;
  // Inequalities: +-equations followed by facets, sorted.
  QMat halfspaces() const;

  int cone_dim() const { return dim_ - static_cast<int>(eqs_.size()); }
  bool is_pointed() const { return lin_.empty(); }
  bool is_zero() const { return lin_.empty() && rays_.empty(); }

  bool contains(const QVec& v) const;
  bool in_relint(const QVec& v) const;
  bool contains(const Cone& o) const;
  QVec relint_point() const;
  // The face spanned by the lineality space and the given proper rays, which
  // must be exactly the proper rays of some face. No double description needed.
  Cone face_with_rays(const std::vector<size_t>& ray_indices) const;

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.dim_ == b.dim_ && a.lin_ == b.lin_ && a.rays_ == b.rays_ && a.eqs_ == b.eqs_ &&
           a.facets_ == b.facets_;
  }
  friend bool operator!=(const Cone& a, const Cone& b) { return !(a == b); }

 private:
  int dim_ = 0;
  QMat lin_, rays_, eqs_, facets_;
  void check_dim(const QVec& v) const;
};

Cone dual_cone(const Cone& c);
Cone intersect(const Cone& a, const Cone& b);
Cone cone_sum(const Cone& a, const Cone& b);
// All faces, from the minimal face (the lineality space) up to c, sorted by
// dimension and then by rays.
std::vector<Cone> faces(const Cone& c);
// Smallest face of c containing v; throws if v is not in c.
Cone face_containing(const Cone& c, const QVec& v);
// Image under v -> m v, with m a (target dim) x (c.dim()) matrix.
Cone linear_image(const QMat& m, int target_dim, const Cone& c);

struct AffineForm {
  QVec linear;
  Q constant;
  Q operator()(const QVec& x) const { return dot(linear, x) + constant; }
  friend bool operator==(const AffineForm& a, const AffineForm& b) {
    return a.linear == b.linear && a.constant == b.constant;
  }
};

// Stored through its homogenization {(x, t) : t >= 0, alpha(x/t) >= 0},
// the closed cone over P. The empty polyhedron has the zero cone.
class Polyhedron {
 public:
  Polyhedron() = default;
  static Polyhedron from_constraints(int dim, const std::vector<AffineForm>& ge,
                                     const std::vector<AffineForm>& eq = {});
  static Polyhedron from_generators(int dim, const QMat& points, const QMat& rays = {});
  static Polyhedron from_cone(const Cone& c);
  static Polyhedron from_homogenization(const Cone& k);
  static Polyhedron empty(int dim);

  int dim() const { return dim_; }
  const Cone& homogenization() const { return k_; }
  bool is_empty() const { return k_.is_zero(); }
  bool is_bounded() const;
  int affine_dim() const { return is_empty() ? -1 : k_.cone_dim() - 1; }

  std::vector<AffineForm> equations() const;
  std::vector<AffineForm> facets() const;
  // equations as pairs of opposite inequalities, then facets
  std::vector<AffineForm> constraints() const;
  // Points of the minimal faces (the vertices when there is no lineality).
  QMat vertices() const;
  Cone recession_cone() const;

  bool contains(const QVec& x) const;
  bool in_relint(const QVec& x) const;
  bool contains(const Polyhedron& o) const;
  QVec relint_point() const;
  Polyhedron translate(const QVec& v) const;

  friend bool operator==(const Polyhedron& a, const Polyhedron& b) {
    return a.dim_ == b.dim_ && a.k_ == b.k_;
  }
  friend bool operator!=(const Polyhedron& a, const Polyhedron& b) { return !(a == b); }

 private:
  int dim_ = 0;
  Cone k_;
};

Polyhedron minkowski_sum(const Polyhedron& a, const Polyhedron& b);
Polyhedron minkowski_sum(const Polyhedron& a, const Cone& c);
Polyhedron intersect(const Polyhedron& a, const Polyhedron& b);
// Nonempty faces, including p itself.
std::vector<Polyhedron> faces(const Polyhedron& p);
// The face F of q with relint(p) inside relint(F). Throws unless p is inside q.
Polyhedron unique_face_of(const Polyhedron& p, const Polyhedron& q);

struct RecessionBottom {
  Cone recession;
  std::vector<Polyhedron> bottom;  // maximal bounded faces
};
// Throws std::domain_error when e contains an affine line or is empty.
RecessionBottom recession_and_bottom(const Polyhedron& e);

class DeepOracle {
 public:
  virtual ~DeepOracle() = default;
  virtual bool deep(const std::vector<Polyhedron>& b, const Cone& f) const = 0;
};

// B is F-deep when F = {0}, or when every functional phi that does not vanish
// on F satisfies phi >= threshold on all of B. With no functionals given the
// facet normals of F are used.
class ThresholdOracle : public DeepOracle {
 public:
  ThresholdOracle(Q threshold, QMat functionals = {})
      : threshold_(std::move(threshold)), phi_(std::move(functionals)) {}
  bool deep(const std::vector<Polyhedron>& b, const Cone& f) const override;

 private:
  Q threshold_;
  QMat phi_;
};

class AlwaysDeep : public DeepOracle {
 public:
  bool deep(const std::vector<Polyhedron>&, const Cone&) const override { return true; }
};

// Doubling search v = k u, u the sum of the primitive rays of f. Throws
// std::runtime_error when no k <= 2^max_doublings works.
QVec find_deep_translate(const std::vector<Polyhedron>& b, const Cone& f, const DeepOracle& deep,
                         int max_doublings = 40);

struct Cell {
  std::vector<Polyhedron> base;  // bounded pieces, meeting in faces
  Cone direction;
  // Pieces of e with recession cone `direction`; their union is base + direction.
  std::vector<Polyhedron> sum;
};

std::vector<Cell> cellular_decompose(const Polyhedron& e, const DeepOracle& deep,
                                     int max_doublings = 40);

}  // namespace sz

#pragma once
// Exact rational vectors and matrices over GMP.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace sz {

using Q = mpq_class;
using Z = mpz_class;
using QVec = std::vector<Q>;
using QMat = std::vector<QVec>;

std::string to_string(const Q& x);
std::string to_string(const QVec& v);
// Accepts "a", "a/b", "-a/b". Throws std::invalid_argument.
Q parse_rational(const std::string& s);

QVec zero_vec(int n);
QVec unit_vec(int n, int i);
Q dot(const QVec& a, const QVec& b);
QVec add(const QVec& a, const QVec& b);
QVec sub(const QVec& a, const QVec& b);
QVec scale(const QVec& a, const Q& c);
QVec neg(const QVec& a);
bool is_zero(const QVec& v);

// Positive multiple with coprime integer entries. Zero stays zero.
QVec primitive(const QVec& v);

QMat identity(int n);
QMat transpose(const QMat& m, int ncols);
QMat mat_mul(const QMat& a, const QMat& b);
QVec vec_mat(const QVec& x, const QMat& m);
QVec mat_vec(const QMat& m, const QVec& x);

struct Rref {
  QMat rows;            // nonzero rows only
  std::vector<int> pivots;
};
Rref rref(QMat m, int ncols);
int rank(const QMat& m, int ncols);
// Rows spanning {x : m x = 0}.
QMat nullspace(const QMat& m, int ncols);
// Canonical basis of the row space: RREF rows scaled to primitive integers.
QMat canonical_basis(const QMat& m, int ncols);
// Orthogonal projection of v onto the orthogonal complement of span(basis).
QVec project_off(const QVec& v, const QMat& basis);

Q det(QMat m);
QMat inverse(QMat m);
std::optional<QVec> solve(QMat a, QVec b, int ncols);

using ZVec = std::vector<Z>;
using ZMat = std::vector<ZVec>;

// Row Hermite normal form of the lattice spanned by the rows: echelon,
// positive pivots, entries above a pivot reduced into [0, pivot). Zero rows dropped.
ZMat hermite_rows(ZMat m, int ncols);
// Saturated basis (in Hermite form) of {u in Z^ncols : m u = 0}.
ZMat integer_kernel(const ZMat& m, int ncols);
// Integer row vector of a rational vector with integer entries; throws otherwise.
ZVec to_integer(const QVec& v);
QVec to_rational(const ZVec& v);

// p-adic valuation of a nonzero rational.
long valuation(const Q& x, long p);
long valuation(const Z& x, long p);
Z ipow(long base, long e);
Q qpow(const Q& base, long e);

}  // namespace sz

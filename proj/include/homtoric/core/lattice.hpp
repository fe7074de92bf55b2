#pragma once

// Exact integer lattice algebra: Hermite and Smith normal forms, canonical
// sublattice bases, annihilators, preimages and sign-constrained witnesses.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace homtoric {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  // `cols` is needed when `rows` is empty.
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;
  std::vector<IntVector> row_vectors() const;
  IntMatrix transpose() const;
  IntVector apply(const IntVector& v) const;  // this * v

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  // In-place unimodular row operations.
  void swap_rows(std::size_t i, std::size_t j);
  void negate_row(std::size_t i);
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);
  // (row_i, row_j) <- (a*row_i + b*row_j, c*row_i + d*row_j)
  void combine_rows(std::size_t i, std::size_t j, const Integer& a, const Integer& b,
                    const Integer& c, const Integer& d);

  void swap_columns(std::size_t i, std::size_t j);
  void negate_column(std::size_t j);
  void add_column_multiple(std::size_t target, std::size_t source, const Integer& factor);
  void combine_columns(std::size_t i, std::size_t j, const Integer& a, const Integer& b,
                       const Integer& c, const Integer& d);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

struct HermiteForm {
  IntMatrix hermite;     // H, row Hermite normal form
  IntMatrix transform;   // U, unimodular with U * M = H
  std::size_t rank = 0;  // number of nonzero rows of H (they come first)
};

struct SmithForm {
  IntMatrix diagonal;  // D = U * M * V
  IntMatrix left;      // U
  IntMatrix right;     // V
};

HermiteForm hermite_normal_form(const IntMatrix& m);
SmithForm smith_normal_form(const IntMatrix& m);

// Shape predicate for row HNF: nonzero rows first, strictly increasing pivot
// columns, positive pivots, entries above each pivot in [0, pivot).
bool is_hermite_normal_form(const IntMatrix& h);

Integer determinant(const IntMatrix& m);
std::size_t matrix_rank(const IntMatrix& m);

// Sublattice of Z^d stored as its canonical row-HNF basis.
class SublatticeBasis {
 public:
  // Zero sublattice of Z^ambient.
  explicit SublatticeBasis(std::size_t ambient = 0);

  static SublatticeBasis full(std::size_t ambient);

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<IntVector>& basis() const { return basis_; }
  IntMatrix matrix() const { return IntMatrix::from_rows(basis_, ambient_); }

  bool contains(const IntVector& v) const;

  friend bool operator==(const SublatticeBasis&, const SublatticeBasis&) = default;

 private:
  friend SublatticeBasis row_span(const IntMatrix& m);
  std::size_t ambient_ = 0;
  std::vector<IntVector> basis_;
};

SublatticeBasis row_span(const IntMatrix& m);
SublatticeBasis row_span(const std::vector<IntVector>& rows, std::size_t ambient);

// Coefficients c with c * basis = v, or nullopt when v is not in the lattice.
std::optional<IntVector> membership(const IntVector& v, const SublatticeBasis& lattice);

struct Saturation {
  SublatticeBasis saturated;
  Integer index;  // [saturated : original]
};
Saturation saturation_and_index(const SublatticeBasis& lattice);

// {w : <w, v> = 0 for all v in lattice}; always saturated.
SublatticeBasis annihilator(const SublatticeBasis& lattice);

// Integer kernel {x : m * x = 0}.
SublatticeBasis kernel(const IntMatrix& m);

// {x in Z^d : f * x in target}, f is m x d.
SublatticeBasis preimage(const IntMatrix& f, const SublatticeBasis& target);

// Image lattice {f * x : x in source}, f is m x d.
SublatticeBasis image(const IntMatrix& f, const SublatticeBasis& source);

// Invariant factors of an abelian group: torsion coefficients d1 | d2 | ...
// (each > 1) followed by one zero per free Z summand.
struct AbelianGroupInvariants {
  std::vector<Integer> factors;

  std::size_t free_rank() const;
  bool is_trivial() const { return factors.empty(); }
  std::string to_string() const;  // "Z^2 + Z/2", "0" for the trivial group

  friend bool operator==(const AbelianGroupInvariants&,
                         const AbelianGroupInvariants&) = default;
};

// Z^m / lattice.
AbelianGroupInvariants quotient_invariants(const SublatticeBasis& lattice);

// Vector of the lattice with every coordinate > 0, if its rational span has one.
std::optional<IntVector> strictly_positive_in_span(const SublatticeBasis& lattice);

// Nonzero vector of the lattice with every coordinate >= 0, if any.
std::optional<IntVector> nonneg_nonzero_in_span(const SublatticeBasis& lattice);

// Helpers shared by the fan and classification code.
Integer content(const IntVector& v);  // gcd of entries, 0 for the zero vector
IntVector primitive(const IntVector& v);
bool is_zero(const IntVector& v);
Integer dot(const IntVector& a, const IntVector& b);
std::string to_string(const IntVector& v);

}  // namespace homtoric

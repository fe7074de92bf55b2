#pragma once

// Quotients of the punctured product X(n_1, ..., n_m) = prod (k^{n_j} \ 0) by
// closed subgroups S of the central torus (k^*)^m, on the level of fans.

#include "homtoric/core/fan.hpp"
#include "homtoric/core/lattice.hpp"

#include <vector>

namespace homtoric {

// (n_1, ..., n_m), every n_j >= 2. Group j owns the basis indices
// [offset(j), offset(j) + n_j) of Z^d.
class GroupSizes {
 public:
  GroupSizes() = default;
  explicit GroupSizes(std::vector<std::size_t> sizes);

  const std::vector<std::size_t>& sizes() const { return sizes_; }
  std::size_t group_count() const { return sizes_.size(); }
  std::size_t total() const { return total_; }
  std::size_t size(std::size_t group) const { return sizes_[group]; }
  std::size_t offset(std::size_t group) const { return offsets_[group]; }
  std::size_t group_of(std::size_t basis_index) const;

  friend bool operator==(const GroupSizes& a, const GroupSizes& b) { return a.sizes_ == b.sizes_; }

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
};

// S is encoded by the lattice A of characters of (k^*)^m that are trivial on
// S. A = 0 means S is the whole central torus, A = Z^m means S is trivial.
struct SubgroupSpec {
  SublatticeBasis relations;

  std::size_t group_count() const { return relations.ambient_rank(); }
  static SubgroupSpec from_generators(std::size_t m, const std::vector<IntVector>& generators);

  friend bool operator==(const SubgroupSpec&, const SubgroupSpec&) = default;
};

struct QuotientPresentation {
  GroupSizes sizes;
  SubgroupSpec subgroup;
  SublatticeBasis ms_basis;  // characters of the big torus vanishing on S
  IntMatrix projection;      // rows = ms_basis, maps Z^d onto the quotient lattice
  Fan fan;                   // ray i is the image of basis vector e_i
};

Fan punctured_fan(const GroupSizes& sizes);

// m x d, row j is the indicator of group j.
IntMatrix degree_matrix(const GroupSizes& sizes);

SublatticeBasis character_lattice(const GroupSizes& sizes, const SubgroupSpec& subgroup);

QuotientPresentation quotient_fan(const GroupSizes& sizes, const SubgroupSpec& subgroup);

// Fan of P^{n_1 - 1} x ... x P^{n_m - 1} in its standard coordinates: block j
// has rays e_1, ..., e_{n_j - 1} and -(e_1 + ... + e_{n_j - 1}).
Fan projective_product_fan(const GroupSizes& sizes);

struct ComplementComponent {
  std::size_t group;      // 1-based
  std::size_t dimension;  // d - n_j
  friend bool operator==(const ComplementComponent&, const ComplementComponent&) = default;
};

// Irreducible components of k^d \ X(n): one coordinate subspace per group.
std::vector<ComplementComponent> complement_components(const GroupSizes& sizes);

}  // namespace homtoric

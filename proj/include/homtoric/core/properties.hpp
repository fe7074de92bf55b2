#pragma once

// Geometric properties of X = X(n_1, ..., n_m) / S read off the certificate.

#include "homtoric/core/homogeneity.hpp"

#include <optional>
#include <string>
#include <vector>

namespace homtoric {

struct PropertyReport {
  bool quasiprojective = true;  // homogeneous spaces of affine groups always are
  bool affine = false;          // the Cox open set is never the whole space
  bool projective = false;
  bool quasiaffine = false;
  bool has_nonconstant_regular_functions = false;
  bool has_torus_fixed_point = false;
  std::size_t dimension = 0;
  AbelianGroupInvariants class_group;
  std::vector<std::vector<std::string>> acting_groups;
  // Characters of M_S certifying the two positive answers.
  std::optional<IntVector> quasiaffine_witness;
  std::optional<IntVector> regular_function_witness;

  friend bool operator==(const PropertyReport&, const PropertyReport&) = default;
};

// A = 0; throws std::logic_error if the quotient fan disagrees.
bool is_projective(const HomogeneityCertificate& certificate);
bool is_quasiaffine(const HomogeneityCertificate& certificate);
bool has_nonconstant_regular_functions(const HomogeneityCertificate& certificate);

PropertyReport property_report(const HomogeneityCertificate& certificate);

}  // namespace homtoric

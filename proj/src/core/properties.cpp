#include "homtoric/core/properties.hpp"

#include <stdexcept>

namespace homtoric {

bool is_projective(const HomogeneityCertificate& certificate) {
  const bool whole_torus = certificate.subgroup.relations.rank() == 0;
  const bool fixed_point = has_full_dim_cone(quotient_fan(certificate.sizes, certificate.subgroup).fan);
  if (whole_torus != fixed_point)
    throw std::logic_error("is_projective: A = 0 test and full-dimensional cone test disagree");
  return whole_torus;
}

bool is_quasiaffine(const HomogeneityCertificate& certificate) {
  return strictly_positive_in_span(character_lattice(certificate.sizes, certificate.subgroup)).has_value();
}

bool has_nonconstant_regular_functions(const HomogeneityCertificate& certificate) {
  return nonneg_nonzero_in_span(character_lattice(certificate.sizes, certificate.subgroup)).has_value();
}

PropertyReport property_report(const HomogeneityCertificate& certificate) {
  const auto& sizes = certificate.sizes;
  const auto& relations = certificate.subgroup.relations;
  auto quotient = quotient_fan(sizes, certificate.subgroup);

  PropertyReport report;
  report.projective = is_projective(certificate);
  report.has_torus_fixed_point = has_full_dim_cone(quotient.fan);
  report.quasiaffine_witness = strictly_positive_in_span(quotient.ms_basis);
  report.regular_function_witness = nonneg_nonzero_in_span(quotient.ms_basis);
  report.quasiaffine = report.quasiaffine_witness.has_value();
  report.has_nonconstant_regular_functions = report.regular_function_witness.has_value();
  // dim S^0 = m - rank A
  report.dimension = sizes.total() - (sizes.group_count() - relations.rank());
  report.class_group = quotient_invariants(relations);
  report.acting_groups = acting_group_options(sizes);
  return report;
}

}  // namespace homtoric

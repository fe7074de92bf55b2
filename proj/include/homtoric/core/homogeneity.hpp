#pragma once

// Recognition of fans of homogeneous toric varieties. A fan qualifies iff it
// is m-partite, every linear relation among its rays is a combination of the
// group sums q_j, and N lies in N_0 + Q_Q. Accepted fans come with a
// certificate that rebuilds them as a central quotient of X(n_1, ..., n_m).

#include "homtoric/core/cox_quotient.hpp"
#include "homtoric/core/fan.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace homtoric {

enum class RejectionReason {
  RaysDontSpan,
  NotSimplicial,
  NonfacesDontPartition,
  GroupTooSmall,
  MissingCone,
  ExtraCone,
  RelationConditionFailed,
  OverlatticeConditionFailed,
};

const char* to_string(RejectionReason reason);
std::optional<RejectionReason> rejection_reason_from_string(const std::string& name);

// `rays` and `vector` carry the witness, depending on the reason:
//   RaysDontSpan                nonzero functional vanishing on every ray
//   NonfacesDontPartition       {ray} lying in zero or several minimal non-faces
//   GroupTooSmall               the one-element minimal non-face
//   MissingCone / ExtraCone     the offending ray set
//   RelationConditionFailed     relation coefficients, not constant on a group
//   OverlatticeConditionFailed  {i}: basis vector e_i outside N_0 + Q_Q
struct Rejection {
  RejectionReason reason;
  std::string detail;
  std::vector<std::size_t> rays;
  IntVector vector;
};

struct GroupPartition {
  std::vector<std::vector<std::size_t>> groups;
  std::vector<IntVector> q_vectors;
  SublatticeBasis n0_basis;
};

struct HomogeneityCertificate {
  GroupSizes sizes;
  SubgroupSpec subgroup;
  // ray_assignment[i] = input ray hit by basis vector e_i of Z^d.
  std::vector<std::size_t> ray_assignment;
  // Unimodular map from the quotient fan's lattice to the input lattice.
  IntMatrix identification;

  friend bool operator==(const HomogeneityCertificate&, const HomogeneityCertificate&) = default;
};

using ClassifyResult = std::variant<HomogeneityCertificate, Rejection>;

class ClassificationLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

constexpr std::size_t kDefaultMaxRays = 20;

// Inclusion-minimal ray sets that are not cones, by size then lexicographically.
std::vector<Cone> minimal_nonfaces(const Fan& fan, std::size_t max_rays = kDefaultMaxRays);

std::variant<GroupPartition, Rejection> recognize_partition(const Fan& fan,
                                                            std::size_t max_rays = kDefaultMaxRays);

// A relation among the rays whose coefficients are not constant on some group.
std::optional<IntVector> find_relation_violation(const Fan& fan, const GroupPartition& partition);
bool check_relations(const Fan& fan, const GroupPartition& partition);

// Index of a standard basis vector of Z^rank outside N_0 + Q_Q.
std::optional<std::size_t> find_overlattice_violation(const Fan& fan, const GroupPartition& partition);
bool check_overlattice(const Fan& fan, const GroupPartition& partition);

// Throws std::logic_error("INTERNAL_ROUNDTRIP_FAILURE ...") if a certificate it
// built does not verify.
ClassifyResult classify(const Fan& fan, std::size_t max_rays = kDefaultMaxRays);

// The linear map carrying quotient rays onto the assigned input rays, if it
// exists, is integral and unimodular.
std::optional<IntMatrix> solve_identification(const Fan& fan, const QuotientPresentation& quotient,
                                              const std::vector<std::size_t>& ray_assignment);

bool verify_certificate(const Fan& fan, const HomogeneityCertificate& certificate);

// Certificate of X(n)/S against its own quotient fan (identity identification).
HomogeneityCertificate certificate_for_quotient(const QuotientPresentation& quotient);

// Per group: "SL(n)", plus "Sp(n)" when n is even.
std::vector<std::vector<std::string>> acting_group_options(const GroupSizes& sizes);

// Re-checks a rejection witness against the fan; true iff it shows a genuine
// violation of the stated condition.
bool rejection_witness_holds(const Fan& fan, const Rejection& rejection,
                             std::size_t max_rays = kDefaultMaxRays);

}  // namespace homtoric

#pragma once

// Simplicial rational polyhedral fans.

#include "homtoric/core/lattice.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace homtoric {

// Sorted ray indices; the empty cone is the origin.
using Cone = std::vector<std::size_t>;

enum class FanErrorCode {
  DimensionMismatch,
  NonPrimitiveRay,
  DuplicateRay,
  NotSimplicial,
  BadIntersection,
  IndexOutOfRange,
  ImageNotFan,
  ZeroImageRay,
};

const char* to_string(FanErrorCode code);

class FanError : public std::runtime_error {
 public:
  FanError(FanErrorCode code, const std::string& detail);
  FanErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  FanErrorCode code_;
  std::string detail_;
};

class Fan {
 public:
  Fan() = default;

  std::size_t rank() const { return rank_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const std::set<Cone>& cones() const { return cones_; }

  bool has_cone(const Cone& c) const { return cones_.count(c) != 0; }
  const std::vector<Cone>& maximal_cones() const { return maximal_; }
  std::size_t max_cone_dimension() const;

 private:
  friend Fan make_fan(std::size_t, std::vector<IntVector>, const std::vector<Cone>&);
  std::size_t rank_ = 0;
  std::vector<IntVector> rays_;
  std::set<Cone> cones_;
  std::vector<Cone> maximal_;  // sorted
};

// Builds the face closure of `maximal_cones` and validates every fan axiom.
// Rays must already be primitive and pairwise distinct. Throws FanError.
Fan make_fan(std::size_t rank, std::vector<IntVector> rays, const std::vector<Cone>& maximal_cones);

// Same fan with rays in lexicographic order. `old_to_new`, when given,
// receives the ray relabelling.
Fan canonical_form(const Fan& fan, std::vector<std::size_t>* old_to_new = nullptr);

// Structural equality in the same lattice coordinates, up to ray order.
bool fan_equal(const Fan& a, const Fan& b);

bool has_full_dim_cone(const Fan& fan);

// Image under a lattice map with rank() columns. Image rays keep the order of
// their first preimage. Throws FanError with ZeroImageRay or ImageNotFan.
Fan apply_lattice_map(const Fan& fan, const IntMatrix& map);

// True iff cone(first) and cone(second) meet exactly in cone(first & second).
bool cones_meet_properly(const std::vector<IntVector>& rays, const Cone& first,
                         const Cone& second);

}  // namespace homtoric

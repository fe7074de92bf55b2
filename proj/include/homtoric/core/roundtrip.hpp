#pragma once

// Randomized quotient -> classify -> verify self test.

#include "homtoric/core/cox_quotient.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace homtoric {

struct RoundtripLimits {
  std::size_t max_groups = 3;
  std::size_t max_group_size = 4;
  long entry_bound = 3;  // generator entries drawn from [-bound, bound]
};

struct RandomCase {
  GroupSizes sizes;
  std::vector<IntVector> generators;  // up to m vectors spanning A
  SubgroupSpec subgroup;
};

RandomCase random_case(std::mt19937_64& rng, const RoundtripLimits& limits);

struct RoundtripFailure {
  std::size_t trial = 0;
  RandomCase input;
  std::string detail;
};

struct RoundtripReport {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  RoundtripLimits limits;
  std::size_t accepted = 0;
  std::size_t verified = 0;
  std::size_t projective = 0;  // trials with A = 0
  std::size_t finite_quotients = 0;  // trials whose S is finite
  std::vector<RoundtripFailure> failures;
};

// Each trial builds quotient_fan of a random case, shuffles its rays,
// classifies the result and verifies the certificate against it.
RoundtripReport run_roundtrip(std::size_t trials, std::uint64_t seed, const RoundtripLimits& limits);

}  // namespace homtoric

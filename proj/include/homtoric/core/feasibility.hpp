#pragma once

// Exact rational feasibility of linear systems by Fourier-Motzkin elimination.

#include "homtoric/core/lattice.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace homtoric {

using RatVector = std::vector<Rational>;

// coefficients . x  (>= or =)  bound
struct LinearConstraint {
  RatVector coefficients;
  Rational bound;
};

struct LinearSystem {
  std::size_t variables = 0;
  std::vector<LinearConstraint> inequalities;  // a . x >= b
  std::vector<LinearConstraint> equalities;    // a . x == b
};

// A point satisfying every constraint, or nullopt if the system is infeasible.
// Equalities are eliminated by Gaussian substitution first; the remaining
// inequalities go through Fourier-Motzkin with back substitution.
std::optional<RatVector> find_feasible_point(const LinearSystem& system);

bool satisfies(const LinearSystem& system, const RatVector& point);

// Integer data that fits in machine words, for hot loops. Same semantics.
struct WordConstraint {
  std::vector<std::int64_t> coefficients;
  std::int64_t bound = 0;
};

struct WordSystem {
  std::size_t variables = 0;
  std::vector<WordConstraint> inequalities;
  std::vector<WordConstraint> equalities;
};

std::optional<RatVector> find_feasible_point(const WordSystem& system);

}  // namespace homtoric

#include "homtoric/core/cox_quotient.hpp"

#include <algorithm>
#include <stdexcept>

namespace homtoric {

GroupSizes::GroupSizes(std::vector<std::size_t> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw std::invalid_argument("group sizes: at least one group is required");
  offsets_.reserve(sizes_.size());
  for (std::size_t j = 0; j < sizes_.size(); ++j) {
    if (sizes_[j] < 2)
      throw std::invalid_argument("group sizes: group " + std::to_string(j + 1) + " has size " +
                                  std::to_string(sizes_[j]) + ", need at least 2");
    offsets_.push_back(total_);
    total_ += sizes_[j];
  }
}

std::size_t GroupSizes::group_of(std::size_t basis_index) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), basis_index);
  return static_cast<std::size_t>(it - offsets_.begin()) - 1;
}

SubgroupSpec SubgroupSpec::from_generators(std::size_t m, const std::vector<IntVector>& generators) {
  return SubgroupSpec{row_span(generators, m)};
}

namespace {

// All products of proper subsets, one chosen per group, as sorted index sets.
// `maximal_only` keeps the products of (n_j - 1)-subsets.
std::vector<Cone> product_cones(const GroupSizes& sizes, bool maximal_only) {
  std::vector<Cone> out{Cone{}};
  for (std::size_t j = 0; j < sizes.group_count(); ++j) {
    const std::size_t n = sizes.size(j);
    const std::size_t base = sizes.offset(j);
    std::vector<Cone> next;
    for (unsigned long mask = 0; mask + 1 < (1UL << n); ++mask) {
      if (maximal_only && static_cast<std::size_t>(__builtin_popcountl(mask)) != n - 1) continue;
      for (const auto& partial : out) {
        Cone c = partial;
        for (std::size_t k = 0; k < n; ++k)
          if (mask & (1UL << k)) c.push_back(base + k);
        next.push_back(std::move(c));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

Fan punctured_fan(const GroupSizes& sizes) {
  const std::size_t d = sizes.total();
  std::vector<IntVector> rays(d, IntVector(d, Integer(0)));
  for (std::size_t i = 0; i < d; ++i) rays[i][i] = 1;
  return make_fan(d, std::move(rays), product_cones(sizes, true));
}

IntMatrix degree_matrix(const GroupSizes& sizes) {
  IntMatrix deg(sizes.group_count(), sizes.total());
  for (std::size_t j = 0; j < sizes.group_count(); ++j)
    for (std::size_t k = 0; k < sizes.size(j); ++k) deg(j, sizes.offset(j) + k) = 1;
  return deg;
}

SublatticeBasis character_lattice(const GroupSizes& sizes, const SubgroupSpec& subgroup) {
  if (subgroup.group_count() != sizes.group_count())
    throw DimensionError("character_lattice: subgroup lives in rank " +
                         std::to_string(subgroup.group_count()) + " but there are " +
                         std::to_string(sizes.group_count()) + " groups");
  return preimage(degree_matrix(sizes), subgroup.relations);
}

QuotientPresentation quotient_fan(const GroupSizes& sizes, const SubgroupSpec& subgroup) {
  QuotientPresentation q;
  q.sizes = sizes;
  q.subgroup = subgroup;
  q.ms_basis = character_lattice(sizes, subgroup);
  q.projection = q.ms_basis.matrix();
  q.fan = apply_lattice_map(punctured_fan(sizes), q.projection);
  if (q.fan.rays().size() != sizes.total())
    throw std::logic_error("quotient_fan: projection merged basis rays");
  return q;
}

Fan projective_product_fan(const GroupSizes& sizes) {
  const std::size_t r = sizes.total() - sizes.group_count();
  std::vector<IntVector> rays;
  std::size_t block = 0;
  for (std::size_t j = 0; j < sizes.group_count(); ++j) {
    const std::size_t n = sizes.size(j);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      IntVector e(r, Integer(0));
      e[block + k] = 1;
      rays.push_back(std::move(e));
    }
    IntVector last(r, Integer(0));
    for (std::size_t k = 0; k + 1 < n; ++k) last[block + k] = -1;
    rays.push_back(std::move(last));
    block += n - 1;
  }
  return make_fan(r, std::move(rays), product_cones(sizes, true));
}

std::vector<ComplementComponent> complement_components(const GroupSizes& sizes) {
  std::vector<ComplementComponent> out;
  out.reserve(sizes.group_count());
  for (std::size_t j = 0; j < sizes.group_count(); ++j)
    out.push_back({j + 1, sizes.total() - sizes.size(j)});
  return out;
}

}  // namespace homtoric

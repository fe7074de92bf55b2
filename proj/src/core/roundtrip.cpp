#include "homtoric/core/roundtrip.hpp"

#include "homtoric/core/homogeneity.hpp"

#include <algorithm>
#include <numeric>

namespace homtoric {

RandomCase random_case(std::mt19937_64& rng, const RoundtripLimits& limits) {
  std::uniform_int_distribution<std::size_t> group_count(1, limits.max_groups);
  std::uniform_int_distribution<std::size_t> group_size(2, limits.max_group_size);
  std::uniform_int_distribution<long> entry(-limits.entry_bound, limits.entry_bound);

  const std::size_t m = group_count(rng);
  std::vector<std::size_t> sizes(m);
  for (auto& n : sizes) n = group_size(rng);

  RandomCase out;
  out.sizes = GroupSizes(std::move(sizes));
  const std::size_t k = std::uniform_int_distribution<std::size_t>(0, m)(rng);
  for (std::size_t g = 0; g < k; ++g) {
    IntVector v(m);
    for (auto& x : v) x = entry(rng);
    out.generators.push_back(std::move(v));
  }
  out.subgroup = SubgroupSpec::from_generators(m, out.generators);
  return out;
}

namespace {

Fan shuffled(const Fan& fan, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(fan.rays().size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<IntVector> rays(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) rays[perm[i]] = fan.rays()[i];
  std::vector<Cone> tops;
  for (const auto& c : fan.maximal_cones()) {
    Cone m;
    for (auto i : c) m.push_back(perm[i]);
    std::sort(m.begin(), m.end());
    tops.push_back(std::move(m));
  }
  return make_fan(fan.rank(), std::move(rays), tops);
}

}  // namespace

RoundtripReport run_roundtrip(std::size_t trials, std::uint64_t seed, const RoundtripLimits& limits) {
  RoundtripReport report;
  report.seed = seed;
  report.trials = trials;
  report.limits = limits;
  std::mt19937_64 rng(seed);

  for (std::size_t t = 0; t < trials; ++t) {
    RandomCase input = random_case(rng, limits);
    if (input.subgroup.relations.rank() == 0) ++report.projective;
    if (input.subgroup.relations.rank() == input.sizes.group_count()) ++report.finite_quotients;
    try {
      Fan fan = shuffled(quotient_fan(input.sizes, input.subgroup).fan, rng);
      auto result = classify(fan);
      if (auto* rejection = std::get_if<Rejection>(&result)) {
        report.failures.push_back({t, input, std::string("rejected: ") + to_string(rejection->reason) +
                                                 ": " + rejection->detail});
        continue;
      }
      ++report.accepted;
      const auto& cert = std::get<HomogeneityCertificate>(result);
      auto expected = input.sizes.sizes();
      auto found = cert.sizes.sizes();
      std::sort(expected.begin(), expected.end());
      std::sort(found.begin(), found.end());
      if (expected != found) {
        report.failures.push_back({t, input, "recovered group sizes differ"});
        continue;
      }
      if (!verify_certificate(fan, cert)) {
        report.failures.push_back({t, input, "certificate does not verify"});
        continue;
      }
      ++report.verified;
    } catch (const std::exception& e) {
      report.failures.push_back({t, input, e.what()});
    }
  }
  return report;
}

}  // namespace homtoric

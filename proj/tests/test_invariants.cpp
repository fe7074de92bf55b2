// Properties spanning several modules: build, serialize, classify, report.

#include "homtoric/core/documents.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace homtoric;

namespace {

Fan shuffled(const Fan& fan, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(fan.rays().size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::size_t> inverse(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) inverse[perm[k]] = k;
  std::vector<IntVector> rays;
  for (auto old : perm) rays.push_back(fan.rays()[old]);
  std::vector<Cone> cones;
  for (const auto& c : fan.maximal_cones()) {
    Cone moved;
    for (auto i : c) moved.push_back(inverse[i]);
    std::sort(moved.begin(), moved.end());
    cones.push_back(moved);
  }
  return make_fan(fan.rank(), rays, cones);
}

std::vector<std::size_t> sorted_sizes(const GroupSizes& s) {
  auto v = s.sizes();
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("randomized: the pipeline recovers the variety") {
  std::mt19937_64 rng(37);
  RoundtripLimits limits;
  for (int trial = 0; trial < 120; ++trial) {
    auto input = random_case(rng, limits);
    auto q = quotient_fan(input.sizes, input.subgroup);
    auto fan = fan_from_json(parse_json_text(fan_to_json(shuffled(q.fan, rng)).dump()));

    auto result = classify(fan);
    REQUIRE(std::holds_alternative<HomogeneityCertificate>(result));
    const auto cert = std::get<HomogeneityCertificate>(result);
    CHECK(verify_certificate(fan, cert));
    CHECK(sorted_sizes(cert.sizes) == sorted_sizes(input.sizes));

    // Everything in the report is intrinsic to the variety.
    auto original = property_report(certificate_for_quotient(q));
    auto recovered = property_report(cert);
    CHECK(recovered.projective == original.projective);
    CHECK(recovered.quasiaffine == original.quasiaffine);
    CHECK(recovered.has_nonconstant_regular_functions == original.has_nonconstant_regular_functions);
    CHECK(recovered.has_torus_fixed_point == original.has_torus_fixed_point);
    CHECK(recovered.dimension == original.dimension);
    CHECK(recovered.class_group.factors == original.class_group.factors);

    // Rebuilding from the recovered certificate gives back the same fan.
    auto rebuilt = quotient_fan(cert.sizes, cert.subgroup);
    for (std::size_t i = 0; i < cert.ray_assignment.size(); ++i)
      CHECK(cert.identification.apply(rebuilt.fan.rays()[i]) == fan.rays()[cert.ray_assignment[i]]);
  }
}

TEST_CASE("randomized: self test is deterministic and clean") {
  RoundtripLimits limits;
  auto a = run_roundtrip(40, 99, limits);
  auto b = run_roundtrip(40, 99, limits);
  CHECK(a.failures.empty());
  CHECK(a.verified == 40);
  CHECK(roundtrip_to_json(a) == roundtrip_to_json(b));

  limits.max_groups = 2;
  limits.max_group_size = 3;
  auto small = run_roundtrip(40, 5, limits);
  CHECK(small.failures.empty());
}

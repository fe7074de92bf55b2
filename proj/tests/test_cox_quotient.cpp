#include "homtoric/core/cox_quotient.hpp"
#include "homtoric/core/roundtrip.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace homtoric;

namespace {

IntVector vec(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

std::vector<IntVector> rays(std::initializer_list<std::initializer_list<long>> rs) {
  std::vector<IntVector> out;
  for (auto r : rs) out.push_back(vec(r));
  return out;
}

SubgroupSpec subgroup(std::size_t m, std::initializer_list<std::initializer_list<long>> gens) {
  return SubgroupSpec::from_generators(m, rays(gens));
}

std::size_t expected_cones(const GroupSizes& sizes) {
  std::size_t n = 1;
  for (auto s : sizes.sizes()) n *= (std::size_t{1} << s) - 1;
  return n;
}

// Calls f on every integer vector of length d with entries in [-b, b].
template <typename F>
void for_each_small(std::size_t d, long b, F&& f) {
  std::vector<long> x(d, -b);
  while (true) {
    IntVector v;
    for (long e : x) v.emplace_back(e);
    f(v);
    std::size_t k = 0;
    while (k < d && x[k] == b) x[k++] = -b;
    if (k == d) return;
    ++x[k];
  }
}

}  // namespace

TEST_CASE("group sizes") {
  GroupSizes s({2, 3});
  CHECK(s.total() == 5);
  CHECK(s.group_count() == 2);
  CHECK(s.offset(1) == 2);
  CHECK(s.group_of(1) == 0);
  CHECK(s.group_of(4) == 1);
  CHECK_THROWS_AS(GroupSizes(std::vector<std::size_t>{}), std::invalid_argument);
  CHECK_THROWS_AS(GroupSizes({2, 1}), std::invalid_argument);
}

TEST_CASE("punctured fans") {
  auto one = punctured_fan(GroupSizes({2}));
  CHECK(one.rays() == rays({{1, 0}, {0, 1}}));
  CHECK(one.cones() == std::set<Cone>{{}, {0}, {1}});

  CHECK(punctured_fan(GroupSizes({2, 2})).cones().size() == 9);
  CHECK(punctured_fan(GroupSizes({3})).max_cone_dimension() == 2);

  // Cones are exactly the subsets containing no whole group.
  GroupSizes s({2, 3});
  auto f = punctured_fan(s);
  for (std::size_t mask = 0; mask < 32; ++mask) {
    Cone c;
    for (std::size_t i = 0; i < 5; ++i)
      if (mask & (std::size_t{1} << i)) c.push_back(i);
    bool allowed = (mask & 0b11) != 0b11 && (mask & 0b11100) != 0b11100;
    CHECK(f.has_cone(c) == allowed);
  }
  CHECK(f.cones().size() == expected_cones(s));
}

TEST_CASE("degree matrices") {
  CHECK(degree_matrix(GroupSizes({2, 2})) == IntMatrix{{1, 1, 0, 0}, {0, 0, 1, 1}});
  CHECK(degree_matrix(GroupSizes({3})) == IntMatrix{{1, 1, 1}});
  CHECK(degree_matrix(GroupSizes({2, 3})) == IntMatrix{{1, 1, 0, 0, 0}, {0, 0, 1, 1, 1}});
}

TEST_CASE("character lattices") {
  GroupSizes s({2, 2});
  auto diagonal = character_lattice(s, subgroup(2, {{1, -1}}));
  auto quadric = character_lattice(s, subgroup(2, {{1, 1}}));
  for_each_small(4, 2, [&](const IntVector& x) {
    CHECK(diagonal.contains(x) == (x[0] + x[1] + x[2] + x[3] == 0));
    CHECK(quadric.contains(x) == (x[0] + x[1] == x[2] + x[3]));
  });
  CHECK(character_lattice(s, subgroup(2, {{1, 0}, {0, 1}})) == SublatticeBasis::full(4));
  CHECK(character_lattice(s, subgroup(2, {})).rank() == 2);
  CHECK_THROWS_AS(character_lattice(s, subgroup(3, {})), DimensionError);
}

TEST_CASE("quotient fans") {
  SUBCASE("two projective lines") {
    auto q = quotient_fan(GroupSizes({2, 2}), subgroup(2, {}));
    CHECK(q.projection == IntMatrix{{1, -1, 0, 0}, {0, 0, 1, -1}});
    CHECK(q.fan.rays() == rays({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}));
    CHECK(q.fan.maximal_cones() == std::vector<Cone>{{0, 2}, {0, 3}, {1, 2}, {1, 3}});
    CHECK(fan_equal(q.fan, projective_product_fan(GroupSizes({2, 2}))));
  }
  SUBCASE("mu_2 acting on the punctured plane") {
    auto q = quotient_fan(GroupSizes({2}), subgroup(1, {{2}}));
    CHECK(q.ms_basis.basis() == rays({{1, 1}, {0, 2}}));
    for_each_small(2, 4, [&](const IntVector& x) {
      CHECK(q.ms_basis.contains(x) == ((x[0] + x[1]) % 2 == 0));
    });
    CHECK(q.fan.rays() == rays({{1, 0}, {1, 2}}));
    CHECK(q.fan.maximal_cones() == std::vector<Cone>{{0}, {1}});
  }
  SUBCASE("quadric cone without its apex") {
    auto q = quotient_fan(GroupSizes({2, 2}), subgroup(2, {{1, 1}}));
    CHECK(q.fan.rank() == 3);
    CHECK(q.fan.rays().size() == 4);
    CHECK(q.fan.maximal_cones().size() == 4);
    for (const auto& c : q.fan.maximal_cones()) CHECK(c.size() == 2);
  }
}

TEST_CASE("complement components") {
  using C = ComplementComponent;
  CHECK(complement_components(GroupSizes({2, 2})) == std::vector<C>{{1, 2}, {2, 2}});
  CHECK(complement_components(GroupSizes({2, 3})) == std::vector<C>{{1, 3}, {2, 2}});
  CHECK(complement_components(GroupSizes({5})) == std::vector<C>{{1, 0}});
}

TEST_CASE("randomized: quotient fan invariants") {
  std::mt19937_64 rng(11);
  RoundtripLimits limits;
  for (int trial = 0; trial < 150; ++trial) {
    auto input = random_case(rng, limits);
    const auto& sizes = input.sizes;
    auto q = quotient_fan(sizes, input.subgroup);
    std::size_t d = sizes.total();
    std::size_t m = sizes.group_count();

    // M_S is the set of characters whose group degrees lie in A.
    auto deg = degree_matrix(sizes);
    std::uniform_int_distribution<long> entry(-3, 3);
    for (int probe = 0; probe < 10; ++probe) {
      IntVector x;
      for (std::size_t i = 0; i < d; ++i) x.emplace_back(entry(rng));
      CHECK(q.ms_basis.contains(x) == input.subgroup.relations.contains(deg.apply(x)));
    }
    CHECK(q.ms_basis.rank() == d - m + input.subgroup.relations.rank());
    CHECK(q.fan.rank() == q.ms_basis.rank());

    // One distinct ray per basis vector: the primitive image of e_i.
    REQUIRE(q.fan.rays().size() == d);
    std::set<IntVector> distinct(q.fan.rays().begin(), q.fan.rays().end());
    CHECK(distinct.size() == d);
    for (std::size_t i = 0; i < d; ++i) {
      IntVector e(d, Integer(0));
      e[i] = 1;
      CHECK(q.fan.rays()[i] == primitive(q.projection.apply(e)));
    }

    CHECK(q.fan.cones().size() == expected_cones(sizes));
    for (const auto& c : q.fan.maximal_cones()) {
      IntMatrix gens(c.size(), q.fan.rank());
      for (std::size_t k = 0; k < c.size(); ++k)
        for (std::size_t j = 0; j < q.fan.rank(); ++j) gens(k, j) = q.fan.rays()[c[k]][j];
      CHECK(matrix_rank(gens) == c.size());
    }

    auto components = complement_components(sizes);
    REQUIRE(components.size() == m);
    for (std::size_t j = 0; j < m; ++j) {
      CHECK(components[j].group == j + 1);
      CHECK(sizes.size(j) == d - components[j].dimension);
      CHECK(components[j].dimension + 2 <= d);
    }

    if (input.subgroup.relations.rank() == 0) {
      CHECK(fan_equal(q.fan, projective_product_fan(sizes)));
    }
  }
}

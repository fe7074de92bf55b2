// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include "homtoric/core/cox_quotient.hpp"
#include "homtoric/core/homogeneity.hpp"
#include "homtoric/core/properties.hpp"
#include "homtoric/core/roundtrip.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace homtoric;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

IntVector vec(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

SubgroupSpec relations(std::size_t m, std::initializer_list<std::initializer_list<long>> gens) {
  std::vector<IntVector> g;
  for (auto row : gens) g.push_back(vec(row));
  return SubgroupSpec::from_generators(m, g);
}

HomogeneityCertificate certificate(const std::vector<std::size_t>& sizes, const SubgroupSpec& subgroup) {
  return certificate_for_quotient(quotient_fan(GroupSizes(sizes), subgroup));
}

// Probe vectors in Z^4 with entries in [-4, 4]; every other probe is pushed
// onto the hyperplane given by `normal` (whose last entry is +-1).
std::vector<IntVector> probes(const IntVector& normal, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> entry(-4, 4);
  std::vector<IntVector> out;
  for (int k = 0; k < 20; ++k) {
    IntVector v;
    for (int i = 0; i < 4; ++i) v.emplace_back(entry(rng));
    if (k % 2 == 0) {
      Integer s = dot(normal, v) - normal[3] * v[3];
      v[3] = -s * normal[3];
    }
    out.push_back(std::move(v));
  }
  return out;
}

void check_hyperplane(Outcome& out, const SublatticeBasis& ms, const IntVector& normal) {
  int inside = 0;
  for (const auto& p : probes(normal, 7)) {
    bool expected = dot(normal, p) == 0;
    inside += expected;
    out.require(ms.contains(p) == expected, "membership of " + to_string(p) + " disagrees");
  }
  out.require(inside >= 10, "probe set has too few lattice points");
  out.require(ms.rank() == 3, "M_S has rank " + std::to_string(ms.rank()));
}

AbelianGroupInvariants group(std::initializer_list<long> factors) {
  AbelianGroupInvariants g;
  for (long f : factors) g.factors.emplace_back(f);
  return g;
}

std::vector<std::vector<std::size_t>> all_sizes(std::size_t max_total) {
  std::vector<std::vector<std::size_t>> all;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t left) {
    if (!cur.empty()) all.push_back(cur);
    for (std::size_t n = 2; n <= left; ++n) {
      cur.push_back(n);
      rec(left - n);
      cur.pop_back();
    }
  };
  rec(max_total);
  return all;
}

std::string join(const std::vector<std::size_t>& xs) {
  std::string s;
  for (auto x : xs) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

Fan fan_of(std::size_t rank, std::initializer_list<std::initializer_list<long>> rays,
           std::vector<Cone> cones) {
  std::vector<IntVector> r;
  for (auto row : rays) r.push_back(vec(row));
  return make_fan(rank, r, cones);
}

// ---------------------------------------------------------------------------

Outcome diagonal_subgroup() {
  Outcome out;
  auto cert = certificate({2, 2}, relations(2, {{1, -1}}));
  check_hyperplane(out, character_lattice(cert.sizes, cert.subgroup), vec({1, 1, 1, 1}));
  auto r = property_report(cert);
  out.require(!r.projective, "projective");
  out.require(!r.quasiaffine, "quasiaffine");
  out.require(!r.has_nonconstant_regular_functions, "regular functions");
  out.require(r.dimension == 3, "dimension " + std::to_string(r.dimension));
  out.require(r.class_group == group({0}), "class group " + r.class_group.to_string());
  return out;
}

Outcome quadric_cone() {
  Outcome out;
  auto cert = certificate({2, 2}, relations(2, {{1, 1}}));
  auto ms = character_lattice(cert.sizes, cert.subgroup);
  check_hyperplane(out, ms, vec({1, 1, -1, -1}));
  auto r = property_report(cert);
  out.require(r.quasiaffine, "not quasiaffine");
  out.require(r.quasiaffine_witness.has_value(), "no witness");
  if (r.quasiaffine_witness) {
    const auto& w = *r.quasiaffine_witness;
    bool positive = true;
    for (const auto& x : w) positive = positive && sgn(x) > 0;
    out.require(positive, "witness " + to_string(w) + " not positive");
    out.require(ms.contains(w), "witness " + to_string(w) + " not in M_S");
  }
  out.require(r.dimension == 3, "dimension " + std::to_string(r.dimension));
  return out;
}

Outcome product_of_projective_spaces() {
  Outcome out;
  GroupSizes sizes({2, 3});
  auto q = quotient_fan(sizes, SubgroupSpec{SublatticeBasis(2)});
  out.require(fan_equal(q.fan, projective_product_fan(sizes)), "quotient differs from P^1 x P^2 fan");
  auto cert = certificate_for_quotient(q);
  out.require(is_projective(cert), "is_projective false");
  out.require(has_full_dim_cone(q.fan), "no full-dimensional cone");
  out.require(property_report(cert).has_torus_fixed_point, "no torus fixed point");
  return out;
}

Outcome roundtrip() {
  Outcome out;
  auto report = run_roundtrip(500, 20261016, RoundtripLimits{});
  out.require(report.failures.empty(),
              std::to_string(report.failures.size()) + " failures" +
                  (report.failures.empty() ? "" : ", first: " + report.failures.front().detail));
  out.require(report.accepted == 500 && report.verified == 500,
              "accepted " + std::to_string(report.accepted) + ", verified " + std::to_string(report.verified));
  out.detail = out.ok ? "500/500 verified, " + std::to_string(report.projective) + " projective, " +
                            std::to_string(report.finite_quotients) + " finite S"
                      : out.detail;
  return out;
}

Outcome rejections() {
  Outcome out;
  struct Case {
    std::string name;
    Fan fan;
    std::vector<RejectionReason> allowed;
  };
  std::vector<Case> cases;
  cases.push_back({"P1 x A1", fan_of(2, {{1, 0}, {-1, 0}, {0, 1}}, {{0, 2}, {1, 2}}),
                   {RejectionReason::NonfacesDontPartition}});
  cases.push_back({"blown-up P2", fan_of(2, {{1, 0}, {0, 1}, {-1, -1}, {1, 1}}, {{0, 3}, {3, 1}, {1, 2}, {2, 0}}),
                   {RejectionReason::ExtraCone, RejectionReason::NonfacesDontPartition}});
  cases.push_back({"rays (1,0),(1,4)", fan_of(2, {{1, 0}, {1, 4}}, {{0}, {1}}),
                   {RejectionReason::OverlatticeConditionFailed}});
  std::ostringstream summary;
  for (const auto& c : cases) {
    auto result = classify(c.fan);
    auto* rej = std::get_if<Rejection>(&result);
    if (!rej) {
      out.require(false, c.name + " accepted");
      continue;
    }
    bool allowed = false;
    for (auto r : c.allowed) allowed = allowed || r == rej->reason;
    summary << (summary.tellp() ? "; " : "") << c.name << " -> " << to_string(rej->reason);
    out.require(allowed, c.name + " rejected with " + to_string(rej->reason) + " (" + rej->detail + ")");
    out.require(rejection_witness_holds(c.fan, *rej), c.name + " witness does not re-validate");
  }
  if (out.ok) out.detail = summary.str();
  return out;
}

Outcome cone_counts() {
  Outcome out;
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<long> entry(-3, 3);
  std::size_t fans = 0;
  for (const auto& s : all_sizes(12)) {
    GroupSizes sizes(s);
    std::size_t expected = 1;
    for (auto n : s) expected *= (std::size_t{1} << n) - 1;
    out.require(punctured_fan(sizes).cones().size() == expected, "punctured fan " + join(s));

    const std::size_t m = s.size();
    std::vector<IntVector> random_gens;
    for (std::size_t k = 0; k < 1 + m / 2; ++k) {
      IntVector g;
      for (std::size_t j = 0; j < m; ++j) g.emplace_back(entry(rng));
      random_gens.push_back(std::move(g));
    }
    std::vector<IntVector> diagonal{IntVector(m, Integer(1))};
    for (const auto& subgroup : {SubgroupSpec{SublatticeBasis(m)}, SubgroupSpec{SublatticeBasis::full(m)},
                                 SubgroupSpec::from_generators(m, diagonal),
                                 SubgroupSpec::from_generators(m, random_gens)}) {
      auto q = quotient_fan(sizes, subgroup);
      ++fans;
      out.require(q.fan.cones().size() == expected, "quotient of " + join(s) + " has " +
                                                        std::to_string(q.fan.cones().size()) + " cones");
      out.require(q.fan.rays().size() == sizes.total(), "quotient of " + join(s) + " lost rays");
    }
  }
  if (out.ok) out.detail = std::to_string(fans) + " quotient fans";
  return out;
}

Outcome complement_dimensions() {
  Outcome out;
  for (const auto& s : all_sizes(12)) {
    GroupSizes sizes(s);
    auto comps = complement_components(sizes);
    out.require(comps.size() == s.size(), "component count for " + join(s));
    for (std::size_t j = 0; j < comps.size() && j < s.size(); ++j) {
      out.require(comps[j].group == j + 1, "group label for " + join(s));
      out.require(sizes.total() - comps[j].dimension == s[j], "n_j mismatch for " + join(s));
      out.require(comps[j].dimension + 2 <= sizes.total(), "component too large for " + join(s));
    }
  }
  return out;
}

Outcome stiemke() {
  Outcome out;
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> entry(-3, 3);
  std::size_t positive = 0, dual = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t d = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    std::size_t k = std::uniform_int_distribution<std::size_t>(0, d)(rng);
    // Mix in a nonnegative generator now and then so both outcomes occur.
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < k; ++i) {
      IntVector g;
      bool shift = std::uniform_int_distribution<int>(0, 2)(rng) == 0;
      for (std::size_t j = 0; j < d; ++j) g.emplace_back(shift ? entry(rng) + 3 : entry(rng));
      gens.push_back(std::move(g));
    }
    auto lattice = row_span(gens, d);
    auto p = strictly_positive_in_span(lattice);
    auto annihilating = annihilator(lattice);
    auto n = nonneg_nonzero_in_span(annihilating);
    if (p.has_value() == n.has_value()) {
      out.require(false, "trial " + std::to_string(trial) + ": both or neither alternative");
      continue;
    }
    if (p) {
      ++positive;
      bool good = lattice.contains(*p);
      for (const auto& x : *p) good = good && sgn(x) > 0;
      out.require(good, "bad positive witness " + to_string(*p));
    } else {
      ++dual;
      bool good = annihilating.contains(*n) && !is_zero(*n);
      for (const auto& x : *n) good = good && sgn(x) >= 0;
      out.require(good, "bad nonnegative witness " + to_string(*n));
    }
  }
  if (out.ok) out.detail = std::to_string(positive) + " positive, " + std::to_string(dual) + " dual";
  return out;
}

Outcome normal_forms() {
  Outcome out;
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> entry(-9, 9);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int trial = 0; trial < 1000 && out.ok; ++trial) {
    IntMatrix m(dim(rng), dim(rng));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);

    auto h = hermite_normal_form(m);
    out.require(h.transform * m == h.hermite, "U*M != H for " + m.to_string());
    out.require(abs(determinant(h.transform)) == 1, "U not unimodular for " + m.to_string());
    out.require(is_hermite_normal_form(h.hermite), "H not in Hermite form for " + m.to_string());

    auto s = smith_normal_form(m);
    out.require(s.left * m * s.right == s.diagonal, "U*M*V != D for " + m.to_string());
    out.require(abs(determinant(s.left)) == 1 && abs(determinant(s.right)) == 1,
                "SNF transforms not unimodular for " + m.to_string());
    const std::size_t r = std::min(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (i != j) out.require(sgn(s.diagonal(i, j)) == 0, "D not diagonal for " + m.to_string());
    for (std::size_t i = 0; i < r; ++i) {
      out.require(sgn(s.diagonal(i, i)) >= 0, "negative invariant for " + m.to_string());
      if (i + 1 < r)
        out.require(sgn(s.diagonal(i + 1, i + 1)) == 0 ||
                        (sgn(s.diagonal(i, i)) != 0 && mpz_divisible_p(s.diagonal(i + 1, i + 1).get_mpz_t(),
                                                                       s.diagonal(i, i).get_mpz_t())),
                    "divisibility chain broken for " + m.to_string());
    }
  }
  return out;
}

Outcome mu2_golden() {
  Outcome out;
  auto q = quotient_fan(GroupSizes({2}), relations(1, {{2}}));
  auto rays = canonical_form(q.fan).rays();
  out.require(rays == std::vector<IntVector>{vec({1, 0}), vec({1, 2})}, "rays differ");
  out.require(!has_full_dim_cone(q.fan), "has a 2-cone");
  auto report = property_report(certificate_for_quotient(q));
  out.require(report.class_group == group({2}), "class group " + report.class_group.to_string());
  out.require(report.quasiaffine, "not quasiaffine");
  auto result = classify(q.fan);
  auto* cert = std::get_if<HomogeneityCertificate>(&result);
  out.require(cert != nullptr, "classify rejected the quotient");
  if (cert) {
    out.require(cert->sizes == GroupSizes({2}), "sizes differ");
    out.require(cert->subgroup == relations(1, {{2}}), "A differs");
    out.require(verify_certificate(q.fan, *cert), "certificate does not verify");
  }
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_seconds;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"diagonal subgroup of C(2,2)", 1, diagonal_subgroup},
      {"quadric cone quotient of C(2,2)", 1, quadric_cone},
      {"C(2,3)/S is P1 x P2", 1, product_of_projective_spaces},
      {"random quotient round trip", 60, roundtrip},
      {"rejection suite", 1, rejections},
      {"cone-count conservation", 10, cone_counts},
      {"complement component dimensions", 1, complement_dimensions},
      {"Stiemke exclusivity", 30, stiemke},
      {"normal form identities", 30, normal_forms},
      {"mu_2 quotient golden", 1, mu2_golden},
  };

  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome out;
    auto start = std::chrono::steady_clock::now();
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.ok = false;
      out.detail = std::string("exception: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.ok && seconds >= c.limit_seconds) {
      out.ok = false;
      out.detail = "took longer than " + std::to_string(c.limit_seconds) + " s";
    }
    failed += !out.ok;
    std::printf("%s  %2d  %-34s %7.3fs / %gs  %s\n", out.ok ? "PASS" : "FAIL", index, c.name, seconds,
                c.limit_seconds, out.detail.c_str());
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}

#include "homtoric/core/homogeneity.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <unordered_set>

namespace homtoric {
namespace {

constexpr std::array<std::pair<RejectionReason, const char*>, 8> kReasonNames{{
    {RejectionReason::RaysDontSpan, "RAYS_DONT_SPAN"},
    {RejectionReason::NotSimplicial, "NOT_SIMPLICIAL"},
    {RejectionReason::NonfacesDontPartition, "NONFACES_DONT_PARTITION"},
    {RejectionReason::GroupTooSmall, "GROUP_TOO_SMALL"},
    {RejectionReason::MissingCone, "MISSING_CONE"},
    {RejectionReason::ExtraCone, "EXTRA_CONE"},
    {RejectionReason::RelationConditionFailed, "RELATION_CONDITION_FAILED"},
    {RejectionReason::OverlatticeConditionFailed, "OVERLATTICE_CONDITION_FAILED"},
}};

std::string set_string(const std::vector<std::size_t>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out + "}";
}

bool lex_less(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const Integer& x, const Integer& y) { return cmp(x, y) < 0; });
}

bool contains_all(const Cone& haystack, const std::vector<std::size_t>& needles) {
  return std::includes(haystack.begin(), haystack.end(), needles.begin(), needles.end());
}

IntMatrix ray_columns(const Fan& fan) { return IntMatrix::from_columns(fan.rays(), fan.rank()); }

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Gauss-Jordan inverse over Q; the input must be square and invertible.
std::vector<std::vector<Rational>> rational_inverse(const std::vector<std::vector<Rational>>& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> m = a;
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (sgn(m[p][c]) == 0) ++p;
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    Rational f = 1 / m[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      m[c][k] *= f;
      inv[c][k] *= f;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(m[i][c]) == 0) continue;
      Rational g = m[i][c];
      for (std::size_t k = 0; k < n; ++k) {
        m[i][k] -= g * m[c][k];
        inv[i][k] -= g * inv[c][k];
      }
    }
  }
  return inv;
}

std::uint64_t mask_of(const Cone& c) {
  std::uint64_t m = 0;
  for (auto i : c) m |= std::uint64_t{1} << i;
  return m;
}

Cone cone_of(std::uint64_t mask) {
  Cone c;
  for (std::size_t i = 0; mask; ++i, mask >>= 1)
    if (mask & 1) c.push_back(i);
  return c;
}

}  // namespace

const char* to_string(RejectionReason reason) {
  for (const auto& [r, name] : kReasonNames)
    if (r == reason) return name;
  return "UNKNOWN";
}

std::optional<RejectionReason> rejection_reason_from_string(const std::string& name) {
  for (const auto& [r, n] : kReasonNames)
    if (name == n) return r;
  return std::nullopt;
}

std::vector<Cone> minimal_nonfaces(const Fan& fan, std::size_t max_rays) {
  const std::size_t n = fan.rays().size();
  if (n > max_rays || n > 63)
    throw ClassificationLimitError("fan has " + std::to_string(n) + " rays, limit is " +
                                   std::to_string(std::min<std::size_t>(max_rays, 63)));
  std::unordered_set<std::uint64_t> cones;
  for (const auto& c : fan.cones()) cones.insert(mask_of(c));

  // Level-wise growth: a set all of whose facets are faces is either a face
  // or a minimal non-face.
  std::vector<std::uint64_t> level{0};
  std::vector<Cone> out;
  while (!level.empty()) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t face : level) {
      const std::size_t start = face == 0 ? 0 : 64 - static_cast<std::size_t>(__builtin_clzll(face));
      for (std::size_t j = start; j < n; ++j) {
        const std::uint64_t candidate = face | (std::uint64_t{1} << j);
        bool facets_are_faces = true;
        for (std::uint64_t rest = face; rest && facets_are_faces; rest &= rest - 1) {
          std::uint64_t bit = rest & (~rest + 1);
          if (!cones.count(candidate & ~bit)) facets_are_faces = false;
        }
        if (!facets_are_faces) continue;
        if (cones.count(candidate))
          next.push_back(candidate);
        else
          out.push_back(cone_of(candidate));
      }
    }
    level = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::variant<GroupPartition, Rejection> recognize_partition(const Fan& fan, std::size_t max_rays) {
  const auto& rays = fan.rays();
  const std::size_t n = rays.size();
  auto span = row_span(rays, fan.rank());
  if (span.rank() != fan.rank()) {
    IntVector functional = annihilator(span).basis().front();
    return Rejection{RejectionReason::RaysDontSpan,
                     "rays span a sublattice of rank " + std::to_string(span.rank()) +
                         " in rank " + std::to_string(fan.rank()) + "; " + to_string(functional) +
                         " vanishes on every ray",
                     {},
                     functional};
  }
  if (n == 0)
    return Rejection{RejectionReason::NonfacesDontPartition, "fan has no rays", {}, {}};

  auto nonfaces = minimal_nonfaces(fan, max_rays);
  std::vector<std::size_t> cover(n, 0);
  for (const auto& nf : nonfaces)
    for (auto i : nf) ++cover[i];
  for (std::size_t i = 0; i < n; ++i) {
    if (cover[i] == 1) continue;
    return Rejection{RejectionReason::NonfacesDontPartition,
                     "ray " + std::to_string(i) + " " + to_string(rays[i]) + " lies in " +
                         std::to_string(cover[i]) + " minimal non-faces",
                     {i},
                     {}};
  }
  for (const auto& nf : nonfaces)
    if (nf.size() < 2)
      return Rejection{RejectionReason::GroupTooSmall,
                       "ray " + std::to_string(nf.front()) + " alone is a minimal non-face",
                       nf,
                       {}};

  GroupPartition p;
  p.groups = nonfaces;
  for (auto& g : p.groups)
    std::sort(g.begin(), g.end(), [&](std::size_t a, std::size_t b) { return lex_less(rays[a], rays[b]); });
  std::sort(p.groups.begin(), p.groups.end(), [&](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return lex_less(rays[a.front()], rays[b.front()]);
  });

  for (const auto& c : fan.cones())
    for (const auto& g : p.groups)
      if (contains_all(c, sorted(g)))
        return Rejection{RejectionReason::ExtraCone,
                         "cone " + set_string(c) + " contains the whole group " + set_string(sorted(g)),
                         c,
                         {}};

  // Every product of proper subsets of the groups has to be a cone.
  std::vector<Cone> partial{Cone{}};
  for (const auto& g : p.groups) {
    std::vector<Cone> next;
    for (unsigned long mask = 0; mask + 1 < (1UL << g.size()); ++mask)
      for (const auto& c : partial) {
        Cone bigger = c;
        for (std::size_t k = 0; k < g.size(); ++k)
          if (mask & (1UL << k)) bigger.push_back(g[k]);
        next.push_back(std::move(bigger));
      }
    partial = std::move(next);
  }
  for (auto& c : partial) {
    std::sort(c.begin(), c.end());
    if (!fan.has_cone(c))
      return Rejection{RejectionReason::MissingCone,
                       "ray set " + set_string(c) + " contains no group but is not a cone",
                       c,
                       {}};
  }

  for (const auto& g : p.groups) {
    IntVector q(fan.rank(), Integer(0));
    for (auto i : g)
      for (std::size_t k = 0; k < q.size(); ++k) q[k] += rays[i][k];
    p.q_vectors.push_back(std::move(q));
  }
  p.n0_basis = std::move(span);
  return p;
}

std::optional<IntVector> find_relation_violation(const Fan& fan, const GroupPartition& partition) {
  auto relations = kernel(ray_columns(fan));
  for (const auto& v : relations.basis())
    for (const auto& g : partition.groups)
      for (auto i : g)
        if (v[i] != v[g.front()]) return v;
  return std::nullopt;
}

bool check_relations(const Fan& fan, const GroupPartition& partition) {
  return !find_relation_violation(fan, partition).has_value();
}

std::optional<std::size_t> find_overlattice_violation(const Fan& fan, const GroupPartition& partition) {
  // Project along Q_Q with a saturated integer map; the condition holds iff N
  // and N_0 have the same image.
  auto q_span = row_span(partition.q_vectors, fan.rank());
  IntMatrix projection = annihilator(q_span).matrix();
  std::vector<IntVector> ray_images;
  for (const auto& r : fan.rays()) ray_images.push_back(projection.apply(r));
  auto n0_image = row_span(ray_images, projection.rows());
  for (std::size_t i = 0; i < fan.rank(); ++i)
    if (!n0_image.contains(projection.column(i))) return i;
  return std::nullopt;
}

bool check_overlattice(const Fan& fan, const GroupPartition& partition) {
  return !find_overlattice_violation(fan, partition).has_value();
}

std::optional<IntMatrix> solve_identification(const Fan& fan, const QuotientPresentation& quotient,
                                              const std::vector<std::size_t>& ray_assignment) {
  const std::size_t d = quotient.sizes.total();
  const std::size_t r = quotient.projection.rows();
  if (ray_assignment.size() != d || fan.rays().size() != d || fan.rank() != r) return std::nullopt;
  {
    std::vector<bool> hit(d, false);
    for (auto i : ray_assignment) {
      if (i >= d || hit[i]) return std::nullopt;
      hit[i] = true;
    }
  }

  std::vector<IntVector> sources;
  for (std::size_t i = 0; i < d; ++i) sources.push_back(primitive(quotient.projection.column(i)));

  // r independent quotient rays fix the map.
  std::vector<std::size_t> chosen;
  std::vector<IntVector> picked;
  for (std::size_t i = 0; i < d && chosen.size() < r; ++i) {
    picked.push_back(sources[i]);
    if (matrix_rank(IntMatrix::from_rows(picked, r)) == picked.size())
      chosen.push_back(i);
    else
      picked.pop_back();
  }
  if (chosen.size() != r) return std::nullopt;

  std::vector<std::vector<Rational>> x(r, std::vector<Rational>(r));
  for (std::size_t row = 0; row < r; ++row)
    for (std::size_t col = 0; col < r; ++col) x[row][col] = sources[chosen[col]][row];
  auto x_inv = rational_inverse(x);

  IntMatrix psi(r, r);
  for (std::size_t row = 0; row < r; ++row)
    for (std::size_t col = 0; col < r; ++col) {
      Rational v = 0;
      for (std::size_t k = 0; k < r; ++k) v += Rational(fan.rays()[ray_assignment[chosen[k]]][row]) * x_inv[k][col];
      v.canonicalize();
      if (v.get_den() != 1) return std::nullopt;
      psi(row, col) = v.get_num();
    }
  for (std::size_t i = 0; i < d; ++i)
    if (psi.apply(sources[i]) != fan.rays()[ray_assignment[i]]) return std::nullopt;
  Integer det = determinant(psi);
  if (det != 1 && det != -1) return std::nullopt;
  return psi;
}

bool verify_certificate(const Fan& fan, const HomogeneityCertificate& certificate) {
  if (certificate.subgroup.group_count() != certificate.sizes.group_count()) return false;
  QuotientPresentation q;
  try {
    q = quotient_fan(certificate.sizes, certificate.subgroup);
  } catch (const std::exception&) {
    return false;
  }
  auto psi = solve_identification(fan, q, certificate.ray_assignment);
  if (!psi || *psi != certificate.identification) return false;

  std::set<Cone> mapped;
  for (const auto& c : q.fan.cones()) {
    Cone m;
    for (auto i : c) m.push_back(certificate.ray_assignment[i]);
    std::sort(m.begin(), m.end());
    mapped.insert(std::move(m));
  }
  return mapped == fan.cones();
}

HomogeneityCertificate certificate_for_quotient(const QuotientPresentation& quotient) {
  HomogeneityCertificate c;
  c.sizes = quotient.sizes;
  c.subgroup = quotient.subgroup;
  c.ray_assignment.resize(quotient.sizes.total());
  std::iota(c.ray_assignment.begin(), c.ray_assignment.end(), 0);
  c.identification = IntMatrix::identity(quotient.projection.rows());
  return c;
}

ClassifyResult classify(const Fan& fan, std::size_t max_rays) {
  auto recognized = recognize_partition(fan, max_rays);
  if (auto* rejection = std::get_if<Rejection>(&recognized)) return *rejection;
  const auto& partition = std::get<GroupPartition>(recognized);

  if (auto relation = find_relation_violation(fan, partition))
    return Rejection{RejectionReason::RelationConditionFailed,
                     "relation " + to_string(*relation) +
                         " among the rays is not a combination of group sums",
                     {},
                     *relation};
  if (auto basis_index = find_overlattice_violation(fan, partition)) {
    IntVector e(fan.rank(), Integer(0));
    e[*basis_index] = 1;
    return Rejection{RejectionReason::OverlatticeConditionFailed,
                     "basis vector " + to_string(e) + " is not in N0 + Q_Q",
                     {*basis_index},
                     e};
  }

  std::vector<std::size_t> sizes;
  HomogeneityCertificate cert;
  for (const auto& g : partition.groups) {
    sizes.push_back(g.size());
    cert.ray_assignment.insert(cert.ray_assignment.end(), g.begin(), g.end());
  }
  cert.sizes = GroupSizes(sizes);

  // Characters pulled back along e_i -> assigned ray give M_S; pushing them
  // through the degree map gives the characters of (k^*)^m trivial on S.
  std::vector<IntVector> assigned;
  for (auto i : cert.ray_assignment) assigned.push_back(fan.rays()[i]);
  IntMatrix phi = IntMatrix::from_columns(assigned, fan.rank());
  auto pulled_back = row_span(phi);
  cert.subgroup = SubgroupSpec{image(degree_matrix(cert.sizes), pulled_back)};

  QuotientPresentation q;
  try {
    q = quotient_fan(cert.sizes, cert.subgroup);
  } catch (const std::exception& e) {
    throw std::logic_error(std::string("INTERNAL_ROUNDTRIP_FAILURE: quotient construction failed: ") + e.what());
  }
  auto psi = solve_identification(fan, q, cert.ray_assignment);
  if (!psi) throw std::logic_error("INTERNAL_ROUNDTRIP_FAILURE: no unimodular identification");
  cert.identification = std::move(*psi);
  if (!verify_certificate(fan, cert))
    throw std::logic_error("INTERNAL_ROUNDTRIP_FAILURE: certificate does not reproduce the fan");
  return cert;
}

std::vector<std::vector<std::string>> acting_group_options(const GroupSizes& sizes) {
  std::vector<std::vector<std::string>> out;
  for (auto n : sizes.sizes()) {
    std::vector<std::string> options{"SL(" + std::to_string(n) + ")"};
    if (n % 2 == 0) options.push_back("Sp(" + std::to_string(n) + ")");
    out.push_back(std::move(options));
  }
  return out;
}

bool rejection_witness_holds(const Fan& fan, const Rejection& rejection, std::size_t max_rays) {
  const auto& rays = fan.rays();
  switch (rejection.reason) {
    case RejectionReason::RaysDontSpan: {
      if (rejection.vector.size() != fan.rank() || is_zero(rejection.vector)) return false;
      return std::all_of(rays.begin(), rays.end(),
                         [&](const IntVector& r) { return dot(r, rejection.vector) == 0; });
    }
    case RejectionReason::NotSimplicial:
      return false;  // valid Fan objects are simplicial by construction
    case RejectionReason::NonfacesDontPartition: {
      if (rays.empty()) return rejection.rays.empty();
      if (rejection.rays.size() != 1 || rejection.rays.front() >= rays.size()) return false;
      std::size_t count = 0;
      for (const auto& nf : minimal_nonfaces(fan, max_rays))
        count += std::binary_search(nf.begin(), nf.end(), rejection.rays.front());
      return count != 1;
    }
    case RejectionReason::GroupTooSmall:
      return rejection.rays.size() == 1 && rejection.rays.front() < rays.size() &&
             !fan.has_cone(rejection.rays);
    case RejectionReason::MissingCone:
    case RejectionReason::ExtraCone: {
      Cone c = sorted(rejection.rays);
      auto nonfaces = minimal_nonfaces(fan, max_rays);
      bool has_group = std::any_of(nonfaces.begin(), nonfaces.end(),
                                   [&](const Cone& nf) { return contains_all(c, nf); });
      if (rejection.reason == RejectionReason::MissingCone) return !has_group && !fan.has_cone(c);
      return has_group && fan.has_cone(c);
    }
    case RejectionReason::RelationConditionFailed: {
      const auto& v = rejection.vector;
      if (v.size() != rays.size()) return false;
      IntVector sum(fan.rank(), Integer(0));
      for (std::size_t i = 0; i < rays.size(); ++i)
        for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += v[i] * rays[i][k];
      if (!is_zero(sum)) return false;
      for (const auto& g : minimal_nonfaces(fan, max_rays))
        for (auto i : g)
          if (v[i] != v[g.front()]) return true;
      return false;
    }
    case RejectionReason::OverlatticeConditionFailed: {
      // e_i in N_0 + Q_Q  iff  e_i in N_0 + (Q_Q intersected with Z^rank).
      if (rejection.rays.size() != 1 || rejection.rays.front() >= fan.rank()) return false;
      std::vector<IntVector> q_vectors;
      for (const auto& g : minimal_nonfaces(fan, max_rays)) {
        IntVector q(fan.rank(), Integer(0));
        for (auto i : g)
          for (std::size_t k = 0; k < q.size(); ++k) q[k] += rays[i][k];
        q_vectors.push_back(std::move(q));
      }
      auto saturated_q = saturation_and_index(row_span(q_vectors, fan.rank())).saturated;
      std::vector<IntVector> generators = rays;
      for (const auto& b : saturated_q.basis()) generators.push_back(b);
      IntVector e(fan.rank(), Integer(0));
      e[rejection.rays.front()] = 1;
      return !row_span(generators, fan.rank()).contains(e);
    }
  }
  return false;
}

}  // namespace homtoric

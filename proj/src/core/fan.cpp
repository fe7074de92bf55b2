#include "homtoric/core/fan.hpp"

#include "homtoric/core/feasibility.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>

namespace homtoric {

const char* to_string(FanErrorCode code) {
  switch (code) {
    case FanErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case FanErrorCode::NonPrimitiveRay: return "NON_PRIMITIVE_RAY";
    case FanErrorCode::DuplicateRay: return "DUPLICATE_RAY";
    case FanErrorCode::NotSimplicial: return "NOT_SIMPLICIAL";
    case FanErrorCode::BadIntersection: return "BAD_INTERSECTION";
    case FanErrorCode::IndexOutOfRange: return "INDEX_OUT_OF_RANGE";
    case FanErrorCode::ImageNotFan: return "IMAGE_NOT_FAN";
    case FanErrorCode::ZeroImageRay: return "ZERO_IMAGE_RAY";
  }
  return "UNKNOWN";
}

FanError::FanError(FanErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(homtoric::to_string(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

namespace {

std::string cone_string(const Cone& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s + "}";
}

bool lex_less(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const Integer& x, const Integer& y) { return cmp(x, y) < 0; });
}

std::size_t rank_of(const std::vector<IntVector>& rays, const Cone& cone, std::size_t dim) {
  std::vector<IntVector> rows;
  rows.reserve(cone.size());
  for (auto i : cone) rows.push_back(rays[i]);
  return matrix_rank(IntMatrix::from_rows(rows, dim));
}

void add_faces(const Cone& cone, std::set<Cone>& out) {
  if (!out.insert(cone).second) return;
  for (std::size_t skip = 0; skip < cone.size(); ++skip) {
    Cone face;
    face.reserve(cone.size() - 1);
    for (std::size_t k = 0; k < cone.size(); ++k)
      if (k != skip) face.push_back(cone[k]);
    add_faces(face, out);
  }
}

// Face closure of simplicial cones; subsets are enumerated as bitmasks when
// the ray indices fit in a machine word.
std::set<Cone> face_closure(const std::vector<Cone>& tops, std::size_t ray_count) {
  std::set<Cone> out{Cone{}};
  if (ray_count > 64) {
    for (const auto& c : tops) add_faces(c, out);
    return out;
  }
  std::vector<std::uint64_t> masks;
  for (const auto& c : tops) {
    std::uint64_t full = 0;
    for (auto i : c) full |= std::uint64_t{1} << i;
    for (std::uint64_t sub = full; sub != 0; sub = (sub - 1) & full) masks.push_back(sub);
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  for (auto mask : masks) {
    Cone c;
    for (std::size_t i = 0; mask; ++i, mask >>= 1)
      if (mask & 1) c.push_back(i);
    out.insert(std::move(c));
  }
  return out;
}

}  // namespace

std::size_t Fan::max_cone_dimension() const {
  std::size_t best = 0;
  for (const auto& c : cones_) best = std::max(best, c.size());
  return best;
}

namespace {

// Two simplicial cones fail to meet in a common face exactly when some
// relation is supported on their union, nonnegative on the rays only in
// `first`, nonpositive on the rays only in `second`, and nonzero on the
// former. Relations are parameterized by a kernel basis; rel[j][i] is the
// coefficient of ray i in basis relation j.
template <typename System, typename Entry>
bool meet_properly_via_relations(const std::vector<std::vector<Entry>>& relations,
                                 std::size_t ray_count, const Cone& first, const Cone& second) {
  if (relations.empty()) return true;
  std::vector<int> role(ray_count, 0);  // 0 outside, 1 only first, 2 only second, 3 both
  for (auto i : first) role[i] |= 1;
  for (auto i : second) role[i] |= 2;
  if (std::find(role.begin(), role.end(), 1) == role.end() ||
      std::find(role.begin(), role.end(), 2) == role.end())
    return true;

  const std::size_t k = relations.size();
  System sys;
  sys.variables = k;
  sys.inequalities.reserve(first.size() + second.size());
  sys.equalities.reserve(ray_count + 1);
  typename decltype(sys.equalities)::value_type weight;
  weight.coefficients.assign(k, 0);
  weight.bound = 1;
  for (std::size_t i = 0; i < ray_count; ++i) {
    if (role[i] == 3) continue;
    typename decltype(sys.equalities)::value_type c;
    c.coefficients.reserve(k);
    for (const auto& rel : relations) c.coefficients.emplace_back(role[i] == 2 ? -rel[i] : rel[i]);
    c.bound = 0;
    if (role[i] == 0) {
      sys.equalities.push_back(std::move(c));
    } else {
      if (role[i] == 1)
        for (std::size_t j = 0; j < k; ++j) weight.coefficients[j] += c.coefficients[j];
      sys.inequalities.push_back(std::move(c));
    }
  }
  sys.equalities.push_back(std::move(weight));
  return !find_feasible_point(sys).has_value();
}

// Rank by fraction-free elimination; nullopt on overflow.
std::optional<std::size_t> word_rank(std::vector<std::vector<std::int64_t>> a, std::size_t cols) {
  std::int64_t prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[r], a[p]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        std::int64_t x, y, num;
        if (__builtin_mul_overflow(a[i][j], a[r][c], &x) || __builtin_mul_overflow(a[i][c], a[r][j], &y) ||
            __builtin_sub_overflow(x, y, &num))
          return std::nullopt;
        a[i][j] = num / prev;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

// Relation data in the narrowest representation that holds it.
class RayRelations {
 public:
  RayRelations(const std::vector<IntVector>& rays, std::size_t dim) {
    auto basis = kernel(IntMatrix::from_columns(rays, dim)).basis();
    ray_count_ = rays.size();
    bool fits = true;
    for (const auto& v : basis)
      for (const auto& x : v) fits = fits && x.fits_slong_p() && abs(x) < (Integer(1) << 20);
    if (fits) {
      for (const auto& v : basis) {
        std::vector<std::int64_t> w;
        for (const auto& x : v) w.push_back(x.get_si());
        words_.push_back(std::move(w));
      }
    } else {
      for (const auto& v : basis) big_.emplace_back(v.begin(), v.end());
    }
  }

  bool empty() const { return words_.empty() && big_.empty(); }

  // Whether the rays of `cone` are linearly independent, i.e. no nonzero
  // relation is supported on the cone; nullopt if undecided in machine words.
  std::optional<bool> independent(const Cone& cone) const {
    if (empty()) return true;
    if (words_.empty()) return std::nullopt;
    std::vector<bool> inside(ray_count_, false);
    for (auto i : cone) inside[i] = true;
    std::vector<std::vector<std::int64_t>> rows;
    for (std::size_t i = 0; i < ray_count_; ++i) {
      if (inside[i]) continue;
      std::vector<std::int64_t> row;
      for (const auto& rel : words_) row.push_back(rel[i]);
      rows.push_back(std::move(row));
    }
    auto r = word_rank(std::move(rows), words_.size());
    if (!r) return std::nullopt;
    return *r == words_.size();
  }

  bool meet_properly(const Cone& first, const Cone& second) const {
    if (!words_.empty())
      return meet_properly_via_relations<WordSystem>(words_, ray_count_, first, second);
    return meet_properly_via_relations<LinearSystem>(big_, ray_count_, first, second);
  }

 private:
  std::size_t ray_count_ = 0;
  std::vector<std::vector<std::int64_t>> words_;
  std::vector<std::vector<Rational>> big_;
};

}  // namespace

bool cones_meet_properly(const std::vector<IntVector>& rays, const Cone& first,
                         const Cone& second) {
  if (rays.empty()) return true;
  Cone all;
  std::set_union(first.begin(), first.end(), second.begin(), second.end(), std::back_inserter(all));
  std::vector<IntVector> sub;
  for (auto i : all) sub.push_back(rays[i]);
  RayRelations relations(sub, rays.front().size());
  // Relabel both cones into positions within `all`.
  auto local = [&](const Cone& c) {
    Cone out;
    for (auto i : c) out.push_back(std::lower_bound(all.begin(), all.end(), i) - all.begin());
    return out;
  };
  return relations.meet_properly(local(first), local(second));
}

Fan make_fan(std::size_t rank, std::vector<IntVector> rays, const std::vector<Cone>& maximal_cones) {
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (rays[i].size() != rank)
      throw FanError(FanErrorCode::DimensionMismatch,
                     "ray " + std::to_string(i) + " has length " + std::to_string(rays[i].size()) +
                         ", expected " + std::to_string(rank));
    if (content(rays[i]) != 1)
      throw FanError(FanErrorCode::NonPrimitiveRay,
                     "ray " + std::to_string(i) + " " + to_string(rays[i]) + " is not primitive");
  }
  {
    std::map<IntVector, std::size_t, bool (*)(const IntVector&, const IntVector&)> seen(lex_less);
    for (std::size_t i = 0; i < rays.size(); ++i) {
      auto [it, inserted] = seen.emplace(rays[i], i);
      if (!inserted)
        throw FanError(FanErrorCode::DuplicateRay, "rays " + std::to_string(it->second) + " and " +
                                                       std::to_string(i) + " coincide");
    }
  }

  const RayRelations relations(rays, rank);
  std::vector<Cone> tops;
  tops.reserve(maximal_cones.size());
  for (std::size_t k = 0; k < maximal_cones.size(); ++k) {
    Cone c = maximal_cones[k];
    for (auto i : c)
      if (i >= rays.size())
        throw FanError(FanErrorCode::IndexOutOfRange, "cone " + std::to_string(k) +
                                                          " refers to ray " + std::to_string(i) +
                                                          " of " + std::to_string(rays.size()));
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    auto independent = relations.independent(c);
    if (independent ? !*independent : rank_of(rays, c, rank) != c.size())
      throw FanError(FanErrorCode::NotSimplicial,
                     "cone " + cone_string(c) + " has linearly dependent rays");
    tops.push_back(std::move(c));
  }
  std::sort(tops.begin(), tops.end());
  tops.erase(std::unique(tops.begin(), tops.end()), tops.end());

  for (std::size_t a = 0; a < tops.size() && !relations.empty(); ++a)
    for (std::size_t b = a + 1; b < tops.size(); ++b)
      if (!relations.meet_properly(tops[a], tops[b]))
        throw FanError(FanErrorCode::BadIntersection,
                       "cones " + cone_string(tops[a]) + " and " + cone_string(tops[b]) +
                           " meet outside their common face");

  Fan fan;
  fan.rank_ = rank;
  fan.rays_ = std::move(rays);
  fan.cones_ = face_closure(tops, fan.rays_.size());
  for (const auto& c : tops) {
    bool maximal = true;
    for (const auto& other : tops)
      if (other.size() > c.size() && std::includes(other.begin(), other.end(), c.begin(), c.end())) {
        maximal = false;
        break;
      }
    if (maximal) fan.maximal_.push_back(c);
  }
  return fan;
}

Fan canonical_form(const Fan& fan, std::vector<std::size_t>* old_to_new) {
  std::vector<std::size_t> order(fan.rays().size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return lex_less(fan.rays()[a], fan.rays()[b]); });
  std::vector<std::size_t> relabel(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) relabel[order[k]] = k;

  std::vector<IntVector> rays;
  rays.reserve(order.size());
  for (auto i : order) rays.push_back(fan.rays()[i]);
  std::vector<Cone> tops;
  for (const auto& c : fan.maximal_cones()) {
    Cone m;
    for (auto i : c) m.push_back(relabel[i]);
    std::sort(m.begin(), m.end());
    tops.push_back(std::move(m));
  }
  if (old_to_new) *old_to_new = relabel;
  return make_fan(fan.rank(), std::move(rays), tops);
}

bool fan_equal(const Fan& a, const Fan& b) {
  if (a.rank() != b.rank() || a.rays().size() != b.rays().size() ||
      a.cones().size() != b.cones().size())
    return false;
  Fan ca = canonical_form(a);
  Fan cb = canonical_form(b);
  return ca.rays() == cb.rays() && ca.cones() == cb.cones();
}

bool has_full_dim_cone(const Fan& fan) { return fan.max_cone_dimension() == fan.rank(); }

Fan apply_lattice_map(const Fan& fan, const IntMatrix& map) {
  if (map.cols() != fan.rank())
    throw FanError(FanErrorCode::DimensionMismatch,
                   "map has " + std::to_string(map.cols()) + " columns, fan has rank " +
                       std::to_string(fan.rank()));
  std::vector<IntVector> rays;
  std::vector<std::size_t> target(fan.rays().size());
  std::map<IntVector, std::size_t, bool (*)(const IntVector&, const IntVector&)> index(lex_less);
  for (std::size_t i = 0; i < fan.rays().size(); ++i) {
    IntVector w = map.apply(fan.rays()[i]);
    if (is_zero(w))
      throw FanError(FanErrorCode::ZeroImageRay,
                     "ray " + std::to_string(i) + " " + to_string(fan.rays()[i]) + " maps to zero");
    w = primitive(w);
    auto [it, inserted] = index.emplace(w, rays.size());
    if (inserted) rays.push_back(std::move(w));
    target[i] = it->second;
  }

  std::vector<Cone> tops;
  for (const auto& c : fan.maximal_cones()) {
    Cone img;
    for (auto i : c) img.push_back(target[i]);
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    tops.push_back(std::move(img));
  }
  const bool injective = rays.size() == fan.rays().size();

  try {
    Fan out = make_fan(map.rows(), std::move(rays), tops);
    // With an injective ray map the image of the face closure is the face
    // closure of the images; otherwise compare cone by cone.
    if (!injective) {
      std::set<Cone> images;
      for (const auto& c : fan.cones()) {
        Cone img;
        for (auto i : c) img.push_back(target[i]);
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        images.insert(std::move(img));
      }
      if (out.cones() != images)
        throw FanError(FanErrorCode::ImageNotFan, "image cones do not form the image fan");
    }
    return out;
  } catch (const FanError& e) {
    if (e.code() == FanErrorCode::ImageNotFan) throw;
    throw FanError(FanErrorCode::ImageNotFan, e.what());
  }
}

}  // namespace homtoric

#include "homtoric/core/documents.hpp"

#include <algorithm>
#include <limits>

namespace homtoric {
namespace {

std::string index_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw DocumentError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw DocumentError(where + ": missing field '" + key + "'");
  return *it;
}

const Json& require_array(const Json& j, const std::string& field) {
  if (!j.is_array()) throw DocumentError("field '" + field + "': expected an array");
  return j;
}

std::size_t count_from_json(const Json& j, const std::string& field) {
  Integer v = integer_from_json(j, field);
  if (sgn(v) < 0 || !v.fits_ulong_p())
    throw DocumentError("field '" + field + "': expected a nonnegative integer, got " + v.get_str());
  return v.get_ui();
}

IntVector vector_from_json(const Json& j, const std::string& field) {
  require_array(j, field);
  IntVector v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer_from_json(j[i], index_path(field, i)));
  return v;
}

Json vector_to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_to_json(x));
  return out;
}

Json matrix_to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i)));
  return out;
}

IntMatrix matrix_from_json(const Json& j, const std::string& field) {
  require_array(j, field);
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(vector_from_json(j[i], index_path(field, i)));
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != cols)
      throw DocumentError("field '" + index_path(field, i) + "': expected " + std::to_string(cols) +
                          " entries, got " + std::to_string(rows[i].size()));
  return IntMatrix::from_rows(rows, cols);
}

Json groups_to_json(const std::vector<std::vector<std::string>>& groups) {
  Json out = Json::array();
  for (const auto& g : groups) out.push_back(g);
  return out;
}

}  // namespace

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw DocumentError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                        ": malformed JSON");
  }
}

Json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

Integer integer_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    Integer v;
    bool digits = !s.empty() && std::all_of(s.begin() + (s[0] == '-' ? 1 : 0), s.end(),
                                            [](char c) { return c >= '0' && c <= '9'; }) &&
                  s != "-";
    if (digits && v.set_str(s, 10) == 0) return v;
  }
  throw DocumentError("field '" + field + "': expected an integer");
}

// ---------------------------------------------------------------------------

Json fan_to_json(const Fan& fan) {
  Fan c = canonical_form(fan);
  Json rays = Json::array();
  for (const auto& r : c.rays()) rays.push_back(vector_to_json(r));
  Json cones = Json::array();
  for (const auto& m : c.maximal_cones()) cones.push_back(m);
  return Json{{"rank", c.rank()}, {"rays", rays}, {"maximal_cones", cones}};
}

Fan fan_from_json(const Json& j) {
  const std::size_t rank = count_from_json(require(j, "rank", "fan document"), "rank");
  const Json& rays_json = require_array(require(j, "rays", "fan document"), "rays");
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < rays_json.size(); ++i) {
    auto v = vector_from_json(rays_json[i], index_path("rays", i));
    if (v.size() != rank)
      throw DocumentError("field '" + index_path("rays", i) + "': expected " + std::to_string(rank) +
                          " coordinates, got " + std::to_string(v.size()));
    rays.push_back(std::move(v));
  }
  const Json& cones_json = require_array(require(j, "maximal_cones", "fan document"), "maximal_cones");
  std::vector<Cone> cones;
  for (std::size_t i = 0; i < cones_json.size(); ++i) {
    const std::string field = index_path("maximal_cones", i);
    require_array(cones_json[i], field);
    Cone c;
    for (std::size_t k = 0; k < cones_json[i].size(); ++k)
      c.push_back(count_from_json(cones_json[i][k], index_path(field, k)));
    cones.push_back(std::move(c));
  }
  return make_fan(rank, std::move(rays), cones);
}

Json fan_validation_report(const Fan& fan) {
  return Json{{"valid", true},
              {"rank", fan.rank()},
              {"ray_count", fan.rays().size()},
              {"cone_count", fan.cones().size()},
              {"maximal_cone_count", fan.maximal_cones().size()},
              {"max_cone_dimension", fan.max_cone_dimension()},
              {"has_full_dim_cone", has_full_dim_cone(fan)}};
}

Json fan_error_report(const FanError& error) {
  return Json{{"valid", false}, {"error", to_string(error.code())}, {"detail", error.detail()}};
}

// ---------------------------------------------------------------------------

Json certificate_to_json(const HomogeneityCertificate& certificate) {
  Json relations = Json::array();
  for (const auto& row : certificate.subgroup.relations.basis()) relations.push_back(vector_to_json(row));
  return Json{{"group_sizes", certificate.sizes.sizes()},
              {"subgroup_relations", relations},
              {"ray_assignment", certificate.ray_assignment},
              {"identification", matrix_to_json(certificate.identification)}};
}

HomogeneityCertificate certificate_from_json(const Json& j) {
  const Json& sizes_json = require_array(require(j, "group_sizes", "certificate document"), "group_sizes");
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < sizes_json.size(); ++i) {
    std::size_t n = count_from_json(sizes_json[i], index_path("group_sizes", i));
    if (n < 2)
      throw DocumentError("field '" + index_path("group_sizes", i) + "': group size must be at least 2");
    sizes.push_back(n);
  }
  if (sizes.empty()) throw DocumentError("field 'group_sizes': at least one group is required");
  GroupSizes group_sizes(std::move(sizes));
  const std::size_t m = group_sizes.group_count();

  std::vector<IntVector> generators;
  if (j.contains("subgroup_relations")) {
    const Json& rel = require_array(j["subgroup_relations"], "subgroup_relations");
    for (std::size_t i = 0; i < rel.size(); ++i) {
      auto v = vector_from_json(rel[i], index_path("subgroup_relations", i));
      if (v.size() != m)
        throw DocumentError("field '" + index_path("subgroup_relations", i) + "': expected " +
                            std::to_string(m) + " entries, got " + std::to_string(v.size()));
      generators.push_back(std::move(v));
    }
  } else {
    throw DocumentError("certificate document: missing field 'subgroup_relations'");
  }
  SubgroupSpec subgroup = SubgroupSpec::from_generators(m, generators);

  const bool has_assignment = j.contains("ray_assignment");
  const bool has_identification = j.contains("identification");
  if (has_assignment != has_identification)
    throw DocumentError("certificate document: 'ray_assignment' and 'identification' must appear together");
  if (!has_assignment) return certificate_for_quotient(quotient_fan(group_sizes, subgroup));

  HomogeneityCertificate c;
  c.sizes = std::move(group_sizes);
  c.subgroup = std::move(subgroup);
  const Json& assignment = require_array(j["ray_assignment"], "ray_assignment");
  for (std::size_t i = 0; i < assignment.size(); ++i)
    c.ray_assignment.push_back(count_from_json(assignment[i], index_path("ray_assignment", i)));
  if (c.ray_assignment.size() != c.sizes.total())
    throw DocumentError("field 'ray_assignment': expected " + std::to_string(c.sizes.total()) +
                        " entries, got " + std::to_string(c.ray_assignment.size()));
  c.identification = matrix_from_json(j["identification"], "identification");
  if (c.identification.rows() != c.identification.cols())
    throw DocumentError("field 'identification': expected a square matrix");
  return c;
}

Json rejection_to_json(const Rejection& rejection) {
  Json witness{{"rays", rejection.rays}, {"vector", vector_to_json(rejection.vector)}};
  return Json{{"status", "rejected"},
              {"reason", to_string(rejection.reason)},
              {"detail", rejection.detail},
              {"witness", witness}};
}

// ---------------------------------------------------------------------------

Json report_to_json(const PropertyReport& report) {
  Json class_group = Json::array();
  for (const auto& f : report.class_group.factors) class_group.push_back(integer_to_json(f));
  Json witnesses = Json::object();
  witnesses["quasiaffine"] =
      report.quasiaffine_witness ? vector_to_json(*report.quasiaffine_witness) : Json(nullptr);
  witnesses["regular_function"] =
      report.regular_function_witness ? vector_to_json(*report.regular_function_witness) : Json(nullptr);
  return Json{{"quasiprojective", report.quasiprojective},
              {"affine", report.affine},
              {"projective", report.projective},
              {"quasiaffine", report.quasiaffine},
              {"has_nonconstant_regular_functions", report.has_nonconstant_regular_functions},
              {"has_torus_fixed_point", report.has_torus_fixed_point},
              {"dimension", report.dimension},
              {"class_group", class_group},
              {"class_group_text", report.class_group.to_string()},
              {"acting_groups", groups_to_json(report.acting_groups)},
              {"witnesses", witnesses}};
}

PropertyReport report_from_json(const Json& j) {
  auto flag = [&](const char* key) {
    const Json& v = require(j, key, "property report");
    if (!v.is_boolean()) throw DocumentError(std::string("field '") + key + "': expected a boolean");
    return v.get<bool>();
  };
  PropertyReport r;
  r.quasiprojective = flag("quasiprojective");
  r.affine = flag("affine");
  r.projective = flag("projective");
  r.quasiaffine = flag("quasiaffine");
  r.has_nonconstant_regular_functions = flag("has_nonconstant_regular_functions");
  r.has_torus_fixed_point = flag("has_torus_fixed_point");
  r.dimension = count_from_json(require(j, "dimension", "property report"), "dimension");
  r.class_group.factors = vector_from_json(require(j, "class_group", "property report"), "class_group");
  const Json& groups = require_array(require(j, "acting_groups", "property report"), "acting_groups");
  for (std::size_t i = 0; i < groups.size(); ++i) {
    require_array(groups[i], index_path("acting_groups", i));
    std::vector<std::string> options;
    for (const auto& o : groups[i]) {
      if (!o.is_string()) throw DocumentError("field '" + index_path("acting_groups", i) + "': expected strings");
      options.push_back(o.get<std::string>());
    }
    r.acting_groups.push_back(std::move(options));
  }
  if (j.contains("witnesses")) {
    const Json& w = j["witnesses"];
    if (w.contains("quasiaffine") && !w["quasiaffine"].is_null())
      r.quasiaffine_witness = vector_from_json(w["quasiaffine"], "witnesses.quasiaffine");
    if (w.contains("regular_function") && !w["regular_function"].is_null())
      r.regular_function_witness = vector_from_json(w["regular_function"], "witnesses.regular_function");
  }
  return r;
}

Json roundtrip_to_json(const RoundtripReport& report) {
  Json failures = Json::array();
  for (const auto& f : report.failures) {
    Json generators = Json::array();
    for (const auto& g : f.input.generators) generators.push_back(vector_to_json(g));
    failures.push_back(Json{{"trial", f.trial},
                            {"group_sizes", f.input.sizes.sizes()},
                            {"subgroup_relations", generators},
                            {"detail", f.detail}});
  }
  return Json{{"seed", report.seed},
              {"trials", report.trials},
              {"max_m", report.limits.max_groups},
              {"max_n", report.limits.max_group_size},
              {"entry_bound", report.limits.entry_bound},
              {"accepted", report.accepted},
              {"verified", report.verified},
              {"projective_cases", report.projective},
              {"finite_subgroup_cases", report.finite_quotients},
              {"passed", report.verified},
              {"failed", report.trials - report.verified},
              {"failures", failures}};
}

}  // namespace homtoric

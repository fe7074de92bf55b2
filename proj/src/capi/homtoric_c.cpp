#include "homtoric/homtoric.h"

#include "homtoric/core/documents.hpp"
#include "homtoric/core/homogeneity.hpp"
#include "homtoric/core/properties.hpp"
#include "homtoric/core/roundtrip.hpp"

#include <cstring>
#include <memory>
#include <string>
#include <variant>

namespace {

using namespace homtoric;

thread_local std::string g_last_error;

class InvalidHandle : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename T, std::uint32_t Magic>
struct Handle {
  explicit Handle(T value) : magic(Magic), object(std::move(value)) {}
  ~Handle() { magic = 0; }

  T& get() {
    if (magic != Magic) throw InvalidHandle("handle has bad magic " + std::to_string(magic));
    return object;
  }

  std::uint32_t magic;
  T object;
};

template <typename T, std::uint32_t Magic>
T& safe_get(Handle<T, Magic>* h) {
  if (!h) throw InvalidHandle("null handle");
  return h->get();
}

int write_json(const Json& doc, char* out, std::size_t* out_len) {
  if (!out_len) return HT_ERROR_NULL_POINTER;
  const std::string text = doc.dump(2);
  const std::size_t need = text.size() + 1;
  const std::size_t avail = *out_len;
  *out_len = need;
  if (!out || avail < need) return HT_ERROR_INSUFFICIENT_BUFFER;
  std::memcpy(out, text.c_str(), need);
  return HT_OK;
}

// Runs `fn`, translating exceptions into status codes.
template <typename F>
int guarded(F&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const InvalidHandle& e) {
    g_last_error = e.what();
    return HT_ERROR_INVALID_HANDLE;
  } catch (const DocumentError& e) {
    g_last_error = e.what();
    return HT_INVALID_INPUT;
  } catch (const FanError& e) {
    g_last_error = e.what();
    return HT_INVALID_INPUT;
  } catch (const ClassificationLimitError& e) {
    g_last_error = e.what();
    return HT_INVALID_INPUT;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return HT_INVALID_INPUT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HT_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return HT_ERROR_INTERNAL;
  }
}

}  // namespace

struct ht_fan_struct : Handle<Fan, 0x46414E31> {
  using Handle::Handle;
};
struct ht_certificate_struct : Handle<HomogeneityCertificate, 0x43455254> {
  using Handle::Handle;
};
struct ht_classification_struct : Handle<ClassifyResult, 0x434C5346> {
  using Handle::Handle;
};

extern "C" {

const char* ht_status_name(int status) {
  switch (status) {
    case HT_OK: return "OK";
    case HT_REJECTED: return "REJECTED";
    case HT_INVALID_INPUT: return "INVALID_INPUT";
    case HT_ERROR_NULL_POINTER: return "NULL_POINTER";
    case HT_ERROR_INSUFFICIENT_BUFFER: return "INSUFFICIENT_BUFFER";
    case HT_ERROR_INVALID_HANDLE: return "INVALID_HANDLE";
    case HT_ERROR_INTERNAL: return "INTERNAL_ERROR";
    default: return "UNKNOWN";
  }
}

const char* ht_last_error(void) { return g_last_error.c_str(); }

int ht_fan_from_json(ht_fan_t* fan, const char* json) {
  if (!fan || !json) return HT_ERROR_NULL_POINTER;
  return guarded([&]() -> int {
    *fan = new ht_fan_struct(fan_from_json(parse_json_text(json)));
    return HT_OK;
  });
}

int ht_fan_punctured(ht_fan_t* fan, const size_t* sizes, size_t group_count) {
  if (!fan || (!sizes && group_count)) return HT_ERROR_NULL_POINTER;
  return guarded([&]() -> int {
    GroupSizes g(std::vector<std::size_t>(sizes, sizes + group_count));
    *fan = new ht_fan_struct(punctured_fan(g));
    return HT_OK;
  });
}

int ht_fan_to_json(ht_fan_t fan, char* out, size_t* out_len) {
  return guarded([&]() -> int { return write_json(fan_to_json(safe_get(fan)), out, out_len); });
}

int ht_fan_ray_count(ht_fan_t fan, size_t* count) {
  if (!count) return HT_ERROR_NULL_POINTER;
  return guarded([&]() -> int {
    *count = safe_get(fan).rays().size();
    return HT_OK;
  });
}

int ht_fan_cone_count(ht_fan_t fan, size_t* count) {
  if (!count) return HT_ERROR_NULL_POINTER;
  return guarded([&]() -> int {
    *count = safe_get(fan).cones().size();
    return HT_OK;
  });
}

int ht_fan_equal(ht_fan_t a, ht_fan_t b, int* equal) {
  if (!equal) return HT_ERROR_NULL_POINTER;
  return guarded([&]() -> int {
    *equal = fan_equal(safe_get(a), safe_get(b)) ? 1 : 0;
    return HT_OK;
  });
}

int ht_fan_destroy(ht_fan_t fan) {
  return guarded([&]() -> int {
    if (fan) {
      safe_get(fan);
      delete fan;
    }
    return HT_OK;
  });
}

int ht_fan_validate_json(const char* json, char* out, size_t* out_len) {
  if (!json) return HT_ERROR_NULL_POINTER;
  return guarded([&]() -> int {
    try {
      Fan fan = fan_from_json(parse_json_text(json));
      return write_json(fan_validation_report(fan), out, out_len);
    } catch (const FanError& e) {
      g_last_error = e.what();
      int rc = write_json(fan_error_report(e), out, out_len);
      return rc == HT_OK ? HT_INVALID_INPUT : rc;
    } catch (const DocumentError& e) {
      g_last_error = e.what();
      Json report = {{"valid", false}, {"error", "MALFORMED_DOCUMENT"}, {"detail", e.what()}};
      int rc = write_json(report, out, out_len);
      return rc == HT_OK ? HT_INVALID_INPUT : rc;
    }
  });
}

int ht_quotient(ht_fan_t* fan, ht_certificate_t* certificate, const size_t* sizes,
                size_t group_count, const int64_t* relations, size_t relation_count) {
  if (!fan || !certificate || (!sizes && group_count) || (!relations && relation_count))
    return HT_ERROR_NULL_POINTER;
  return guarded([&]() -> int {
    GroupSizes g(std::vector<std::size_t>(sizes, sizes + group_count));
    std::vector<IntVector> generators;
    for (std::size_t i = 0; i < relation_count; ++i) {
      IntVector v;
      for (std::size_t j = 0; j < group_count; ++j)
        v.emplace_back(static_cast<long>(relations[i * group_count + j]));
      generators.push_back(std::move(v));
    }
    auto q = quotient_fan(g, SubgroupSpec::from_generators(group_count, generators));
    auto cert = certificate_for_quotient(q);
    std::vector<std::size_t> relabel;
    Fan canonical = canonical_form(q.fan, &relabel);
    for (auto& i : cert.ray_assignment) i = relabel[i];
    if (!verify_certificate(canonical, cert))
      throw std::logic_error("quotient certificate does not verify against the canonical fan");
    *fan = new ht_fan_struct(std::move(canonical));
    *certificate = new ht_certificate_struct(std::move(cert));
    return HT_OK;
  });
}

int ht_classify(ht_classification_t* result, ht_fan_t fan) {
  if (!result) return HT_ERROR_NULL_POINTER;
  return guarded([&]() -> int {
    *result = new ht_classification_struct(classify(safe_get(fan)));
    return HT_OK;
  });
}

int ht_classify_json(ht_classification_t* result, const char* json) {
  if (!result || !json) return HT_ERROR_NULL_POINTER;
  return guarded([&]() -> int {
    Json doc = parse_json_text(json);
    try {
      Fan fan = fan_from_json(doc);
      *result = new ht_classification_struct(classify(fan));
    } catch (const FanError& e) {
      if (e.code() != FanErrorCode::NotSimplicial) throw;
      *result = new ht_classification_struct(
          Rejection{RejectionReason::NotSimplicial, e.detail(), {}, {}});
    }
    return HT_OK;
  });
}

int ht_classification_accepted(ht_classification_t result, int* accepted) {
  if (!accepted) return HT_ERROR_NULL_POINTER;
  return guarded([&]() -> int {
    *accepted = std::holds_alternative<HomogeneityCertificate>(safe_get(result)) ? 1 : 0;
    return HT_OK;
  });
}

int ht_classification_certificate(ht_classification_t result, ht_certificate_t* certificate) {
  if (!certificate) return HT_ERROR_NULL_POINTER;
  return guarded([&]() -> int {
    auto* cert = std::get_if<HomogeneityCertificate>(&safe_get(result));
    if (!cert) return HT_REJECTED;
    *certificate = new ht_certificate_struct(*cert);
    return HT_OK;
  });
}

int ht_classification_to_json(ht_classification_t result, char* out, size_t* out_len) {
  return guarded([&]() -> int {
    const auto& r = safe_get(result);
    if (auto* cert = std::get_if<HomogeneityCertificate>(&r))
      return write_json(certificate_to_json(*cert), out, out_len);
    return write_json(rejection_to_json(std::get<Rejection>(r)), out, out_len);
  });
}

int ht_classification_destroy(ht_classification_t result) {
  return guarded([&]() -> int {
    if (result) {
      safe_get(result);
      delete result;
    }
    return HT_OK;
  });
}

int ht_certificate_from_json(ht_certificate_t* certificate, const char* json) {
  if (!certificate || !json) return HT_ERROR_NULL_POINTER;
  return guarded([&]() -> int {
    *certificate = new ht_certificate_struct(certificate_from_json(parse_json_text(json)));
    return HT_OK;
  });
}

int ht_certificate_to_json(ht_certificate_t certificate, char* out, size_t* out_len) {
  return guarded([&]() -> int { return write_json(certificate_to_json(safe_get(certificate)), out, out_len); });
}

int ht_certificate_verify(ht_certificate_t certificate, ht_fan_t fan) {
  return guarded([&]() -> int {
    return verify_certificate(safe_get(fan), safe_get(certificate)) ? HT_OK : HT_REJECTED;
  });
}

int ht_certificate_destroy(ht_certificate_t certificate) {
  return guarded([&]() -> int {
    if (certificate) {
      safe_get(certificate);
      delete certificate;
    }
    return HT_OK;
  });
}

int ht_properties_to_json(ht_certificate_t certificate, char* out, size_t* out_len) {
  return guarded([&]() -> int {
    return write_json(report_to_json(property_report(safe_get(certificate))), out, out_len);
  });
}

int ht_roundtrip(uint64_t trials, uint64_t seed, size_t max_groups, size_t max_group_size,
                 char* out, size_t* out_len) {
  return guarded([&]() -> int {
    if (max_groups < 1) throw std::invalid_argument("max groups must be at least 1");
    if (max_group_size < 2) throw std::invalid_argument("max group size must be at least 2");
    RoundtripLimits limits;
    limits.max_groups = max_groups;
    limits.max_group_size = max_group_size;
    auto report = run_roundtrip(trials, seed, limits);
    int rc = write_json(roundtrip_to_json(report), out, out_len);
    if (rc != HT_OK) return rc;
    return report.failures.empty() ? HT_OK : HT_REJECTED;
  });
}

}  // extern "C"

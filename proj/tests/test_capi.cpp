#include "homtoric/homtoric.h"

#include <doctest.h>
#include <json.hpp>

#include <string>
#include <vector>

namespace {

using Json = nlohmann::json;

template <typename Fill>
std::string text_of(Fill&& fill, int expected = HT_OK) {
  std::size_t len = 0;
  REQUIRE(fill(nullptr, &len) == HT_ERROR_INSUFFICIENT_BUFFER);
  REQUIRE(len > 0);
  std::string buffer(len, '\0');
  std::size_t size = buffer.size();
  CHECK(fill(buffer.data(), &size) == expected);
  CHECK(size == len);
  CHECK(buffer.back() == '\0');
  buffer.pop_back();
  return buffer;
}

const char* kPlane = R"({"rank": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "maximal_cones": [[0, 1], [1, 2], [0, 2]]})";

}  // namespace

TEST_CASE("status names and null arguments") {
  CHECK(std::string(ht_status_name(HT_OK)) == "OK");
  CHECK(std::string(ht_status_name(HT_ERROR_INVALID_HANDLE)) == "INVALID_HANDLE");
  CHECK(ht_fan_from_json(nullptr, kPlane) == HT_ERROR_NULL_POINTER);
  ht_fan_t fan = nullptr;
  CHECK(ht_fan_from_json(&fan, nullptr) == HT_ERROR_NULL_POINTER);
  CHECK(ht_fan_ray_count(nullptr, nullptr) == HT_ERROR_NULL_POINTER);
  CHECK(ht_fan_destroy(nullptr) == HT_OK);
}

TEST_CASE("fan handles") {
  ht_fan_t fan = nullptr;
  REQUIRE(ht_fan_from_json(&fan, kPlane) == HT_OK);
  std::size_t n = 0;
  CHECK(ht_fan_ray_count(fan, &n) == HT_OK);
  CHECK(n == 3);
  CHECK(ht_fan_cone_count(fan, &n) == HT_OK);
  CHECK(n == 7);

  auto doc = Json::parse(text_of([&](char* o, std::size_t* l) { return ht_fan_to_json(fan, o, l); }));
  CHECK(doc["rank"] == 2);
  CHECK(doc["rays"].size() == 3);

  ht_fan_t again = nullptr;
  REQUIRE(ht_fan_from_json(&again, doc.dump().c_str()) == HT_OK);
  int equal = 0;
  CHECK(ht_fan_equal(fan, again, &equal) == HT_OK);
  CHECK(equal == 1);

  // A handle of the wrong kind is refused.
  auto* wrong = reinterpret_cast<ht_certificate_t>(fan);
  std::size_t len = 0;
  CHECK(ht_certificate_to_json(wrong, nullptr, &len) == HT_ERROR_INVALID_HANDLE);
  CHECK(std::string(ht_last_error()).size() > 0);

  CHECK(ht_fan_destroy(again) == HT_OK);
  CHECK(ht_fan_destroy(fan) == HT_OK);
}

TEST_CASE("invalid documents") {
  ht_fan_t fan = nullptr;
  CHECK(ht_fan_from_json(&fan, "{\"rank\": 2,\n \"rays\": [}") == HT_INVALID_INPUT);
  CHECK(fan == nullptr);
  CHECK(std::string(ht_last_error()).find("line 2") != std::string::npos);

  CHECK(ht_fan_from_json(&fan, R"({"rank": 2, "rays": [[2, 0]], "maximal_cones": [[0]]})") == HT_INVALID_INPUT);
  CHECK(std::string(ht_last_error()).find("NON_PRIMITIVE_RAY") != std::string::npos);

  auto report = Json::parse(text_of(
      [&](char* o, std::size_t* l) {
        return ht_fan_validate_json(R"({"rank": 2, "rays": [[1, 0], [-1, 0]], "maximal_cones": [[0, 1]]})", o, l);
      },
      HT_INVALID_INPUT));
  CHECK(report["valid"] == false);
  CHECK(report["error"] == "NOT_SIMPLICIAL");

  auto malformed = Json::parse(
      text_of([&](char* o, std::size_t* l) { return ht_fan_validate_json("[", o, l); }, HT_INVALID_INPUT));
  CHECK(malformed["error"] == "MALFORMED_DOCUMENT");

  auto valid = Json::parse(text_of([&](char* o, std::size_t* l) { return ht_fan_validate_json(kPlane, o, l); }));
  CHECK(valid["valid"] == true);
}

TEST_CASE("quotient, classify and verify") {
  const std::size_t sizes[] = {2, 2};
  const std::int64_t relations[] = {1, 1};
  ht_fan_t fan = nullptr;
  ht_certificate_t cert = nullptr;
  REQUIRE(ht_quotient(&fan, &cert, sizes, 2, relations, 1) == HT_OK);
  std::size_t n = 0;
  ht_fan_ray_count(fan, &n);
  CHECK(n == 4);
  CHECK(ht_certificate_verify(cert, fan) == HT_OK);

  auto props = Json::parse(text_of([&](char* o, std::size_t* l) { return ht_properties_to_json(cert, o, l); }));
  CHECK(props["quasiaffine"] == true);
  CHECK(props["dimension"] == 3);

  ht_classification_t result = nullptr;
  REQUIRE(ht_classify(&result, fan) == HT_OK);
  int accepted = 0;
  CHECK(ht_classification_accepted(result, &accepted) == HT_OK);
  CHECK(accepted == 1);
  ht_certificate_t found = nullptr;
  REQUIRE(ht_classification_certificate(result, &found) == HT_OK);
  CHECK(ht_certificate_verify(found, fan) == HT_OK);

  ht_fan_t plane = nullptr;
  REQUIRE(ht_fan_from_json(&plane, kPlane) == HT_OK);
  CHECK(ht_certificate_verify(found, plane) == HT_REJECTED);

  const std::int64_t short_relation[] = {1};
  ht_fan_t f2 = nullptr;
  ht_certificate_t c2 = nullptr;
  const std::size_t bad_sizes[] = {2, 1};
  CHECK(ht_quotient(&f2, &c2, bad_sizes, 2, short_relation, 0) == HT_INVALID_INPUT);
  CHECK(ht_quotient(&f2, &c2, sizes, 2, nullptr, 1) == HT_ERROR_NULL_POINTER);

  ht_certificate_destroy(found);
  ht_classification_destroy(result);
  ht_fan_destroy(plane);
  ht_certificate_destroy(cert);
  ht_fan_destroy(fan);
}

TEST_CASE("rejections") {
  ht_classification_t result = nullptr;
  CHECK(ht_classify_json(&result, R"({"rank": 2, "rays": [[1, 0], [-1, 0], [0, 1]], "maximal_cones": [[0, 2], [1, 2]]})") ==
        HT_OK);
  int accepted = 1;
  ht_classification_accepted(result, &accepted);
  CHECK(accepted == 0);
  ht_certificate_t cert = nullptr;
  CHECK(ht_classification_certificate(result, &cert) == HT_REJECTED);
  auto doc = Json::parse(text_of([&](char* o, std::size_t* l) { return ht_classification_to_json(result, o, l); }));
  CHECK(doc["reason"] == "NONFACES_DONT_PARTITION");
  ht_classification_destroy(result);

  // Non-simplicial input is a rejection, not invalid input.
  CHECK(ht_classify_json(&result, R"({"rank": 2, "rays": [[1, 0], [-1, 0]], "maximal_cones": [[0, 1]]})") == HT_OK);
  doc = Json::parse(text_of([&](char* o, std::size_t* l) { return ht_classification_to_json(result, o, l); }));
  CHECK(doc["reason"] == "NOT_SIMPLICIAL");
  ht_classification_destroy(result);
}

TEST_CASE("certificates from documents and the self test") {
  ht_certificate_t cert = nullptr;
  REQUIRE(ht_certificate_from_json(&cert, R"({"group_sizes": [3], "subgroup_relations": []})") == HT_OK);
  auto props = Json::parse(text_of([&](char* o, std::size_t* l) { return ht_properties_to_json(cert, o, l); }));
  CHECK(props["projective"] == true);
  ht_certificate_destroy(cert);
  CHECK(ht_certificate_from_json(&cert, R"({"group_sizes": [1]})") == HT_INVALID_INPUT);

  auto report = Json::parse(
      text_of([&](char* o, std::size_t* l) { return ht_roundtrip(20, 7, 2, 3, o, l); }));
  CHECK(report["trials"] == 20);
  CHECK(report["failed"] == 0);
}

// Command line front end. Talks to the library through the C interface only.
//
//   homtoric build --sizes 2,3
//   homtoric quotient --sizes 2,2 --relations "1,1"
//   homtoric classify fan.json
//   homtoric properties fan.json | --cert cert.json
//   homtoric validate fan.json
//   homtoric roundtrip --trials 500 --seed 1 [--max-m 3 --max-n 4]
//
// Exit status: 0 success, 1 classification rejection (or failed self test),
// 2 invalid input, 3 internal error.

#include "homtoric/homtoric.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInternal = 3;

struct FanDeleter {
  void operator()(ht_fan_t f) const { ht_fan_destroy(f); }
};
struct CertificateDeleter {
  void operator()(ht_certificate_t c) const { ht_certificate_destroy(c); }
};
struct ClassificationDeleter {
  void operator()(ht_classification_t c) const { ht_classification_destroy(c); }
};
using FanPtr = std::unique_ptr<ht_fan_struct, FanDeleter>;
using CertificatePtr = std::unique_ptr<ht_certificate_struct, CertificateDeleter>;
using ClassificationPtr = std::unique_ptr<ht_classification_struct, ClassificationDeleter>;

class CliFailure : public std::runtime_error {
 public:
  CliFailure(int exit_code, const std::string& message)
      : std::runtime_error(message), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

int exit_code_for(int status) {
  switch (status) {
    case HT_OK: return kExitOk;
    case HT_REJECTED: return kExitRejected;
    case HT_INVALID_INPUT: return kExitInvalid;
    default: return kExitInternal;
  }
}

void check(int status, const std::string& what) {
  if (status == HT_OK) return;
  throw CliFailure(exit_code_for(status), what + ": " + ht_last_error());
}

// Calls a buffer-filling C function, growing the buffer once if needed.
template <typename Fill>
std::string fetch_text(Fill&& fill, int* status_out = nullptr) {
  std::string buffer(1 << 16, '\0');
  std::size_t len = buffer.size();
  int status = fill(buffer.data(), &len);
  if (status == HT_ERROR_INSUFFICIENT_BUFFER) {
    buffer.assign(len, '\0');
    status = fill(buffer.data(), &len);
  }
  if (status_out)
    *status_out = status;
  else
    check(status, "writing output");
  if (status == HT_OK || status == HT_REJECTED || status == HT_INVALID_INPUT) {
    buffer.resize(len > 0 ? len - 1 : 0);
    return buffer;
  }
  throw CliFailure(exit_code_for(status), std::string("writing output: ") + ht_last_error());
}

std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliFailure(kExitInvalid, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::int64_t> parse_relations(const std::string& text, std::size_t m, std::size_t* count) {
  std::vector<std::int64_t> flat;
  *count = 0;
  if (text.empty()) return flat;
  std::stringstream generators(text);
  std::string generator;
  while (std::getline(generators, generator, ';')) {
    std::stringstream entries(generator);
    std::string entry;
    std::size_t n = 0;
    while (std::getline(entries, entry, ',')) {
      try {
        std::size_t used = 0;
        long long v = std::stoll(entry, &used);
        if (entry.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(entry);
        flat.push_back(v);
      } catch (const std::exception&) {
        throw CliFailure(kExitInvalid, "--relations: generator " + std::to_string(*count + 1) +
                                           ": '" + entry + "' is not an integer");
      }
      ++n;
    }
    if (n != m)
      throw CliFailure(kExitInvalid, "--relations: generator " + std::to_string(*count + 1) + " has " +
                                         std::to_string(n) + " entries, expected " + std::to_string(m));
    ++*count;
  }
  return flat;
}

void print(const std::string& json_text) { std::cout << json_text << '\n'; }

int cmd_build(const std::vector<std::size_t>& sizes) {
  ht_fan_t raw = nullptr;
  check(ht_fan_punctured(&raw, sizes.data(), sizes.size()), "--sizes");
  FanPtr fan(raw);
  print(fetch_text([&](char* out, std::size_t* len) { return ht_fan_to_json(fan.get(), out, len); }));
  return kExitOk;
}

int cmd_quotient(const std::vector<std::size_t>& sizes, const std::string& relations) {
  std::size_t count = 0;
  auto flat = parse_relations(relations, sizes.size(), &count);
  ht_fan_t raw_fan = nullptr;
  ht_certificate_t raw_cert = nullptr;
  check(ht_quotient(&raw_fan, &raw_cert, sizes.data(), sizes.size(), flat.data(), count), "quotient");
  FanPtr fan(raw_fan);
  CertificatePtr cert(raw_cert);
  Json doc = Json::parse(fetch_text([&](char* o, std::size_t* l) { return ht_fan_to_json(fan.get(), o, l); }));
  doc["certificate"] =
      Json::parse(fetch_text([&](char* o, std::size_t* l) { return ht_certificate_to_json(cert.get(), o, l); }));
  print(doc.dump(2));
  return kExitOk;
}

ClassificationPtr classify_file(const std::string& path) {
  std::string text = read_file(path);
  ht_classification_t raw = nullptr;
  check(ht_classify_json(&raw, text.c_str()), path);
  return ClassificationPtr(raw);
}

int cmd_classify(const std::string& path) {
  auto result = classify_file(path);
  int accepted = 0;
  check(ht_classification_accepted(result.get(), &accepted), "classify");
  print(fetch_text([&](char* o, std::size_t* l) { return ht_classification_to_json(result.get(), o, l); }));
  return accepted ? kExitOk : kExitRejected;
}

int cmd_properties(const std::string& fan_path, const std::string& cert_path) {
  CertificatePtr cert;
  if (!cert_path.empty()) {
    std::string text = read_file(cert_path);
    ht_certificate_t raw = nullptr;
    check(ht_certificate_from_json(&raw, text.c_str()), cert_path);
    cert.reset(raw);
  } else {
    auto result = classify_file(fan_path);
    int accepted = 0;
    check(ht_classification_accepted(result.get(), &accepted), "classify");
    if (!accepted) {
      print(fetch_text([&](char* o, std::size_t* l) { return ht_classification_to_json(result.get(), o, l); }));
      return kExitRejected;
    }
    ht_certificate_t raw = nullptr;
    check(ht_classification_certificate(result.get(), &raw), "classify");
    cert.reset(raw);
  }
  print(fetch_text([&](char* o, std::size_t* l) { return ht_properties_to_json(cert.get(), o, l); }));
  return kExitOk;
}

int cmd_validate(const std::string& path) {
  std::string text = read_file(path);
  int status = HT_OK;
  std::string report =
      fetch_text([&](char* o, std::size_t* l) { return ht_fan_validate_json(text.c_str(), o, l); }, &status);
  if (status != HT_OK && status != HT_INVALID_INPUT) check(status, path);
  print(report);
  if (status != HT_OK) std::cerr << "homtoric: " << path << ": " << ht_last_error() << '\n';
  return status == HT_OK ? kExitOk : kExitInvalid;
}

int cmd_roundtrip(std::uint64_t trials, std::uint64_t seed, std::size_t max_m, std::size_t max_n) {
  int status = HT_OK;
  std::string report = fetch_text(
      [&](char* o, std::size_t* l) { return ht_roundtrip(trials, seed, max_m, max_n, o, l); }, &status);
  if (status != HT_OK && status != HT_REJECTED) check(status, "roundtrip");
  print(report);
  return status == HT_OK ? kExitOk : kExitRejected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fans of homogeneous toric varieties"};
  app.require_subcommand(1);

  std::vector<std::size_t> sizes;
  std::string relations;
  std::string fan_path;
  std::string cert_path;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t max_m = 3;
  std::size_t max_n = 4;

  auto* build = app.add_subcommand("build", "Fan of the punctured product X(n_1, ..., n_m)");
  build->add_option("--sizes", sizes, "Group sizes n_1,...,n_m")->required()->delimiter(',');

  auto* quotient = app.add_subcommand("quotient", "Quotient fan of X(n) by a subgroup of the central torus");
  quotient->add_option("--sizes", sizes, "Group sizes n_1,...,n_m")->required()->delimiter(',');
  quotient->add_option("--relations", relations,
                       "Characters trivial on S: 'a11,...,a1m;a21,...' (empty: whole torus)");

  auto* classify = app.add_subcommand("classify", "Decide whether a fan belongs to a homogeneous toric variety");
  classify->add_option("fan", fan_path, "Fan document ('-' for stdin)")->required();

  auto* properties = app.add_subcommand("properties", "Geometric properties of a homogeneous toric variety");
  auto* fan_opt = properties->add_option("fan", fan_path, "Fan document");
  auto* cert_opt = properties->add_option("--cert", cert_path, "Certificate document");
  fan_opt->excludes(cert_opt);
  properties->require_option(1);

  auto* validate = app.add_subcommand("validate", "Check the fan axioms of a fan document");
  validate->add_option("fan", fan_path, "Fan document ('-' for stdin)")->required();

  auto* roundtrip = app.add_subcommand("roundtrip", "Randomized quotient/classify/verify self test");
  roundtrip->add_option("--trials", trials, "Number of trials")->required();
  roundtrip->add_option("--seed", seed, "Random seed")->required();
  roundtrip->add_option("--max-m", max_m, "Maximum number of groups")->check(CLI::Range(1, 8));
  roundtrip->add_option("--max-n", max_n, "Maximum group size")->check(CLI::Range(2, 8));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*build) return cmd_build(sizes);
    if (*quotient) return cmd_quotient(sizes, relations);
    if (*classify) return cmd_classify(fan_path);
    if (*properties) return cmd_properties(fan_path, cert_path);
    if (*validate) return cmd_validate(fan_path);
    if (*roundtrip) return cmd_roundtrip(trials, seed, max_m, max_n);
  } catch (const CliFailure& e) {
    std::cerr << "homtoric: " << e.what() << '\n';
    if (e.exit_code() == kExitInvalid) std::cout << Json{{"error", "INVALID_INPUT"}, {"detail", e.what()}}.dump(2) << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "homtoric: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

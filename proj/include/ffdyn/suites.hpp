#pragma once

// Seeded property suites shared by the command-line verifier and the
// acceptance runner. Every record and summary is a JSON object whose key
// order is fixed, so identical seeds give byte-identical reports.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace ffdyn {

using Json = nlohmann::ordered_json;

struct SuiteResult {
  std::string suite;
  int samples = 0;
  std::uint64_t seed = 0;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  std::vector<Json> records;  // one per instance, in index order
  Json summary;
};

// product-formula, displacement, prop23, lemma22, lemma26, rh, roundtrip.
const std::vector<std::string>& suite_names();
// std::invalid_argument for an unknown suite or a nonpositive sample count.
SuiteResult run_suite(const std::string& name, int samples, std::uint64_t seed);

}  // namespace ffdyn

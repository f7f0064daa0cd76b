// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace qlattice::cli {

struct SuiteOptions {
  std::size_t cap_elements = 100000;
  std::size_t cap_tuples = 1000000;
  std::uint32_t seed = 12345;
};

struct SuiteCheck {
  std::string name;       // stable key of the report
  std::string statement;  // the property in words
  bool pass = false;
  nlohmann::ordered_json detail;
};

const std::vector<std::string>& suite_names();

// Throws qlattice::Error(input) on an unknown suite. "all" runs every suite
// in suite_names() order.
std::vector<SuiteCheck> run_suite(const std::string& suite, const SuiteOptions& opt);

nlohmann::ordered_json suite_report(const std::string& suite, const std::vector<SuiteCheck>& checks);

}  // namespace qlattice::cli

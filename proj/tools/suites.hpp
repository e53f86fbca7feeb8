#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ap3/search.hpp"

namespace ap3::cli {

struct SuiteRow {
  std::string id;
  std::string lhs;
  std::string rhs;
  bool holds = true;
};

struct SuiteParams {
  std::int64_t modulus = 0;  // 0: the suite's default
  std::int64_t n_max = 8;
  std::size_t cases = 1000;
  std::uint64_t seed = 1;
  SearchOptions search;
};

const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for unknown suites or unusable parameters.
std::vector<SuiteRow> run_suite(const std::string& name, const SuiteParams& params);

}  // namespace ap3::cli

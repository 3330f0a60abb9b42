#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "toricgw/rational.hpp"

namespace toricgw::cli {

enum class Format { Json, Text };

struct RunConfig {
  std::string command;  // analyze, mirror-map, invariants, syz, oracle
  std::string fan_path;
  std::optional<std::string> bar_fan_path;
  std::optional<std::string> disk;
  Rational order = 3;
  std::optional<int> gauge;
  std::optional<std::string> output;  // stdout when empty
  Format format = Format::Json;
};

// Validates the RunConfig invariants; throws Error(Validation).
void check_config(const RunConfig& config);

// Exit status: 0 success, 2 validation error, 3 consistency failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (CLI11) and runs; usage errors exit with 2.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace toricgw::cli

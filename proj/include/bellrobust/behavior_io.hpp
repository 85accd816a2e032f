#pragma once

// Behavior files:
//
//   { "settings_a": 2, "settings_b": 2, "outcomes_a": 2, "outcomes_b": 2,
//     "blocks": [[p(00|00), p(01|00), p(10|00), p(11|00)], ...] }
//
// Blocks run x-major then y; each block is row-major over (a, b). Numbers
// are written with 12 significant digits.

#include <filesystem>
#include <string>
#include <string_view>

#include "bellrobust/scenario.hpp"

namespace bellrobust {

inline constexpr double kFileValidationTol = 1e-7;

struct ReadOptions {
  bool validate = true;
  double tol = kFileValidationTol;
};

/// Throws InputError on malformed JSON, shape mismatch, or (when validating)
/// a failed validate_behavior; the message carries the report.
Behavior parse_behavior(std::string_view json_text, const ReadOptions& opt = {});
Behavior read_behavior(const std::filesystem::path& path,
                       const ReadOptions& opt = {});

std::string serialize_behavior(const Behavior& p);
void write_behavior(const std::filesystem::path& path, const Behavior& p);

/// Rounds to 12 significant digits, the precision used in all JSON output.
double round_significant(double v);

}  // namespace bellrobust

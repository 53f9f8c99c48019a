#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "rht/dsl.hpp"

namespace rht {

struct RunOptions {
  std::optional<int> deg;
  std::optional<int> from, to;
  bool text = false;
  unsigned long seed = 2024;
  int max_degree = 8;  // enumeration cap, overridable via RHT_MAX_DEGREE
};

struct Report {
  nlohmann::ordered_json json;
  int exit_code = 0;
  std::string render_text() const;
  std::string render_json() const { return json.dump(2) + "\n"; }
};

/// Dispatches one CLI command over a bound document. Mathematical verdicts
/// (including "not extendable") report exit code 0; contract violations
/// throw InputError/UnsupportedInput, which the CLI maps to exit code 2.
/// Commands: check, cohomology, fsmodel, kappa, extendable, moduli-dim,
/// nil-extendable.
Report run(const std::string& command, const dsl::ModelDocument& doc, const RunOptions& opts);

}  // namespace rht

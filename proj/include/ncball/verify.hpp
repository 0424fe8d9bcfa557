#pragma once

#include <string>
#include <vector>

#include "ncball/config.hpp"
#include "ncball/io.hpp"

namespace ncball {

/// How `computed` is compared with `expected`.
enum class Relation {
  Near,        // |computed - expected| <= tolerance
  AtMost,      // computed <= expected + tolerance
  AtLeast,     // computed >= expected - tolerance
};

struct VerifyCheck {
  std::string id;
  /// Short reference to the worked example the check reproduces.
  std::string anchor;
  std::string description;
  Relation relation;
  double expected;
  double computed;
  double tolerance;
  bool passed;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_passed() const;
};

struct VerifyOptions {
  /// Only checks whose id contains this substring run (empty: all).
  std::string filter;
  /// Test hook: the check with this id gets its computed value perturbed.
  std::string inject_fault;
};

/// Runs the reproduction suite. Report order is fixed.
VerifyReport run_verification(const VerifyOptions& opts = {}, const Config& cfg = {});

/// Ids of every check, in report order.
std::vector<std::string> verification_ids();

json report_to_json(const VerifyReport& report);
std::string report_to_text(const VerifyReport& report);

}  // namespace ncball

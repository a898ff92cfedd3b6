#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ovs/linalg.hpp"

namespace ovs {

enum class Verdict { Pass, Fail, Indeterminate, PreconditionFailed };

const char* to_string(Verdict v);

/// Outcome of one property check. A failing verdict always carries a witness.
struct PropertyReport {
  std::string property;
  Verdict verdict = Verdict::Pass;
  std::size_t samples = 0;
  double tolerance = 0.0;
  std::optional<Vector> witness;
  std::uint64_t seed = 0;
  std::optional<double> value;  // a measured quantity, e.g. an estimated constant
  bool exact = false;           // decided by a finite certificate rather than sampling
  std::string detail;

  /// Indeterminate counts as a pass (boundary-tolerance ambiguity only).
  bool passed() const noexcept { return verdict == Verdict::Pass || verdict == Verdict::Indeterminate; }
};

}  // namespace ovs

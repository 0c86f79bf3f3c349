#pragma once

#include <string>

namespace ck {

enum class VerdictStatus { distinguished, inconclusive };

/// Outcome of an obstruction check. `distinguished` is only ever reported
/// when a preserved invariant provably differs; the tool never claims that
/// two manifolds ARE congruent.
struct CongruenceVerdict {
  VerdictStatus status = VerdictStatus::inconclusive;
  std::string reason;

  bool distinguished() const { return status == VerdictStatus::distinguished; }
};

}  // namespace ck

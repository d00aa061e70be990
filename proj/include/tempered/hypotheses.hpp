#pragma once

#include "tempered/crystal.hpp"
#include "tempered/distribution.hpp"
#include "tempered/pointset.hpp"

#include <string>
#include <vector>

namespace tempered {

enum class Status { pass, fail, not_applicable };

const char* to_string(Status s);

/// One checked hypothesis, with the window and tolerance it was certified at.
struct Verdict {
  std::string name;
  Status status = Status::not_applicable;
  double value = 0.0;
  std::string detail;
  Certification cert;
};

struct HypothesisReport {
  Window window;
  std::vector<Verdict> verdicts;
  CrystalDetection detection;

  const Verdict* find(const std::string& name) const;
  bool passed(const std::string& name) const;
  /// Names of the verdicts with status fail, in report order.
  std::vector<std::string> failed() const;
};

/// Runs every window-certified check on f: kappa bounds, rho growth,
/// separation, finite type, relative denseness, density, the spectrum (when
/// computable), crystal detection and the corollary verdicts. Never throws
/// for mathematical failures; they become verdicts.
HypothesisReport verify_hypotheses(const GeneratorSum& f, const Window& w);

}  // namespace tempered

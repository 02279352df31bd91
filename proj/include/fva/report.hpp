#pragma once

#include "fva/series.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fva {

/// Degenerate marks parameter points outside a statement's hypotheses (the
/// computation still runs and its outcome is recorded in the notes).
enum class Verdict { Pass, Fail, Degenerate };

std::string verdict_name(Verdict v);

/// One bigraded piece of an exact sequence 0 -> A -> B -> C -> 0.
struct PieceReport {
  Rat charge, degree;  // in the middle module's grading
  long sub = 0, mid = 0, quo = 0;
  long rankInjection = -1;  // -1 when the level is purely combinatorial
  long kernelDim = -1;
  bool ok = true;
};

struct Report {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  std::string level;  // "basis-bijection", "matrix-rank", "series", "polynomial"
  Verdict verdict = Verdict::Pass;
  std::vector<std::string> notes;
  std::vector<PieceReport> pieces;
  std::vector<std::pair<std::string, SeriesComparison>> comparisons;

  void param(const std::string& key, const std::string& value) { params.emplace_back(key, value); }
  void param(const std::string& key, const Rat& value) { params.emplace_back(key, to_string(value)); }
  void param(const std::string& key, long value) { params.emplace_back(key, std::to_string(value)); }
  /// Records a failed condition; Fail overrides Degenerate.
  void fail(const std::string& note);
  void degenerate(const std::string& note);
  /// Records the comparison and fails the report on a mismatch.
  bool compare(const std::string& label, const BiSeries& lhs, const BiSeries& rhs);
  bool require(bool cond, const std::string& failureNote);

  bool failed() const { return verdict == Verdict::Fail; }
  std::string summary() const;  // one line
};

}  // namespace fva

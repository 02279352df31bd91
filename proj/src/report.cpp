#include "fva/report.hpp"

#include <sstream>

namespace fva {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Degenerate: return "DEGENERATE";
  }
  return "?";
}

void Report::fail(const std::string& note) {
  verdict = Verdict::Fail;
  notes.push_back(note);
}

void Report::degenerate(const std::string& note) {
  if (verdict != Verdict::Fail) verdict = Verdict::Degenerate;
  notes.push_back(note);
}

bool Report::compare(const std::string& label, const BiSeries& lhs, const BiSeries& rhs) {
  SeriesComparison c = series_eq(lhs, rhs);
  comparisons.emplace_back(label, c);
  if (!c.equal) fail(label + ": " + c.describe());
  return c.equal;
}

bool Report::require(bool cond, const std::string& failureNote) {
  if (!cond) fail(failureNote);
  return cond;
}

std::string Report::summary() const {
  std::ostringstream os;
  os << verdict_name(verdict) << " " << name;
  for (const auto& [k, v] : params) os << " " << k << "=" << v;
  if (verdict != Verdict::Pass && !notes.empty()) os << " : " << notes.front();
  return os.str();
}

}  // namespace fva

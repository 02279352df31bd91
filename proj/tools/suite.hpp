#pragma once

#include "fva/json_io.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fva::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Params = std::map<std::string, Rat>;

/// One check run over the cartesian product of its parameter lists.
struct GridEntry {
  std::string check;
  std::map<std::string, std::vector<Rat>> axes;
  std::optional<Rat> qCutoff;  // overrides the suite-wide cutoff
};

struct SuiteConfig {
  std::vector<GridEntry> grids;
  std::optional<Rat> qCutoff;
  std::optional<long> chargeMax;
  std::string format = "markdown";  // json | markdown | csv
  std::string output;               // empty: stdout
  std::optional<BiSeries> perturb;  // planted into every "characters-*" check
  unsigned threads = 0;
};

/// Parameter names a check reads (in grid order).
const std::vector<std::string>& check_params(const std::string& check);
std::vector<std::string> check_names();

/// Runs one check; qCutoff falls back to the check's default when absent.
Report run_check(const std::string& check, const Params& params, const std::optional<Rat>& qCutoff,
                 std::optional<long> chargeMax, const BiSeries& offset = {});

/// Throws ConfigError on anything malformed, including empty grids.
SuiteConfig parse_suite_config(const Json& j);

/// The grids of the acceptance criteria.
SuiteConfig default_suite();

/// Deterministic: the order of reports follows the grid order regardless of
/// how the points were scheduled.
std::vector<Report> run_suite(const SuiteConfig& cfg);

std::string render(const std::vector<Report>& reports, const std::string& format);

}  // namespace fva::cli

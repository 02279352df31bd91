#include "suite.hpp"

#include "fva/exactseq.hpp"
#include "fva/identities.hpp"
#include "fva/parallel.hpp"

#include <functional>
#include <set>

namespace fva::cli {

namespace {

struct CheckDef {
  std::vector<std::string> params;
  std::optional<Rat> defaultCutoff;
  std::function<Report(const Params&, const std::optional<Rat>&, std::optional<long>, const BiSeries&)> run;
};

long as_long(const Params& p, const std::string& key) {
  const Rat& v = p.at(key);
  if (!is_integer(v)) throw ConfigError("parameter " + key + " must be an integer, got " + to_string(v));
  return to_int64(v);
}

Rat need_cutoff(const std::optional<Rat>& c) {
  if (!c) throw ConfigError("this check needs a qCutoff");
  return *c;
}

const std::map<std::string, CheckDef>& registry() {
  static const std::map<std::string, CheckDef> defs = [] {
    std::map<std::string, CheckDef> d;
    d["characters-free"] = {{"g", "m"}, Rat(20), [](const Params& p, const std::optional<Rat>& c, std::optional<long> cm, const BiSeries& off) {
                              return check_characters(ModuleSpec::free_module(p.at("g"), p.at("m")), need_cutoff(c), cm, off);
                            }};
    d["characters-finite"] = {{"p", "k", "m"}, std::nullopt,
                              [](const Params& p, const std::optional<Rat>& c, std::optional<long> cm, const BiSeries& off) {
                                return check_characters(
                                    ModuleSpec::finite_module(as_long(p, "p"), as_long(p, "k"), as_long(p, "m")), c, cm, off);
                              }};
    d["rr-recursion"] = {{"g"}, Rat(30), [](const Params& p, const std::optional<Rat>& c, std::optional<long> cm, const BiSeries&) {
                           return check_rr_recursion(p.at("g"), need_cutoff(c), cm);
                         }};
    d["fib-recursions"] = {{"p", "l"}, std::nullopt, [](const Params& p, const std::optional<Rat>&, std::optional<long>, const BiSeries&) {
                             return check_fib_recursions(as_long(p, "p"), as_long(p, "l"));
                           }};
    d["rr-free"] = {{"g", "m"}, Rat(15), [](const Params& p, const std::optional<Rat>& c, std::optional<long> cm, const BiSeries&) {
                      return verify_rr_free(p.at("g"), p.at("m"), need_cutoff(c), cm);
                    }};
    d["rr-finite"] = {{"p", "k", "m"}, std::nullopt, [](const Params& p, const std::optional<Rat>& c, std::optional<long>, const BiSeries&) {
                        return verify_rr_finite(as_long(p, "p"), as_long(p, "k"), as_long(p, "m"), c);
                      }};
    d["fibonacci"] = {{"p", "k", "m"}, Rat(15), [](const Params& p, const std::optional<Rat>& c, std::optional<long>, const BiSeries&) {
                        return verify_fibonacci(as_long(p, "p"), as_long(p, "k"), as_long(p, "m"), c);
                      }};
    d["rr-ef"] = {{"p", "k", "m"}, Rat(15), [](const Params& p, const std::optional<Rat>& c, std::optional<long>, const BiSeries&) {
                    return verify_rr_ef(as_long(p, "p"), as_long(p, "k"), as_long(p, "m"), c);
                  }};
    d["flag"] = {{"p", "n"}, Rat(12), [](const Params& p, const std::optional<Rat>& c, std::optional<long>, const BiSeries&) {
                   return verify_flag(as_long(p, "p"), as_long(p, "n"), need_cutoff(c));
                 }};
    d["switching"] = {{"p", "k", "m"}, std::nullopt, [](const Params& p, const std::optional<Rat>&, std::optional<long>, const BiSeries&) {
                        return check_switching(as_long(p, "p"), as_long(p, "k"), as_long(p, "m"));
                      }};
    d["two-binomial"] = {{"n"}, std::nullopt, [](const Params& p, const std::optional<Rat>&, std::optional<long>, const BiSeries&) {
                           return check_two_binomial(as_long(p, "n"));
                         }};
    d["dual-char"] = {{"p", "k", "m"}, std::nullopt, [](const Params& p, const std::optional<Rat>&, std::optional<long>, const BiSeries&) {
                        return check_dual_char(as_long(p, "p"), as_long(p, "k"), as_long(p, "m"));
                      }};
    d["ef-chars"] = {{"p", "k", "m"}, Rat(15), [](const Params& p, const std::optional<Rat>& c, std::optional<long>, const BiSeries&) {
                       return check_ef_chars(as_long(p, "p"), as_long(p, "k"), as_long(p, "m"), c);
                     }};
    d["bfl"] = {{"p", "l"}, Rat(15), [](const Params& p, const std::optional<Rat>& c, std::optional<long>, const BiSeries&) {
                  return check_bfl(as_long(p, "p"), as_long(p, "l"), need_cutoff(c));
                }};
    return d;
  }();
  return defs;
}

const CheckDef& lookup(const std::string& check) {
  auto it = registry().find(check);
  if (it == registry().end()) throw ConfigError("unknown check '" + check + "'");
  return it->second;
}

Rat rat_from_json(const Json& j, const std::string& what) {
  try {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_string()) return parse_rat(j.get<std::string>());
  } catch (const std::invalid_argument&) {
  }
  throw ConfigError(what + ": expected an integer or a rational string like \"1/2\"");
}

std::vector<Rat> range(long lo, long hi) {
  std::vector<Rat> v;
  for (long x = lo; x <= hi; ++x) v.emplace_back(x);
  return v;
}

struct Task {
  const GridEntry* entry;
  Params params;
};

}  // namespace

const std::vector<std::string>& check_params(const std::string& check) { return lookup(check).params; }

std::vector<std::string> check_names() {
  std::vector<std::string> out;
  for (const auto& kv : registry()) out.push_back(kv.first);
  return out;
}

Report run_check(const std::string& check, const Params& params, const std::optional<Rat>& qCutoff,
                 std::optional<long> chargeMax, const BiSeries& offset) {
  const CheckDef& def = lookup(check);
  for (const auto& name : def.params)
    if (!params.count(name)) throw ConfigError(check + " needs parameter " + name);
  Report r = def.run(params, qCutoff ? qCutoff : def.defaultCutoff, chargeMax, offset);
  if (check.rfind("characters", 0) == 0) r.name = check;
  return r;
}

namespace {

SuiteConfig parse_suite_config_unchecked(const Json& j) {
  if (!j.is_object()) throw ConfigError("suite config must be a JSON object");
  static const std::set<std::string> known{"grids", "qCutoff", "chargeMax", "format", "output", "perturb", "threads"};
  for (const auto& [key, val] : j.items())
    if (!known.count(key)) throw ConfigError("unknown key '" + key + "'");
  SuiteConfig cfg;
  if (j.contains("qCutoff") && !j["qCutoff"].is_null()) {
    cfg.qCutoff = rat_from_json(j["qCutoff"], "qCutoff");
    if (*cfg.qCutoff <= 0) throw ConfigError("qCutoff must be positive");
  }
  if (j.contains("chargeMax") && !j["chargeMax"].is_null()) {
    if (!j["chargeMax"].is_number_integer() || j["chargeMax"].get<long>() < 0) throw ConfigError("chargeMax must be a nonnegative integer");
    cfg.chargeMax = j["chargeMax"].get<long>();
  }
  if (j.contains("format")) {
    cfg.format = j["format"].get<std::string>();
    if (cfg.format != "json" && cfg.format != "markdown" && cfg.format != "csv") throw ConfigError("format must be json, markdown or csv");
  }
  if (j.contains("output")) cfg.output = j["output"].get<std::string>();
  if (j.contains("threads")) cfg.threads = j["threads"].get<unsigned>();
  if (j.contains("perturb")) {
    const Json& p = j["perturb"];
    if (!p.is_object() || !p.contains("z") || !p.contains("q")) throw ConfigError("perturb needs \"z\" and \"q\"");
    cfg.perturb = BiSeries::monomial(rat_from_json(p.at("z"), "perturb.z"), rat_from_json(p.at("q"), "perturb.q"),
                                     p.contains("coef") ? rat_from_json(p["coef"], "perturb.coef") : Rat(1));
  }
  if (!j.contains("grids") || !j["grids"].is_array() || j["grids"].empty()) throw ConfigError("grids must be a nonempty array");
  for (const Json& g : j["grids"]) {
    GridEntry e;
    if (!g.is_object() || !g.contains("check")) throw ConfigError("each grid needs a \"check\"");
    e.check = g["check"].get<std::string>();
    for (const auto& name : check_params(e.check)) {
      if (!g.contains(name) || !g[name].is_array() || g[name].empty())
        throw ConfigError("grid for " + e.check + ": parameter " + name + " needs a nonempty list");
      for (const Json& v : g[name]) e.axes[name].push_back(rat_from_json(v, e.check + "." + name));
    }
    for (const auto& [key, val] : g.items()) {
      if (key == "check" || key == "qCutoff" || e.axes.count(key)) continue;
      throw ConfigError("grid for " + e.check + ": unknown parameter " + key);
    }
    if (g.contains("qCutoff")) {
      e.qCutoff = rat_from_json(g["qCutoff"], e.check + ".qCutoff");
      if (*e.qCutoff <= 0) throw ConfigError("qCutoff must be positive");
    }
    cfg.grids.push_back(std::move(e));
  }
  return cfg;
}

}  // namespace

SuiteConfig parse_suite_config(const Json& j) {
  try {
    return parse_suite_config_unchecked(j);
  } catch (const Json::exception& ex) {
    // Wrong value types surface from the JSON library; report them as config errors.
    throw ConfigError(std::string("malformed suite config: ") + ex.what());
  }
}

SuiteConfig default_suite() {
  SuiteConfig cfg;
  const std::vector<Rat> gs{Rat(1, 3), Rat(1, 2), Rat(1), Rat(3, 2), Rat(2), Rat(3)};
  const std::vector<Rat> ms{Rat(-2), Rat(-1), Rat(0), Rat(1, 2), Rat(1), Rat(2)};
  const std::vector<Rat> ps{Rat(1), Rat(2), Rat(3)};
  cfg.grids.push_back({"characters-free", {{"g", gs}, {"m", ms}}, Rat(20)});
  cfg.grids.push_back({"characters-finite", {{"p", ps}, {"k", range(-4, 8)}, {"m", range(-4, 8)}}, std::nullopt});
  cfg.grids.push_back({"rr-recursion", {{"g", gs}}, Rat(30)});
  cfg.grids.push_back({"fib-recursions", {{"p", range(1, 4)}, {"l", range(0, 12)}}, std::nullopt});
  cfg.grids.push_back({"rr-free", {{"g", gs}, {"m", ms}}, Rat(15)});
  cfg.grids.push_back({"rr-finite", {{"p", ps}, {"k", range(-4, 8)}, {"m", range(-4, 8)}}, Rat(15)});
  cfg.grids.push_back({"fibonacci", {{"p", {Rat(2), Rat(3)}}, {"k", range(1, 8)}, {"m", range(-3, 3)}}, Rat(15)});
  cfg.grids.push_back({"switching", {{"p", ps}, {"k", range(-6, 6)}, {"m", range(-6, 6)}}, std::nullopt});
  cfg.grids.push_back({"two-binomial", {{"n", range(0, 6)}}, std::nullopt});
  cfg.grids.push_back({"dual-char", {{"p", ps}, {"k", range(-6, 6)}, {"m", range(-6, 6)}}, std::nullopt});
  for (long p = 1; p <= 3; ++p) cfg.grids.push_back({"bfl", {{"p", {Rat(p)}}, {"l", range(0, p - 1)}}, Rat(15)});
  cfg.grids.push_back({"flag", {{"p", {Rat(2), Rat(3)}}, {"n", range(0, 6)}}, Rat(12)});
  cfg.grids.push_back({"ef-chars", {{"p", ps}, {"k", range(0, 9)}, {"m", range(-3, 3)}}, Rat(15)});
  cfg.grids.push_back({"rr-ef", {{"p", ps}, {"k", range(0, 9)}, {"m", range(-3, 3)}}, Rat(15)});
  return cfg;
}

std::vector<Report> run_suite(const SuiteConfig& cfg) {
  std::vector<Task> tasks;
  for (const auto& e : cfg.grids) {
    const auto& names = check_params(e.check);
    std::vector<std::size_t> idx(names.size(), 0);
    for (const auto& n : names)
      if (e.axes.at(n).empty()) throw ConfigError("empty grid for " + e.check);
    // Odometer over the axes, last parameter fastest.
    for (bool done = false; !done;) {
      Params pt;
      for (std::size_t a = 0; a < names.size(); ++a) pt[names[a]] = e.axes.at(names[a])[idx[a]];
      tasks.push_back({&e, std::move(pt)});
      for (std::size_t a = names.size();;) {
        if (a == 0) {
          done = true;
          break;
        }
        --a;
        if (++idx[a] < e.axes.at(names[a]).size()) break;
        idx[a] = 0;
      }
    }
  }
  if (tasks.empty()) throw ConfigError("the suite has no grid points");
  const BiSeries offset = cfg.perturb ? *cfg.perturb : BiSeries();
  return parallel_map(
      tasks,
      [&](const Task& t) {
        std::optional<Rat> cut = t.entry->qCutoff ? t.entry->qCutoff : cfg.qCutoff;
        bool planted = cfg.perturb && t.entry->check.rfind("characters", 0) == 0;
        try {
          return run_check(t.entry->check, t.params, cut, cfg.chargeMax, planted ? offset : BiSeries());
        } catch (const ConfigError&) {
          throw;
        } catch (const std::exception& ex) {
          Report r;
          r.name = t.entry->check;
          for (const auto& [k, v] : t.params) r.param(k, v);
          r.fail(std::string("error: ") + ex.what());
          return r;
        }
      },
      cfg.threads);
}

std::string render(const std::vector<Report>& reports, const std::string& format) {
  if (format == "json") {
    Json j;
    long pass = 0, fail = 0, degen = 0;
    Json arr = Json::array();
    for (const auto& r : reports) {
      (r.verdict == Verdict::Pass ? pass : r.verdict == Verdict::Fail ? fail : degen)++;
      arr.push_back(report_to_json(r));
    }
    j["summary"] = {{"pass", pass}, {"fail", fail}, {"degenerate", degen}};
    j["reports"] = std::move(arr);
    return j.dump(2) + "\n";
  }
  if (format == "csv") return reports_to_csv(reports);
  return reports_to_markdown(reports);
}

}  // namespace fva::cli

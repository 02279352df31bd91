// fva: enumerate bases, print characters, normalize monomials, run checks.
// Exit codes: 0 pass, 1 verification failure, 2 usage or configuration error.
#include "suite.hpp"

#include "fva/basis.hpp"
#include "fva/identities.hpp"
#include "fva/rewriter.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

using namespace fva;
using fva::cli::ConfigError;

constexpr int kPass = 0, kFail = 1, kUsage = 2;

struct SpecFlags {
  std::string family;
  std::string g, m, p, k, i;
  std::string C = "1", D = "1", S = "0", E = "0";
  std::string qcut;
  long chargeMax = -1;
  bool json = false;

  void attach(CLI::App* app) {
    app->add_option("--family", family, "free-algebra | free-module | finite-algebra | finite-module | ef | rf | ef-component")
        ->required();
    app->add_option("--g", g, "locality parameter (free families), e.g. 1/2");
    app->add_option("--m", m, "order parameter");
    app->add_option("--p", p, "positive integer p (finite and EF families)");
    app->add_option("--k", k, "bound k");
    app->add_option("--i", i, "component index (ef-component)");
    app->add_option("--C", C, "charge normalization C");
    app->add_option("--D", D, "degree normalization D");
    app->add_option("--S", S, "charge offset S");
    app->add_option("--E", E, "degree offset E");
    app->add_option("--qcut", qcut, "degree cutoff");
    app->add_option("--charge-max", chargeMax, "largest charge (monomial length)");
    app->add_flag("--json", json, "emit JSON");
  }

  static Rat need(const std::string& v, const char* name) {
    if (v.empty()) throw ConfigError(std::string("missing --") + name);
    return parse_rat(v);
  }
  static long need_int(const std::string& v, const char* name) {
    Rat r = need(v, name);
    if (!is_integer(r)) throw ConfigError(std::string("--") + name + " must be an integer");
    return to_int64(r);
  }

  ModuleSpec spec() const {
    Family f = parse_family(family);
    ModuleSpec s;
    switch (f) {
      case Family::FreeAlgebra: s = ModuleSpec::free_algebra(need(g, "g")); break;
      case Family::FreeModule: s = ModuleSpec::free_module(need(g, "g"), need(m, "m")); break;
      case Family::FiniteAlgebra: s = ModuleSpec::finite_algebra(need_int(p, "p"), need_int(k, "k")); break;
      case Family::FiniteModule: s = ModuleSpec::finite_module(need_int(p, "p"), need_int(k, "k"), need_int(m, "m")); break;
      case Family::EF: s = ModuleSpec::ef(need_int(p, "p"), need_int(k, "k"), need_int(m, "m")); break;
      case Family::RF: s = ModuleSpec::rf(need_int(p, "p"), need_int(k, "k"), need_int(m, "m")); break;
      case Family::EFComponent:
        s = ModuleSpec::ef_component(need_int(p, "p"), need_int(k, "k"), need_int(m, "m"), static_cast<int>(need_int(i, "i")));
        break;
    }
    s = s.with_norm({parse_rat(C), parse_rat(D), parse_rat(S), parse_rat(E)});
    s.validate();
    return s;
  }
  std::optional<Rat> cutoff() const { return qcut.empty() ? std::nullopt : std::optional<Rat>(parse_rat(qcut)); }
  std::optional<long> charge_max() const { return chargeMax < 0 ? std::nullopt : std::optional<long>(chargeMax); }
};

std::string modes_text(const BasisList& b, std::size_t j) {
  std::string t = "(";
  auto modes = b.modes(j);
  for (std::size_t x = 0; x < modes.size(); ++x) t += (x ? "," : "") + to_string(modes[x]);
  return t + ")";
}

int cmd_basis(const SpecFlags& f) {
  ModuleSpec spec = f.spec();
  BasisList b = enumerate_basis(spec, f.cutoff(), f.charge_max());
  if (f.json) {
    std::cout << basis_to_json(spec, b).dump(2) << "\n";
    return kPass;
  }
  std::cout << "# " << spec.describe() << "\n# mode denominator " << b.den << "; columns: charge degree modes (innermost first)\n";
  for (std::size_t j = 0; j < b.seqs.size(); ++j)
    std::cout << to_string(charge_of(spec, b.seqs[j].size())) << " " << to_string(degree_of(spec, b.modes(j))) << " "
              << modes_text(b, j) << "\n";
  BigradedTable t = bigraded_table(spec, f.cutoff(), f.charge_max());
  std::cout << "# " << b.seqs.size() << " elements; dims:";
  for (const auto& [key, dim] : t.entries) std::cout << " (" << to_string(key.first) << "," << to_string(key.second) << ")=" << dim;
  std::cout << "\n";
  return kPass;
}

int cmd_char(const SpecFlags& f, const std::string& closedCut) {
  ModuleSpec spec = f.spec();
  std::optional<Rat> cut = f.cutoff();
  std::optional<Rat> cut2 = closedCut.empty() ? cut : std::optional<Rat>(parse_rat(closedCut));
  BiSeries a = char_from_basis(spec, cut, f.charge_max());
  BiSeries b = char_closed_form(spec, cut2, f.charge_max());
  SeriesComparison c = series_eq(a, b);
  if (f.json) {
    Json j;
    j["module"] = spec.describe();
    j["basis"] = series_to_json(a);
    j["closedForm"] = series_to_json(b);
    j["comparison"] = comparison_to_json(c);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "# " << spec.describe() << "\n";
    std::cout << "basis:  " << a.to_string() << "\n";
    std::cout << "closed: " << b.to_string() << "\n";
    if (a.q_cutoff() != b.q_cutoff() && c.qCutoff)
      std::cout << "note: window-limited, compared up to q^" << to_string(*c.qCutoff) << "\n";
    std::cout << (c.equal ? "PASS" : "FAIL: " + c.describe()) << "\n";
  }
  return c.equal ? kPass : kFail;
}

int cmd_rewrite(const std::string& text, const std::string& g, const std::string& m, const std::string& k) {
  ParsedMonomial pm = parse_monomial(text);
  if (!g.empty()) pm.g = parse_rat(g);
  if (!m.empty()) pm.m = parse_rat(m);
  if (!pm.g || !pm.m) throw ConfigError("g and m are required (flags or '| g=.. m=..')");
  Rewriter rw(*pm.g, *pm.m);
  LinComb v = rw.normal_form(rw.scale(pm.modes));
  if (!k.empty()) {
    Rat bound = parse_rat(k);
    v = quotient_reduce(v, to_int64(Rat(bound * Rat(rw.den()))));
  }
  std::cout << format_lincomb(v, rw.den(), *pm.m) << "\n";
  return kPass;
}

int emit(const std::vector<Report>& reports, const std::string& format, const std::string& output) {
  std::string text = cli::render(reports, format);
  bool failed = false;
  long pass = 0, degen = 0;
  for (const auto& r : reports) {
    failed |= r.failed();
    pass += r.verdict == Verdict::Pass;
    degen += r.verdict == Verdict::Degenerate;
  }
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(output);
    if (!os) throw ConfigError("cannot write " + output);
    os << text;
    std::cout << pass << " passed, " << (reports.size() - pass - degen) << " failed, " << degen << " outside hypotheses; report in "
              << output << "\n";
  }
  for (const auto& r : reports)
    if (r.failed()) std::cerr << r.summary() << "\n";
  return failed ? kFail : kPass;
}

int cmd_verify(const std::string& configPath, bool useDefault, const std::string& format, const std::string& output, unsigned threads) {
  cli::SuiteConfig cfg;
  if (useDefault == !configPath.empty()) throw ConfigError("give exactly one of --config or --default");
  if (useDefault) {
    cfg = cli::default_suite();
  } else {
    std::ifstream is(configPath);
    if (!is) throw ConfigError("cannot read " + configPath);
    Json j;
    try {
      j = Json::parse(is);
    } catch (const Json::exception& e) {
      throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    cfg = cli::parse_suite_config(j);
  }
  if (!format.empty()) cfg.format = format;
  if (!output.empty()) cfg.output = output;
  if (threads) cfg.threads = threads;
  return emit(cli::run_suite(cfg), cfg.format, cfg.output);
}

int cmd_report(const std::string& check, const std::map<std::string, std::string>& raw, const std::string& qcut, long chargeMax,
               const std::string& format) {
  cli::Params params;
  for (const auto& name : cli::check_params(check)) {
    auto it = raw.find(name);
    if (it == raw.end() || it->second.empty()) throw ConfigError(check + " needs --" + name);
    params[name] = parse_rat(it->second);
  }
  std::optional<Rat> cut = qcut.empty() ? std::nullopt : std::optional<Rat>(parse_rat(qcut));
  Report r = cli::run_check(check, params, cut, chargeMax < 0 ? std::nullopt : std::optional<long>(chargeMax));
  return emit({r}, format, "");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact bases, characters and identity checks for free vertex algebras"};
  app.require_subcommand(1);

  SpecFlags basisFlags, charFlags;
  auto* basis = app.add_subcommand("basis", "list a monomial basis with its bigraded dimensions");
  basisFlags.attach(basis);

  auto* chr = app.add_subcommand("char", "character from enumeration and from the closed form");
  charFlags.attach(chr);
  std::string closedCut;
  chr->add_option("--qcut-closed", closedCut, "separate cutoff for the closed form");

  auto* rewrite = app.add_subcommand("rewrite", "normal form of a monomial, e.g. \"b(-2) b(-2) | g=2 m=0\"");
  std::string monomial, rg, rm, rk;
  rewrite->add_option("monomial", monomial, "modes outermost first")->required();
  rewrite->add_option("--g", rg, "locality parameter");
  rewrite->add_option("--m", rm, "order parameter");
  rewrite->add_option("--k", rk, "drop monomials whose outermost mode is b(-n) with n >= k");

  auto* verify = app.add_subcommand("verify", "run a suite of checks and print a scorecard");
  std::string configPath, vFormat, vOutput;
  bool useDefault = false;
  unsigned threads = 0;
  verify->add_option("--config", configPath, "suite configuration (JSON)");
  verify->add_flag("--default", useDefault, "the acceptance grids");
  verify->add_option("--format", vFormat, "json | markdown | csv")->check(CLI::IsMember({"json", "markdown", "csv"}));
  verify->add_option("--output", vOutput, "write the scorecard here");
  verify->add_option("--threads", threads, "worker threads (default: all cores)");

  auto* report = app.add_subcommand("report", "run one named check with explicit parameters");
  std::string check, rqcut, rFormat = "json";
  long rCharge = -1;
  std::map<std::string, std::string> rawParams{{"g", ""}, {"m", ""}, {"p", ""}, {"k", ""}, {"n", ""}, {"l", ""}};
  bool list = false;
  report->add_option("check", check, "check name (see --list)");
  for (auto& [name, value] : rawParams) report->add_option("--" + name, value, "check parameter " + name + " (integer or a/b)");
  report->add_option("--qcut", rqcut, "degree cutoff");
  report->add_option("--charge-max", rCharge, "largest charge");
  report->add_option("--format", rFormat, "json | markdown | csv")->check(CLI::IsMember({"json", "markdown", "csv"}));
  report->add_flag("--list", list, "list the available checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*basis) return cmd_basis(basisFlags);
    if (*chr) return cmd_char(charFlags, closedCut);
    if (*rewrite) return cmd_rewrite(monomial, rg, rm, rk);
    if (*verify) return cmd_verify(configPath, useDefault, vFormat, vOutput, threads);
    if (*report) {
      if (list) {
        for (const auto& name : cli::check_names()) {
          std::cout << name;
          for (const auto& p : cli::check_params(name)) std::cout << " --" << p;
          std::cout << "\n";
        }
        return kPass;
      }
      if (check.empty()) throw ConfigError("name a check or pass --list");
      return cmd_report(check, rawParams, rqcut, rCharge, rFormat);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}

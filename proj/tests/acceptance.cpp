// Acceptance run: one line per criterion, nonzero exit if any criterion fails.
#include "fva/basis.hpp"
#include "fva/rewriter.hpp"
#include "suite.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>

using namespace fva;
using namespace fva::cli;

namespace {

struct Outcome {
  bool ok = true;
  long pass = 0, fail = 0, degenerate = 0;
  std::string detail;
};

void tally(Outcome& o, const std::vector<Report>& reps) {
  for (const auto& r : reps) {
    if (r.verdict == Verdict::Pass) ++o.pass;
    if (r.verdict == Verdict::Degenerate) ++o.degenerate;
    if (r.verdict == Verdict::Fail) {
      if (o.fail++ == 0) o.detail = r.summary();
      o.ok = false;
    }
  }
}

// Runs the named grids of the default suite.
Outcome run_grids(const std::set<std::string>& checks) {
  SuiteConfig all = default_suite(), cfg;
  for (const auto& g : all.grids)
    if (checks.count(g.check)) cfg.grids.push_back(g);
  Outcome o;
  tally(o, run_suite(cfg));
  return o;
}

Outcome fibonacci_dimensions() {
  Outcome o;
  const long want[] = {1, 1, 2, 3, 5, 8, 13};
  for (long k = 0; k <= 6; ++k) {
    long got = static_cast<long>(enumerate_basis(ModuleSpec::finite_algebra(2, k), std::nullopt).seqs.size());
    if (got == want[k]) {
      ++o.pass;
    } else {
      o.ok = false;
      ++o.fail;
      o.detail = "k=" + std::to_string(k) + ": " + std::to_string(got) + " elements";
    }
  }
  const std::vector<std::set<ModeSeq>> listed = {
      {{}}, {{}}, {{}, {1}}, {{}, {1}, {2}}, {{}, {1}, {2}, {3}, {1, 3}}, {{}, {1}, {2}, {3}, {1, 3}, {4}, {1, 4}, {2, 4}},
  };
  for (long k = 0; k <= 5; ++k) {
    BasisList b = enumerate_basis(ModuleSpec::finite_algebra(2, k), std::nullopt);
    if (std::set<ModeSeq>(b.seqs.begin(), b.seqs.end()) == listed[k]) {
      ++o.pass;
    } else {
      o.ok = false;
      ++o.fail;
      o.detail = "basis mismatch at k=" + std::to_string(k);
    }
  }
  return o;
}

Outcome flag() {
  Outcome o = run_grids({"flag"});
  bool b0 = branching_vectors(2, 3, 0).seqs.size() == 3, b1 = branching_vectors(2, 3, 1).seqs.size() == 2;
  if (b0 && b1) {
    ++o.pass;
  } else {
    o.ok = false;
    ++o.fail;
    o.detail = "branching vector counts at p=2, n=3";
  }
  return o;
}

Outcome rewriter_properties() {
  Outcome o;
  auto record = [&](bool good, const std::string& what) {
    if (good) {
      ++o.pass;
      return;
    }
    if (o.fail++ == 0) o.detail = what;
    o.ok = false;
  };
  Rewriter ex(2, 0);
  record(ex.normal_form(ex.scale({2, 2})) == LinComb{{ModeSeq{1, 3}, Rat(-2)}}, "b(-2)b(-2)v_0 example");
  std::mt19937 rng(20260101);
  std::uniform_int_distribution<long> len(1, 5), off(-2, 3);
  long confluence = 0;
  for (Rat g : {Rat(1, 2), Rat(1), Rat(2), Rat(3)}) {
    for (Rat m : {Rat(0), Rat(1)}) {
      Rewriter rw(g, m);
      for (int trial = 0; trial < 40; ++trial) {
        std::vector<Rat> modes;
        for (long j = 0, r = len(rng); j < r; ++j) modes.push_back(m + 1 + g * Rat(j) + Rat(off(rng)));
        ModeSeq seq = rw.scale(modes);
        LinComb nf = rw.normal_form(seq);
        record(nf == rw.normal_form_outermost(seq), "confluence");
        ++confluence;
        std::int64_t sum = 0;
        for (auto v : seq) sum += v;
        for (const auto& [mono, c] : nf) {
          std::int64_t s2 = 0;
          for (auto v : mono) s2 += v;
          record(mono.size() == seq.size() && s2 == sum, "grading preservation");
          record(rw.is_normal(mono) && rw.normal_form(mono) == LinComb{{mono, Rat(1)}}, "idempotence");
        }
      }
    }
  }
  record(confluence >= 200, "fewer than 200 confluence cases");
  return o;
}

struct Criterion {
  int id;
  std::string what;
  double limitSeconds;  // 0: no limit stated
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Fibonacci dimensions and listed bases", 1, fibonacci_dimensions},
      {2, "enumeration = closed form (free and finite)", 30, [] { return run_grids({"characters-free", "characters-finite"}); }},
      {3, "RR and q-Fibonacci recursions", 10, [] { return run_grids({"rr-recursion", "fib-recursions"}); }},
      {4, "free and finite RR sequences", 0, [] { return run_grids({"rr-free", "rr-finite"}); }},
      {5, "Fibonacci sequence by ranks", 120, [] { return run_grids({"fibonacci"}); }},
      {6, "switching identity and two-binomial specialization", 0, [] { return run_grids({"switching", "two-binomial"}); }},
      {7, "lattice character decomposition", 0, [] { return run_grids({"bfl"}); }},
      {8, "flag decomposition and branching vectors", 0, flag},
      {9, "rewriter properties", 0, rewriter_properties},
      {10, "EF/RF characters and components", 0, [] { return run_grids({"ef-chars"}); }},
  };
  bool allOk = true;
  double total = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o = c.run();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    total += secs;
    bool timely = c.limitSeconds == 0 || secs < c.limitSeconds;
    bool ok = o.ok && timely;
    allOk = allOk && ok;
    std::printf("criterion %d: %s  %s: %ld pass, %ld fail, %ld outside hypotheses; %.2f s", c.id, ok ? "PASS" : "FAIL",
                c.what.c_str(), o.pass, o.fail, o.degenerate, secs);
    if (c.limitSeconds > 0) std::printf(" (limit %.0f s)", c.limitSeconds);
    if (!o.detail.empty()) std::printf("; first failure: %s", o.detail.c_str());
    std::printf("\n");
  }
  std::printf("total %.2f s (limit 300 s)\n", total);
  return allOk && total < 300 ? 0 : 1;
}

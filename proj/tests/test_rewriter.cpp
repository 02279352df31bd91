#include "doctest.h"

#include "fva/linalg.hpp"
#include "fva/rewriter.hpp"

#include <functional>
#include <random>

using namespace fva;

namespace {

// Independent oracle: the free module realized on a Fock space. A state is a
// polynomial in x_1, x_2, ... (the negative Heisenberg modes), and b(-n)
// acts as E^-(z) E^+(z) z^{beta.lambda} read off at the right power of z,
// with beta.lambda = m + r g after r applications. Only rational arithmetic
// on polynomials is used, no straightening.
namespace fock {

using Mono = std::map<long, long>;  // k -> exponent of x_k
using Poly = std::map<Mono, Rat>;

void add(Poly& out, const Mono& m, const Rat& c) {
  if (c == 0) return;
  Rat& slot = out[m];
  slot += c;
  if (slot == 0) out.erase(m);
}

long weight(const Mono& m) {
  long w = 0;
  for (const auto& [k, a] : m) w += k * a;
  return w;
}

long max_weight(const Poly& p) {
  long w = 0;
  for (const auto& kv : p) w = std::max(w, weight(kv.first));
  return w;
}

// beta(k) acts as k g d/dx_k.
Poly annihilate(const Poly& p, long k, const Rat& g) {
  Poly out;
  for (const auto& [m, c] : p) {
    auto it = m.find(k);
    if (it == m.end()) continue;
    Mono n = m;
    long a = it->second;
    if (--n[k] == 0) n.erase(k);
    add(out, n, c * Rat(a * k) * g);
  }
  return out;
}

Rat factorial(long n) {
  Rat f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

// E^+ applied to p: map d -> coefficient polynomial of z^{-d}.
std::map<long, Poly> e_plus(const Poly& p, const Rat& g) {
  std::map<long, Poly> cur{{0, p}};
  long w = max_weight(p);
  for (long k = 1; k <= w; ++k) {
    std::map<long, Poly> next;
    for (const auto& [d, q] : cur) {
      Poly term = q;
      for (long j = 0; !term.empty(); ++j) {
        mpz_class kj;
        mpz_pow_ui(kj.get_mpz_t(), mpz_class(k).get_mpz_t(), static_cast<unsigned long>(j));
        Rat coef = Rat(j % 2 ? -1 : 1) / (factorial(j) * Rat(kj));
        Poly& slot = next[d + k * j];
        for (const auto& [m, c] : term) add(slot, m, c * coef);
        term = annihilate(term, k, g);
      }
    }
    cur.clear();
    for (auto& [d, q] : next)
      if (!q.empty()) cur.emplace(d, std::move(q));
  }
  return cur;
}

void partitions(long n, long maxPart, Mono& acc, std::vector<Mono>& out) {
  if (n == 0) {
    out.push_back(acc);
    return;
  }
  for (long k = std::min(n, maxPart); k >= 1; --k) {
    ++acc[k];
    partitions(n - k, k, acc, out);
    if (--acc[k] == 0) acc.erase(k);
  }
}

// Coefficient of z^M in E^-(z): sum over partitions of M of prod x_k^a/(k^a a!).
std::vector<std::pair<Mono, Rat>> e_minus(long M) {
  std::vector<Mono> parts;
  Mono acc;
  partitions(M, M, acc, parts);
  std::vector<std::pair<Mono, Rat>> out;
  for (const Mono& m : parts) {
    Rat c = 1;
    for (const auto& [k, a] : m) {
      mpz_class ka;
      mpz_pow_ui(ka.get_mpz_t(), mpz_class(k).get_mpz_t(), static_cast<unsigned long>(a));
      c /= Rat(ka) * factorial(a);
    }
    out.emplace_back(m, c);
  }
  return out;
}

Poly apply(const Rat& n, const Poly& state, long r, const Rat& g, const Rat& m) {
  Rat N = n - 1 - (m + Rat(r) * g);
  REQUIRE(is_integer(N));
  long shift = to_int64(N);
  Poly out;
  if (shift < -max_weight(state)) return out;
  for (const auto& [d, q] : e_plus(state, g)) {
    long M = shift + d;
    if (M < 0) continue;
    for (const auto& [mono, c] : e_minus(M))
      for (const auto& [qm, qc] : q) {
        Mono prod = qm;
        for (const auto& [k, a] : mono) prod[k] += a;
        add(out, prod, qc * c);
      }
  }
  return out;
}

Poly vec(const std::vector<Rat>& modes, const Rat& g, const Rat& m) {
  Poly st{{Mono{}, Rat(1)}};
  for (std::size_t r = 0; r < modes.size() && !st.empty(); ++r) st = apply(modes[r], st, static_cast<long>(r), g, m);
  return st;
}

}  // namespace fock

std::vector<Rat> random_modes(std::mt19937& rng, const Rat& g, const Rat& m, long maxLen, long lo, long hi) {
  std::uniform_int_distribution<long> len(1, maxLen), off(lo, hi);
  long r = len(rng);
  std::vector<Rat> modes;
  for (long j = 0; j < r; ++j) modes.push_back(m + 1 + g * Rat(j) + Rat(off(rng)));
  return modes;
}

LinComb single(ModeSeq s) { return {{std::move(s), Rat(1)}}; }

}  // namespace

TEST_SUITE("rewriter") {
  TEST_CASE("straightening examples") {
    Rewriter rw(2, 0);
    CHECK(rw.normal_form(rw.scale({2, 2})) == LinComb{{ModeSeq{1, 3}, Rat(-2)}});
    CHECK(rw.normal_form(rw.scale({1, 2})).empty());  // b(-2) b(-1) v_0
    CHECK(rw.normal_form(rw.scale({1, 3})) == single({1, 3}));
    CHECK(format_lincomb(rw.normal_form(rw.scale({2, 2})), rw.den(), rw.m()) == "-2 * b(-3)b(-1)v_0");
    CHECK(format_lincomb({}, 1, 0) == "0");
  }

  TEST_CASE("the truncation condition kills low monomials") {
    Rewriter rw(2, 0);
    CHECK(rw.is_zero_by_truncation(rw.scale({1, 2})));
    CHECK_FALSE(rw.is_zero_by_truncation(rw.scale({1, 3})));
    CHECK(rw.normal_form(rw.scale({0})).empty());
    Rewriter half(Rat(1, 2), 0);
    CHECK(half.normal_form(half.scale({1, Rat(1, 2)})).empty());
  }

  TEST_CASE("straighten_pair carries both sums") {
    // g = 1: (-1)^j C(-1, j) = 1 and (-1)^j C(-1, j+1) = -1.
    auto terms = straighten_pair(-1, -1, 1, 1);
    REQUIRE(terms.size() == 4);
    CHECK(terms[0].outer == Rat(-2));
    CHECK(terms[0].inner == Rat(0));
    CHECK(terms[0].coef == 1);
    CHECK(terms[2].outer == Rat(-2));
    CHECK(terms[2].inner == Rat(0));
    CHECK(terms[2].coef == -1);
  }

  TEST_CASE("normal forms agree with the Fock realization") {
    std::mt19937 rng(2024);
    struct Case {
      Rat g, m;
    };
    std::vector<Case> cases = {{2, 0}, {1, 0}, {Rat(1, 2), 0}, {3, 1}, {Rat(3, 2), Rat(1, 2)}, {Rat(1, 3), -1}, {2, -2}};
    long nonzero = 0;
    for (const auto& [g, m] : cases) {
      Rewriter rw(g, m);
      for (int trial = 0; trial < 40; ++trial) {
        std::vector<Rat> modes = random_modes(rng, g, m, 4, -2, 4);
        LinComb nf = rw.normal_form(rw.scale(modes));
        fock::Poly lhs = fock::vec(modes, g, m), rhs;
        for (const auto& [mono, c] : nf)
          for (const auto& [pm, pc] : fock::vec(rw.unscale(mono), g, m)) fock::add(rhs, pm, pc * c);
        CHECK(lhs == rhs);
        nonzero += !lhs.empty();
      }
    }
    CHECK(nonzero >= 100);
  }

  TEST_CASE("the Fock oracle separates nearby answers") {
    fock::Poly v = fock::vec({2, 2}, 2, 0), w = fock::vec({1, 3}, 2, 0);
    REQUIRE_FALSE(v.empty());
    fock::Poly minus2, plus2;
    for (const auto& [mono, c] : w) {
      fock::add(minus2, mono, -2 * c);
      fock::add(plus2, mono, 2 * c);
    }
    CHECK(v == minus2);
    CHECK(v != plus2);
  }

  TEST_CASE("innermost and outermost strategies agree") {
    std::mt19937 rng(99);
    long cases = 0;
    for (Rat g : {Rat(1, 2), Rat(1), Rat(2), Rat(3)})
      for (Rat m : {Rat(0), Rat(1)}) {
        Rewriter rw(g, m);
        for (int trial = 0; trial < 30; ++trial) {
          std::vector<Rat> modes = random_modes(rng, g, m, 5, -2, 3);
          ModeSeq seq = rw.scale(modes);
          CHECK(rw.normal_form(seq) == rw.normal_form_outermost(seq));
          ++cases;
        }
      }
    CHECK(cases >= 200);
  }

  TEST_CASE("normal forms are idempotent and preserve the grading") {
    std::mt19937 rng(5);
    for (Rat g : {Rat(1, 2), Rat(2)}) {
      Rewriter rw(g, 0);
      for (int trial = 0; trial < 60; ++trial) {
        ModeSeq seq = rw.scale(random_modes(rng, g, 0, 4, -1, 4));
        std::int64_t sum = 0;
        for (auto v : seq) sum += v;
        for (const auto& [mono, c] : rw.normal_form(seq)) {
          CHECK(rw.is_normal(mono));
          CHECK(mono.size() == seq.size());
          std::int64_t s2 = 0;
          for (auto v : mono) s2 += v;
          CHECK(s2 == sum);
          CHECK(rw.normal_form(mono) == single(mono));
        }
      }
    }
  }

  TEST_CASE("normal forms of all monomials span exactly the basis piece") {
    // Every monomial of length r and degree d rewrites into the span of the
    // basis monomials of that piece, and those are reached.
    const Rat g = 2, m = 0;
    Rewriter rw(g, m);
    for (long r = 1; r <= 3; ++r)
      for (long d = 1; d <= 14; ++d) {
        std::vector<ModeSeq> all;
        ModeSeq cur;
        std::function<void(long)> rec = [&](long left) {
          if (static_cast<long>(cur.size()) == r) {
            if (left == 0) all.push_back(cur);
            return;
          }
          for (long n = -2; n <= left + 2 * r; ++n) {
            cur.push_back(n);
            rec(left - n);
            cur.pop_back();
          }
        };
        rec(d);
        std::vector<LinComb> forms;
        std::map<ModeSeq, std::size_t> column;
        for (const auto& s : all) {
          forms.push_back(rw.normal_form(s));
          for (const auto& kv : forms.back()) column.emplace(kv.first, column.size());
        }
        RatMatrix rows;
        for (const auto& nf : forms) {
          std::vector<Rat> row(column.size());
          for (const auto& [mono, c] : nf) row[column.at(mono)] = c;
          rows.push_back(std::move(row));
        }
        long basisCount = 0;
        BasisList b = enumerate_basis(ModuleSpec::free_module(g, m), Rat(d));
        for (const auto& s : b.seqs) {
          std::int64_t sum = 0;
          for (auto v : s) sum += v;
          if (static_cast<long>(s.size()) == r && sum == d) {
            ++basisCount;
            CHECK(column.count(s) == 1);
          }
        }
        CHECK(static_cast<long>(column.size()) == basisCount);
        CHECK(rank(rows, column.size()) == basisCount);
      }
  }

  TEST_CASE("quotient_reduce drops high outer modes") {
    LinComb v{{ModeSeq{}, Rat(1)}, {ModeSeq{1, 3}, Rat(2)}, {ModeSeq{1, 4}, Rat(3)}};
    LinComb r = quotient_reduce(v, 4);
    CHECK(r.size() == 2);
    CHECK(r.count(ModeSeq{1, 4}) == 0);
    CHECK(r.at(ModeSeq{}) == 1);
  }

  TEST_CASE("parsing") {
    ParsedMonomial pm = parse_monomial("b(-5/2) b(-3/2) | g=1/2 m=0");
    CHECK(pm.modes == std::vector<Rat>{Rat(3, 2), Rat(5, 2)});
    REQUIRE(pm.g.has_value());
    CHECK(*pm.g == Rat(1, 2));
    CHECK(*pm.m == Rat(0));
    CHECK(parse_monomial("").modes.empty());
    CHECK_THROWS_AS(parse_monomial("b(-2) c(1)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_monomial("b(-2) | h=1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_monomial("b(-2) | g"), std::invalid_argument);
  }

  TEST_CASE("modes outside the coset are rejected") {
    Rewriter rw(2, 0);
    CHECK_THROWS_AS(rw.scale({Rat(3, 2)}), std::invalid_argument);
    Rewriter half(Rat(1, 2), 0);
    CHECK_THROWS_AS(half.scale({1, 2}), std::invalid_argument);
    CHECK_NOTHROW(half.scale({1, Rat(5, 2)}));
    CHECK_THROWS_AS(Rewriter(0, 0), std::invalid_argument);
  }
}

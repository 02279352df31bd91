#pragma once

#include "fva/basis.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace fva {

/// Finite combination of normal-form monomials. Keys are mode numerators
/// (innermost first) over the rewriter's denominator.
using LinComb = std::map<ModeSeq, Rat>;

/// One term coef * b(outer) b(inner), in mode-index convention b(s) b(t).
struct PairTerm {
  Rat outer, inner, coef;
};

/// Both sums of the straightening relation for b(s) b(t):
///   sum_j (-1)^j C(-g, j) b(t-g-j) b(s+g+j) + sum_j (-1)^j C(-g, j+1) b(s-1-j) b(t+1+j),
/// the first for j <= jMaxFirst, the second for j <= jMaxSecond.
std::vector<PairTerm> straighten_pair(const Rat& s, const Rat& t, const Rat& g, long jMaxFirst, long jMaxSecond);
inline std::vector<PairTerm> straighten_pair(const Rat& s, const Rat& t, const Rat& g, long jMax) {
  return straighten_pair(s, t, g, jMax, jMax);
}

/// Normal forms in the free module M(m) over F(g). The object owns its cache,
/// so use one instance per task when running concurrently.
class Rewriter {
 public:
  static constexpr std::uint64_t kStepBudget = 10'000'000;

  Rewriter(const Rat& g, const Rat& m);

  const Rat& g() const { return g_; }
  const Rat& m() const { return m_; }
  std::int64_t den() const { return den_; }

  /// Scales modes (given as the positive n of b(-n), innermost first);
  /// throws std::invalid_argument for modes outside the legal coset.
  ModeSeq scale(const std::vector<Rat>& modes) const;
  std::vector<Rat> unscale(const ModeSeq& seq) const;

  bool is_legal(const ModeSeq& seq) const;
  /// Some prefix (n_1..n_j) has degree below g j(j-1)/2 + m j + j.
  bool is_zero_by_truncation(const ModeSeq& seq) const;
  bool is_normal(const ModeSeq& seq) const;

  /// Prepends b(-n) (outermost) and renormalizes.
  LinComb act(std::int64_t n, const LinComb& v);
  /// Leftmost-innermost: apply modes one by one starting from the generator.
  LinComb normal_form(const ModeSeq& seq);
  /// Rightmost-outermost: repeatedly straighten the outermost out-of-order
  /// pair of arbitrary monomials. Used to test confluence.
  LinComb normal_form_outermost(const ModeSeq& seq);

  std::size_t cache_size() const { return cache_.size(); }
  std::uint64_t steps() const { return steps_; }

 private:
  const LinComb& act_mono(std::int64_t n, const ModeSeq& mono);
  std::int64_t min_prefix(std::size_t j) const;
  void tick();

  struct KeyHash {
    std::size_t operator()(const std::pair<std::int64_t, ModeSeq>& k) const;
  };

  Rat g_, m_;
  std::int64_t den_, gN_, firstN_, mN_;
  std::vector<Rat> binomFirst_, binomSecond_;  // (-1)^j C(-g,j), (-1)^j C(-g,j+1)
  std::unordered_map<std::pair<std::int64_t, ModeSeq>, LinComb, KeyHash> cache_;
  std::uint64_t steps_ = 0, callSteps_ = 0;
};

/// Drops every monomial whose outermost mode numerator is >= boundNum.
LinComb quotient_reduce(const LinComb& v, std::int64_t boundNum);

/// "c * b(-n_r)...b(-n_1)v_m" lines sorted by mode sequence, or "0".
std::string format_lincomb(const LinComb& v, std::int64_t den, const Rat& m);

/// Parsed "b(-5/2) b(-3/2) | g=1/2 m=0". Modes are the positive n of b(-n),
/// innermost first.
struct ParsedMonomial {
  std::vector<Rat> modes;
  std::optional<Rat> g, m;
};
ParsedMonomial parse_monomial(const std::string& text);

}  // namespace fva

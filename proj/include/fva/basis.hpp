#pragma once

#include "fva/module_spec.hpp"
#include "fva/series.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace fva {

using ModeSeq = std::vector<std::int64_t>;  // numerators, innermost mode first

/// Mode sequences (n_1, ..., n_r) with n_1 innermost, all scaled by den.
struct BasisList {
  std::int64_t den = 1;
  std::vector<ModeSeq> seqs;

  Rat mode(std::size_t seq, std::size_t j) const { return make_rat(seqs[seq][j], den); }
  std::vector<Rat> modes(std::size_t seq) const;
};

/// (charge, degree) -> dimension, within qCutoff and chargeMax.
struct BigradedTable {
  std::map<std::pair<Rat, Rat>, long> entries;
  std::optional<Rat> qCutoff;
  std::optional<long> chargeMax;

  long dim(const Rat& charge, const Rat& degree) const;
  long total() const;
};

/// Visits every basis monomial of spec with degree <= qCutoff (normalized
/// grading) and length <= chargeMax. A missing qCutoff is only accepted for
/// the bounded families, whose bases are finite.
void for_each_basis_element(const ModuleSpec& spec, const std::optional<Rat>& qCutoff, std::optional<long> chargeMax,
                            const std::function<void(const ModeSeq&, std::int64_t den)>& visit);

BasisList enumerate_basis(const ModuleSpec& spec, const std::optional<Rat>& qCutoff, std::optional<long> chargeMax = std::nullopt);
BiSeries char_from_basis(const ModuleSpec& spec, const std::optional<Rat>& qCutoff, std::optional<long> chargeMax = std::nullopt);
BiSeries char_closed_form(const ModuleSpec& spec, const std::optional<Rat>& qCutoff, std::optional<long> chargeMax = std::nullopt);
BigradedTable bigraded_table(const ModuleSpec& spec, const std::optional<Rat>& qCutoff, std::optional<long> chargeMax = std::nullopt);
BigradedTable table_from_series(const BiSeries& s);

Rat charge_of(const ModuleSpec& spec, std::size_t length);
Rat degree_of(const ModuleSpec& spec, const std::vector<Rat>& modes);

/// Least normalized degree of a length-r basis monomial (the staircase).
Rat staircase_degree(const ModuleSpec& spec, long r);

/// Standard branching vectors B_i of M(-n) over F(p), read off the tree of
/// RR sequences: each embedding step at node m adds the mode m+1 innermost-next.
BasisList branching_vectors(long p, long n, long i, const std::optional<Rat>& qCutoff = std::nullopt);

}  // namespace fva

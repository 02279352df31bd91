#pragma once

#include "fva/basis.hpp"
#include "fva/report.hpp"

#include <optional>

namespace fva {

/// 0 -> M(m+g; S+C, E+m+D) -> M(m; S, E) -> M(m+1; S, E) -> 0 over F(g),
/// certified on basis bijections and characters to qCutoff.
Report verify_rr_free(const Rat& g, const Rat& m, const Rat& qCutoff, std::optional<long> chargeMax = std::nullopt,
                      const Normalization& norm = {});

/// 0 -> F_k(m+p) -> F_k(m) -> F_k(m+1) -> 0. Points with k < m+2 are
/// outside the hypotheses and come back Degenerate.
Report verify_rr_finite(long p, long k, long m, std::optional<Rat> qCutoff = std::nullopt, const Normalization& norm = {});

/// 0 -> F_{k-p}(m) -f-> F_k(m) -> F_{k-1}(m) -> 0, with f(v) = a(-k+1)v computed
/// by the rewriter. Exactness is certified by ranks per (charge, degree) piece.
Report verify_fibonacci(long p, long k, long m, std::optional<Rat> qCutoff = std::nullopt, const Normalization& norm = {});

/// The EF sequence per length component, plus the full EF and RF sequences.
Report verify_rr_ef(long p, long k, long m, std::optional<Rat> qCutoff = std::nullopt, const Normalization& norm = {});

/// Flag decomposition of M(-n) over F(p) through the tree of RR sequences.
Report verify_flag(long p, long n, const Rat& qCutoff, const Normalization& norm = {});

/// Sequence 0 -> sub -> mid -> quo -> 0 where the injection prepends the mode
/// mid.m + 1 innermost and the surjection is the identity on the remaining
/// basis monomials. Shared by the free, finite and EF verifiers.
void check_rr_triple(Report& rep, const ModuleSpec& sub, const ModuleSpec& mid, const ModuleSpec& quo,
                     const std::optional<Rat>& qCutoff, std::optional<long> chargeMax, const std::string& label = "");

}  // namespace fva

#pragma once

#include "fva/module_spec.hpp"
#include "fva/report.hpp"

#include <optional>

namespace fva {

/// Enumeration against the closed form of spec. offset is added to the
/// closed-form side; negative controls use it to plant a wrong coefficient.
Report check_characters(const ModuleSpec& spec, const std::optional<Rat>& qCutoff, std::optional<long> chargeMax = std::nullopt,
                        const BiSeries& offset = {});

/// F_g(z,q) = F_g(zq,q) + z q^{g/2} F_g(zq^g,q) to qCutoff. For g <= 0 the
/// charge is unbounded at fixed degree, so chargeMax is required.
Report check_rr_recursion(const Rat& g, const Rat& qCutoff, std::optional<long> chargeMax = std::nullopt);

/// F_{p,l+p} = F_{p,l+p-1} + z q^{l+p/2} F_{p,l} and
/// F_{p,l+p} = F_{p,l+p-1}(zq) + z q^{p/2} F_{p,l}(zq^p), exactly.
Report check_fib_recursions(long p, long l);

/// Both q-binomial sums of the switching identity, as Laurent polynomials.
Report check_switching(long p, long k, long m);

/// z^n q^{n^2} sum_r q^{r^2-2nr} [2n-r, r] z^{-r} = sum_r q^{r^2} [n+r, 2r] z^r.
Report check_two_binomial(long n);

/// ch F_k(m) at z^{-1} against the dual RF character. Points with k <= m+1 are
/// reported Degenerate.
Report check_dual_char(long p, long k, long m, const Rat& S = 0, const Rat& E = 0);

/// EF, RF and component closed forms against enumeration in two gradings,
/// and reassembly of EF from its components.
Report check_ef_chars(long p, long k, long m, std::optional<Rat> qCutoff = std::nullopt);

/// Lattice character of V_{Q - l w} against its decomposition into F(p) characters.
Report check_bfl(long p, long l, const Rat& qCutoff);

}  // namespace fva

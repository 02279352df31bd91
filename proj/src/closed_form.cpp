// Fermionic closed forms for the characters of every module family.
#include "fva/basis.hpp"

#include <functional>
#include <stdexcept>

namespace fva {

namespace {

long mod_floor(long a, long p) { return ((a % p) + p) % p; }

long floor_div(long a, long p) { return (a - mod_floor(a, p)) / p; }

// q^E z^S sum_r q^{r^2/2p + (D - 1/2p + m/p) r} [floor((k-r-m)/p) - 1 + r, r] z^{C r},
// restricted to the lengths r accepted by keep.
BiSeries ef_sum(long p, long k, long m, const Normalization& nm, const std::function<bool(long)>& keep) {
  BiSeries s;
  const Rat P(p);
  for (long r = 0; r <= k - m - p; ++r) {
    if (!keep(r)) continue;
    QPoly b = q_binomial(floor_div(k - r - m, p) - 1 + r, r);
    Rat qe = Rat(r * r) / (2 * P) + (nm.D - 1 / (2 * P) + Rat(m) / P) * Rat(r);
    b.add_to(s, nm.S + nm.C * Rat(r), nm.E + qe);
  }
  return s;
}

// The RF character with i = (k - m + 1) mod p, lengths i + p r.
BiSeries rf_sum(long p, long k, long m, const Normalization& nm) {
  const long i = mod_floor(k - m + 1, p);
  const Rat P(p);
  const Rat Cfull = P * nm.C;  // charge of one generator of F(p)
  if ((k - m - i + 1) % p != 0) throw std::logic_error("RF binomial top is not an integer");
  const long top0 = (k - m - i + 1) / p - 2 + i;
  const Rat zPre = nm.S + nm.C * Rat(i);
  const Rat qPre = nm.E + Rat(i * i) / (2 * P) + Rat(i) * (nm.D - 1 / (2 * P) + Rat(m) / P);
  BiSeries s;
  for (long r = 0; top0 + (p - 1) * r >= i + p * r; ++r) {
    QPoly b = q_binomial(top0 + (p - 1) * r, i + p * r);
    Rat qe = P * Rat(r * r) / 2 + (P * nm.D - Rat(1, 2) + Rat(i + m)) * Rat(r);
    b.add_to(s, zPre + Cfull * Rat(r), qPre + qe);
  }
  return s;
}

}  // namespace

BiSeries char_closed_form(const ModuleSpec& spec, const std::optional<Rat>& qCutoff, std::optional<long> chargeMax) {
  spec.validate();
  const Normalization& nm = spec.norm;
  BiSeries s;
  switch (spec.family) {
    case Family::FreeAlgebra:
    case Family::FreeModule: {
      if (!qCutoff) throw std::invalid_argument("free families need a degree cutoff");
      Rat shift = nm.D - spec.g / 2 + spec.m;
      return f_g_series(spec.g, nm.C, shift, *qCutoff - nm.E, chargeMax).shifted(nm.S, nm.E);
    }
    case Family::FiniteAlgebra:
    case Family::FiniteModule: {
      long p = spec.p(), k = spec.k_int(), m = spec.m_int();
      if (k <= m + 1)
        s = BiSeries::monomial(nm.S, nm.E);
      else
        s = fib_poly(static_cast<unsigned>(p), k + p - 2 - m, nm.C, nm.D - Rat(p) / 2 + Rat(m)).shifted(nm.S, nm.E);
      break;
    }
    case Family::EF: {
      long p = spec.p(), k = spec.k_int(), m = spec.m_int();
      s = k <= m + p ? BiSeries::monomial(nm.S, nm.E) : ef_sum(p, k, m, nm, [](long) { return true; });
      break;
    }
    case Family::EFComponent: {
      long p = spec.p(), k = spec.k_int(), m = spec.m_int();
      long want = (spec.component + 1) % p;
      if (k <= m + p)
        s = want == 0 ? BiSeries::monomial(nm.S, nm.E) : BiSeries();
      else
        s = ef_sum(p, k, m, nm, [&](long r) { return r % p == want; });
      break;
    }
    case Family::RF: {
      long p = spec.p(), k = spec.k_int(), m = spec.m_int();
      if (k <= m + p)
        s = mod_floor(k - m + 1, p) == 0 ? BiSeries::monomial(nm.S, nm.E) : BiSeries();
      else
        s = rf_sum(p, k, m, nm);
      break;
    }
  }
  if (chargeMax) {
    Rat lim = charge_of(spec, static_cast<std::size_t>(*chargeMax));
    Rat lo = std::min(nm.S, lim), hi = std::max(nm.S, lim);
    s = s.filtered([&](const Rat& z, const Rat&) { return z >= lo && z <= hi; });
    s.set_z_window(lo, hi);
  }
  if (qCutoff) s.set_q_cutoff(*qCutoff);
  return s;
}

}  // namespace fva

#pragma once

#include "fva/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fva {

/// Bivariate series in z, q with rational exponents and rational
/// coefficients. Exponents are stored as integer numerators over zDenom and
/// qDenom; denominators grow (by lcm) when a term needs it.
///
/// A series is either exact (every term is known) or truncated at qCutoff:
/// the stored terms are exactly the terms with qExp <= qCutoff. An optional
/// zWindow further restricts where the series is known to be complete.
class BiSeries {
 public:
  using Key = std::pair<std::int64_t, std::int64_t>;  // (qNum, zNum)
  using ZWindow = std::pair<Rat, Rat>;

  struct Term {
    Rat z, q, coef;
  };

  BiSeries() = default;  // exact zero
  static BiSeries truncated_zero(const Rat& qCutoff);
  static BiSeries monomial(const Rat& z, const Rat& q, const Rat& coef = 1);
  static BiSeries one() { return monomial(0, 0, 1); }

  std::int64_t z_denom() const { return zDen_; }
  std::int64_t q_denom() const { return qDen_; }
  bool is_exact() const { return !cutNum_.has_value(); }
  std::optional<Rat> q_cutoff() const;
  std::optional<std::int64_t> q_cutoff_num() const { return cutNum_; }
  const std::optional<ZWindow>& z_window() const { return zWindow_; }
  void set_z_window(const Rat& lo, const Rat& hi);
  void clear_z_window() { zWindow_.reset(); }

  /// Adds coef * z^z q^q; silently drops terms beyond the cutoff.
  void add_term(const Rat& z, const Rat& q, const Rat& coef);
  /// Same with exponents already scaled to the current denominators.
  void add_scaled(std::int64_t zNum, std::int64_t qNum, const Rat& coef);

  Rat coeff(const Rat& z, const Rat& q) const;
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Key, Rat>& raw() const { return terms_; }
  std::vector<Term> terms() const;  // sorted by (q, z)
  std::optional<Rat> min_q() const;
  std::optional<Rat> min_z() const;
  std::optional<Rat> max_z() const;

  /// Ensures both denominators divide the given ones.
  void rescale(std::int64_t zDen, std::int64_t qDen);
  void set_q_cutoff(const Rat& cutoff);  // only lowers; drops terms above

  BiSeries truncated(const Rat& cutoff) const;
  BiSeries shifted(const Rat& dz, const Rat& dq) const;  // times z^dz q^dq
  /// f(z, q) -> f(z^zPow q^qShift, q); exact series only.
  BiSeries substituted(const Rat& zPow, const Rat& qShift) const;
  BiSeries z_inverted() const;  // exact series only
  BiSeries filtered(const std::function<bool(const Rat& z, const Rat& q)>& keep) const;

  BiSeries& operator+=(const BiSeries& other);
  BiSeries& operator-=(const BiSeries& other);
  BiSeries& operator*=(const Rat& c);
  friend BiSeries operator+(BiSeries a, const BiSeries& b) { return a += b; }
  friend BiSeries operator-(BiSeries a, const BiSeries& b) { return a -= b; }
  friend BiSeries operator*(BiSeries a, const Rat& c) { return a *= c; }
  friend BiSeries operator*(const BiSeries& a, const BiSeries& b);

  std::string to_string() const;  // human readable, sorted by (q, z)

 private:
  void merge_window(const BiSeries& other);
  bool beyond(std::int64_t qNum) const { return cutNum_ && qNum > *cutNum_; }

  std::int64_t zDen_ = 1;
  std::int64_t qDen_ = 1;
  std::optional<std::int64_t> cutNum_;
  std::optional<ZWindow> zWindow_;
  std::map<Key, Rat> terms_;
};

/// Exact polynomial in q with integer coefficients (index = q power).
struct QPoly {
  std::vector<mpz_class> coef;
  bool is_zero() const { return coef.empty(); }
  /// coef * z^z q^qShift * this, accumulated into s.
  void add_to(BiSeries& s, const Rat& z, const Rat& qShift, const Rat& scale = 1) const;
  BiSeries to_series() const;
};

struct SeriesComparison {
  bool equal = true;
  std::optional<Rat> qCutoff;  // comparison window; empty means both exact
  std::optional<BiSeries::ZWindow> zWindow;
  std::size_t termsCompared = 0;
  std::optional<Rat> mismatchZ, mismatchQ;
  Rat lhsCoef, rhsCoef;
  std::string describe() const;
};

/// Coefficient-wise equality on the intersection of the two windows.
SeriesComparison series_eq(const BiSeries& a, const BiSeries& b);

BiSeries q_pochhammer_inv(unsigned r, const Rat& qCutoff);
QPoly q_binomial(long n, long r);

/// Truncation of F_g(z^zPow q^qShift, q). Without chargeMax the charge bound
/// is derived from the growth of g r^2/2 + qShift r; if that does not grow
/// the call throws. With chargeMax the result carries a matching zWindow.
BiSeries f_g_series(const Rat& g, const Rat& zPow, const Rat& qShift, const Rat& qCutoff,
                    std::optional<long> chargeMax = std::nullopt);

/// F_{p,l}(z^zPow q^qShift, q) as an exact polynomial.
BiSeries fib_poly(unsigned p, long l, const Rat& zPow = 1, const Rat& qShift = 0);

/// (q)_inf^{-1} sum_n z^{n-l/p} q^{(pn-l)^2/(2p)}, truncated.
BiSeries lattice_char(unsigned p, unsigned l, const Rat& qCutoff);

/// Largest r >= 0 with a r^2 + b r <= c for all larger r excluded; throws if
/// a r^2 + b r does not grow. Shared by every constructor needing a charge bound.
long charge_bound(const Rat& a, const Rat& b, const Rat& c);

}  // namespace fva

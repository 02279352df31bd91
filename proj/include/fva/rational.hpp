#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace fva {

/// Exact rational backed by GMP. mpq_class keeps values canonical as long as
/// every construction goes through make_rat or arithmetic.
using Rat = mpq_class;

Rat make_rat(long num, long den = 1);
Rat parse_rat(std::string_view text);  // "a", "-a", "a/b"; throws std::invalid_argument
std::string to_string(const Rat& x);    // "a" or "a/b"

bool is_integer(const Rat& x);
mpz_class floor_rat(const Rat& x);
mpz_class ceil_rat(const Rat& x);

/// Narrowing helpers; throw std::overflow_error when the value does not fit.
std::int64_t to_int64(const mpz_class& x);
std::int64_t to_int64(const Rat& x);  // requires an integer

std::int64_t lcm64(std::int64_t a, std::int64_t b);
std::int64_t denom64(const Rat& x);

/// x(x-1)...(x-j+1)/j!
Rat gen_binom(const Rat& x, unsigned j);

/// Rational exponent stored as value/denom with denom shared by a context.
struct ScaledExponent {
  std::int64_t value = 0;
  std::int64_t denom = 1;

  static ScaledExponent from_rat(const Rat& x, std::int64_t denom);  // throws if x*denom is not integral
  Rat to_rat() const;
  ScaledExponent rescaled(std::int64_t newDenom) const;  // newDenom must be a multiple of denom
};

bool operator==(const ScaledExponent& a, const ScaledExponent& b);
bool operator<(const ScaledExponent& a, const ScaledExponent& b);
ScaledExponent operator+(const ScaledExponent& a, const ScaledExponent& b);

}  // namespace fva

#include "fva/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace fva {

Rat make_rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat parse_rat(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return std::invalid_argument("not a rational: '" + s + "'"); };
  if (s.empty()) throw bad();
  auto checkInt = [&](const std::string& part) {
    std::size_t i = (part.size() > 0 && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) throw bad();
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') throw bad();
  };
  auto slash = s.find('/');
  Rat r;
  if (slash == std::string::npos) {
    checkInt(s);
    r = Rat(mpz_class(s[0] == '+' ? s.substr(1) : s));
  } else {
    std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    checkInt(a);
    checkInt(b);
    mpz_class den(b[0] == '+' ? b.substr(1) : b);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    r = Rat(mpz_class(a[0] == '+' ? a.substr(1) : a), den);
    r.canonicalize();
  }
  return r;
}

std::string to_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

bool is_integer(const Rat& x) { return x.get_den() == 1; }

mpz_class floor_rat(const Rat& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

mpz_class ceil_rat(const Rat& x) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

std::int64_t to_int64(const mpz_class& x) {
  if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
  return x.get_si();
}

std::int64_t to_int64(const Rat& x) {
  if (!is_integer(x)) throw std::invalid_argument("expected an integer, got " + to_string(x));
  return to_int64(x.get_num());
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

std::int64_t denom64(const Rat& x) { return to_int64(mpz_class(x.get_den())); }

Rat gen_binom(const Rat& x, unsigned j) {
  Rat r = 1;
  for (unsigned i = 0; i < j; ++i) {
    r *= x - Rat(i);
    r /= Rat(i + 1);
  }
  return r;
}

ScaledExponent ScaledExponent::from_rat(const Rat& x, std::int64_t denom) {
  Rat scaled = x * Rat(denom);
  if (!is_integer(scaled))
    throw std::invalid_argument("exponent " + to_string(x) + " not in (1/" + std::to_string(denom) + ")Z");
  return {to_int64(scaled), denom};
}

Rat ScaledExponent::to_rat() const { return make_rat(value, denom); }

ScaledExponent ScaledExponent::rescaled(std::int64_t newDenom) const {
  if (newDenom % denom != 0) throw std::invalid_argument("rescale target is not a multiple of the denominator");
  return {value * (newDenom / denom), newDenom};
}

static void align(const ScaledExponent& a, const ScaledExponent& b, ScaledExponent& ra, ScaledExponent& rb) {
  std::int64_t d = lcm64(a.denom, b.denom);
  ra = a.rescaled(d);
  rb = b.rescaled(d);
}

bool operator==(const ScaledExponent& a, const ScaledExponent& b) {
  ScaledExponent x, y;
  align(a, b, x, y);
  return x.value == y.value;
}

bool operator<(const ScaledExponent& a, const ScaledExponent& b) {
  ScaledExponent x, y;
  align(a, b, x, y);
  return x.value < y.value;
}

ScaledExponent operator+(const ScaledExponent& a, const ScaledExponent& b) {
  ScaledExponent x, y;
  align(a, b, x, y);
  return {x.value + y.value, x.denom};
}

}  // namespace fva

#include "doctest.h"

#include "fva/series.hpp"

#include <random>

using namespace fva;

namespace {

BiSeries q_poly(std::initializer_list<long> coefs, const Rat& z = 0) {
  BiSeries s;
  long e = 0;
  for (long c : coefs) s.add_term(z, Rat(e++), Rat(c));
  return s;
}

BiSeries term(const Rat& z, const Rat& q, const Rat& c = 1) { return BiSeries::monomial(z, q, c); }

bool same(const BiSeries& a, const BiSeries& b) { return series_eq(a, b).equal; }

std::vector<long> coefs(const QPoly& p) {
  std::vector<long> out;
  for (const auto& c : p.coef) out.push_back(c.get_si());
  return out;
}

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("inverse q-Pochhammer") {
    CHECK(same(q_pochhammer_inv(0, 5), BiSeries::one()));
    CHECK(same(q_pochhammer_inv(1, 3), q_poly({1, 1, 1, 1})));
    CHECK(same(q_pochhammer_inv(2, 4), q_poly({1, 1, 2, 2, 3})));
    CHECK(q_pochhammer_inv(2, 4).q_cutoff() == Rat(4));
  }

  TEST_CASE("q-binomial examples") {
    CHECK(coefs(q_binomial(2, 1)) == std::vector<long>{1, 1});
    CHECK(coefs(q_binomial(3, 1)) == std::vector<long>{1, 1, 1});
    CHECK(q_binomial(1, 2).is_zero());
    CHECK(q_binomial(-1, 0).is_zero());
    CHECK(q_binomial(3, -1).is_zero());
    CHECK(coefs(q_binomial(4, 2)) == std::vector<long>{1, 1, 2, 1, 1});
  }

  TEST_CASE("q-binomial symmetry and both q-Pascal rules") {
    for (long n = 0; n <= 20; ++n)
      for (long r = 0; r <= n; ++r) {
        CHECK(q_binomial(n, r).coef == q_binomial(n, n - r).coef);
        if (n == 0 || r == 0) continue;
        BiSeries a, b;
        q_binomial(n - 1, r - 1).add_to(a, 0, 0);
        q_binomial(n - 1, r).add_to(a, 0, Rat(r));
        q_binomial(n - 1, r - 1).add_to(b, 0, Rat(n - r));
        q_binomial(n - 1, r).add_to(b, 0, 0);
        CHECK(same(q_binomial(n, r).to_series(), a));
        CHECK(same(q_binomial(n, r).to_series(), b));
      }
  }

  TEST_CASE("F_g truncations") {
    // sum z^r q^{r^2}/(q)_r to q^2: 1 + zq + zq^2
    BiSeries f = f_g_series(2, 1, 0, 2);
    CHECK(same(f, BiSeries::one() + term(1, 1) + term(1, 2)));
    for (Rat g : {Rat(1, 3), Rat(1, 2), Rat(1), Rat(3)}) CHECK(f_g_series(g, 1, 0, 6).coeff(0, 0) == 1);
    // Recursion instance modulo q^3.
    BiSeries rhs = f_g_series(2, 1, 1, 2) + f_g_series(2, 1, 2, 1).shifted(1, 1);
    CHECK(same(f, rhs));
    CHECK(same(rhs, BiSeries::one() + term(1, 1) + term(1, 2)));
  }

  TEST_CASE("F_g needs a charge bound when the charge strata do not grow") {
    CHECK_THROWS(f_g_series(0, 1, 0, 5));
    CHECK_THROWS(f_g_series(-1, 1, 0, 5));
    BiSeries s = f_g_series(0, 1, 0, 3, 4);
    REQUIRE(s.z_window().has_value());
    CHECK(s.z_window()->second == 4);
    CHECK(s.coeff(4, 0) == 1);
  }

  TEST_CASE("q-Fibonacci polynomials") {
    CHECK(same(fib_poly(2, 0), BiSeries::one()));
    CHECK(same(fib_poly(2, 2), BiSeries::one() + term(1, 1)));
    BiSeries f24 = BiSeries::one() + term(1, 1) + term(1, 2) + term(1, 3) + term(2, 4);
    CHECK(same(fib_poly(2, 4), f24));
    CHECK(fib_poly(2, 4).is_exact());
    for (unsigned p = 1; p <= 4; ++p)
      for (long l = 0; l <= 12; ++l)
        for (const auto& t : fib_poly(p, l).terms()) {
          CHECK(is_integer(t.coef));
          CHECK(t.coef > 0);
          CHECK(denom64(t.q) <= 2);
        }
  }

  TEST_CASE("lattice characters") {
    BiSeries h = BiSeries::one() + term(0, 1);
    for (int sign : {1, -1}) h += term(sign, Rat(1, 2)) + term(sign, Rat(3, 2));
    CHECK(same(lattice_char(1, 0, Rat(3, 2)), h));
    CHECK(lattice_char(2, 0, 5).coeff(0, 0) == 1);
    BiSeries l1 = lattice_char(2, 1, 3);
    CHECK(l1.min_q() == Rat(1, 4));
    CHECK(l1.coeff(Rat(-1, 2), Rat(1, 4)) == 1);
    CHECK(l1.coeff(Rat(1, 2), Rat(1, 4)) == 1);
  }

  TEST_CASE("series_eq locates the first mismatch") {
    BiSeries f = f_g_series(2, 1, 0, 30);
    CHECK(series_eq(f, f).equal);
    BiSeries rhs = f_g_series(2, 1, 1, 30) + f_g_series(2, 1, 2, 29).shifted(1, 1);
    CHECK(series_eq(f, rhs).equal);
    SeriesComparison c = series_eq(fib_poly(2, 2), fib_poly(2, 1));
    CHECK_FALSE(c.equal);
    CHECK(c.mismatchZ == Rat(1));
    CHECK(c.mismatchQ == Rat(1));
    CHECK(c.lhsCoef == 1);
    CHECK(c.rhsCoef == 0);
  }

  TEST_CASE("comparison respects truncation windows") {
    BiSeries a = q_poly({1, 2, 3}).truncated(1);
    BiSeries b = q_poly({1, 2, 7});
    SeriesComparison c = series_eq(a, b);
    CHECK(c.equal);
    CHECK(c.qCutoff == Rat(1));
    BiSeries w = term(0, 0) + term(5, 0);
    w.set_z_window(0, 3);
    CHECK(series_eq(w, BiSeries::one()).equal);
  }

  TEST_CASE("cutoff bookkeeping of sums and products") {
    BiSeries a = q_pochhammer_inv(1, 5);  // 1 + q + ... + q^5
    BiSeries b = q_pochhammer_inv(1, 3);
    CHECK((a + b).q_cutoff() == Rat(3));
    // (1/(1-q))^2 = sum (n+1) q^n is known to q^3 from these factors.
    BiSeries p = a * b;
    CHECK(p.q_cutoff() == Rat(3));
    CHECK(same(p, q_poly({1, 2, 3, 4})));
    // A factor starting at q^2 extends the window of the other.
    BiSeries shifted = b.shifted(0, 2);
    CHECK((a * shifted).q_cutoff() == Rat(5));
    BiSeries exact = term(1, 1);
    CHECK((exact * b).q_cutoff() == Rat(4));
  }

  TEST_CASE("ring laws on the truncation window") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> c(-3, 3), e(0, 6), zd(-2, 2);
    auto random_series = [&]() {
      BiSeries s = BiSeries::truncated_zero(Rat(e(rng) + 4, 2));
      for (int i = 0; i < 6; ++i) s.add_term(make_rat(zd(rng), 2), make_rat(e(rng), 2), Rat(c(rng)));
      return s;
    };
    for (int trial = 0; trial < 50; ++trial) {
      BiSeries x = random_series(), y = random_series(), z = random_series();
      CHECK(same((x * y) * z, x * (y * z)));
      CHECK(same(x * (y + z), x * y + x * z));
      CHECK(same(x * y, y * x));
      CHECK(same(x + y - y, x));
    }
  }

  TEST_CASE("substitution and z inversion") {
    BiSeries f = fib_poly(2, 4);
    BiSeries g = f.substituted(1, 1);  // f(zq, q)
    CHECK(same(g, fib_poly(2, 4, 1, 1)));
    BiSeries inv = f.z_inverted();
    CHECK(inv.coeff(-2, 4) == 1);
    CHECK(same(inv.z_inverted(), f));
    CHECK_THROWS(q_pochhammer_inv(2, 3).z_inverted());
  }

  TEST_CASE("no zero coefficients are stored") {
    BiSeries s = term(1, 1) + term(1, 1, -1);
    CHECK(s.empty());
    BiSeries t = term(0, 0) * Rat(0);
    CHECK(t.empty());
  }
}

#include "fva/identities.hpp"

#include "fva/basis.hpp"

#include <stdexcept>

namespace fva {

namespace {

long mod_floor(long a, long p) { return ((a % p) + p) % p; }

Report named(const std::string& name, const std::string& level) {
  Report r;
  r.name = name;
  r.level = level;
  return r;
}

// Moves the outcome of a computation done outside the hypotheses into notes.
void absorb_degenerate(Report& rep, Report& inner, const std::string& why) {
  rep.comparisons = std::move(inner.comparisons);
  if (!why.empty()) {
    rep.degenerate(why);
    for (const auto& n : inner.notes) rep.notes.push_back("outside hypotheses: " + n);
    if (inner.notes.empty()) rep.notes.push_back("identity holds here as well");
  } else {
    rep.verdict = inner.verdict;
    rep.notes = std::move(inner.notes);
  }
}

// z^{-m/p} q^{m^2/2p} sum_r q^{p r^2/2 + m r} [k-m+p-2+(1-p)r, r] z^{-r}
BiSeries switching_lhs(long p, long k, long m) {
  BiSeries s;
  const Rat P(p), M(m);
  for (long r = 0; k - m + p - 2 - p * r >= 0; ++r) {
    QPoly b = q_binomial(k - m + p - 2 + (1 - p) * r, r);
    b.add_to(s, -M / P - Rat(r), M * M / (2 * P) + P * Rat(r * r) / 2 + M * Rat(r));
  }
  return s;
}

BiSeries switching_rhs(long p, long k, long m) {
  const long mp = m - 2 * p + 1, kp = k + p - 2;
  const long i = mod_floor(-m + k - 2, p);
  const long num = -mp + kp - i + 1;
  if (num % p != 0) throw std::logic_error("switching identity: binomial top is not an integer");
  const long top = num / p;
  const Rat P(p), K(kp), I(i);
  BiSeries s;
  for (long r = 0; top - 2 - r >= 0; ++r) {
    QPoly b = q_binomial(top - 2 + i + (p - 1) * r, i + p * r);
    b.add_to(s, (I - K) / P + Rat(r), (K * K + I * I - 2 * K * I) / (2 * P) + P * Rat(r * r) / 2 + (I - K) * Rat(r));
  }
  return s;
}

}  // namespace

Report check_characters(const ModuleSpec& spec, const std::optional<Rat>& qCutoff, std::optional<long> chargeMax,
                        const BiSeries& offset) {
  Report rep = named("characters", "series");
  rep.param("module", spec.describe());
  if (qCutoff) rep.param("qCutoff", *qCutoff);
  if (chargeMax) rep.param("chargeMax", *chargeMax);
  rep.compare("enumeration = closed form", char_from_basis(spec, qCutoff, chargeMax),
              char_closed_form(spec, qCutoff, chargeMax) + offset);
  return rep;
}

Report check_rr_recursion(const Rat& g, const Rat& qCutoff, std::optional<long> chargeMax) {
  Report rep = named("rr-recursion", "series");
  rep.param("g", g);
  rep.param("qCutoff", qCutoff);
  if (chargeMax) rep.param("chargeMax", *chargeMax);
  BiSeries lhs = f_g_series(g, 1, 0, qCutoff, chargeMax);
  BiSeries rhs = f_g_series(g, 1, 1, qCutoff, chargeMax);
  if (!chargeMax || *chargeMax > 0) {
    std::optional<long> below = chargeMax ? std::optional<long>(*chargeMax - 1) : std::nullopt;
    BiSeries tail = f_g_series(g, 1, g, qCutoff - g / 2, below).shifted(1, g / 2);
    // The tail has no charge-0 terms, so it is complete on the full window.
    if (chargeMax) tail.set_z_window(0, Rat(*chargeMax));
    rhs += tail;
  }
  rep.compare("F_g(z) = F_g(zq) + z q^{g/2} F_g(zq^g)", lhs, rhs);
  return rep;
}

Report check_fib_recursions(long p, long l) {
  Report rep = named("fib-recursions", "polynomial");
  rep.param("p", p);
  rep.param("l", l);
  if (p < 1 || l < 0) throw std::invalid_argument("fib recursions need p >= 1 and l >= 0");
  const unsigned up = static_cast<unsigned>(p);
  const Rat P(p);
  BiSeries top = fib_poly(up, l + p);
  BiSeries a = fib_poly(up, l + p - 1) + fib_poly(up, l).shifted(1, Rat(l) + P / 2);
  rep.compare("additive recursion", top, a);
  BiSeries b = fib_poly(up, l + p - 1, 1, 1) + fib_poly(up, l, 1, P).shifted(1, P / 2);
  rep.compare("shifted recursion", top, b);
  return rep;
}

Report check_switching(long p, long k, long m) {
  Report rep = named("switching", "polynomial");
  rep.param("p", p);
  rep.param("k", k);
  rep.param("m", m);
  if (p < 1) throw std::invalid_argument("switching identity needs p >= 1");
  rep.compare("finite side = dual side", switching_lhs(p, k, m), switching_rhs(p, k, m));
  return rep;
}

Report check_two_binomial(long n) {
  Report rep = named("two-binomial", "polynomial");
  rep.param("n", n);
  if (n < 0) throw std::invalid_argument("needs n >= 0");
  BiSeries lhs, rhs;
  for (long r = 0; r <= n; ++r) {
    q_binomial(2 * n - r, r).add_to(lhs, Rat(n - r), Rat(n * n + r * r - 2 * n * r));
    q_binomial(n + r, 2 * r).add_to(rhs, Rat(r), Rat(r * r));
  }
  rep.compare("[2n-r, r] side = [n+r, 2r] side", lhs, rhs);
  rep.compare("switching instance p=2, k=0, m=-2n", switching_lhs(2, 0, -2 * n), lhs);
  return rep;
}

Report check_dual_char(long p, long k, long m, const Rat& S, const Rat& E) {
  Report rep = named("dual-char", "polynomial");
  rep.param("p", p);
  rep.param("k", k);
  rep.param("m", m);
  rep.param("S", S);
  rep.param("E", E);
  const Rat P(p), M(m);
  const long mp = m - 2 * p + 1, kp = k + p - 2;
  const Rat K(kp);
  ModuleSpec fin = ModuleSpec::finite_module(p, k, m).with_norm({1, P / 2, S + M / P, E + M * M / (2 * P)});
  ModuleSpec dual = ModuleSpec::rf(p, -mp, -kp).with_norm({1 / P, 1 / (2 * P), -S - K / P, E + K * K / (2 * P)});
  Report inner;
  inner.compare("closed forms", char_closed_form(fin, std::nullopt).z_inverted(), char_closed_form(dual, std::nullopt));
  inner.compare("enumeration", char_from_basis(fin, std::nullopt).z_inverted(), char_from_basis(dual, std::nullopt));
  inner.compare("switching sums", char_closed_form(fin, std::nullopt).z_inverted(),
                switching_rhs(p, k, m).shifted(-S, E));
  absorb_degenerate(rep, inner, k <= m + 1 ? "k <= m+1: the finite module is one-dimensional" : "");
  return rep;
}

Report check_ef_chars(long p, long k, long m, std::optional<Rat> qCutoff) {
  Report rep = named("ef-chars", "series");
  rep.param("p", p);
  rep.param("k", k);
  rep.param("m", m);
  if (qCutoff) rep.param("qCutoff", *qCutoff);
  const Rat P(p);
  const Normalization grades[] = {{1, 1, 0, 0}, {1 / P, 1 / (2 * P), -1 / P, Rat(1, 2)}};
  for (const auto& nm : grades) {
    const std::string tag = "C=" + to_string(nm.C) + " D=" + to_string(nm.D) + ": ";
    ModuleSpec ef = ModuleSpec::ef(p, k, m).with_norm(nm);
    BiSeries whole = char_from_basis(ef, qCutoff);
    rep.compare(tag + "EF", char_closed_form(ef, qCutoff), whole);
    ModuleSpec rf = ModuleSpec::rf(p, k, m).with_norm(nm);
    rep.compare(tag + "RF", char_closed_form(rf, qCutoff), char_from_basis(rf, qCutoff));
    BiSeries sum = qCutoff ? BiSeries::truncated_zero(*qCutoff) : BiSeries();
    BiSeries sumClosed = sum;
    for (int i = 0; i < p; ++i) {
      ModuleSpec c = ModuleSpec::ef_component(p, k, m, i).with_norm(nm);
      BiSeries part = char_from_basis(c, qCutoff);
      rep.compare(tag + "component " + std::to_string(i), char_closed_form(c, qCutoff), part);
      sum += part;
      sumClosed += char_closed_form(c, qCutoff);
    }
    rep.compare(tag + "components reassemble EF", whole, sum);
    rep.compare(tag + "closed components reassemble EF", char_closed_form(ef, qCutoff), sumClosed);
  }
  return rep;
}

Report check_bfl(long p, long l, const Rat& qCutoff) {
  Report rep = named("bfl", "series");
  rep.param("p", p);
  rep.param("l", l);
  rep.param("qCutoff", qCutoff);
  if (p < 1 || l < 0 || l >= p) throw std::invalid_argument("needs p >= 1 and 0 <= l < p");
  const Rat P(p), L(l);
  BiSeries lhs = lattice_char(static_cast<unsigned>(p), static_cast<unsigned>(l), qCutoff);
  BiSeries rhs = BiSeries::truncated_zero(qCutoff);
  for (long r = 0;; ++r) {
    Rat qe = Rat((p * r + l) * (p * r + l)) / (2 * P);
    if (qe > qCutoff) break;
    BiSeries a = q_pochhammer_inv(static_cast<unsigned>(p * r + l), qCutoff - qe).shifted(-Rat(r) - L / P, qe);
    rhs += a * f_g_series(P, 1, 0, qCutoff - qe);
  }
  for (long i = 1; i < p; ++i) {
    for (long r = 0;; ++r) {
      if (p * r - p + i + l < 0) continue;
      Rat qe = Rat((p * r + l) * (p * r + l)) / (2 * P) - P / 2 + Rat(i);
      if (qe > qCutoff) break;
      BiSeries a = q_pochhammer_inv(static_cast<unsigned>(p * r - p + i + l), qCutoff - qe).shifted(1 - Rat(r) - L / P, qe);
      rhs += a * f_g_series(P, 1, Rat(i), qCutoff - qe);
    }
  }
  rep.compare("lattice character = F(p) decomposition", lhs, rhs);
  return rep;
}

}  // namespace fva

#include "fva/series.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace fva {

namespace {

std::int64_t scaled(const Rat& x, std::int64_t den) { return ScaledExponent::from_rat(x, den).value; }

// Floor of cutoff * den, i.e. the largest numerator still inside the window.
std::int64_t cutoff_num(const Rat& cutoff, std::int64_t den) { return to_int64(floor_rat(cutoff * Rat(den))); }

std::optional<Rat> min_opt(const std::optional<Rat>& a, const std::optional<Rat>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

BiSeries BiSeries::truncated_zero(const Rat& qCutoff) {
  BiSeries s;
  s.qDen_ = denom64(qCutoff);
  s.cutNum_ = scaled(qCutoff, s.qDen_);
  return s;
}

BiSeries BiSeries::monomial(const Rat& z, const Rat& q, const Rat& coef) {
  BiSeries s;
  s.add_term(z, q, coef);
  return s;
}

std::optional<Rat> BiSeries::q_cutoff() const {
  if (!cutNum_) return std::nullopt;
  return make_rat(*cutNum_, qDen_);
}

void BiSeries::set_z_window(const Rat& lo, const Rat& hi) {
  if (hi < lo) throw std::invalid_argument("empty z window");
  zWindow_ = ZWindow{lo, hi};
}

void BiSeries::rescale(std::int64_t zDen, std::int64_t qDen) {
  std::int64_t nz = lcm64(zDen_, zDen), nq = lcm64(qDen_, qDen);
  if (nz == zDen_ && nq == qDen_) return;
  std::int64_t fz = nz / zDen_, fq = nq / qDen_;
  std::map<Key, Rat> next;
  for (auto& [k, c] : terms_) next.emplace_hint(next.end(), Key{k.first * fq, k.second * fz}, std::move(c));
  terms_ = std::move(next);
  if (cutNum_) *cutNum_ *= fq;
  zDen_ = nz;
  qDen_ = nq;
}

void BiSeries::set_q_cutoff(const Rat& cutoff) {
  if (cutNum_ && cutoff >= *q_cutoff()) return;
  // Keep the lattice fine enough to represent the cutoff exactly.
  rescale(1, denom64(cutoff));
  cutNum_ = scaled(cutoff, qDen_);
  for (auto it = terms_.begin(); it != terms_.end();) it = it->first.first > *cutNum_ ? terms_.erase(it) : std::next(it);
}

void BiSeries::add_term(const Rat& z, const Rat& q, const Rat& coef) {
  if (coef == 0) return;
  rescale(denom64(z), denom64(q));
  add_scaled(scaled(z, zDen_), scaled(q, qDen_), coef);
}

void BiSeries::add_scaled(std::int64_t zNum, std::int64_t qNum, const Rat& coef) {
  if (coef == 0 || beyond(qNum)) return;
  auto [it, inserted] = terms_.try_emplace(Key{qNum, zNum}, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
  }
}

Rat BiSeries::coeff(const Rat& z, const Rat& q) const {
  Rat sz = z * Rat(zDen_), sq = q * Rat(qDen_);
  if (!is_integer(sz) || !is_integer(sq)) return 0;
  auto it = terms_.find(Key{to_int64(sq), to_int64(sz)});
  return it == terms_.end() ? Rat(0) : it->second;
}

std::vector<BiSeries::Term> BiSeries::terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [k, c] : terms_) out.push_back({make_rat(k.second, zDen_), make_rat(k.first, qDen_), c});
  return out;
}

std::optional<Rat> BiSeries::min_q() const {
  if (terms_.empty()) return std::nullopt;
  return make_rat(terms_.begin()->first.first, qDen_);
}

std::optional<Rat> BiSeries::min_z() const {
  if (terms_.empty()) return std::nullopt;
  std::int64_t best = terms_.begin()->first.second;
  for (const auto& kv : terms_) best = std::min(best, kv.first.second);
  return make_rat(best, zDen_);
}

std::optional<Rat> BiSeries::max_z() const {
  if (terms_.empty()) return std::nullopt;
  std::int64_t best = terms_.begin()->first.second;
  for (const auto& kv : terms_) best = std::max(best, kv.first.second);
  return make_rat(best, zDen_);
}

BiSeries BiSeries::truncated(const Rat& cutoff) const {
  BiSeries s = *this;
  s.set_q_cutoff(cutoff);
  return s;
}

BiSeries BiSeries::shifted(const Rat& dz, const Rat& dq) const {
  BiSeries s = *this;
  s.rescale(denom64(dz), denom64(dq));
  std::int64_t az = scaled(dz, s.zDen_), aq = scaled(dq, s.qDen_);
  std::map<Key, Rat> next;
  for (auto& [k, c] : s.terms_) next.emplace_hint(next.end(), Key{k.first + aq, k.second + az}, std::move(c));
  s.terms_ = std::move(next);
  if (s.cutNum_) *s.cutNum_ += aq;
  if (s.zWindow_) s.zWindow_ = ZWindow{s.zWindow_->first + dz, s.zWindow_->second + dz};
  return s;
}

BiSeries BiSeries::substituted(const Rat& zPow, const Rat& qShift) const {
  if (!is_exact()) throw std::logic_error("substitution needs an exact series");
  BiSeries s;
  for (const auto& t : terms()) s.add_term(t.z * zPow, t.q + t.z * qShift, t.coef);
  return s;
}

BiSeries BiSeries::z_inverted() const { return substituted(-1, 0); }

BiSeries BiSeries::filtered(const std::function<bool(const Rat&, const Rat&)>& keep) const {
  BiSeries s = *this;
  for (auto it = s.terms_.begin(); it != s.terms_.end();) {
    if (keep(make_rat(it->first.second, zDen_), make_rat(it->first.first, qDen_)))
      ++it;
    else
      it = s.terms_.erase(it);
  }
  return s;
}

void BiSeries::merge_window(const BiSeries& other) {
  if (!other.zWindow_) return;
  if (!zWindow_) {
    zWindow_ = other.zWindow_;
    return;
  }
  Rat lo = std::max(zWindow_->first, other.zWindow_->first);
  Rat hi = std::min(zWindow_->second, other.zWindow_->second);
  if (hi < lo) hi = lo;  // degenerate but keeps the invariant lo <= hi
  zWindow_ = ZWindow{lo, hi};
}

BiSeries& BiSeries::operator+=(const BiSeries& other) {
  rescale(other.zDen_, other.qDen_);
  if (other.cutNum_) set_q_cutoff(*other.q_cutoff());
  std::int64_t fz = zDen_ / other.zDen_, fq = qDen_ / other.qDen_;
  for (const auto& [k, c] : other.terms_) add_scaled(k.second * fz, k.first * fq, c);
  merge_window(other);
  return *this;
}

BiSeries& BiSeries::operator-=(const BiSeries& other) { return *this += other * Rat(-1); }

BiSeries& BiSeries::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& kv : terms_) kv.second *= c;
  return *this;
}

BiSeries operator*(const BiSeries& a0, const BiSeries& b0) {
  BiSeries a = a0, b = b0;
  std::int64_t zd = lcm64(a.zDen_, b.zDen_), qd = lcm64(a.qDen_, b.qDen_);
  a.rescale(zd, qd);
  b.rescale(zd, qd);

  // Unknown terms of a sit above its cutoff, so they only reach products
  // above cutoff(a) + (lowest exponent b can have), and symmetrically.
  auto low = [](const BiSeries& s) -> std::optional<Rat> {
    std::optional<Rat> m = s.min_q();
    return s.is_exact() ? m : min_opt(m, s.q_cutoff());
  };
  std::optional<Rat> cut;
  auto consider = [&](const BiSeries& x, const BiSeries& y) {
    if (x.is_exact()) return;
    std::optional<Rat> ly = low(y);
    if (!ly) return;  // y is exactly zero
    Rat c = *x.q_cutoff() + *ly;
    cut = cut ? std::min(*cut, c) : c;
  };
  consider(a, b);
  consider(b, a);

  BiSeries out;
  out.zDen_ = zd;
  out.qDen_ = qd;
  if (cut) out.cutNum_ = cutoff_num(*cut, qd);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      std::int64_t q = ka.first + kb.first;
      if (out.beyond(q)) break;  // b is sorted by q
      out.add_scaled(ka.second + kb.second, q, ca * cb);
    }
  }
  out.merge_window(a);
  out.merge_window(b);
  return out;
}

std::string BiSeries::to_string() const {
  if (terms_.empty()) return cutNum_ ? "0 + O(q^" + fva::to_string(*q_cutoff()) + "+)" : "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms()) {
    bool neg = t.coef < 0;
    Rat mag = neg ? Rat(-t.coef) : t.coef;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    bool unit = mag == 1;
    if (!unit) os << fva::to_string(mag);
    if (t.z != 0) os << (unit ? "" : "*") << "z" << (t.z == 1 ? "" : "^" + fva::to_string(t.z));
    if (t.q != 0) os << (unit && t.z == 0 ? "" : "*") << "q" << (t.q == 1 ? "" : "^" + fva::to_string(t.q));
    if (unit && t.z == 0 && t.q == 0) os << "1";
  }
  if (cutNum_) os << " + O(q^" << fva::to_string(*q_cutoff()) << "+)";
  return os.str();
}

void QPoly::add_to(BiSeries& s, const Rat& z, const Rat& qShift, const Rat& scale) const {
  for (std::size_t e = 0; e < coef.size(); ++e)
    if (coef[e] != 0) s.add_term(z, qShift + Rat(static_cast<long>(e)), scale * Rat(coef[e]));
}

BiSeries QPoly::to_series() const {
  BiSeries s;
  add_to(s, 0, 0);
  return s;
}

std::string SeriesComparison::describe() const {
  std::ostringstream os;
  os << (equal ? "equal" : "MISMATCH") << " on q <= " << (qCutoff ? to_string(*qCutoff) : std::string("inf"));
  if (zWindow) os << ", z in [" << to_string(zWindow->first) << ", " << to_string(zWindow->second) << "]";
  os << " (" << termsCompared << " terms)";
  if (!equal)
    os << "; first difference at z^" << to_string(*mismatchZ) << " q^" << to_string(*mismatchQ) << ": " << to_string(lhsCoef)
       << " vs " << to_string(rhsCoef);
  return os.str();
}

SeriesComparison series_eq(const BiSeries& a0, const BiSeries& b0) {
  SeriesComparison rep;
  BiSeries a = a0, b = b0;
  std::int64_t zd = lcm64(a.z_denom(), b.z_denom()), qd = lcm64(a.q_denom(), b.q_denom());
  a.rescale(zd, qd);
  b.rescale(zd, qd);
  rep.qCutoff = min_opt(a.q_cutoff(), b.q_cutoff());
  if (a.z_window() && b.z_window()) {
    Rat lo = std::max(a.z_window()->first, b.z_window()->first);
    Rat hi = std::min(a.z_window()->second, b.z_window()->second);
    rep.zWindow = BiSeries::ZWindow{lo, hi};
  } else if (a.z_window()) {
    rep.zWindow = a.z_window();
  } else if (b.z_window()) {
    rep.zWindow = b.z_window();
  }
  std::optional<std::int64_t> cut;
  if (rep.qCutoff) cut = to_int64(floor_rat(*rep.qCutoff * Rat(qd)));
  std::optional<std::pair<Rat, Rat>> zw = rep.zWindow;
  auto inside = [&](const BiSeries::Key& k) {
    if (cut && k.first > *cut) return false;
    if (zw) {
      Rat z = make_rat(k.second, zd);
      if (z < zw->first || z > zw->second) return false;
    }
    return true;
  };
  // Walk the union of keys in (q, z) order; the first mismatch is the least one.
  auto ia = a.raw().begin(), ib = b.raw().begin();
  auto ea = a.raw().end(), eb = b.raw().end();
  while (ia != ea || ib != eb) {
    BiSeries::Key k;
    Rat ca = 0, cb = 0;
    if (ib == eb || (ia != ea && ia->first < ib->first)) {
      k = ia->first;
      ca = ia->second;
      ++ia;
    } else if (ia == ea || ib->first < ia->first) {
      k = ib->first;
      cb = ib->second;
      ++ib;
    } else {
      k = ia->first;
      ca = ia->second;
      cb = ib->second;
      ++ia;
      ++ib;
    }
    if (cut && k.first > *cut) break;
    if (!inside(k)) continue;
    ++rep.termsCompared;
    if (ca != cb) {
      rep.equal = false;
      rep.mismatchZ = make_rat(k.second, zd);
      rep.mismatchQ = make_rat(k.first, qd);
      rep.lhsCoef = ca;
      rep.rhsCoef = cb;
      break;
    }
  }
  return rep;
}

namespace {

// Coefficients of 1/(q)_r up to degree n: partitions into parts <= r.
std::vector<mpz_class> partitions_bounded(unsigned r, long n) {
  if (n < 0) return {};
  std::vector<mpz_class> c(static_cast<std::size_t>(n) + 1, 0);
  c[0] = 1;
  for (unsigned part = 1; part <= r && part <= static_cast<unsigned long>(n); ++part)
    for (long d = part; d <= n; ++d) c[d] += c[d - part];
  return c;
}

std::mutex binomMutex;
std::map<std::pair<long, long>, QPoly> binomCache;

}  // namespace

BiSeries q_pochhammer_inv(unsigned r, const Rat& qCutoff) {
  BiSeries s = BiSeries::truncated_zero(qCutoff);
  long n = qCutoff < 0 ? -1 : to_int64(floor_rat(qCutoff));
  auto c = partitions_bounded(r, n);
  for (std::size_t d = 0; d < c.size(); ++d)
    if (c[d] != 0) s.add_term(0, Rat(static_cast<long>(d)), Rat(c[d]));
  return s;
}

QPoly q_binomial(long n, long r) {
  if (!(n >= r && r >= 0)) return {};
  if (r > n - r) r = n - r;
  {
    std::lock_guard<std::mutex> lock(binomMutex);
    auto it = binomCache.find({n, r});
    if (it != binomCache.end()) return it->second;
  }
  // Row-by-row q-Pascal: [n,j] = [n-1,j-1] + q^j [n-1,j].
  std::vector<std::vector<mpz_class>> row(static_cast<std::size_t>(r) + 1);
  row[0] = {1};
  for (long i = 1; i <= n; ++i) {
    for (long j = std::min(i, r); j >= 1; --j) {
      const auto& a = row[j - 1];
      const auto& b = row[j];
      std::vector<mpz_class> next(std::max(a.size(), b.empty() ? 0 : b.size() + j), 0);
      for (std::size_t e = 0; e < a.size(); ++e) next[e] += a[e];
      for (std::size_t e = 0; e < b.size(); ++e) next[e + j] += b[e];
      row[j] = std::move(next);
    }
  }
  QPoly out{row[r]};
  std::lock_guard<std::mutex> lock(binomMutex);
  binomCache.emplace(std::make_pair(n, r), out);
  return out;
}

long charge_bound(const Rat& a, const Rat& b, const Rat& c) {
  if (a < 0 || (a == 0 && b <= 0)) throw std::invalid_argument("charge stratum degrees do not grow; a charge bound is required");
  // value(r) = a r^2 + b r decreases up to the vertex and increases after it.
  long last = -1;
  for (long r = 0;; ++r) {
    Rat v = a * Rat(r) * Rat(r) + b * Rat(r);
    if (v <= c) last = r;
    Rat slope = a * Rat(2 * r + 1) + b;  // value(r+1) - value(r)
    if (v > c && slope > 0) return last;
  }
}

BiSeries f_g_series(const Rat& g, const Rat& zPow, const Rat& qShift, const Rat& qCutoff, std::optional<long> chargeMax) {
  long rMax;
  if (chargeMax) {
    rMax = *chargeMax;
  } else {
    rMax = charge_bound(g / 2, qShift, qCutoff);
  }
  BiSeries s = BiSeries::truncated_zero(qCutoff);
  for (long r = 0; r <= rMax; ++r) {
    Rat base = g * Rat(r * r) / 2 + qShift * Rat(r);
    if (base > qCutoff) continue;
    BiSeries inv = q_pochhammer_inv(static_cast<unsigned>(r), qCutoff - base);
    s += inv.shifted(zPow * Rat(r), base);
  }
  if (chargeMax) {
    Rat hi = zPow * Rat(*chargeMax);
    s.set_z_window(std::min(Rat(0), hi), std::max(Rat(0), hi));
  }
  return s;
}

BiSeries fib_poly(unsigned p, long l, const Rat& zPow, const Rat& qShift) {
  if (p == 0) throw std::invalid_argument("fib_poly needs p >= 1");
  BiSeries s;
  // The binomial [l-(p-1)r, r] needs l - p r >= 0.
  for (long r = 0; l - static_cast<long>(p) * r >= 0; ++r) {
    QPoly b = q_binomial(l - static_cast<long>(p - 1) * r, r);
    b.add_to(s, zPow * Rat(r), Rat(static_cast<long>(p) * r * r) / 2 + qShift * Rat(r));
  }
  return s;
}

BiSeries lattice_char(unsigned p, unsigned l, const Rat& qCutoff) {
  if (p == 0 || l >= p) throw std::invalid_argument("lattice_char needs p >= 1 and 0 <= l < p");
  BiSeries s = BiSeries::truncated_zero(qCutoff);
  s.rescale(p, 2 * p);
  const long P = p, L = l;
  // (pn - l)^2 / 2p <= cutoff bounds |pn - l|.
  long span = to_int64(floor_rat(qCutoff)) + 2;
  for (long n = -span; n <= span + 1; ++n) {
    Rat qe = Rat((P * n - L) * (P * n - L)) / Rat(2 * P);
    if (qe > qCutoff) continue;
    long euler = to_int64(floor_rat(qCutoff - qe));
    BiSeries inv = q_pochhammer_inv(static_cast<unsigned>(std::max(euler, 0L)), qCutoff - qe);
    s += inv.shifted(Rat(n) - make_rat(L, P), qe);
  }
  return s;
}

}  // namespace fva

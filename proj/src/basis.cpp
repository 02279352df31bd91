#include "fva/basis.hpp"

#include <algorithm>
#include <stdexcept>

namespace fva {

std::vector<Rat> BasisList::modes(std::size_t seq) const {
  std::vector<Rat> out;
  out.reserve(seqs[seq].size());
  for (std::int64_t v : seqs[seq]) out.push_back(make_rat(v, den));
  return out;
}

long BigradedTable::dim(const Rat& charge, const Rat& degree) const {
  auto it = entries.find({charge, degree});
  return it == entries.end() ? 0 : it->second;
}

long BigradedTable::total() const {
  long t = 0;
  for (const auto& kv : entries) t += kv.second;
  return t;
}

Rat charge_of(const ModuleSpec& spec, std::size_t length) { return spec.norm.S + spec.norm.C * Rat(static_cast<long>(length)); }

Rat degree_of(const ModuleSpec& spec, const std::vector<Rat>& modes) {
  Rat d = spec.norm.E;
  for (const Rat& n : modes) d += n - 1 + spec.norm.D;
  return d;
}

Rat staircase_degree(const ModuleSpec& spec, long r) {
  Rat R(r);
  return spec.norm.E + R * (spec.m + spec.norm.D) + spec.g * R * (R - 1) / 2;
}

namespace {

bool length_allowed(const ModuleSpec& spec, std::size_t r) {
  if (spec.family == Family::RF) {
    long p = spec.p();
    long want = ((spec.k_int() - spec.m_int() + 1) % p + p) % p;
    return static_cast<long>(r % p) == want;
  }
  if (spec.family == Family::EFComponent) {
    long p = spec.p();
    return static_cast<long>(r % p) == (spec.component + 1) % p;
  }
  return true;
}

struct Enumerator {
  const ModuleSpec& spec;
  std::int64_t L;      // common denominator of modes and degrees
  std::int64_t gN;     // g * L
  std::int64_t firstN; // (m + 1) * L
  std::int64_t stepN;  // (D - 1) * L, added per mode
  std::optional<std::int64_t> topN;  // strict upper bound on modes
  std::optional<std::int64_t> cutN;  // degree cutoff
  std::optional<long> chargeMax;
  const std::function<void(const ModeSeq&, std::int64_t)>& visit;
  ModeSeq seq;

  // Least amount further modes can add to the degree after a mode n, given
  // that r modes are already placed (t = 0 extensions contribute nothing).
  std::int64_t extension_floor(std::int64_t n, std::size_t r) const {
    std::int64_t total = 0, best = 0;
    for (std::size_t j = 1;; ++j) {
      if (chargeMax && static_cast<long>(r + j) > *chargeMax) break;
      std::int64_t nn = n + static_cast<std::int64_t>(j) * gN;
      if (topN && nn >= *topN) break;
      std::int64_t c = nn + stepN;
      if (c >= 0) break;  // contributions only grow from here
      total += c;
      best = std::min(best, total);
    }
    return best;
  }

  void run(std::int64_t degN) {
    if (length_allowed(spec, seq.size())) visit(seq, L);
    if (chargeMax && static_cast<long>(seq.size()) >= *chargeMax) return;
    std::int64_t base = seq.empty() ? firstN : seq.back() + gN;
    for (std::int64_t n = base;; n += L) {
      if (topN && n >= *topN) break;
      std::int64_t nd = degN + n + stepN;
      if (cutN && nd + extension_floor(n, seq.size() + 1) > *cutN) break;
      seq.push_back(n);
      run(nd);
      seq.pop_back();
    }
  }
};

}  // namespace

void for_each_basis_element(const ModuleSpec& spec, const std::optional<Rat>& qCutoff, std::optional<long> chargeMax,
                            const std::function<void(const ModeSeq&, std::int64_t)>& visit) {
  spec.validate();
  bool bounded = spec.bound.has_value();
  if (!qCutoff && !bounded && !chargeMax) throw std::invalid_argument("free families need a degree cutoff");
  if (!qCutoff && !bounded && chargeMax && *chargeMax > 0)
    throw std::invalid_argument("free families need a degree cutoff");
  std::int64_t L = 1;
  for (const Rat* x : {&spec.g, &spec.m, &spec.norm.D, &spec.norm.E}) L = lcm64(L, denom64(*x));
  if (spec.bound) L = lcm64(L, denom64(*spec.bound));
  Enumerator e{spec,
               L,
               to_int64(Rat(spec.g * Rat(L))),
               to_int64(Rat((spec.m + 1) * Rat(L))),
               to_int64(Rat((spec.norm.D - 1) * Rat(L))),
               std::nullopt,
               std::nullopt,
               chargeMax,
               visit,
               {}};
  if (spec.bound) e.topN = to_int64(Rat(*spec.bound * Rat(L)));
  if (qCutoff) e.cutN = to_int64(floor_rat(*qCutoff * Rat(L)));
  std::int64_t start = to_int64(Rat(spec.norm.E * Rat(L)));
  if (e.cutN && start > *e.cutN) return;
  e.run(start);
}

BasisList enumerate_basis(const ModuleSpec& spec, const std::optional<Rat>& qCutoff, std::optional<long> chargeMax) {
  BasisList out;
  for_each_basis_element(spec, qCutoff, chargeMax, [&](const ModeSeq& s, std::int64_t den) {
    out.den = den;
    out.seqs.push_back(s);
  });
  if (out.seqs.empty()) out.den = 1;
  std::sort(out.seqs.begin(), out.seqs.end(), [](const ModeSeq& a, const ModeSeq& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

BiSeries char_from_basis(const ModuleSpec& spec, const std::optional<Rat>& qCutoff, std::optional<long> chargeMax) {
  BiSeries s = qCutoff ? BiSeries::truncated_zero(*qCutoff) : BiSeries();
  // Charges S + C r and degrees E + sum(n - 1 + D): fix the lattices once.
  std::int64_t L = 1;
  for (const Rat* x : {&spec.g, &spec.m, &spec.norm.D, &spec.norm.E}) L = lcm64(L, denom64(*x));
  if (spec.bound) L = lcm64(L, denom64(*spec.bound));
  std::int64_t zL = lcm64(denom64(spec.norm.S), denom64(spec.norm.C));
  s.rescale(zL, L);
  std::int64_t zDen = s.z_denom(), qDen = s.q_denom();
  std::int64_t sN = to_int64(Rat(spec.norm.S * Rat(zDen))), cN = to_int64(Rat(spec.norm.C * Rat(zDen)));
  std::int64_t eN = to_int64(Rat(spec.norm.E * Rat(qDen))), dN = to_int64(Rat((spec.norm.D - 1) * Rat(qDen)));
  const Rat one(1);
  for_each_basis_element(spec, qCutoff, chargeMax, [&](const ModeSeq& seq, std::int64_t den) {
    std::int64_t f = qDen / den, d = eN;
    for (std::int64_t n : seq) d += n * f + dN;
    s.add_scaled(sN + cN * static_cast<std::int64_t>(seq.size()), d, one);
  });
  if (chargeMax) {
    Rat a = spec.norm.S, b = charge_of(spec, static_cast<std::size_t>(*chargeMax));
    s.set_z_window(std::min(a, b), std::max(a, b));
  }
  return s;
}

BigradedTable table_from_series(const BiSeries& s) {
  BigradedTable t;
  t.qCutoff = s.q_cutoff();
  for (const auto& term : s.terms()) {
    if (!is_integer(term.coef) || term.coef < 0) throw std::logic_error("series is not a dimension count");
    t.entries[{term.z, term.q}] = to_int64(term.coef);
  }
  return t;
}

BigradedTable bigraded_table(const ModuleSpec& spec, const std::optional<Rat>& qCutoff, std::optional<long> chargeMax) {
  BigradedTable t = table_from_series(char_from_basis(spec, qCutoff, chargeMax));
  t.chargeMax = chargeMax;
  return t;
}

BasisList branching_vectors(long p, long n, long i, const std::optional<Rat>& qCutoff) {
  if (p < 1 || n < 0 || i < 0 || i >= p) throw std::invalid_argument("branching_vectors needs p >= 1, n >= 0, 0 <= i < p");
  BasisList out;
  ModeSeq path;
  // Node m < 0 splits into M(m+1) ("=") and M(m+p) (embedding via a(-m-1)).
  std::function<void(long)> walk = [&](long m) {
    if (m >= 0) {
      if (m == i) out.seqs.push_back(path);
      return;
    }
    walk(m + 1);
    path.push_back(m + 1);
    walk(m + p);
    path.pop_back();
  };
  walk(-n);
  if (qCutoff) {
    // Unnormalized degree in M(-n): sum of modes.
    std::erase_if(out.seqs, [&](const ModeSeq& s) {
      std::int64_t d = 0;
      for (auto v : s) d += v;
      return Rat(d) > *qCutoff;
    });
  }
  std::sort(out.seqs.begin(), out.seqs.end(), [](const ModeSeq& a, const ModeSeq& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace fva

#include "fva/exactseq.hpp"

#include "fva/linalg.hpp"
#include "fva/rewriter.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace fva {

namespace {

using Piece = std::pair<Rat, Rat>;  // (charge, degree)

ModeSeq rescale_seq(const ModeSeq& s, std::int64_t from, std::int64_t to) {
  ModeSeq out(s);
  for (auto& v : out) v *= to / from;
  return out;
}

std::vector<Rat> to_rats(const ModeSeq& s, std::int64_t den) {
  std::vector<Rat> out;
  for (auto v : s) out.push_back(make_rat(v, den));
  return out;
}

std::string seq_text(const ModeSeq& s, std::int64_t den) {
  std::string t = "(";
  for (std::size_t j = 0; j < s.size(); ++j) t += (j ? "," : "") + to_string(make_rat(s[j], den));
  return t + ")";
}

Normalization shifted(Normalization n, const Rat& dS, const Rat& dE) {
  n.S += dS;
  n.E += dE;
  return n;
}

// Copies the window of ref onto s; valid when s has no terms at the charges
// that ref's window adds.
void adopt_window(BiSeries& s, const BiSeries& ref) {
  if (ref.z_window()) s.set_z_window(ref.z_window()->first, ref.z_window()->second);
}

BiSeries char_of_list(const ModuleSpec& spec, const std::vector<ModeSeq>& seqs, std::int64_t den) {
  BiSeries s;
  for (const auto& seq : seqs) s.add_term(charge_of(spec, seq.size()), degree_of(spec, to_rats(seq, den)), 1);
  return s;
}

}  // namespace

void check_rr_triple(Report& rep, const ModuleSpec& sub, const ModuleSpec& mid, const ModuleSpec& quo,
                     const std::optional<Rat>& qCutoff, std::optional<long> chargeMax, const std::string& label) {
  const std::string tag = label.empty() ? "" : label + ": ";
  BasisList bSub;
  if (!chargeMax || *chargeMax > 0)
    bSub = enumerate_basis(sub, qCutoff, chargeMax ? std::optional<long>(*chargeMax - 1) : std::nullopt);
  BasisList bMid = enumerate_basis(mid, qCutoff, chargeMax);
  BasisList bQuo = enumerate_basis(quo, qCutoff, chargeMax);
  std::int64_t L = lcm64(lcm64(bSub.den, bMid.den), lcm64(bQuo.den, denom64(mid.m)));
  const std::int64_t first = to_int64(Rat((mid.m + 1) * Rat(L)));

  std::set<ModeSeq> midSet, quoSet;
  for (const auto& s : bMid.seqs) midSet.insert(rescale_seq(s, bMid.den, L));
  for (const auto& s : bQuo.seqs) quoSet.insert(rescale_seq(s, bQuo.den, L));

  std::map<Piece, PieceReport> pieces;
  auto piece = [&](const ModeSeq& s) -> PieceReport& {
    Piece key{charge_of(mid, s.size()), degree_of(mid, to_rats(s, L))};
    PieceReport& pr = pieces[key];
    pr.charge = key.first;
    pr.degree = key.second;
    return pr;
  };

  // Injection: prepend the mode m+1 innermost. Images must be distinct basis
  // monomials of mid carrying the shifted grading of sub.
  std::set<ModeSeq> image;
  long bad = 0;
  for (const auto& s0 : bSub.seqs) {
    ModeSeq s = rescale_seq(s0, bSub.den, L);
    ModeSeq img;
    img.push_back(first);
    img.insert(img.end(), s.begin(), s.end());
    if (!midSet.count(img)) {
      if (bad++ == 0) rep.fail(tag + "image " + seq_text(img, L) + " is not a basis monomial of the middle module");
      continue;
    }
    if (charge_of(sub, s.size()) != charge_of(mid, img.size()) ||
        degree_of(sub, to_rats(s, L)) != degree_of(mid, to_rats(img, L))) {
      if (bad++ == 0) rep.fail(tag + "injection does not preserve the bigrading at " + seq_text(s, L));
    }
    if (!image.insert(img).second && bad++ == 0) rep.fail(tag + "injection is not injective");
    piece(img).sub++;
  }

  // Surjection: identity on monomials whose innermost mode is not m+1; those
  // with innermost mode m+1 span its kernel, which must be the image.
  std::set<ModeSeq> reached;
  for (const auto& s : midSet) {
    PieceReport& pr = piece(s);
    pr.mid++;
    bool inKernel = !s.empty() && s.front() == first;
    if (inKernel) {
      pr.kernelDim = pr.kernelDim < 0 ? 1 : pr.kernelDim + 1;
      if (!image.count(s) && bad++ == 0) rep.fail(tag + "kernel element " + seq_text(s, L) + " is not in the image");
      continue;
    }
    if (!quoSet.count(s)) {
      if (bad++ == 0) rep.fail(tag + seq_text(s, L) + " has no image among the quotient basis");
      continue;
    }
    reached.insert(s);
  }
  for (const auto& s : quoSet) {
    piece(s).quo++;
    if (!reached.count(s) && bad++ == 0) rep.fail(tag + "quotient basis element " + seq_text(s, L) + " is not hit");
  }
  for (auto& [key, pr] : pieces) {
    if (pr.kernelDim < 0) pr.kernelDim = 0;
    pr.ok = pr.mid == pr.sub + pr.quo && pr.kernelDim == pr.sub;
    if (!pr.ok && bad++ == 0)
      rep.fail(tag + "dimensions do not add up at charge " + to_string(key.first) + ", degree " + to_string(key.second));
    rep.pieces.push_back(pr);
  }

  // Character additivity, from the bases and from the closed forms.
  BiSeries cMid = char_from_basis(mid, qCutoff, chargeMax);
  BiSeries cSub = bSub.seqs.empty() ? (qCutoff ? BiSeries::truncated_zero(*qCutoff) : BiSeries())
                                    : char_from_basis(sub, qCutoff, chargeMax ? std::optional<long>(*chargeMax - 1) : std::nullopt);
  adopt_window(cSub, cMid);
  rep.compare(tag + "basis characters", cMid, cSub + char_from_basis(quo, qCutoff, chargeMax));

  BiSeries fMid = char_closed_form(mid, qCutoff, chargeMax);
  BiSeries fSub = !chargeMax || *chargeMax > 0
                      ? char_closed_form(sub, qCutoff, chargeMax ? std::optional<long>(*chargeMax - 1) : std::nullopt)
                      : BiSeries();
  adopt_window(fSub, fMid);
  rep.compare(tag + "closed-form characters", fMid, fSub + char_closed_form(quo, qCutoff, chargeMax));
}

Report verify_rr_free(const Rat& g, const Rat& m, const Rat& qCutoff, std::optional<long> chargeMax, const Normalization& norm) {
  Report rep;
  rep.name = "rr-free";
  rep.level = "basis-bijection";
  rep.param("g", g);
  rep.param("m", m);
  rep.param("qCutoff", qCutoff);
  if (chargeMax) rep.param("chargeMax", *chargeMax);
  ModuleSpec mid = ModuleSpec::free_module(g, m).with_norm(norm);
  ModuleSpec sub = ModuleSpec::free_module(g, m + g).with_norm(shifted(norm, norm.C, m + norm.D));
  ModuleSpec quo = ModuleSpec::free_module(g, m + 1).with_norm(norm);
  check_rr_triple(rep, sub, mid, quo, qCutoff, chargeMax);
  return rep;
}

Report verify_rr_finite(long p, long k, long m, std::optional<Rat> qCutoff, const Normalization& norm) {
  Report rep;
  rep.name = "rr-finite";
  rep.level = "basis-bijection";
  rep.param("p", p);
  rep.param("k", k);
  rep.param("m", m);
  if (qCutoff) rep.param("qCutoff", *qCutoff);
  ModuleSpec mid = ModuleSpec::finite_module(p, k, m).with_norm(norm);
  ModuleSpec sub = ModuleSpec::finite_module(p, k, m + p).with_norm(shifted(norm, norm.C, Rat(m) + norm.D));
  ModuleSpec quo = ModuleSpec::finite_module(p, k, m + 1).with_norm(norm);

  Report inner;
  check_rr_triple(inner, sub, mid, quo, qCutoff, std::nullopt);
  // The recursion of the closed forms, as an exact polynomial identity.
  if (k >= m + 2) {
    const Rat P(p), M(m);
    BiSeries lhs = fib_poly(p, k + p - 2 - m, norm.C, norm.D - P / 2 + M).shifted(norm.S, norm.E);
    BiSeries rhs = (k >= m + 3 ? fib_poly(p, k + p - 3 - m, norm.C, norm.D - P / 2 + M + 1) : BiSeries::one())
                       .shifted(norm.S, norm.E);
    BiSeries tail = k >= m + p + 2 ? fib_poly(p, k - 2 - m, norm.C, norm.D + P / 2 + M) : BiSeries::one();
    rhs += tail.shifted(norm.S + norm.C, norm.E + M + norm.D);
    if (qCutoff) {
      lhs.set_q_cutoff(*qCutoff);
      rhs.set_q_cutoff(*qCutoff);
    }
    inner.compare("fermionic recursion", lhs, rhs);
  }
  rep.pieces = std::move(inner.pieces);
  rep.comparisons = std::move(inner.comparisons);
  if (k < m + 2) {
    // All three modules are spanned by their generators and the injection is
    // zero, so the sequence degenerates to 0 -> C -0-> C -~-> C -> 0.
    bool consistent = enumerate_basis(sub, std::nullopt).seqs.size() == 1 && enumerate_basis(mid, std::nullopt).seqs.size() == 1 &&
                      enumerate_basis(quo, std::nullopt).seqs.size() == 1;
    if (!consistent) rep.fail("k < m+2 but the modules are not one-dimensional");
    rep.degenerate("k < m+2: the injection mode m+1 is not below k, so the injection is zero");
    for (const auto& n : inner.notes) rep.notes.push_back("outside hypotheses: " + n);
  } else {
    rep.notes = std::move(inner.notes);
    rep.verdict = inner.verdict;
  }
  return rep;
}

Report verify_rr_ef(long p, long k, long m, std::optional<Rat> qCutoff, const Normalization& norm) {
  Report rep;
  rep.name = "rr-ef";
  rep.level = "basis-bijection";
  rep.param("p", p);
  rep.param("k", k);
  rep.param("m", m);
  if (qCutoff) rep.param("qCutoff", *qCutoff);
  const Normalization sh = shifted(norm, norm.C, make_rat(m, p) + norm.D);
  Report inner;
  for (int i = 0; i < p; ++i) {
    int below = static_cast<int>((i - 1 + p) % p);
    check_rr_triple(inner, ModuleSpec::ef_component(p, k, m + 1, below).with_norm(sh),
                    ModuleSpec::ef_component(p, k, m, i).with_norm(norm),
                    ModuleSpec::ef_component(p, k, m + p, i).with_norm(norm), qCutoff, std::nullopt,
                    "component " + std::to_string(i));
  }
  check_rr_triple(inner, ModuleSpec::ef(p, k, m + 1).with_norm(sh), ModuleSpec::ef(p, k, m).with_norm(norm),
                  ModuleSpec::ef(p, k, m + p).with_norm(norm), qCutoff, std::nullopt, "ef");
  check_rr_triple(inner, ModuleSpec::rf(p, k, m + 1).with_norm(sh), ModuleSpec::rf(p, k, m).with_norm(norm),
                  ModuleSpec::rf(p, k, m + p).with_norm(norm), qCutoff, std::nullopt, "rf");
  rep.pieces = std::move(inner.pieces);
  rep.comparisons = std::move(inner.comparisons);
  if (k <= m + p) {
    rep.degenerate("k <= m+p: the injection mode is not below k/p");
    for (const auto& n : inner.notes) rep.notes.push_back("outside hypotheses: " + n);
  } else {
    rep.notes = std::move(inner.notes);
    rep.verdict = inner.verdict;
  }
  return rep;
}

namespace {

// Rank certification of the Fibonacci sequence in the unnormalized grading
// (charge r, degree n_1 + ... + n_r).
void fibonacci_ranks(Report& rep, long p, long k, long m, const std::optional<Rat>& qCutoff) {
  Rewriter rw{Rat(p), Rat(m)};
  const std::int64_t den = rw.den();
  std::optional<Rat> srcCut;
  if (qCutoff) srcCut = *qCutoff - Rat(k - 1);
  BasisList src = enumerate_basis(ModuleSpec::finite_module(p, k - p, m), srcCut);
  BasisList mid = enumerate_basis(ModuleSpec::finite_module(p, k, m), qCutoff);
  BasisList tgt = enumerate_basis(ModuleSpec::finite_module(p, k - 1, m), qCutoff);

  struct Work {
    std::map<ModeSeq, std::size_t> cols;
    std::vector<LinComb> rows;
    long kernel = 0;
    std::set<ModeSeq> rest, target;
  };
  std::map<std::pair<long, std::int64_t>, Work> work;
  auto key = [](const ModeSeq& s) {
    std::int64_t d = 0;
    for (auto v : s) d += v;
    return std::make_pair(static_cast<long>(s.size()), d);
  };
  const std::int64_t kN = k * den, kerN = (k - 1) * den;
  for (std::size_t j = 0; j < mid.seqs.size(); ++j) {
    ModeSeq s = rw.scale(mid.modes(j));
    Work& w = work[key(s)];
    w.cols.emplace(s, w.cols.size());
    if (!s.empty() && s.back() >= kerN)
      w.kernel++;
    else
      w.rest.insert(s);
  }
  for (std::size_t j = 0; j < tgt.seqs.size(); ++j) {
    ModeSeq s = rw.scale(tgt.modes(j));
    work[key(s)].target.insert(s);
  }
  long bad = 0;
  for (std::size_t j = 0; j < src.seqs.size(); ++j) {
    std::vector<Rat> modes{Rat(k - 1)};
    for (const Rat& x : src.modes(j)) modes.push_back(x);
    ModeSeq word = rw.scale(modes);
    LinComb v = quotient_reduce(rw.normal_form(word), kN);
    Work& w = work[key(word)];
    for (const auto& [mono, c] : v) {
      if (!w.cols.count(mono) && bad++ == 0) rep.fail("f has a term outside the basis: " + seq_text(mono, den));
      if (mono.empty() || mono.back() < kerN) {
        if (bad++ == 0) rep.fail("g(f(v)) != 0 for v = " + seq_text(rw.scale(src.modes(j)), den));
      }
    }
    w.rows.push_back(std::move(v));
  }
  for (auto& [kk, w] : work) {
    PieceReport pr;
    pr.charge = Rat(kk.first);
    pr.degree = make_rat(kk.second, den);
    pr.sub = static_cast<long>(w.rows.size());
    pr.mid = static_cast<long>(w.cols.size());
    pr.quo = static_cast<long>(w.target.size());
    RatMatrix mat;
    for (const auto& v : w.rows) {
      std::vector<Rat> row(w.cols.size());
      for (const auto& [mono, c] : v) {
        auto it = w.cols.find(mono);
        if (it != w.cols.end()) row[it->second] = c;
      }
      mat.push_back(std::move(row));
    }
    pr.rankInjection = rank(std::move(mat), w.cols.size());
    pr.kernelDim = w.kernel;
    bool injective = pr.rankInjection == pr.sub;
    bool exactMiddle = pr.rankInjection == w.kernel;
    bool surjective = w.rest == w.target;
    pr.ok = injective && exactMiddle && surjective;
    if (!pr.ok && bad++ == 0) {
      std::string what = !injective ? "f is not injective" : !exactMiddle ? "image of f differs from the kernel" : "projection is not onto";
      rep.fail(what + " at charge " + to_string(pr.charge) + ", degree " + to_string(pr.degree));
    }
    rep.pieces.push_back(pr);
  }
}

}  // namespace

Report verify_fibonacci(long p, long k, long m, std::optional<Rat> qCutoff, const Normalization& norm) {
  Report rep;
  rep.name = "fibonacci";
  rep.level = "matrix-rank";
  rep.param("p", p);
  rep.param("k", k);
  rep.param("m", m);
  if (qCutoff) rep.param("qCutoff", *qCutoff);
  Report inner;
  fibonacci_ranks(inner, p, k, m, qCutoff);
  // Character identity of the sequence in the requested grading.
  ModuleSpec mid = ModuleSpec::finite_module(p, k, m).with_norm(norm);
  ModuleSpec quo = ModuleSpec::finite_module(p, k - 1, m).with_norm(norm);
  ModuleSpec sub = ModuleSpec::finite_module(p, k - p, m).with_norm(shifted(norm, norm.C, Rat(k - 2) + norm.D));
  inner.compare("closed-form characters", char_closed_form(mid, qCutoff),
                char_closed_form(quo, qCutoff) + char_closed_form(sub, qCutoff));
  inner.compare("basis characters", char_from_basis(mid, qCutoff),
                char_from_basis(quo, qCutoff) + char_from_basis(sub, qCutoff));
  rep.pieces = std::move(inner.pieces);
  rep.comparisons = std::move(inner.comparisons);
  if (k < m + 2) {
    // Expected degeneration: one-dimensional modules, f = 0, g an isomorphism.
    Rewriter rw{Rat(p), Rat(m)};
    bool fZero = rw.normal_form(rw.scale({Rat(k - 1)})).empty();
    bool dims = enumerate_basis(sub, std::nullopt).seqs.size() == 1 && enumerate_basis(mid, std::nullopt).seqs.size() == 1 &&
                enumerate_basis(quo, std::nullopt).seqs.size() == 1;
    if (!fZero || !dims) rep.fail("k < m+2 but the sequence does not degenerate to 0 -> C -0-> C -~-> C -> 0");
    rep.degenerate("k < m+2: the mode k-1 annihilates the generator, so f = 0");
    for (const auto& n : inner.notes) rep.notes.push_back("outside hypotheses: " + n);
  } else {
    rep.notes = std::move(inner.notes);
    rep.verdict = inner.verdict;
  }
  return rep;
}

Report verify_flag(long p, long n, const Rat& qCutoff, const Normalization& norm) {
  Report rep;
  rep.name = "flag";
  rep.level = "series";
  rep.param("p", p);
  rep.param("n", n);
  rep.param("qCutoff", qCutoff);
  if (n < 0) throw std::invalid_argument("flag decomposition needs n >= 0");
  ModuleSpec whole = ModuleSpec::free_module(Rat(p), Rat(-n)).with_norm(norm);
  BiSeries lhs = char_closed_form(whole, qCutoff);
  rep.compare("M(-n) enumeration", char_from_basis(whole, qCutoff), lhs);

  const Normalization unit{norm.C, norm.D, 0, 0};
  BiSeries rhs = BiSeries::truncated_zero(qCutoff);
  for (long i = 0; i < p; ++i) {
    BasisList b = branching_vectors(p, n, i);
    rep.notes.push_back("|B_" + std::to_string(i) + "| = " + std::to_string(b.seqs.size()));
    BiSeries mult = char_of_list(whole, b.seqs, b.den);

    // The branching vectors are the finite basis shifted by the tree path.
    const long kf = i == 0 ? 2 - p : 2 - 2 * p + i;
    ModuleSpec fin = ModuleSpec::finite_module(p, kf, -n);
    BasisList fb = enumerate_basis(fin, std::nullopt);
    bool leaf = i == 0 || n >= p - i;
    std::set<ModeSeq> expect, got(b.seqs.begin(), b.seqs.end());
    if (leaf) {
      for (ModeSeq s : fb.seqs) {
        if (i > 0) s.push_back(i - p + 1);
        expect.insert(s);
      }
    }
    rep.require(expect == got, "B_" + std::to_string(i) + " differs from the shifted finite basis");
    if (leaf) {
      Normalization fn = i == 0 ? norm : shifted(norm, norm.C, Rat(i - p) + norm.D);
      rep.compare("multiplicity " + std::to_string(i), mult, char_closed_form(fin.with_norm(fn), std::nullopt));
    } else {
      rep.notes.push_back("no leaf " + std::to_string(i) + " below -" + std::to_string(n) + ": multiplicity 0");
    }

    if (mult.empty() || *mult.min_q() > qCutoff) continue;
    ModuleSpec top = ModuleSpec::free_module(Rat(p), Rat(i)).with_norm(unit);
    BiSeries chi = char_closed_form(top, qCutoff - *mult.min_q());
    rhs += mult * chi;
  }
  rep.compare("character identity", lhs, rhs);
  return rep;
}

}  // namespace fva

#include "fva/rewriter.hpp"

#include <algorithm>
#include <functional>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace fva {

std::vector<PairTerm> straighten_pair(const Rat& s, const Rat& t, const Rat& g, long jMaxFirst, long jMaxSecond) {
  std::vector<PairTerm> out;
  for (long j = 0; j <= jMaxFirst; ++j) {
    Rat c = gen_binom(-g, static_cast<unsigned>(j));
    if (j % 2) c = -c;
    if (c != 0) out.push_back({t - g - Rat(j), s + g + Rat(j), c});
  }
  for (long j = 0; j <= jMaxSecond; ++j) {
    Rat c = gen_binom(-g, static_cast<unsigned>(j + 1));
    if (j % 2) c = -c;
    if (c != 0) out.push_back({s - 1 - Rat(j), t + 1 + Rat(j), c});
  }
  return out;
}

std::size_t Rewriter::KeyHash::operator()(const std::pair<std::int64_t, ModeSeq>& k) const {
  std::size_t h = std::hash<std::int64_t>{}(k.first);
  for (std::int64_t v : k.second) h ^= std::hash<std::int64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

Rewriter::Rewriter(const Rat& g, const Rat& m) : g_(g), m_(m) {
  if (g <= 0) throw std::invalid_argument("rewriter needs g > 0");
  den_ = lcm64(denom64(g), denom64(m));
  gN_ = to_int64(Rat(g * Rat(den_)));
  mN_ = to_int64(Rat(m * Rat(den_)));
  firstN_ = mN_ + den_;
}

ModeSeq Rewriter::scale(const std::vector<Rat>& modes) const {
  ModeSeq out;
  for (const Rat& n : modes) {
    Rat v = n * Rat(den_);
    if (!is_integer(v)) throw std::invalid_argument("mode " + to_string(n) + " is outside the legal coset");
    out.push_back(to_int64(v));
  }
  if (!is_legal(out)) throw std::invalid_argument("mode sequence is outside the legal coset");
  return out;
}

std::vector<Rat> Rewriter::unscale(const ModeSeq& seq) const {
  std::vector<Rat> out;
  for (auto v : seq) out.push_back(make_rat(v, den_));
  return out;
}

bool Rewriter::is_legal(const ModeSeq& seq) const {
  for (std::size_t j = 0; j < seq.size(); ++j) {
    std::int64_t off = seq[j] - firstN_ - static_cast<std::int64_t>(j) * gN_;
    if (off % den_ != 0) return false;
  }
  return true;
}

std::int64_t Rewriter::min_prefix(std::size_t j) const {
  auto J = static_cast<std::int64_t>(j);
  return gN_ * J * (J - 1) / 2 + mN_ * J + den_ * J;
}

bool Rewriter::is_zero_by_truncation(const ModeSeq& seq) const {
  std::int64_t sum = 0;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    sum += seq[j];
    if (sum < min_prefix(j + 1)) return true;
  }
  return false;
}

bool Rewriter::is_normal(const ModeSeq& seq) const {
  if (!seq.empty() && seq[0] < firstN_) return false;
  for (std::size_t j = 1; j < seq.size(); ++j)
    if (seq[j] - seq[j - 1] < gN_) return false;
  return true;
}

void Rewriter::tick() {
  ++steps_;
  if (++callSteps_ > kStepBudget) throw std::runtime_error("rewrite step budget exceeded");
}

const LinComb& Rewriter::act_mono(std::int64_t n, const ModeSeq& mono) {
  auto key = std::make_pair(n, mono);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  tick();
  LinComb out;
  if (mono.empty()) {
    if (n >= firstN_) out.emplace(ModeSeq{n}, Rat(1));
  } else if (n - mono.back() >= gN_) {
    ModeSeq next = mono;
    next.push_back(n);
    out.emplace(std::move(next), Rat(1));
  } else {
    // b(-n) b(-n_r) with n too small: straighten, then renormalize the new
    // inner mode against the rest before applying the new outer mode.
    ModeSeq rest(mono.begin(), mono.end() - 1);
    std::int64_t nr = mono.back(), psum = 0;
    for (auto v : rest) psum += v;
    std::int64_t lim = min_prefix(mono.size());
    struct Step {
      std::int64_t outer, inner;
      Rat coef;
    };
    std::vector<Step> steps;
    auto coefFirst = [&](std::size_t j) -> Rat {
      while (binomFirst_.size() <= j) {
        auto i = static_cast<unsigned>(binomFirst_.size());
        Rat c = gen_binom(-g_, i);
        binomFirst_.push_back(i % 2 ? Rat(-c) : c);
      }
      return binomFirst_[j];
    };
    auto coefSecond = [&](std::size_t j) -> Rat {
      while (binomSecond_.size() <= j) {
        auto i = static_cast<unsigned>(binomSecond_.size());
        Rat c = gen_binom(-g_, i + 1);
        binomSecond_.push_back(i % 2 ? Rat(-c) : c);
      }
      return binomSecond_[j];
    };
    // Terms past these j have an inner prefix below the staircase, so vanish.
    for (std::size_t j = 0;; ++j) {
      std::int64_t inner = n - gN_ - static_cast<std::int64_t>(j) * den_;
      if (psum + inner < lim) break;
      steps.push_back({nr + gN_ + static_cast<std::int64_t>(j) * den_, inner, coefFirst(j)});
    }
    for (std::size_t j = 0;; ++j) {
      std::int64_t inner = nr - den_ - static_cast<std::int64_t>(j) * den_;
      if (psum + inner < lim) break;
      steps.push_back({n + den_ + static_cast<std::int64_t>(j) * den_, inner, coefSecond(j)});
    }
    for (const Step& st : steps) {
      if (st.coef == 0) continue;
      LinComb w = act_mono(st.inner, rest);  // copy: the cache may rehash below
      for (const auto& [m2, c2] : w) {
        LinComb u = act_mono(st.outer, m2);
        for (const auto& [m3, c3] : u) {
          Rat& slot = out[m3];
          slot += st.coef * c2 * c3;
          if (slot == 0) out.erase(m3);
        }
      }
    }
  }
  return cache_.emplace(std::move(key), std::move(out)).first->second;
}

LinComb Rewriter::act(std::int64_t n, const LinComb& v) {
  LinComb out;
  for (const auto& [mono, c] : v) {
    ModeSeq probe = mono;
    probe.push_back(n);
    if (!is_legal(probe)) throw std::invalid_argument("mode outside the legal coset");
    LinComb u = act_mono(n, mono);
    for (const auto& [m2, c2] : u) {
      Rat& slot = out[m2];
      slot += c * c2;
      if (slot == 0) out.erase(m2);
    }
  }
  return out;
}

LinComb Rewriter::normal_form(const ModeSeq& seq) {
  if (!is_legal(seq)) throw std::invalid_argument("mode sequence is outside the legal coset");
  callSteps_ = 0;
  LinComb v{{ModeSeq{}, Rat(1)}};
  for (std::int64_t n : seq) {
    v = act(n, v);
    if (v.empty()) break;
  }
  return v;
}

LinComb Rewriter::normal_form_outermost(const ModeSeq& seq) {
  if (!is_legal(seq)) throw std::invalid_argument("mode sequence is outside the legal coset");
  callSteps_ = 0;
  // Every straightening step lowers the sum of all prefix sums, so handling
  // monomials in decreasing order of that measure merges all contributions to
  // a monomial before it is processed.
  auto measure = [](const ModeSeq& s) {
    std::int64_t total = 0, prefix = 0;
    for (auto v : s) total += (prefix += v);
    return total;
  };
  using Key = std::pair<std::int64_t, ModeSeq>;
  std::map<Key, Rat, std::greater<Key>> pending;
  pending.emplace(Key{measure(seq), seq}, Rat(1));
  LinComb out;
  auto push = [&](ModeSeq s, const Rat& c) {
    Key k{measure(s), std::move(s)};
    Rat& slot = pending[k];
    slot += c;
    if (slot == 0) pending.erase(k);
  };
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const ModeSeq& mono = node.key().second;
    const Rat& coef = node.mapped();
    tick();
    if (is_zero_by_truncation(mono)) continue;
    std::ptrdiff_t viol = -1;
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(mono.size()) - 2; i >= 0; --i)
      if (mono[i + 1] - mono[i] < gN_) {
        viol = i;
        break;
      }
    if (viol < 0) {
      out[mono] += coef;
      if (out[mono] == 0) out.erase(mono);
      continue;
    }
    std::int64_t nIn = mono[viol], nOut = mono[viol + 1], psum = 0;
    for (std::ptrdiff_t i = 0; i < viol; ++i) psum += mono[i];
    std::int64_t lim = min_prefix(static_cast<std::size_t>(viol) + 1);
    long jFirst = -1, jSecond = -1;
    while (psum + nOut - gN_ - (jFirst + 1) * den_ >= lim) ++jFirst;
    while (psum + nIn - den_ - (jSecond + 1) * den_ >= lim) ++jSecond;
    Rat s = make_rat(-nOut, den_), t = make_rat(-nIn, den_);
    for (const PairTerm& pt : straighten_pair(s, t, g_, jFirst, jSecond)) {
      ModeSeq next = mono;
      next[viol + 1] = to_int64(Rat(-pt.outer * Rat(den_)));
      next[viol] = to_int64(Rat(-pt.inner * Rat(den_)));
      push(std::move(next), coef * pt.coef);
    }
  }
  return out;
}

LinComb quotient_reduce(const LinComb& v, std::int64_t boundNum) {
  LinComb out;
  for (const auto& [mono, c] : v)
    if (mono.empty() || mono.back() < boundNum) out.emplace(mono, c);
  return out;
}

std::string format_lincomb(const LinComb& v, std::int64_t den, const Rat& m) {
  if (v.empty()) return "0";
  // Sort by the printed sequence b(s_r)...b(s_1), s = -n, outermost first.
  std::vector<std::pair<std::vector<Rat>, const Rat*>> rows;
  for (const auto& [mono, c] : v) {
    std::vector<Rat> idx;
    for (auto it = mono.rbegin(); it != mono.rend(); ++it) idx.push_back(make_rat(-*it, den));
    rows.emplace_back(std::move(idx), &c);
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : rows) {
    if (!first) os << "\n";
    first = false;
    os << to_string(*c) << " * ";
    for (const Rat& s : idx) os << "b(" << to_string(s) << ")";
    os << "v_" << to_string(m);
  }
  return os.str();
}

ParsedMonomial parse_monomial(const std::string& text) {
  ParsedMonomial out;
  std::string body = text, params;
  if (auto bar = text.find('|'); bar != std::string::npos) {
    body = text.substr(0, bar);
    params = text.substr(bar + 1);
  }
  static const std::regex modeRe(R"(\s*b\(\s*([+-]?\d+(?:/\d+)?)\s*\)\s*)");
  std::vector<Rat> outerFirst;
  auto it = body.cbegin();
  std::smatch sm;
  while (it != body.cend()) {
    if (std::all_of(it, body.cend(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); })) break;
    if (!std::regex_search(it, body.cend(), sm, modeRe, std::regex_constants::match_continuous))
      throw std::invalid_argument("cannot parse monomial near '" + std::string(it, body.cend()) + "'");
    outerFirst.push_back(-parse_rat(sm[1].str()));
    it = sm[0].second;
  }
  out.modes.assign(outerFirst.rbegin(), outerFirst.rend());
  std::istringstream ps(params);
  std::string tok;
  while (ps >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got '" + tok + "'");
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "g")
      out.g = parse_rat(val);
    else if (key == "m")
      out.m = parse_rat(val);
    else
      throw std::invalid_argument("unknown parameter '" + key + "'");
  }
  return out;
}

}  // namespace fva

#include "fva/json_io.hpp"

#include <sstream>
#include <stdexcept>

namespace fva {

namespace {

Json int_json(const mpz_class& v) {
  if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
  return v.get_str();
}

mpz_class int_from(const Json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    mpz_class v;
    if (v.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("bad integer string");
    return v;
  }
  throw std::invalid_argument("expected an integer");
}

std::int64_t positive(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() <= 0) throw std::invalid_argument(std::string(what) + " must be a positive integer");
  return j.get<std::int64_t>();
}

std::string rat_or_empty(const std::optional<Rat>& r) { return r ? to_string(*r) : ""; }

std::string params_text(const Report& r) {
  std::string out;
  for (const auto& [k, v] : r.params) out += (out.empty() ? "" : " ") + k + "=" + v;
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

Json series_to_json(const BiSeries& s) {
  Json j;
  j["zDenom"] = s.z_denom();
  j["qDenom"] = s.q_denom();
  j["qCutoffNum"] = s.q_cutoff_num() ? Json(*s.q_cutoff_num()) : Json(nullptr);
  Json terms = Json::array();
  for (const auto& [key, c] : s.raw()) terms.push_back(Json::array({key.second, key.first, int_json(c.get_num()), int_json(c.get_den())}));
  j["terms"] = std::move(terms);
  if (s.z_window()) j["zWindow"] = Json::array({to_string(s.z_window()->first), to_string(s.z_window()->second)});
  return j;
}

namespace {

BiSeries series_from_json_unchecked(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("series must be an object");
  std::int64_t zd = positive(j.at("zDenom"), "zDenom"), qd = positive(j.at("qDenom"), "qDenom");
  BiSeries s;
  const Json& cut = j.at("qCutoffNum");
  if (!cut.is_null()) {
    if (!cut.is_number_integer()) throw std::invalid_argument("qCutoffNum must be an integer or null");
    s = BiSeries::truncated_zero(make_rat(cut.get<std::int64_t>(), qd));
  }
  s.rescale(zd, qd);
  if (s.z_denom() != zd || s.q_denom() != qd) throw std::invalid_argument("qCutoffNum does not fit qDenom");
  for (const Json& t : j.at("terms")) {
    if (!t.is_array() || t.size() != 4) throw std::invalid_argument("terms must be [zNum, qNum, coefNum, coefDen]");
    mpz_class den = int_from(t[3]);
    if (den <= 0) throw std::invalid_argument("coefficient denominator must be positive");
    Rat c(int_from(t[2]), den);
    c.canonicalize();
    if (c == 0) throw std::invalid_argument("zero coefficient in terms");
    s.add_scaled(t[0].get<std::int64_t>(), t[1].get<std::int64_t>(), c);
  }
  if (j.contains("zWindow")) {
    const Json& w = j["zWindow"];
    s.set_z_window(parse_rat(w.at(0).get<std::string>()), parse_rat(w.at(1).get<std::string>()));
  }
  return s;
}

}  // namespace

BiSeries series_from_json(const Json& j) {
  try {
    return series_from_json_unchecked(j);
  } catch (const Json::exception& ex) {
    throw std::invalid_argument(std::string("malformed series: ") + ex.what());
  }
}

Json basis_to_json(const ModuleSpec& spec, const BasisList& b) {
  Json j;
  j["module"] = spec.describe();
  j["denom"] = b.den;
  Json rows = Json::array();
  for (std::size_t i = 0; i < b.seqs.size(); ++i) {
    Json row;
    row["modes"] = b.seqs[i];
    row["charge"] = to_string(charge_of(spec, b.seqs[i].size()));
    row["degree"] = to_string(degree_of(spec, b.modes(i)));
    rows.push_back(std::move(row));
  }
  j["basis"] = std::move(rows);
  return j;
}

Json table_to_json(const BigradedTable& t) {
  Json j;
  j["qCutoff"] = t.qCutoff ? Json(to_string(*t.qCutoff)) : Json(nullptr);
  j["chargeMax"] = t.chargeMax ? Json(*t.chargeMax) : Json(nullptr);
  Json e = Json::array();
  for (const auto& [key, dim] : t.entries) e.push_back(Json::array({to_string(key.first), to_string(key.second), dim}));
  j["entries"] = std::move(e);
  return j;
}

Json comparison_to_json(const SeriesComparison& c) {
  Json j;
  j["equal"] = c.equal;
  j["qCutoff"] = c.qCutoff ? Json(to_string(*c.qCutoff)) : Json(nullptr);
  j["zWindow"] = c.zWindow ? Json::array({to_string(c.zWindow->first), to_string(c.zWindow->second)}) : Json(nullptr);
  j["termsCompared"] = c.termsCompared;
  if (!c.equal) {
    j["mismatch"] = {{"z", rat_or_empty(c.mismatchZ)}, {"q", rat_or_empty(c.mismatchQ)}, {"lhs", to_string(c.lhsCoef)},
                     {"rhs", to_string(c.rhsCoef)}};
  }
  return j;
}

Json report_to_json(const Report& r) {
  Json j;
  j["name"] = r.name;
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = std::move(params);
  j["level"] = r.level;
  j["verdict"] = verdict_name(r.verdict);
  j["notes"] = r.notes;
  Json pieces = Json::array();
  for (const auto& p : r.pieces) {
    Json pj;
    pj["charge"] = to_string(p.charge);
    pj["degree"] = to_string(p.degree);
    pj["dims"] = Json::array({p.sub, p.mid, p.quo});
    if (p.rankInjection >= 0) pj["rankInjection"] = p.rankInjection;
    if (p.kernelDim >= 0) pj["kernelDim"] = p.kernelDim;
    pj["verdict"] = p.ok ? "PASS" : "FAIL";
    pieces.push_back(std::move(pj));
  }
  j["pieces"] = std::move(pieces);
  Json comps = Json::array();
  for (const auto& [label, c] : r.comparisons) {
    Json cj = comparison_to_json(c);
    cj["label"] = label;
    comps.push_back(std::move(cj));
  }
  j["comparisons"] = std::move(comps);
  return j;
}

std::string reports_to_markdown(const std::vector<Report>& reports) {
  std::ostringstream os;
  long pass = 0, fail = 0, degen = 0;
  for (const auto& r : reports) (r.verdict == Verdict::Pass ? pass : r.verdict == Verdict::Fail ? fail : degen)++;
  os << "| verdict | check | parameters | level | note |\n|---|---|---|---|---|\n";
  for (const auto& r : reports) {
    std::string note = r.verdict == Verdict::Pass || r.notes.empty() ? "" : r.notes.front();
    for (auto& ch : note)
      if (ch == '|') ch = '/';
    os << "| " << verdict_name(r.verdict) << " | " << r.name << " | " << params_text(r) << " | " << r.level << " | " << note << " |\n";
  }
  os << "\n" << pass << " passed, " << fail << " failed, " << degen << " outside hypotheses\n";
  return os.str();
}

std::string reports_to_csv(const std::vector<Report>& reports) {
  std::ostringstream os;
  os << "verdict,check,parameters,level,pieces,comparisons,note\n";
  for (const auto& r : reports) {
    std::string note = r.verdict == Verdict::Pass || r.notes.empty() ? "" : r.notes.front();
    os << verdict_name(r.verdict) << "," << csv_field(r.name) << "," << csv_field(params_text(r)) << "," << r.level << ","
       << r.pieces.size() << "," << r.comparisons.size() << "," << csv_field(note) << "\n";
  }
  return os.str();
}

}  // namespace fva

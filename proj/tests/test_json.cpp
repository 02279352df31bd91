#include "doctest.h"

#include "fva/exactseq.hpp"
#include "fva/json_io.hpp"

using namespace fva;

namespace {

// Bit-exact: same denominators, cutoff, window and stored terms.
void check_round_trip(const BiSeries& s) {
  Json j = series_to_json(s);
  BiSeries back = series_from_json(Json::parse(j.dump()));
  CHECK(back.z_denom() == s.z_denom());
  CHECK(back.q_denom() == s.q_denom());
  CHECK(back.q_cutoff_num() == s.q_cutoff_num());
  CHECK(back.z_window() == s.z_window());
  CHECK(back.raw() == s.raw());
  CHECK(series_to_json(back).dump() == j.dump());
}

}  // namespace

TEST_SUITE("json") {
  TEST_CASE("series round trips") {
    check_round_trip(BiSeries());
    check_round_trip(fib_poly(3, 9));
    check_round_trip(lattice_char(3, 2, 6));
    check_round_trip(f_g_series(Rat(1, 2), 1, 0, 5, 3));
    Rat huge(mpz_class("123456789012345678901234567891"), mpz_class(7));
    huge.canonicalize();
    BiSeries big = BiSeries::monomial(Rat(-7, 3), Rat(5, 4), huge);
    big.add_term(0, 0, Rat(mpz_class(-1), mpz_class("98765432109876543210")));
    check_round_trip(big);
    Json j = series_to_json(big);
    bool sawString = false;
    for (const auto& t : j["terms"]) sawString |= t[2].is_string() || t[3].is_string();
    CHECK(sawString);
  }

  TEST_CASE("layout of a small series") {
    BiSeries s = BiSeries::truncated_zero(2);
    s.add_term(1, 1, 3);
    s.add_term(0, 0, Rat(1, 2));
    Json j = series_to_json(s);
    CHECK(j["zDenom"] == 1);
    CHECK(j["qCutoffNum"] == 2);
    CHECK(j["terms"].dump() == "[[0,0,1,2],[1,1,3,1]]");
    CHECK_FALSE(j.contains("zWindow"));
    CHECK(series_to_json(fib_poly(2, 2))["qCutoffNum"].is_null());
  }

  TEST_CASE("malformed series are rejected") {
    auto bad = [](const char* text) { return series_from_json(Json::parse(text)); };
    CHECK_THROWS_AS(bad("[]"), std::invalid_argument);
    CHECK_THROWS_AS(bad(R"({"zDenom":0,"qDenom":1,"qCutoffNum":null,"terms":[]})"), std::invalid_argument);
    CHECK_THROWS_AS(bad(R"({"zDenom":1,"qDenom":1,"terms":[]})"), std::invalid_argument);
    CHECK_THROWS_AS(bad(R"({"zDenom":1,"qDenom":1,"qCutoffNum":null,"terms":[[0,0,1]]})"), std::invalid_argument);
    CHECK_THROWS_AS(bad(R"({"zDenom":1,"qDenom":1,"qCutoffNum":null,"terms":[[0,0,1,0]]})"), std::invalid_argument);
    CHECK_THROWS_AS(bad(R"({"zDenom":1,"qDenom":1,"qCutoffNum":null,"terms":[[0,0,0,1]]})"), std::invalid_argument);
    CHECK_THROWS_AS(bad(R"({"zDenom":1,"qDenom":1,"qCutoffNum":null,"terms":[["a",0,1,1]]})"), std::invalid_argument);
    CHECK_THROWS_AS(bad(R"({"zDenom":1,"qDenom":1,"qCutoffNum":null,"terms":[[0,0,"1x",1]]})"), std::invalid_argument);
    CHECK_THROWS_AS(bad(R"({"zDenom":1,"qDenom":1,"qCutoffNum":1.5,"terms":[]})"), std::invalid_argument);
  }

  TEST_CASE("reports serialize their verdicts and pieces") {
    Report r = verify_fibonacci(2, 4, 0);
    Json j = report_to_json(r);
    CHECK(j["name"] == "fibonacci");
    CHECK(j["verdict"] == "PASS");
    CHECK(j["params"]["p"] == "2");
    CHECK(j["pieces"].size() == r.pieces.size());
    CHECK(j["pieces"][0].contains("rankInjection"));
    Report f;
    f.name = "x";
    f.compare("c", BiSeries::one(), BiSeries());
    Json fj = report_to_json(f);
    CHECK(fj["verdict"] == "FAIL");
    CHECK(fj["comparisons"][0]["mismatch"]["lhs"] == "1");
    CHECK(fj["comparisons"][0]["label"] == "c");
  }

  TEST_CASE("markdown and csv summaries") {
    Report a;
    a.name = "a";
    Report b;
    b.name = "b";
    b.degenerate("outside | range");
    std::string md = reports_to_markdown({a, b});
    CHECK(md.find("1 passed, 0 failed, 1 outside hypotheses") != std::string::npos);
    CHECK(md.find("outside / range") != std::string::npos);
    b.notes = {"has, comma"};
    std::string csv = reports_to_csv({a, b});
    CHECK(csv.find("\"has, comma\"") != std::string::npos);
    CHECK(csv.rfind("verdict,check", 0) == 0);
  }

  TEST_CASE("tables and bases") {
    BigradedTable t = bigraded_table(ModuleSpec::finite_algebra(2, 4), std::nullopt);
    Json tj = table_to_json(t);
    CHECK(tj["entries"].size() == 5);
    CHECK(tj["qCutoff"].is_null());
    Json bj = basis_to_json(ModuleSpec::finite_algebra(2, 4), enumerate_basis(ModuleSpec::finite_algebra(2, 4), std::nullopt));
    CHECK(bj["basis"].size() == 5);
    CHECK(bj["basis"][4]["modes"].dump() == "[1,3]");
    CHECK(bj["basis"][4]["degree"] == "4");
  }
}

#include <doctest.h>

#include <cstring>
#include <string>

#include "commsplit.h"

TEST_CASE("build, stats, and JSON round trip through the C interface") {
  cs_formula* f = nullptr;
  REQUIRE(cs_formula_build("odd", 4, 1, &f) == CS_OK);
  cs_formula_stats st{};
  REQUIRE(cs_formula_stats_get(f, &st) == CS_OK);
  CHECK(st.n_terms == 24);
  CHECK(st.k == 1);
  CHECK(st.p2 == 4);
  CHECK(st.nu == 5);

  char* json = nullptr;
  REQUIRE(cs_formula_to_json(f, &json) == CS_OK);
  REQUIRE(json != nullptr);
  cs_formula* g = nullptr;
  REQUIRE(cs_formula_from_json(json, &g) == CS_OK);
  char* json2 = nullptr;
  REQUIRE(cs_formula_to_json(g, &json2) == CS_OK);
  CHECK(std::string(json) == std::string(json2));

  cs_string_free(json);
  cs_string_free(json2);
  cs_formula_free(g);
  cs_formula_free(f);
}

TEST_CASE("invert and simplify handles") {
  cs_formula* f = nullptr;
  REQUIRE(cs_formula_build("even", 4, 2, &f) == CS_OK);
  cs_formula* inv = nullptr;
  REQUIRE(cs_formula_invert(f, &inv) == CS_OK);
  cs_formula_stats a{}, b{};
  cs_formula_stats_get(f, &a);
  cs_formula_stats_get(inv, &b);
  CHECK(a.n_terms == b.n_terms);
  CHECK(a.q_max == b.q_max);

  cs_formula* s = nullptr;
  REQUIRE(cs_formula_simplify(f, 0.0, &s) == CS_OK);
  cs_formula_stats c{};
  cs_formula_stats_get(s, &c);
  CHECK(c.n_terms <= a.n_terms);
  cs_formula_free(s);
  cs_formula_free(inv);
  cs_formula_free(f);
}

TEST_CASE("error codes and thread-local messages") {
  cs_formula* f = nullptr;
  CHECK(cs_formula_build("no-such-family", 2, 1, &f) == CS_ERR_INVALID_ARGUMENT);
  CHECK(f == nullptr);
  CHECK(std::strlen(cs_last_error()) > 0);

  CHECK(cs_formula_build("nestf", 3, 1, &f) == CS_ERR_INVALID_ARGUMENT);
  CHECK(cs_formula_from_json("{broken", &f) == CS_ERR_PARSE);
  CHECK(std::string(cs_last_error()).find("formula document") != std::string::npos);

  CHECK(cs_formula_build(nullptr, 2, 1, &f) == CS_ERR_INVALID_ARGUMENT);
  CHECK(cs_formula_to_json(nullptr, nullptr) == CS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("scan through the C interface") {
  cs_formula* f = nullptr;
  REQUIRE(cs_formula_build("odd", 2, 1, &f) == CS_OK);
  char* csv = nullptr;
  double slope = 0.0;
  REQUIRE(cs_scan(f, "pauli", 1, 1e-3, 0.7, 12, &csv, &slope) == CS_OK);
  CHECK(slope == doctest::Approx(3.0).epsilon(0.05));
  CHECK(std::string(csv).find("t,error") != std::string::npos);
  cs_string_free(csv);

  // a grid too sparse for the fit maps to the dedicated status
  char* bad = nullptr;
  CHECK(cs_scan(f, "pauli", 1, 1e-7, 1e-6, 8, &bad, &slope) ==
        CS_ERR_INSUFFICIENT_DATA);
  cs_formula_free(f);
}

TEST_CASE("plan through the C interface") {
  char* json = nullptr;
  REQUIRE(cs_plan("nestf", 0, 1, 2.0, 1.0, 1e-6, 5, &json) == CS_OK);
  std::string s(json);
  CHECK(s.find("\"r\": 405000652") != std::string::npos);
  CHECK(s.find("\"p2\": 4") != std::string::npos);
  cs_string_free(json);

  // no admissible level at all surfaces as CS_ERR_INFEASIBLE
  CHECK(cs_plan("nestf", 0, 1, 2.0, 1e6, 1e-1, 3, &json) == CS_ERR_INFEASIBLE);
  // a fixed level whose step count cannot be represented is a capacity error
  CHECK(cs_plan("nestf", 2, 1, 2.0, 1e6, 1e-1, 1, &json) == CS_ERR_CAPACITY);
}

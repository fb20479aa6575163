#include <algorithm>
#include <set>
#include <string>

#include "doctest.h"
#include "semiarray/axioms.hpp"
#include "semiarray/cost.hpp"
#include "semiarray/key.hpp"
#include "semiarray/names.hpp"
#include "semiarray/semiring.hpp"

using namespace semiarray;

TEST_CASE("cost construction and arithmetic") {
  CHECK(Cost(0).value() == 0.0);
  CHECK(Cost(3).to_string() == "3");
  CHECK(Cost::infinity().is_infinite());
  CHECK(Cost::infinity().to_string() == "inf");
  CHECK((Cost(2) + Cost(3)) == Cost(5));
  CHECK((Cost(2) + Cost::infinity()).is_infinite());
  CHECK(Cost(2) < Cost(3));
  CHECK(Cost(3) < Cost::infinity());
  CHECK_THROWS_AS(Cost(-1), std::invalid_argument);
  CHECK_THROWS_AS(Cost(std::nan("")), std::invalid_argument);
}

TEST_CASE("cost parsing round trips") {
  CHECK(Cost::parse("inf") == Cost::infinity());
  CHECK(Cost::parse("7") == Cost(7));
  CHECK(Cost::parse("2.5") == Cost(2.5));
  CHECK(Cost::parse(Cost(12).to_string()) == Cost(12));
  CHECK_THROWS_AS(Cost::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Cost::parse("-4"), std::invalid_argument);
  CHECK_THROWS_AS(Cost::parse(""), std::invalid_argument);
}

TEST_CASE("key parsing picks integers only for canonical decimals") {
  CHECK(parse_key("12") == Key{std::int64_t(12)});
  CHECK(parse_key("0") == Key{std::int64_t(0)});
  CHECK(parse_key("007") == Key{std::string("007")});
  CHECK(parse_key("-3") == Key{std::string("-3")});
  CHECK(parse_key("alpha") == Key{std::string("alpha")});
  CHECK(parse_key("1.5") == Key{std::string("1.5")});
  CHECK(key_to_string(parse_key("42")) == "42");
  CHECK(key_to_string(parse_key("h-7")) == "h-7");
}

TEST_CASE("stable hash is deterministic and key-type tagged") {
  Key a{std::int64_t(7)};
  Key b{std::string("7")};
  CHECK(stable_hash(1, a, b) == stable_hash(1, a, b));
  CHECK(stable_hash(1, a, a) != stable_hash(1, b, b));  // int 7 vs string "7"
  CHECK(stable_hash(1, a, b) != stable_hash(2, a, b));
}

TEST_CASE("natural semiring basics") {
  NaturalSemiring s;
  CHECK(s.add(2, 3) == 5);
  CHECK(s.mul(2, 3) == 6);
  CHECK(s.zero() == 0);
  CHECK(s.one() == 1);
  CHECK(s.parse("17") == 17);
  CHECK_THROWS_AS(s.parse("x"), std::invalid_argument);
  auto [lo, hi] = s.split_for_overlap(7);
  CHECK(lo + hi == 7);
}

TEST_CASE("min-plus and max-min semiring basics") {
  MinPlusSemiring mp;
  CHECK(mp.add(Cost(2), Cost(5)) == Cost(2));
  CHECK(mp.mul(Cost(2), Cost(5)) == Cost(7));
  CHECK(mp.zero().is_infinite());
  CHECK(mp.one() == Cost(0));
  CHECK(mp.mul(Cost(3), mp.zero()).is_infinite());  // annihilation by inf

  MaxMinSemiring mm;
  CHECK(mm.add(Cost(2), Cost(5)) == Cost(5));
  CHECK(mm.mul(Cost(2), Cost(5)) == Cost(2));
  CHECK(mm.zero() == Cost(0));
  CHECK(mm.one().is_infinite());
}

TEST_CASE("law suite passes for every shipped semiring") {
  for (std::string name : {"arith-nat", "min-plus", "max-min", "dual:arith-nat",
                           "dual:min-plus", "dual:max-min", "tropical-path",
                           "provenance:arith-nat", "provenance:min-plus"}) {
    AxiomReport r =
        with_semiring(name, [](auto s) { return axiom_check(s, 200, 1); });
    INFO("semiring: ", name);
    CHECK(r.trials == 200);
    CHECK(r.ok());
  }
}

TEST_CASE("broken demo algebra fails exactly the expected laws") {
  AxiomReport r = axiom_check(BrokenMonusSemiring{}, 200, 1);
  CHECK_FALSE(r.ok());
  std::set<std::string> laws;
  for (const auto& f : r.failures) laws.insert(f.law);
  std::set<std::string> expected{"mul-associativity", "mul-identity",
                                 "annihilation", "distributivity-left",
                                 "distributivity-right"};
  CHECK(laws == expected);
  // Addition in the demo algebra is honest; only multiplication is broken.
  CHECK(laws.count("add-commutativity") == 0);
  CHECK(laws.count("add-associativity") == 0);
  CHECK(laws.count("add-identity") == 0);
  CHECK_FALSE(r.failures.front().counterexample.empty());
}

TEST_CASE("axiom check is a pure function of semiring, trials, seed") {
  AxiomReport a = axiom_check(BrokenMonusSemiring{}, 100, 9);
  AxiomReport b = axiom_check(BrokenMonusSemiring{}, 100, 9);
  REQUIRE(a.failures.size() == b.failures.size());
  for (std::size_t i = 0; i < a.failures.size(); ++i) {
    CHECK(a.failures[i].law == b.failures[i].law);
    CHECK(a.failures[i].counterexample == b.failures[i].counterexample);
  }
}

TEST_CASE("unknown semiring names are rejected with the valid list") {
  CHECK_THROWS_WITH_AS(stock_semiring("tropical"),
                       doctest::Contains("unknown semiring"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(with_semiring("nope", [](auto s) {
                         return axiom_check(s, 1, 1);
                       }),
                       doctest::Contains("arith-nat"), std::invalid_argument);
}

TEST_CASE("real semiring equality uses relative tolerance") {
  RealSemiring r;
  CHECK(r.eq(1.0, 1.0 + 1e-12));
  CHECK_FALSE(r.eq(1.0, 1.001));
  CHECK(r.eq(0.0, 0.0));
}

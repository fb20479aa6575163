#pragma once

#include <string>
#include <vector>

#include "semiarray/rng.hpp"
#include "semiarray/semiring.hpp"

namespace semiarray {

struct AxiomFailure {
  std::string law;
  std::string counterexample;
};

struct AxiomReport {
  std::size_t trials = 0;
  std::vector<AxiomFailure> failures;

  bool ok() const { return failures.empty(); }
};

// Randomized check of the eight strict-semiring laws. Each trial samples one
// (x, y, z) tuple and evaluates every law on it, so the report is a pure
// function of (semiring, trials, seed). Violations are recorded, not thrown:
// a broken algebra is valid input.
template <Semiring S>
AxiomReport axiom_check(const S& s, std::size_t trials, std::uint64_t seed) {
  using V = typename S::value_type;
  AxiomReport report;
  report.trials = trials;
  Rng rng(seed);

  auto fail = [&](const char* law, const V& x, const V& y, const V& z,
                  const V& lhs, const V& rhs) {
    report.failures.push_back(
        {law, "x=" + s.to_string(x) + " y=" + s.to_string(y) + " z=" +
                  s.to_string(z) + " lhs=" + s.to_string(lhs) + " rhs=" +
                  s.to_string(rhs)});
  };

  for (std::size_t t = 0; t < trials; ++t) {
    V x = s.sample(rng);
    V y = s.sample(rng);
    V z = s.sample(rng);

    {
      V lhs = s.add(x, y), rhs = s.add(y, x);
      if (!s.eq(lhs, rhs)) fail("add-commutativity", x, y, z, lhs, rhs);
    }
    {
      V lhs = s.add(s.add(x, y), z), rhs = s.add(x, s.add(y, z));
      if (!s.eq(lhs, rhs)) fail("add-associativity", x, y, z, lhs, rhs);
    }
    {
      V lhs = s.add(x, s.zero());
      if (!s.eq(lhs, x)) fail("add-identity", x, y, z, lhs, x);
      V rhs = s.add(s.zero(), x);
      if (!s.eq(rhs, x)) fail("add-identity", x, y, z, rhs, x);
    }
    {
      V lhs = s.mul(s.mul(x, y), z), rhs = s.mul(x, s.mul(y, z));
      if (!s.eq(lhs, rhs)) fail("mul-associativity", x, y, z, lhs, rhs);
    }
    {
      V lhs = s.mul(s.one(), x);
      if (!s.eq(lhs, x)) fail("mul-identity", x, y, z, lhs, x);
      V rhs = s.mul(x, s.one());
      if (!s.eq(rhs, x)) fail("mul-identity", x, y, z, rhs, x);
    }
    {
      V lhs = s.mul(s.zero(), x);
      if (!s.eq(lhs, s.zero())) fail("annihilation", x, y, z, lhs, s.zero());
      V rhs = s.mul(x, s.zero());
      if (!s.eq(rhs, s.zero())) fail("annihilation", x, y, z, rhs, s.zero());
    }
    {
      V lhs = s.mul(x, s.add(y, z)), rhs = s.add(s.mul(x, y), s.mul(x, z));
      if (!s.eq(lhs, rhs)) fail("distributivity-left", x, y, z, lhs, rhs);
    }
    {
      V lhs = s.mul(s.add(y, z), x), rhs = s.add(s.mul(y, x), s.mul(z, x));
      if (!s.eq(lhs, rhs)) fail("distributivity-right", x, y, z, lhs, rhs);
    }
  }
  return report;
}

}  // namespace semiarray

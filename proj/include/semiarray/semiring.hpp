#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "semiarray/cost.hpp"
#include "semiarray/rng.hpp"

namespace semiarray {

// A semiring object bundles the carrier operations as values. Operations are
// member functions rather than free operators so that several semirings over
// the same value type (min-plus and max-min both use Cost) can coexist, and so
// semirings with runtime state (path capacity guard, provenance vertex set)
// fit the same shape as the stateless stock ones.
//
// Requirements beyond the syntactic ones below: add is commutative and
// associative with identity zero(); mul is associative with identity one();
// mul distributes over add on both sides; zero() annihilates mul on both
// sides. The axiom checker in axioms.hpp tests exactly these laws.
template <typename S>
concept Semiring = requires(const S s, const typename S::value_type v, Rng& rng) {
  typename S::value_type;
  { s.add(v, v) } -> std::same_as<typename S::value_type>;
  { s.mul(v, v) } -> std::same_as<typename S::value_type>;
  { s.zero() } -> std::same_as<typename S::value_type>;
  { s.one() } -> std::same_as<typename S::value_type>;
  { s.eq(v, v) } -> std::same_as<bool>;
  { s.sample(rng) } -> std::same_as<typename S::value_type>;
  { s.name() } -> std::same_as<std::string>;
  { s.to_string(v) } -> std::same_as<std::string>;
  { s == s } -> std::same_as<bool>;
};

// Semirings whose values can serve as edge weights: they expose a positivity
// test used when validating graph input.
template <typename S>
concept WeightSemiring =
    Semiring<S> && requires(const S s, const typename S::value_type v) {
      { s.positive(v) } -> std::same_as<bool>;
    };

// Nonnegative integers under ordinary (+, *).
struct NaturalSemiring {
  using value_type = std::uint64_t;

  value_type add(value_type a, value_type b) const { return a + b; }
  value_type mul(value_type a, value_type b) const { return a * b; }
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool eq(value_type a, value_type b) const { return a == b; }
  value_type sample(Rng& rng) const { return rng.below(21); }
  value_type sample_nonzero(Rng& rng) const { return 1 + rng.below(9); }
  bool positive(value_type v) const { return v > 0; }
  std::string name() const { return "arith-nat"; }
  std::string to_string(value_type v) const { return std::to_string(v); }
  value_type parse(const std::string& token) const {
    std::size_t pos = 0;
    auto v = std::stoull(token, &pos);
    if (pos != token.size()) throw std::invalid_argument("bad value: " + token);
    return v;
  }
  // v = a + b with both halves in the carrier; used by the overlap partition
  // strategy, which must split a stored value across two parts.
  std::pair<value_type, value_type> split_for_overlap(value_type v) const {
    return {v / 2, v - v / 2};
  }
  friend bool operator==(const NaturalSemiring&, const NaturalSemiring&) = default;
};

// [0, inf] with (min, +): add keeps the smaller cost, mul accumulates it.
struct MinPlusSemiring {
  using value_type = Cost;

  value_type add(value_type a, value_type b) const { return a < b ? a : b; }
  value_type mul(value_type a, value_type b) const { return a + b; }
  value_type zero() const { return Cost::infinity(); }
  value_type one() const { return Cost(0); }
  bool eq(value_type a, value_type b) const { return a == b; }
  value_type sample(Rng& rng) const {
    std::uint64_t r = rng.below(12);
    return r == 11 ? Cost::infinity() : Cost(static_cast<double>(r));
  }
  value_type sample_nonzero(Rng& rng) const {
    return Cost(static_cast<double>(rng.below(11)));
  }
  bool positive(value_type v) const { return !v.is_infinite(); }
  std::string name() const { return "min-plus"; }
  std::string to_string(value_type v) const { return v.to_string(); }
  value_type parse(const std::string& token) const { return Cost::parse(token); }
  // min is idempotent, so an overlapped entry may simply appear in both parts.
  std::pair<value_type, value_type> split_for_overlap(value_type v) const {
    return {v, v};
  }
  friend bool operator==(const MinPlusSemiring&, const MinPlusSemiring&) = default;
};

// [0, inf] with (max, min): add keeps the larger value, mul the bottleneck.
struct MaxMinSemiring {
  using value_type = Cost;

  value_type add(value_type a, value_type b) const { return a > b ? a : b; }
  value_type mul(value_type a, value_type b) const { return a < b ? a : b; }
  value_type zero() const { return Cost(0); }
  value_type one() const { return Cost::infinity(); }
  bool eq(value_type a, value_type b) const { return a == b; }
  value_type sample(Rng& rng) const {
    std::uint64_t r = rng.below(12);
    return r == 11 ? Cost::infinity() : Cost(static_cast<double>(r));
  }
  value_type sample_nonzero(Rng& rng) const {
    std::uint64_t r = rng.below(11);
    return r == 10 ? Cost::infinity() : Cost(static_cast<double>(1 + r));
  }
  std::string name() const { return "max-min"; }
  std::string to_string(value_type v) const { return v.to_string(); }
  value_type parse(const std::string& token) const { return Cost::parse(token); }
  std::pair<value_type, value_type> split_for_overlap(value_type v) const {
    return {v, v};
  }
  friend bool operator==(const MaxMinSemiring&, const MaxMinSemiring&) = default;
};

// Reals under (+, *). Not exposed through the CLI semiring names; it backs
// the neural-network layer, where weights and activations may be negative,
// and tests that need additive cancellation.
struct RealSemiring {
  using value_type = double;

  value_type add(value_type a, value_type b) const { return a + b; }
  value_type mul(value_type a, value_type b) const { return a * b; }
  value_type zero() const { return 0.0; }
  value_type one() const { return 1.0; }
  bool eq(value_type a, value_type b) const {
    return a == b || std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a) + std::abs(b));
  }
  value_type sample(Rng& rng) const {
    return static_cast<double>(static_cast<std::int64_t>(rng.below(11)) - 5);
  }
  value_type sample_nonzero(Rng& rng) const {
    auto v = static_cast<std::int64_t>(1 + rng.below(5));
    return rng.chance(0.5) ? static_cast<double>(v) : -static_cast<double>(v);
  }
  std::string name() const { return "real"; }
  std::string to_string(value_type v) const {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
      return std::to_string(static_cast<std::int64_t>(v));
    }
    return std::to_string(v);
  }
  value_type parse(const std::string& token) const {
    std::size_t pos = 0;
    double v = std::stod(token, &pos);
    if (pos != token.size()) throw std::invalid_argument("bad value: " + token);
    return v;
  }
  std::pair<value_type, value_type> split_for_overlap(value_type v) const {
    return {v / 2, v / 2};
  }
  friend bool operator==(const RealSemiring&, const RealSemiring&) = default;
};

// Deliberately broken structure for demonstrating the axiom checker: add is
// ordinary +, "mul" is truncated subtraction. Truncated subtraction is not
// associative, has no two-sided identity, and does not distribute, so the
// checker must flag it.
struct BrokenMonusSemiring {
  using value_type = std::uint64_t;

  value_type add(value_type a, value_type b) const { return a + b; }
  value_type mul(value_type a, value_type b) const { return a > b ? a - b : 0; }
  value_type zero() const { return 0; }
  value_type one() const { return 0; }
  bool eq(value_type a, value_type b) const { return a == b; }
  value_type sample(Rng& rng) const { return rng.below(21); }
  std::string name() const { return "broken-demo"; }
  std::string to_string(value_type v) const { return std::to_string(v); }
  friend bool operator==(const BrokenMonusSemiring&, const BrokenMonusSemiring&) = default;
};

static_assert(Semiring<NaturalSemiring>);
static_assert(Semiring<MinPlusSemiring>);
static_assert(Semiring<MaxMinSemiring>);
static_assert(Semiring<RealSemiring>);
static_assert(Semiring<BrokenMonusSemiring>);
static_assert(WeightSemiring<NaturalSemiring>);
static_assert(WeightSemiring<MinPlusSemiring>);

}  // namespace semiarray

#pragma once

#include <set>
#include <string>
#include <variant>

#include "semiarray/dual.hpp"
#include "semiarray/key.hpp"
#include "semiarray/path.hpp"
#include "semiarray/provenance.hpp"
#include "semiarray/semiring.hpp"

namespace semiarray {

using StockSemiring = std::variant<NaturalSemiring, MinPlusSemiring, MaxMinSemiring>;

// The three stock semirings by name. Returned as a variant because the value
// types differ; use std::visit or with_semiring for generic access.
inline StockSemiring stock_semiring(const std::string& name) {
  if (name == "arith-nat") return NaturalSemiring{};
  if (name == "min-plus") return MinPlusSemiring{};
  if (name == "max-min") return MaxMinSemiring{};
  throw std::invalid_argument("unknown semiring '" + name +
                              "' (valid: arith-nat, min-plus, max-min)");
}

template <Semiring S>
typename S::value_type combine_add(const S& s, const typename S::value_type& x,
                                   const typename S::value_type& y) {
  return s.add(x, y);
}

template <Semiring S>
typename S::value_type combine_mul(const S& s, const typename S::value_type& x,
                                   const typename S::value_type& y) {
  return s.mul(x, y);
}

inline const char* kCheckableSemirings =
    "arith-nat, min-plus, max-min, dual:arith-nat, dual:min-plus, "
    "dual:max-min, tropical-path, provenance:arith-nat, provenance:min-plus, "
    "broken-demo";

namespace detail {

// Small vertex alphabets for randomized law checks of the constructed
// semirings: path sets over {a..d}, provenance tuples over {a..c}.
inline std::set<Key> provenance_check_vertices() {
  return {Key{std::string("a")}, Key{std::string("b")}, Key{std::string("c")}};
}

}  // namespace detail

// Calls fn with the named semiring instance. Covers the stock semirings,
// their duals, the two constructed semirings (with their law-check sampling
// parameters), and the deliberately broken demo algebra.
template <typename Fn>
auto with_semiring(const std::string& name, Fn&& fn) {
  if (name == "arith-nat") return fn(NaturalSemiring{});
  if (name == "min-plus") return fn(MinPlusSemiring{});
  if (name == "max-min") return fn(MaxMinSemiring{});
  if (name == "dual:arith-nat") return fn(dual_semiring(NaturalSemiring{}));
  if (name == "dual:min-plus") return fn(dual_semiring(MinPlusSemiring{}));
  if (name == "dual:max-min") return fn(dual_semiring(MaxMinSemiring{}));
  if (name == "tropical-path") return fn(TropicalPathSemiring{});
  if (name == "provenance:arith-nat") {
    return fn(provenance_semiring(NaturalSemiring{}, detail::provenance_check_vertices()));
  }
  if (name == "provenance:min-plus") {
    return fn(provenance_semiring(MinPlusSemiring{}, detail::provenance_check_vertices()));
  }
  if (name == "broken-demo") return fn(BrokenMonusSemiring{});
  throw std::invalid_argument("unknown semiring '" + name + "' (valid: " +
                              std::string(kCheckableSemirings) + ")");
}

}  // namespace semiarray

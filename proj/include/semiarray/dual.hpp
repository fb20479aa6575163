#pragma once

#include <string>
#include <utility>

#include "semiarray/assoc_array.hpp"
#include "semiarray/semiring.hpp"

namespace semiarray {

// Element x + i y of the S×S construction. The unit i = (0, 1) satisfies
// i ⊗ i = (0, 0) under the multiplication below; that rule is the whole point
// and i carries no further meaning.
template <typename V>
struct DualValue {
  V re;
  V im;
};

// S×S with componentwise addition and
//   (x1, x2) ⊗ (y1, y2) = (x1⊗y1, (x1⊗y2) ⊕ (x2⊗y1)).
template <Semiring B>
struct DualSemiring {
  using base_type = B;
  using value_type = DualValue<typename B::value_type>;

  B base;

  value_type add(const value_type& x, const value_type& y) const {
    return {base.add(x.re, y.re), base.add(x.im, y.im)};
  }
  value_type mul(const value_type& x, const value_type& y) const {
    return {base.mul(x.re, y.re),
            base.add(base.mul(x.re, y.im), base.mul(x.im, y.re))};
  }
  value_type zero() const { return {base.zero(), base.zero()}; }
  value_type one() const { return {base.one(), base.zero()}; }
  bool eq(const value_type& x, const value_type& y) const {
    return base.eq(x.re, y.re) && base.eq(x.im, y.im);
  }
  value_type sample(Rng& rng) const { return {base.sample(rng), base.sample(rng)}; }
  std::string name() const { return "dual:" + base.name(); }
  std::string to_string(const value_type& v) const {
    return base.to_string(v.re) + "|" + base.to_string(v.im);
  }
  value_type parse(const std::string& token) const
    requires requires(const B& b, const std::string& t) { b.parse(t); }
  {
    auto bar = token.find('|');
    if (bar == std::string::npos) {
      throw std::invalid_argument("dual value must be re|im, got: " + token);
    }
    return {base.parse(token.substr(0, bar)), base.parse(token.substr(bar + 1))};
  }
  friend bool operator==(const DualSemiring&, const DualSemiring&) = default;
};

template <Semiring B>
DualSemiring<B> dual_semiring(B base) {
  return DualSemiring<B>{std::move(base)};
}

// x ↦ (x, 0), a semiring homomorphism into the dual.
template <Semiring B>
DualValue<typename B::value_type> embed(const B& base,
                                        const typename B::value_type& x) {
  return {x, base.zero()};
}

template <Semiring B>
DualValue<typename B::value_type> imaginary_unit(const B& base) {
  return {base.zero(), base.one()};
}

// Componentwise projections on arrays, re-canonicalized: an entry whose
// projected component is the base zero is dropped.
template <Semiring B>
AssocArray<B> re_part(const AssocArray<DualSemiring<B>>& a) {
  AssocArray<B> out(a.semiring().base, a.row_keys(), a.col_keys());
  for (const auto& [kp, v] : a.entries()) out.set(kp.first, kp.second, v.re);
  return out;
}

template <Semiring B>
AssocArray<B> im_part(const AssocArray<DualSemiring<B>>& a) {
  AssocArray<B> out(a.semiring().base, a.row_keys(), a.col_keys());
  for (const auto& [kp, v] : a.entries()) out.set(kp.first, kp.second, v.im);
  return out;
}

}  // namespace semiarray

#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "semiarray/assoc_array.hpp"
#include "semiarray/dual.hpp"
#include "semiarray/key.hpp"
#include "semiarray/semiring.hpp"

namespace semiarray {

// One provenance record (v1, v2, v3, key) with all value components nonzero.
// The declaration order gives the canonical (key, v1, v2, v3) sort order used
// for set storage and serialization.
template <typename V>
struct ProvTuple {
  Key key;
  V v1;
  V v2;
  V v3;

  friend auto operator<=>(const ProvTuple&, const ProvTuple&) = default;
};

template <typename V>
using ProvenanceSet = std::set<ProvTuple<V>>;

// Pow(T) for T = (S∖{0})³ × V: addition is union, multiplication pairs
// tuples agreeing on the vertex key, multiplies componentwise in the base,
// and discards any result tuple with a zero component (the ∩T rule). The
// vertex set is an explicit constructor parameter, never inferred from data:
// the multiplicative identity {(1,1,1,u) | u ∈ V} quantifies over all of V.
//
// Requires exact base value semantics (base eq coincides with ==), which
// holds for every stock semiring here.
template <Semiring B>
struct ProvenanceSemiring {
  using base_type = B;
  using tuple_type = ProvTuple<typename B::value_type>;
  using value_type = ProvenanceSet<typename B::value_type>;

  B base;
  std::set<Key> vertices;

  value_type add(const value_type& x, const value_type& y) const {
    value_type out = x;
    out.insert(y.begin(), y.end());
    return out;
  }

  value_type mul(const value_type& x, const value_type& y) const {
    value_type out;
    for (const auto& a : x) {
      for (const auto& b : y) {
        if (!(a.key == b.key)) continue;
        tuple_type t{a.key, base.mul(a.v1, b.v1), base.mul(a.v2, b.v2),
                     base.mul(a.v3, b.v3)};
        if (base.eq(t.v1, base.zero()) || base.eq(t.v2, base.zero()) ||
            base.eq(t.v3, base.zero())) {
          continue;
        }
        out.insert(std::move(t));
      }
    }
    return out;
  }

  value_type zero() const { return {}; }

  value_type one() const {
    value_type out;
    for (const Key& u : vertices) out.insert({u, base.one(), base.one(), base.one()});
    return out;
  }

  bool eq(const value_type& x, const value_type& y) const { return x == y; }

  value_type sample(Rng& rng) const {
    value_type out;
    if (vertices.empty()) return out;
    std::vector<Key> verts(vertices.begin(), vertices.end());
    std::size_t count = rng.below(5);
    for (std::size_t i = 0; i < count; ++i) {
      out.insert({verts[rng.below(verts.size())], base.sample_nonzero(rng),
                  base.sample_nonzero(rng), base.sample_nonzero(rng)});
    }
    return out;
  }

  std::string name() const { return "provenance:" + base.name(); }

  std::string to_string(const value_type& v) const {
    std::string out = "{";
    std::size_t i = 0;
    for (const auto& t : v) {
      if (i++) out += ",";
      out += "(" + key_to_string(t.key) + ";" + base.to_string(t.v1) + ";" +
             base.to_string(t.v2) + ";" + base.to_string(t.v3) + ")";
    }
    return out + "}";
  }

  friend bool operator==(const ProvenanceSemiring&, const ProvenanceSemiring&) = default;
};

template <Semiring B>
ProvenanceSemiring<B> provenance_semiring(B base, std::set<Key> vertices) {
  return ProvenanceSemiring<B>{std::move(base), std::move(vertices)};
}

// The two recovery readings of a provenance product disagreeing: a broken
// base semiring or a zero-divisor edge case.
class RecoveryError : public std::runtime_error {
 public:
  explicit RecoveryError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

template <Semiring B>
void require_keys_in_vertices(const AssocArray<B>& a,
                              const ProvenanceSemiring<B>& ps, const char* op) {
  for (const Key& k : a.row_keys()) {
    if (!ps.vertices.count(k)) {
      throw std::invalid_argument(std::string(op) + ": row key " +
                                  key_to_string(k) + " not in the vertex set");
    }
  }
  for (const Key& k : a.col_keys()) {
    if (!ps.vertices.count(k)) {
      throw std::invalid_argument(std::string(op) + ": col key " +
                                  key_to_string(k) + " not in the vertex set");
    }
  }
}

}  // namespace detail

// A′(u,v) = {(1, A(u,v), A(u,v), u)} + i {(A(u,v), 1, A(u,v), v)} at nonzero
// entries; zero entries lift to no stored entry.
template <Semiring B>
AssocArray<DualSemiring<ProvenanceSemiring<B>>> lift_provenance(
    const AssocArray<B>& a, const ProvenanceSemiring<B>& ps) {
  if (!(a.semiring() == ps.base)) {
    throw std::invalid_argument("lift_provenance: base semiring mismatch");
  }
  detail::require_keys_in_vertices(a, ps, "lift_provenance");

  DualSemiring<ProvenanceSemiring<B>> ds{ps};
  AssocArray<DualSemiring<ProvenanceSemiring<B>>> out(ds, a.row_keys(), a.col_keys());
  const auto& one = ps.base.one();
  for (const auto& [kp, x] : a.entries()) {
    typename ProvenanceSemiring<B>::value_type re{{kp.first, one, x, x}};
    typename ProvenanceSemiring<B>::value_type im{{kp.second, x, one, x}};
    out.set(kp.first, kp.second,
            DualValue<typename ProvenanceSemiring<B>::value_type>{std::move(re),
                                                                  std::move(im)});
  }
  return out;
}

// C = Im(A′) ⊕′.⊗′ Re(B′), computed both through the generic dual-array
// machinery and through the closed form
//   C(u,v) = {(A(u,w), B(w,v), A(u,w)⊗B(w,v), w) | w, A(u,w)⊗B(w,v) ≠ 0},
// asserted equal before returning.
template <Semiring B>
AssocArray<ProvenanceSemiring<B>> provenance_product(
    const AssocArray<B>& a, const AssocArray<B>& b,
    const ProvenanceSemiring<B>& ps) {
  detail::require_same_semiring(a, b, "provenance_product");
  if (!(a.semiring() == ps.base)) {
    throw std::invalid_argument("provenance_product: base semiring mismatch");
  }
  if (a.col_keys() != b.row_keys()) {
    throw std::invalid_argument(
        "provenance_product: A columns do not match B rows");
  }
  detail::require_keys_in_vertices(a, ps, "provenance_product");
  detail::require_keys_in_vertices(b, ps, "provenance_product");

  AssocArray<ProvenanceSemiring<B>> generic =
      array_mul(im_part(lift_provenance(a, ps)), re_part(lift_provenance(b, ps)));

  AssocArray<ProvenanceSemiring<B>> closed(ps, a.row_keys(), b.col_keys());
  const auto& base = ps.base;
  std::map<Key, std::vector<std::pair<Key, typename B::value_type>>> rows_of_b;
  for (const auto& [kp, v] : b.entries()) rows_of_b[kp.first].emplace_back(kp.second, v);
  std::map<KeyPair, typename ProvenanceSemiring<B>::value_type> acc;
  for (const auto& [kp, x] : a.entries()) {
    auto it = rows_of_b.find(kp.second);
    if (it == rows_of_b.end()) continue;
    for (const auto& [v, y] : it->second) {
      auto prod = base.mul(x, y);
      if (base.eq(prod, base.zero())) continue;
      acc[{kp.first, v}].insert({kp.second, x, y, prod});
    }
  }
  for (const auto& [kp, set] : acc) closed.set(kp.first, kp.second, set);

  if (!(generic == closed)) {
    throw std::logic_error(
        "provenance_product: generic evaluation disagrees with the closed form");
  }
  return generic;
}

// π₁,₂ of each C entry: the (A-value, B-value) factor pairs that contributed.
template <Semiring B>
std::map<KeyPair, std::set<std::pair<typename B::value_type, typename B::value_type>>>
cat_val_mul(const AssocArray<B>& a, const AssocArray<B>& b,
            const ProvenanceSemiring<B>& ps) {
  std::map<KeyPair, std::set<std::pair<typename B::value_type, typename B::value_type>>>
      out;
  // Named product: the range-for would not keep a temporary alive through
  // the .entries() reference.
  auto c = provenance_product(a, b, ps);
  for (const auto& [kp, set] : c.entries()) {
    auto& slot = out[kp];
    for (const auto& t : set) slot.insert({t.v1, t.v2});
  }
  return out;
}

// π₄ of each C entry: the inner vertices that contributed a nonzero term.
template <Semiring B>
std::map<KeyPair, std::set<Key>> cat_key_mul(const AssocArray<B>& a,
                                             const AssocArray<B>& b,
                                             const ProvenanceSemiring<B>& ps) {
  std::map<KeyPair, std::set<Key>> out;
  auto c = provenance_product(a, b, ps);
  for (const auto& [kp, set] : c.entries()) {
    auto& slot = out[kp];
    for (const auto& t : set) slot.insert(t.key);
  }
  return out;
}

// (A ⊕.⊗ B)(u,v) recovered from C(u,v) as ⊕{v1 ⊗ v2} and as ⊕{v3}; the two
// must agree (RecoveryError otherwise). Callers cross-check the result
// against array_mul(A, B).
template <Semiring B>
AssocArray<B> recover_product(const AssocArray<ProvenanceSemiring<B>>& c) {
  const auto& base = c.semiring().base;
  AssocArray<B> out(base, c.row_keys(), c.col_keys());
  for (const auto& [kp, set] : c.entries()) {
    auto by_factors = base.zero();
    auto by_product = base.zero();
    for (const auto& t : set) {
      by_factors = base.add(by_factors, base.mul(t.v1, t.v2));
      by_product = base.add(by_product, t.v3);
    }
    if (!base.eq(by_factors, by_product)) {
      throw RecoveryError("recover_product: forms disagree at (" +
                          key_to_string(kp.first) + "," + key_to_string(kp.second) +
                          "): " + base.to_string(by_factors) + " vs " +
                          base.to_string(by_product));
    }
    out.set(kp.first, kp.second, by_factors);
  }
  return out;
}

}  // namespace semiarray

#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "semiarray/key.hpp"
#include "semiarray/semiring.hpp"

namespace semiarray {

template <Semiring S>
struct Triple {
  Key row;
  Key col;
  typename S::value_type value;
};

// Finitely supported map (row key, col key) -> semiring value in canonical
// form: no stored value equals the semiring zero, and every stored key pair
// lies in row_keys() x col_keys(). Key sets may be larger than the support.
// Entries are held in a sorted map (row-major), which fixes iteration order
// and makes every derived output deterministic.
//
// Arrays are immutable by convention once built: the mutators exist for
// construction and the operations below are pure functions.
template <Semiring S>
class AssocArray {
 public:
  using semiring_type = S;
  using value_type = typename S::value_type;
  using entry_map = std::map<KeyPair, value_type>;

  explicit AssocArray(S s) : semiring_(std::move(s)) {}
  AssocArray(S s, std::set<Key> rows, std::set<Key> cols)
      : semiring_(std::move(s)), row_keys_(std::move(rows)), col_keys_(std::move(cols)) {}

  const S& semiring() const { return semiring_; }
  const std::set<Key>& row_keys() const { return row_keys_; }
  const std::set<Key>& col_keys() const { return col_keys_; }
  const entry_map& entries() const { return entries_; }

  bool contains(const Key& r, const Key& c) const {
    return entries_.count({r, c}) > 0;
  }

  // Reads a cell; missing entries read as the semiring zero.
  value_type at(const Key& r, const Key& c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? semiring_.zero() : it->second;
  }

  void add_row_key(const Key& k) { row_keys_.insert(k); }
  void add_col_key(const Key& k) { col_keys_.insert(k); }

  // Overwrites a cell, keeping canonical form: storing zero erases.
  void set(const Key& r, const Key& c, const value_type& v) {
    row_keys_.insert(r);
    col_keys_.insert(c);
    if (semiring_.eq(v, semiring_.zero())) {
      entries_.erase({r, c});
    } else {
      entries_[{r, c}] = v;
    }
  }

  // Cell := cell ⊕ v, keeping canonical form.
  void accumulate(const Key& r, const Key& c, const value_type& v) {
    set(r, c, semiring_.add(at(r, c), v));
  }

  std::vector<Triple<S>> to_triples() const {
    std::vector<Triple<S>> out;
    out.reserve(entries_.size());
    for (const auto& [kp, v] : entries_) out.push_back({kp.first, kp.second, v});
    return out;
  }

  friend bool operator==(const AssocArray& a, const AssocArray& b) {
    if (!(a.semiring_ == b.semiring_)) return false;
    if (a.row_keys_ != b.row_keys_ || a.col_keys_ != b.col_keys_) return false;
    if (a.entries_.size() != b.entries_.size()) return false;
    auto ia = a.entries_.begin();
    auto ib = b.entries_.begin();
    for (; ia != a.entries_.end(); ++ia, ++ib) {
      if (ia->first != ib->first) return false;
      if (!a.semiring_.eq(ia->second, ib->second)) return false;
    }
    return true;
  }

 private:
  S semiring_;
  std::set<Key> row_keys_;
  std::set<Key> col_keys_;
  entry_map entries_;
};

template <Semiring S>
std::size_t nnz(const AssocArray<S>& a) {
  return a.entries().size();
}

namespace detail {

template <Semiring S>
void require_same_semiring(const AssocArray<S>& a, const AssocArray<S>& b,
                           const char* op) {
  if (!(a.semiring() == b.semiring())) {
    throw std::invalid_argument(std::string(op) + ": semiring mismatch (" +
                                a.semiring().name() + " vs " +
                                b.semiring().name() + ")");
  }
}

}  // namespace detail

// Duplicate key pairs are ⊕-combined; zeros (given or produced) are dropped.
// Key sets are the union of keys seen and the optional explicit sets.
template <Semiring S>
AssocArray<S> from_triples(const std::vector<Triple<S>>& triples, S s,
                           std::set<Key> rows = {}, std::set<Key> cols = {}) {
  AssocArray<S> out(std::move(s), std::move(rows), std::move(cols));
  for (const auto& t : triples) out.accumulate(t.row, t.col, t.value);
  return out;
}

// Entrywise ⊕ over (K1 ∪ K3) × (K2 ∪ K4); missing entries read as zero, so
// the merged support is the union of supports (minus any ⊕-cancellations).
template <Semiring S>
AssocArray<S> ewise_add(const AssocArray<S>& a, const AssocArray<S>& b) {
  detail::require_same_semiring(a, b, "ewise_add");
  std::set<Key> rows = a.row_keys();
  rows.insert(b.row_keys().begin(), b.row_keys().end());
  std::set<Key> cols = a.col_keys();
  cols.insert(b.col_keys().begin(), b.col_keys().end());
  AssocArray<S> out(a.semiring(), std::move(rows), std::move(cols));
  for (const auto& [kp, v] : a.entries()) out.set(kp.first, kp.second, v);
  for (const auto& [kp, v] : b.entries()) out.accumulate(kp.first, kp.second, v);
  return out;
}

// Entrywise ⊗ over (K1 ∩ K3) × (K2 ∩ K4); only intersecting supports can
// produce entries (missing cells are zero and zero annihilates).
template <Semiring S>
AssocArray<S> ewise_mul(const AssocArray<S>& a, const AssocArray<S>& b) {
  detail::require_same_semiring(a, b, "ewise_mul");
  std::set<Key> rows;
  for (const Key& k : a.row_keys())
    if (b.row_keys().count(k)) rows.insert(k);
  std::set<Key> cols;
  for (const Key& k : a.col_keys())
    if (b.col_keys().count(k)) cols.insert(k);
  AssocArray<S> out(a.semiring(), std::move(rows), std::move(cols));
  const auto& s = a.semiring();
  for (const auto& [kp, v] : a.entries()) {
    auto it = b.entries().find(kp);
    if (it != b.entries().end()) out.set(kp.first, kp.second, s.mul(v, it->second));
  }
  return out;
}

// (A ⊕.⊗ B)(k1,k2) = ⊕ over k3 of A(k1,k3) ⊗ B(k3,k2). The reduction
// iterates stored entries only; skipped cells are zero and contribute
// nothing by annihilation. Result is keyed K1 × K4 regardless of support.
template <Semiring S>
AssocArray<S> array_mul(const AssocArray<S>& a, const AssocArray<S>& b) {
  detail::require_same_semiring(a, b, "array_mul");
  const auto& s = a.semiring();
  std::map<Key, std::vector<std::pair<Key, typename S::value_type>>> rows_of_b;
  for (const auto& [kp, v] : b.entries()) rows_of_b[kp.first].emplace_back(kp.second, v);

  AssocArray<S> out(s, a.row_keys(), b.col_keys());
  typename AssocArray<S>::entry_map acc;
  for (const auto& [kp, av] : a.entries()) {
    auto it = rows_of_b.find(kp.second);
    if (it == rows_of_b.end()) continue;
    for (const auto& [c, bv] : it->second) {
      KeyPair rc{kp.first, c};
      auto prod = s.mul(av, bv);
      auto slot = acc.find(rc);
      if (slot == acc.end()) {
        acc.emplace(rc, std::move(prod));
      } else {
        slot->second = s.add(slot->second, prod);
      }
    }
  }
  for (const auto& [kp, v] : acc) out.set(kp.first, kp.second, v);
  return out;
}

template <Semiring S>
AssocArray<S> transpose(const AssocArray<S>& a) {
  AssocArray<S> out(a.semiring(), a.col_keys(), a.row_keys());
  for (const auto& [kp, v] : a.entries()) out.set(kp.second, kp.first, v);
  return out;
}

// Diagonal with the semiring one at (k, k) for every key in `keys`.
template <Semiring S>
AssocArray<S> identity_diag(S s, const std::set<Key>& keys) {
  AssocArray<S> out(std::move(s), keys, keys);
  for (const Key& k : keys) out.set(k, k, out.semiring().one());
  return out;
}

// ⊕ over all stored entries; zero for an empty array.
template <Semiring S>
typename S::value_type global_sum(const AssocArray<S>& a) {
  auto acc = a.semiring().zero();
  for (const auto& [kp, v] : a.entries()) acc = a.semiring().add(acc, v);
  return acc;
}

}  // namespace semiarray

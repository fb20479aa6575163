#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "semiarray/assoc_array.hpp"
#include "semiarray/key.hpp"

namespace semiarray {

enum class Strategy { Random, RowBlock, ColBlock, Overlap };

inline std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Random: return "random";
    case Strategy::RowBlock: return "row-block";
    case Strategy::ColBlock: return "col-block";
    case Strategy::Overlap: return "overlap";
  }
  return "?";
}

inline Strategy parse_strategy(const std::string& name) {
  if (name == "random") return Strategy::Random;
  if (name == "row-block") return Strategy::RowBlock;
  if (name == "col-block") return Strategy::ColBlock;
  if (name == "overlap") return Strategy::Overlap;
  throw std::invalid_argument(
      "unknown strategy '" + name +
      "' (valid: random, row-block, col-block, overlap)");
}

// P arrays over identical key sets and semiring whose ⊕-reduction is the
// source array. Under the three built-in strategies supports are pairwise
// disjoint; the overlap strategy deliberately is not.
template <Semiring S>
struct SumPartition {
  std::vector<AssocArray<S>> parts;
  Strategy strategy = Strategy::Random;
  std::uint64_t seed = 0;
};

namespace detail {

// Runs fn(0..n-1) on up to `workers` threads. Each index is claimed by
// exactly one worker; the lowest-index exception, if any, is rethrown after
// all workers join.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
  if (n == 0) return;
  std::size_t hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  std::size_t count = std::min({workers, n, hw});
  if (count <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto body = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(count);
  for (std::size_t w = 0; w < count; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Maps each key of a sorted set to its contiguous block index: block p covers
// positions [floor(p*K/P), floor((p+1)*K/P)).
inline std::map<Key, std::size_t> block_assignment(const std::set<Key>& keys,
                                                   std::size_t P) {
  std::map<Key, std::size_t> out;
  std::size_t K = keys.size();
  std::size_t i = 0;
  for (const Key& k : keys) {
    out[k] = K == 0 ? 0 : (i * P) / K;
    ++i;
  }
  return out;
}

// Fixed-shape pairwise binary tree over part indices. The ⊕ laws make the
// result order-independent; fixing the shape anyway keeps outputs bit-stable
// for value types where evaluation order could otherwise show.
template <Semiring S>
AssocArray<S> tree_reduce(std::vector<AssocArray<S>> level) {
  if (level.empty()) throw std::invalid_argument("reduce: no parts");
  while (level.size() > 1) {
    std::vector<AssocArray<S>> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      next.push_back(ewise_add(level[i], level[i + 1]));
    }
    if (level.size() % 2 == 1) next.push_back(std::move(level.back()));
    level = std::move(next);
  }
  return std::move(level.front());
}

template <Semiring S>
void require_uniform_parts(const std::vector<AssocArray<S>>& parts,
                           const char* op) {
  if (parts.empty()) throw std::invalid_argument(std::string(op) + ": no parts");
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (!(parts[i].semiring() == parts[0].semiring())) {
      throw std::invalid_argument(std::string(op) + ": semiring mismatch at part " +
                                  std::to_string(i));
    }
    if (parts[i].row_keys() != parts[0].row_keys() ||
        parts[i].col_keys() != parts[0].col_keys()) {
      throw std::invalid_argument(std::string(op) + ": key-set mismatch at part " +
                                  std::to_string(i));
    }
  }
}

}  // namespace detail

// Splits A into P parts whose ⊕-sum is A. Every part carries A's full key
// sets. random assigns each stored triple by a seeded stable hash; row-block
// and col-block assign contiguous sorted-key ranges; overlap (test-only)
// splits each value across two parts, so supports intersect but the sum is
// still A.
template <Semiring S>
SumPartition<S> partition(const AssocArray<S>& a, std::size_t P,
                          Strategy strategy, std::uint64_t seed) {
  if (P < 1) throw std::invalid_argument("partition: P must be >= 1");
  SumPartition<S> out;
  out.strategy = strategy;
  out.seed = seed;
  out.parts.assign(P, AssocArray<S>(a.semiring(), a.row_keys(), a.col_keys()));

  const auto& s = a.semiring();
  switch (strategy) {
    case Strategy::Random: {
      for (const auto& [kp, v] : a.entries()) {
        std::size_t p = stable_hash(seed, kp.first, kp.second) % P;
        out.parts[p].set(kp.first, kp.second, v);
      }
      break;
    }
    case Strategy::RowBlock: {
      auto blocks = detail::block_assignment(a.row_keys(), P);
      for (const auto& [kp, v] : a.entries()) {
        out.parts[blocks.at(kp.first)].set(kp.first, kp.second, v);
      }
      break;
    }
    case Strategy::ColBlock: {
      auto blocks = detail::block_assignment(a.col_keys(), P);
      for (const auto& [kp, v] : a.entries()) {
        out.parts[blocks.at(kp.second)].set(kp.first, kp.second, v);
      }
      break;
    }
    case Strategy::Overlap: {
      if constexpr (requires(const S& sr, typename S::value_type v) {
                      sr.split_for_overlap(v);
                    }) {
        for (const auto& [kp, v] : a.entries()) {
          auto [v1, v2] = s.split_for_overlap(v);
          std::size_t p = stable_hash(seed, kp.first, kp.second) % P;
          out.parts[p].accumulate(kp.first, kp.second, v1);
          out.parts[(p + 1) % P].accumulate(kp.first, kp.second, v2);
        }
      } else {
        throw std::invalid_argument(
            "partition: semiring " + s.name() +
            " does not support the overlap strategy");
      }
      break;
    }
  }
  return out;
}

// Pairwise-tree ⊕ of the parts. Errors on empty input or parts whose key
// sets or semirings disagree.
template <Semiring S>
AssocArray<S> reduce(const SumPartition<S>& sp) {
  detail::require_uniform_parts(sp.parts, "reduce");
  return detail::tree_reduce(sp.parts);
}

// Applies f to every part concurrently, then ⊕-reduces the results. Equals
// f(reduce(sp)) exactly when f is linear; the caller asserts linearity by
// calling this.
template <Semiring S, typename Fn>
auto map_reduce_linear(const SumPartition<S>& sp, Fn&& f) {
  detail::require_uniform_parts(sp.parts, "map_reduce_linear");
  using R = decltype(f(sp.parts.front()));
  std::vector<std::optional<R>> mapped(sp.parts.size());
  detail::parallel_for(sp.parts.size(), sp.parts.size(),
                       [&](std::size_t i) { mapped[i] = f(sp.parts[i]); });
  std::vector<R> results;
  results.reserve(mapped.size());
  for (auto& m : mapped) results.push_back(std::move(*m));
  detail::require_uniform_parts(results, "map_reduce_linear");
  return detail::tree_reduce(std::move(results));
}

// ⊕ over p of B ∘ Aₚ ∘ C. Linear in A, so it equals B ∘ reduce(sp) ∘ C.
template <Semiring S>
AssocArray<S> triple_product(const AssocArray<S>& b, const SumPartition<S>& sp,
                             const AssocArray<S>& c) {
  detail::require_uniform_parts(sp.parts, "triple_product");
  const auto& a0 = sp.parts.front();
  detail::require_same_semiring(b, a0, "triple_product");
  detail::require_same_semiring(a0, c, "triple_product");
  if (b.col_keys() != a0.row_keys()) {
    throw std::invalid_argument("triple_product: B columns do not match A rows");
  }
  if (c.row_keys() != a0.col_keys()) {
    throw std::invalid_argument("triple_product: C rows do not match A columns");
  }
  return map_reduce_linear(
      sp, [&](const AssocArray<S>& part) { return array_mul(array_mul(b, part), c); });
}

// ⊕ over p of M ⊗ Aₚ (entrywise). Linear in A because ⊗ distributes over ⊕.
template <Semiring S>
AssocArray<S> apply_mask(const AssocArray<S>& m, const SumPartition<S>& sp) {
  detail::require_uniform_parts(sp.parts, "apply_mask");
  const auto& a0 = sp.parts.front();
  detail::require_same_semiring(m, a0, "apply_mask");
  if (m.row_keys() != a0.row_keys() || m.col_keys() != a0.col_keys()) {
    throw std::invalid_argument("apply_mask: mask key sets do not match parts");
  }
  return map_reduce_linear(
      sp, [&](const AssocArray<S>& part) { return ewise_mul(m, part); });
}

}  // namespace semiarray

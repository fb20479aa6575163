#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "semiarray/assoc_array.hpp"
#include "semiarray/partition.hpp"
#include "semiarray/semiring.hpp"

namespace semiarray {

// {0,1}-valued diagonal selector over a column key set.
struct SelectorDiag {
  AssocArray<RealSemiring> diag;
};

// Column partition of one dense layer: W_p = W ∘ I_p, b_p = b ∘ I_p for P
// contiguous-column selectors I_p that sum to the identity diagonal. Because
// the selectors have disjoint support, distinct parts produce nonzero output
// in disjoint column blocks, which is what lets the non-linear ReLU pass
// through the ⊕ of parts unchanged.
struct DnnLayerPartition {
  std::vector<AssocArray<RealSemiring>> weight_parts;
  std::vector<AssocArray<RealSemiring>> bias_parts;
  std::vector<SelectorDiag> selectors;
};

// W is M×N, b is a 1-row vector over W's column keys; P ≤ N. Selector p
// covers sorted-column positions [floor(p*N/P), floor((p+1)*N/P)).
inline DnnLayerPartition make_column_partition(const AssocArray<RealSemiring>& w,
                                               const AssocArray<RealSemiring>& b,
                                               std::size_t P) {
  std::size_t N = w.col_keys().size();
  if (P < 1) throw std::invalid_argument("make_column_partition: P must be >= 1");
  if (P > N) {
    throw std::invalid_argument("make_column_partition: P = " + std::to_string(P) +
                                " exceeds output dimension N = " + std::to_string(N));
  }
  if (b.col_keys() != w.col_keys()) {
    throw std::invalid_argument(
        "make_column_partition: bias columns do not match weight columns");
  }
  if (b.row_keys().size() > 1) {
    throw std::invalid_argument("make_column_partition: bias must have one row");
  }

  auto blocks = detail::block_assignment(w.col_keys(), P);
  RealSemiring real;

  DnnLayerPartition out;
  out.selectors.reserve(P);
  for (std::size_t p = 0; p < P; ++p) {
    AssocArray<RealSemiring> diag(real, w.col_keys(), w.col_keys());
    for (const Key& k : w.col_keys()) {
      if (blocks.at(k) == p) diag.set(k, k, 1.0);
    }
    out.selectors.push_back({std::move(diag)});
  }

  AssocArray<RealSemiring> selector_sum(real, w.col_keys(), w.col_keys());
  for (const auto& sel : out.selectors) selector_sum = ewise_add(selector_sum, sel.diag);
  if (!(selector_sum == identity_diag(real, w.col_keys()))) {
    throw std::logic_error("make_column_partition: selectors do not sum to identity");
  }

  out.weight_parts.reserve(P);
  out.bias_parts.reserve(P);
  for (const auto& sel : out.selectors) {
    out.weight_parts.push_back(array_mul(w, sel.diag));
    out.bias_parts.push_back(array_mul(b, sel.diag));
  }
  return out;
}

// y = Σₚ max(x·W_p + b_p, 0), evaluated per part and summed. x is indexed by
// W's sorted row keys; the result is indexed by W's sorted column keys. Each
// output column is nonzero in at most its owning part and the other parts
// contribute exact floating-point zeros, so the sum equals the unpartitioned
// layer with zero tolerance.
inline std::vector<double> relu_layer(const std::vector<double>& x,
                                      const DnnLayerPartition& layer) {
  if (layer.weight_parts.empty()) {
    throw std::invalid_argument("relu_layer: empty layer partition");
  }
  const auto& w0 = layer.weight_parts.front();
  std::size_t M = w0.row_keys().size();
  std::size_t N = w0.col_keys().size();
  if (x.size() != M) {
    throw std::invalid_argument("relu_layer: input dimension " +
                                std::to_string(x.size()) + " does not match " +
                                std::to_string(M));
  }

  std::map<Key, std::size_t> row_pos;
  std::size_t i = 0;
  for (const Key& k : w0.row_keys()) row_pos[k] = i++;
  std::map<Key, std::size_t> col_pos;
  i = 0;
  for (const Key& k : w0.col_keys()) col_pos[k] = i++;

  std::size_t P = layer.weight_parts.size();
  std::vector<std::vector<double>> per_part(P, std::vector<double>(N, 0.0));
  detail::parallel_for(P, P, [&](std::size_t p) {
    std::vector<double>& acc = per_part[p];
    for (const auto& [kp, v] : layer.weight_parts[p].entries()) {
      acc[col_pos.at(kp.second)] += x[row_pos.at(kp.first)] * v;
    }
    for (const auto& [kp, v] : layer.bias_parts[p].entries()) {
      acc[col_pos.at(kp.second)] += v;
    }
    for (double& a : acc) a = std::max(a, 0.0);
  });

  std::vector<double> y(N, 0.0);
  for (const auto& part : per_part) {
    for (std::size_t c = 0; c < N; ++c) y[c] += part[c];
  }
  return y;
}

}  // namespace semiarray

#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "semiarray/assoc_array.hpp"
#include "semiarray/key.hpp"
#include "semiarray/semiring.hpp"

namespace semiarray {

template <Semiring S>
struct Edge {
  Key src;
  Key dst;
  typename S::value_type weight;
};

// The graph quadruple: adjacency A over V×V, out/in incidence over V×E, and
// the diagonal edge-weight array over E×E, tied together by
//   A = out_incidence ∘ weight_diag ∘ in_incidenceᵀ
// which build_graph_arrays asserts after construction.
template <Semiring S>
struct GraphArrays {
  AssocArray<S> adjacency;
  AssocArray<S> in_incidence;
  AssocArray<S> out_incidence;
  AssocArray<S> weight_diag;
  std::set<Key> vertices;
  std::set<Key> edges;
};

// Edges are keyed by a synthetic "src>dst" string; '>' keeps edge keys out of
// the way of ordinary vertex tokens and reads as a direction.
inline Key edge_key(const Key& src, const Key& dst) {
  return Key{key_to_string(src) + ">" + key_to_string(dst)};
}

template <WeightSemiring S>
GraphArrays<S> build_graph_arrays(const std::vector<Edge<S>>& edge_list, S s) {
  std::set<Key> vertices;
  std::set<Key> edges;
  for (const auto& e : edge_list) {
    if (!s.positive(e.weight)) {
      throw std::invalid_argument("edge " + key_to_string(e.src) + "->" +
                                  key_to_string(e.dst) +
                                  " has nonpositive weight " +
                                  s.to_string(e.weight));
    }
    vertices.insert(e.src);
    vertices.insert(e.dst);
    Key ek = edge_key(e.src, e.dst);
    if (!edges.insert(ek).second) {
      throw std::invalid_argument("duplicate edge " + key_to_string(e.src) +
                                  "->" + key_to_string(e.dst));
    }
  }

  GraphArrays<S> g{AssocArray<S>(s, vertices, vertices),
                   AssocArray<S>(s, vertices, edges),
                   AssocArray<S>(s, vertices, edges),
                   AssocArray<S>(s, edges, edges),
                   std::move(vertices),
                   std::move(edges)};

  for (const auto& e : edge_list) {
    Key ek = edge_key(e.src, e.dst);
    g.adjacency.set(e.src, e.dst, e.weight);
    g.out_incidence.set(e.src, ek, s.one());
    g.in_incidence.set(e.dst, ek, s.one());
    g.weight_diag.set(ek, ek, e.weight);
  }

  AssocArray<S> rebuilt = array_mul(array_mul(g.out_incidence, g.weight_diag),
                                    transpose(g.in_incidence));
  if (!(rebuilt == g.adjacency)) {
    throw std::logic_error("graph factorization identity failed");
  }
  return g;
}

}  // namespace semiarray

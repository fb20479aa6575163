#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "semiarray/assoc_array.hpp"
#include "semiarray/cost.hpp"
#include "semiarray/dual.hpp"
#include "semiarray/graph.hpp"
#include "semiarray/key.hpp"
#include "semiarray/semiring.hpp"

namespace semiarray {

// A vertex string ⟨v1,...,vn⟩, possibly empty. Concatenation is associative
// with the empty string as neutral element; ordering is lexicographic over
// the vertex keys, which fixes serialization order for path sets.
struct PathString {
  std::vector<Key> vertices;

  friend auto operator<=>(const PathString&, const PathString&) = default;

  friend PathString concat(const PathString& a, const PathString& b) {
    PathString out = a;
    out.vertices.insert(out.vertices.end(), b.vertices.begin(), b.vertices.end());
    return out;
  }

  std::string to_string() const {
    std::string out = "<";
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (i) out += ",";
      out += key_to_string(vertices[i]);
    }
    return out + ">";
  }
};

// One element (weight, path set) of the tropical path algebra. Values built
// by the operations keep the invariant "weight = ∞ implies empty path set":
// the additive identity (∞, ∅) is the only infinite-weight value reachable
// from finite-weight inputs, and on that restricted carrier all eight
// semiring laws hold exactly. (On the unrestricted product carrier,
// ⊗-distributivity can fail for values pairing weight ∞ with a nonempty
// path set, which is also why non-edges are stored as no entry rather than
// as (∞, {⟨u,v⟩}).)
struct TropicalPathValue {
  Cost weight = Cost::infinity();
  std::set<PathString> paths;

  friend bool operator==(const TropicalPathValue&, const TropicalPathValue&) = default;
};

// Raised when an operation would produce a path set larger than the guard.
// The result is never silently truncated.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// ⊕̃ keeps the strictly smaller weight's pair and unions path sets on exact
// weight ties; ⊗̃ adds weights and concatenates path sets pairwise. A guard
// bounds path-set growth: equal-weight path counts can grow exponentially.
struct TropicalPathSemiring {
  using value_type = TropicalPathValue;

  std::size_t max_paths = 10000;
  // Vertex alphabet used only by sample() for randomized law checks.
  std::vector<Key> sample_vertices = {Key{std::string("a")}, Key{std::string("b")},
                                      Key{std::string("c")}, Key{std::string("d")}};

  value_type add(const value_type& x, const value_type& y) const {
    if (x.weight < y.weight) return x;
    if (y.weight < x.weight) return y;
    value_type out{x.weight, x.paths};
    out.paths.insert(y.paths.begin(), y.paths.end());
    check_capacity(out, x, y, "add");
    return out;
  }

  value_type mul(const value_type& x, const value_type& y) const {
    value_type out;
    out.weight = x.weight + y.weight;
    for (const auto& k : x.paths) {
      for (const auto& l : y.paths) {
        out.paths.insert(concat(k, l));
        check_capacity(out, x, y, "mul");
      }
    }
    return out;
  }

  value_type zero() const { return {Cost::infinity(), {}}; }
  value_type one() const { return {Cost(0), {PathString{}}}; }

  bool eq(const value_type& x, const value_type& y) const { return x == y; }

  value_type sample(Rng& rng) const {
    std::uint64_t w = rng.below(12);
    if (w == 11) return zero();
    value_type out;
    out.weight = Cost(static_cast<double>(w));
    std::size_t count = rng.below(4);
    for (std::size_t i = 0; i < count; ++i) {
      PathString p;
      std::size_t len = rng.below(4);
      for (std::size_t j = 0; j < len; ++j) {
        p.vertices.push_back(sample_vertices[rng.below(sample_vertices.size())]);
      }
      out.paths.insert(std::move(p));
    }
    return out;
  }

  std::string name() const { return "tropical-path"; }

  std::string to_string(const value_type& v) const {
    std::string out = "(" + v.weight.to_string() + ",{";
    std::size_t i = 0;
    for (const auto& p : v.paths) {
      if (i++) out += ",";
      out += p.to_string();
    }
    return out + "})";
  }

  friend bool operator==(const TropicalPathSemiring&, const TropicalPathSemiring&) = default;

 private:
  std::string describe(const value_type& v) const {
    std::string out = "(weight " + v.weight.to_string() + ", " +
                      std::to_string(v.paths.size()) + " paths";
    std::size_t shown = 0;
    for (const auto& p : v.paths) {
      if (shown == 3) {
        out += ", ...";
        break;
      }
      out += (shown ? ", " : ": ") + p.to_string();
      ++shown;
    }
    return out + ")";
  }

  void check_capacity(const value_type& result, const value_type& x,
                      const value_type& y, const char* op) const {
    if (result.paths.size() > max_paths) {
      throw CapacityError("tropical-path " + std::string(op) + " capacity " +
                          std::to_string(max_paths) + " exceeded: " + describe(x) +
                          " with " + describe(y));
    }
  }
};

static_assert(Semiring<TropicalPathSemiring>);

// Ã(u,v) = (w(u,v), {⟨u,v⟩}) + i (w(u,v), {⟨v⟩}) at edges. Non-edges get no
// entry: storing the literal definition there would pair weight ∞ with a
// nonempty path set and pollute tie-unions at ∞ (see TropicalPathValue).
inline AssocArray<DualSemiring<TropicalPathSemiring>> build_path_adjacency(
    const GraphArrays<MinPlusSemiring>& g, std::size_t max_paths = 10000) {
  DualSemiring<TropicalPathSemiring> ds{TropicalPathSemiring{max_paths}};
  AssocArray<DualSemiring<TropicalPathSemiring>> out(ds, g.vertices, g.vertices);
  for (const auto& [kp, w] : g.adjacency.entries()) {
    TropicalPathValue re{w, {PathString{{kp.first, kp.second}}}};
    TropicalPathValue im{w, {PathString{{kp.second}}}};
    out.set(kp.first, kp.second, DualValue<TropicalPathValue>{std::move(re), std::move(im)});
  }
  return out;
}

// B₁ = Re(Ã), B_{n+1} = B_n ⊕̃.⊗̃ Im(Ã). B_n(u,v) holds the least weight
// among n-hop u→v paths and the complete set of paths attaining it; an
// absent entry means no n-hop path exists.
inline AssocArray<TropicalPathSemiring> optimal_nhop_paths(
    const GraphArrays<MinPlusSemiring>& g, std::size_t n,
    std::size_t max_paths = 10000) {
  if (n < 1) throw std::invalid_argument("optimal_nhop_paths: n must be >= 1");
  auto lifted = build_path_adjacency(g, max_paths);
  AssocArray<TropicalPathSemiring> b = re_part(lifted);
  AssocArray<TropicalPathSemiring> step = im_part(lifted);
  for (std::size_t k = 1; k < n; ++k) b = array_mul(b, step);
  return b;
}

// Independent oracle: exhaustively enumerates the edge-connected vertex
// sequences u, w1, ..., w_{n-1}, v and keeps the minimum-weight ones.
// Deliberately shares nothing with the semiring machinery above.
inline TropicalPathValue brute_force_paths(const GraphArrays<MinPlusSemiring>& g,
                                           const Key& u, const Key& v,
                                           std::size_t n,
                                           std::size_t budget = 10000000) {
  if (n < 1) throw std::invalid_argument("brute_force_paths: n must be >= 1");

  std::map<Key, std::vector<std::pair<Key, double>>> adj;
  for (const auto& [kp, w] : g.adjacency.entries()) {
    adj[kp.first].emplace_back(kp.second, w.value());
  }

  TropicalPathValue best;
  std::size_t visited = 0;
  std::vector<Key> walk{u};

  auto dfs = [&](auto&& self, const Key& at, std::size_t hops_left,
                 double weight) -> void {
    if (++visited > budget) {
      throw std::runtime_error("brute_force_paths: enumeration budget exceeded");
    }
    if (hops_left == 0) {
      if (!(at == v)) return;
      Cost w(weight);
      if (w < best.weight) {
        best.weight = w;
        best.paths.clear();
        best.paths.insert(PathString{walk});
      } else if (w == best.weight) {
        best.paths.insert(PathString{walk});
      }
      return;
    }
    auto it = adj.find(at);
    if (it == adj.end()) return;
    for (const auto& [next, w] : it->second) {
      walk.push_back(next);
      self(self, next, hops_left - 1, weight + w);
      walk.pop_back();
    }
  };
  dfs(dfs, u, n, 0.0);
  return best;
}

}  // namespace semiarray

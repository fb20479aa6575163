#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "json.hpp"
#include "semiarray/cost.hpp"
#include "semiarray/key.hpp"
#include "semiarray/path.hpp"
#include "semiarray/provenance.hpp"
#include "semiarray/semiring.hpp"
#include "semiarray/stream.hpp"
#include "semiarray/traffic.hpp"

// JSON shaping shared by the CLI and the fixture generator, so expected
// fixture files and live command output can only differ in computed values.
namespace semiarray::jsonfmt {

using json = nlohmann::ordered_json;

inline json cost_json(const Cost& c) {
  if (c.is_infinite()) return json("inf");
  double v = c.value();
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    return json(static_cast<std::int64_t>(v));
  }
  return json(v);
}

inline json value_json(const NaturalSemiring&, std::uint64_t v) { return json(v); }
inline json value_json(const MinPlusSemiring&, const Cost& v) { return cost_json(v); }
inline json value_json(const MaxMinSemiring&, const Cost& v) { return cost_json(v); }

inline json key_json(const Key& k) { return json(key_to_string(k)); }

inline json stats_json(const TrafficStats& st) {
  json j;
  j["total_packets"] = st.total_packets;
  j["unique_sources"] = st.unique_sources;
  j["unique_destinations"] = st.unique_destinations;
  j["unique_links"] = st.unique_links;
  j["max_link_packets"] = st.max_link_packets;
  return j;
}

inline json combined_stats_json(const CombinedTrafficStats& st, TrafficMode mode) {
  json j;
  j["total_packets"] = st.total_packets;
  if (mode == TrafficMode::Source) {
    j["unique_sources"] = st.mode_uniques;
  } else {
    j["unique_destinations"] = st.mode_uniques;
  }
  j["unique_links"] = st.unique_links;
  j["max_link_packets"] = st.max_link_packets;
  return j;
}

inline json paths_line(const Key& src, const Key& dst, std::size_t hops,
                       const TropicalPathValue& v) {
  json j;
  j["src"] = key_to_string(src);
  j["dst"] = key_to_string(dst);
  j["hops"] = hops;
  j["weight"] = cost_json(v.weight);
  json paths = json::array();
  for (const auto& p : v.paths) {
    json path = json::array();
    for (const auto& k : p.vertices) path.push_back(key_to_string(k));
    paths.push_back(std::move(path));
  }
  j["paths"] = std::move(paths);
  return j;
}

template <Semiring B>
json provenance_line(const B& base, const Key& row, const Key& col,
                     const ProvenanceSet<typename B::value_type>& set) {
  json j;
  j["row"] = key_to_string(row);
  j["col"] = key_to_string(col);
  json contributors = json::array();
  for (const auto& t : set) {
    json c;
    c["keys"] = key_to_string(t.key);
    c["a"] = value_json(base, t.v1);
    c["b"] = value_json(base, t.v2);
    c["prod"] = value_json(base, t.v3);
    contributors.push_back(std::move(c));
  }
  j["contributors"] = std::move(contributors);
  return j;
}

inline json window_line(const WindowedMatrix& w) {
  json j;
  j["level"] = w.level;
  j["index"] = w.index;
  j["nnz"] = nnz(w.matrix);
  j["stats"] = stats_json(compute_traffic_stats(w.matrix));
  j["partial"] = w.partial;
  return j;
}

}  // namespace semiarray::jsonfmt

#include "semiarray/traffic.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace semiarray {

std::string traffic_mode_name(TrafficMode m) {
  return m == TrafficMode::Source ? "source" : "destination";
}

TrafficMode parse_traffic_mode(const std::string& name) {
  if (name == "source") return TrafficMode::Source;
  if (name == "destination") return TrafficMode::Destination;
  throw std::invalid_argument("unknown mode '" + name +
                              "' (valid: source, destination)");
}

TrafficStats compute_traffic_stats(const AssocArray<NaturalSemiring>& a) {
  TrafficStats st;
  std::set<Key> sources;
  std::set<Key> destinations;
  for (const auto& [kp, v] : a.entries()) {
    st.total_packets += v;
    st.max_link_packets = std::max(st.max_link_packets, v);
    sources.insert(kp.first);
    destinations.insert(kp.second);
  }
  st.unique_sources = sources.size();
  st.unique_destinations = destinations.size();
  st.unique_links = nnz(a);
  return st;
}

TrafficReport traffic_stats(const SumPartition<NaturalSemiring>& parts,
                            TrafficMode mode) {
  Strategy expected =
      mode == TrafficMode::Source ? Strategy::RowBlock : Strategy::ColBlock;
  if (parts.strategy != expected) {
    throw std::invalid_argument(
        "traffic_stats: mode '" + traffic_mode_name(mode) +
        "' requires strategy '" + strategy_name(expected) + "', got '" +
        strategy_name(parts.strategy) + "'");
  }

  TrafficReport report;
  report.mode = mode;
  report.whole = compute_traffic_stats(reduce(parts));

  report.per_part.resize(parts.parts.size());
  detail::parallel_for(parts.parts.size(), parts.parts.size(), [&](std::size_t p) {
    report.per_part[p] = compute_traffic_stats(parts.parts[p]);
  });

  for (const auto& st : report.per_part) {
    report.combined.total_packets += st.total_packets;
    report.combined.mode_uniques += mode == TrafficMode::Source
                                        ? st.unique_sources
                                        : st.unique_destinations;
    report.combined.unique_links += st.unique_links;
    report.combined.max_link_packets =
        std::max(report.combined.max_link_packets, st.max_link_packets);
  }

  std::size_t whole_mode_uniques = mode == TrafficMode::Source
                                       ? report.whole.unique_sources
                                       : report.whole.unique_destinations;
  report.combined_matches =
      report.combined.total_packets == report.whole.total_packets &&
      report.combined.mode_uniques == whole_mode_uniques &&
      report.combined.unique_links == report.whole.unique_links &&
      report.combined.max_link_packets == report.whole.max_link_packets;
  return report;
}

}  // namespace semiarray

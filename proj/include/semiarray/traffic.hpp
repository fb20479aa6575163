#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semiarray/assoc_array.hpp"
#include "semiarray/partition.hpp"
#include "semiarray/semiring.hpp"

namespace semiarray {

// Aggregate statistics of one traffic matrix A(src, dst) = packet count.
struct TrafficStats {
  std::uint64_t total_packets = 0;
  std::size_t unique_sources = 0;
  std::size_t unique_destinations = 0;
  std::size_t unique_links = 0;
  std::uint64_t max_link_packets = 0;

  friend bool operator==(const TrafficStats&, const TrafficStats&) = default;
};

enum class TrafficMode { Source, Destination };

std::string traffic_mode_name(TrafficMode m);
TrafficMode parse_traffic_mode(const std::string& name);

// Uniques count distinct keys in the support, not in the (possibly larger)
// key sets: a host that sent nothing is not a source.
TrafficStats compute_traffic_stats(const AssocArray<NaturalSemiring>& a);

// Per-part stats combined by ⊕: sums for the counts that are additive under
// the chosen partitioning, max for max_link_packets. With source (row-block)
// partitioning each source and each link lives in exactly one part, so those
// uniques add; destinations can span parts and are not additive (dually for
// destination mode), so only the mode-side unique count is combined.
struct CombinedTrafficStats {
  std::uint64_t total_packets = 0;
  std::size_t mode_uniques = 0;
  std::size_t unique_links = 0;
  std::uint64_t max_link_packets = 0;

  friend bool operator==(const CombinedTrafficStats&, const CombinedTrafficStats&) = default;
};

struct TrafficReport {
  TrafficMode mode = TrafficMode::Source;
  TrafficStats whole;
  std::vector<TrafficStats> per_part;
  CombinedTrafficStats combined;
  bool combined_matches = false;
};

// Computes whole-array stats on reduce(parts) and per-part stats, combines
// the per-part stats, and records whether the combination agrees with the
// whole. Source mode requires a row-block partition, destination mode a
// col-block partition; anything else is a mode/strategy mismatch error.
TrafficReport traffic_stats(const SumPartition<NaturalSemiring>& parts,
                            TrafficMode mode);

}  // namespace semiarray

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json_format.hpp"
#include "semiarray/graph.hpp"
#include "semiarray/path.hpp"
#include "semiarray/rng.hpp"

// Deterministic generator for the CLI test fixtures. Every .expected file is
// computed here with plain loops and maps (or the brute-force path oracle),
// never through the partitioned/matrix pipeline the CLI exercises, so a
// regression in that pipeline cannot regenerate itself into the fixtures.

namespace {

using namespace semiarray;
using jsonfmt::json;

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string paths_fixture(const std::vector<std::tuple<Key, Key, double>>& edges,
                          const fs::path& dir, const std::string& name) {
  std::string tsv;
  for (const auto& [u, v, w] : edges) {
    tsv += key_to_string(u) + "\t" + key_to_string(v) + "\t" +
           Cost(w).to_string() + "\n";
  }
  write_file(dir / (name + ".tsv"), tsv);
  return tsv;
}

void paths_expected(const std::vector<std::tuple<Key, Key, double>>& edges,
                    const Key& src, const Key& dst, std::size_t hops,
                    const fs::path& dir, const std::string& name) {
  std::vector<Edge<MinPlusSemiring>> es;
  for (const auto& [u, v, w] : edges) es.push_back({u, v, Cost(w)});
  auto g = build_graph_arrays(es, MinPlusSemiring{});
  TropicalPathValue oracle = brute_force_paths(g, src, dst, hops);
  write_file(dir / (name + ".expected"),
             jsonfmt::paths_line(src, dst, hops, oracle).dump() + "\n");
}

// Hand-rolled traffic aggregation: link map in, TrafficStats out.
using LinkMap = std::map<std::pair<Key, Key>, std::uint64_t>;

TrafficStats link_stats(const LinkMap& links) {
  TrafficStats st;
  std::set<Key> srcs;
  std::set<Key> dsts;
  for (const auto& [kp, count] : links) {
    st.total_packets += count;
    srcs.insert(kp.first);
    dsts.insert(kp.second);
    if (count > st.max_link_packets) st.max_link_packets = count;
  }
  st.unique_sources = srcs.size();
  st.unique_destinations = dsts.size();
  st.unique_links = links.size();
  return st;
}

void traffic_fixture(const fs::path& dir) {
  // 20 packets over 5 sources and 5 destinations, duplicates included.
  Rng rng(7);
  std::vector<std::string> srcs{"alpha", "bravo", "charlie", "delta", "echo"};
  std::vector<std::string> dsts{"web", "dns", "mail", "ssh", "ntp"};
  std::string tsv;
  LinkMap links;
  for (int i = 0; i < 20; ++i) {
    Key s{srcs[rng.below(srcs.size())]};
    Key d{dsts[rng.below(dsts.size())]};
    std::uint64_t count = 1 + rng.below(5);
    tsv += key_to_string(s) + "\t" + key_to_string(d) + "\t" +
           std::to_string(count) + "\n";
    links[{s, d}] += count;
  }
  write_file(dir / "traffic_20.tsv", tsv);

  // Expected `stats` output for a given mode and part count, recomputed from
  // the link map with contiguous index-block splitting over sorted keys.
  auto stats_expected = [&](TrafficMode mode, std::size_t parts,
                            const std::string& name) {
    std::set<Key> side;
    for (const auto& [kp, count] : links) {
      side.insert(mode == TrafficMode::Source ? kp.first : kp.second);
    }
    std::vector<Key> order(side.begin(), side.end());
    std::map<Key, std::size_t> owner;
    for (std::size_t i = 0; i < order.size(); ++i) {
      owner[order[i]] = i * parts / order.size();
    }

    std::vector<LinkMap> part_links(parts);
    for (const auto& [kp, count] : links) {
      const Key& k = mode == TrafficMode::Source ? kp.first : kp.second;
      part_links[owner[k]][kp] += count;
    }

    TrafficStats whole = link_stats(links);
    CombinedTrafficStats combined;
    json parts_json = json::array();
    for (const auto& pl : part_links) {
      TrafficStats st = link_stats(pl);
      parts_json.push_back(jsonfmt::stats_json(st));
      combined.total_packets += st.total_packets;
      combined.mode_uniques += mode == TrafficMode::Source
                                   ? st.unique_sources
                                   : st.unique_destinations;
      combined.unique_links += st.unique_links;
      if (st.max_link_packets > combined.max_link_packets) {
        combined.max_link_packets = st.max_link_packets;
      }
    }

    json j;
    j["mode"] = traffic_mode_name(mode);
    j["partitions"] = parts;
    j["whole"] = jsonfmt::stats_json(whole);
    j["parts"] = std::move(parts_json);
    j["combined"] = jsonfmt::combined_stats_json(combined, mode);
    j["combined_matches"] = true;
    write_file(dir / name, j.dump() + "\n");
  };
  stats_expected(TrafficMode::Source, 5, "traffic_20.stats_src_p5.expected");
  stats_expected(TrafficMode::Destination, 3, "traffic_20.stats_dst_p3.expected");
}

using IntMat = std::map<std::pair<int, int>, std::uint64_t>;

std::string int_mat_tsv(const IntMat& m) {
  std::string out;
  for (const auto& [kp, v] : m) {
    out += std::to_string(kp.first) + "\t" + std::to_string(kp.second) + "\t" +
           std::to_string(v) + "\n";
  }
  return out;
}

// Double-loop contributor derivation plus recovered totals for A.B over the
// counting semiring, written as the exact line sequence the CLI must print.
void prov_expected(const IntMat& a, const IntMat& b, int dim,
                   const fs::path& dir, const std::string& name) {
  auto at = [](const IntMat& m, int r, int c) -> std::uint64_t {
    auto it = m.find({r, c});
    return it == m.end() ? 0 : it->second;
  };

  NaturalSemiring nat;
  std::string out;
  json recovered = json::array();
  for (int r = 1; r <= dim; ++r) {
    for (int c = 1; c <= dim; ++c) {
      ProvenanceSet<std::uint64_t> set;
      std::uint64_t total = 0;
      for (int k = 1; k <= dim; ++k) {
        std::uint64_t av = at(a, r, k);
        std::uint64_t bv = at(b, k, c);
        if (av == 0 || bv == 0) continue;
        set.insert({Key{std::int64_t(k)}, av, bv, av * bv});
        total += av * bv;
      }
      if (set.empty()) continue;
      out += jsonfmt::provenance_line(nat, Key{std::int64_t(r)},
                                      Key{std::int64_t(c)}, set)
                 .dump() +
             "\n";
      json e;
      e["row"] = std::to_string(r);
      e["col"] = std::to_string(c);
      e["value"] = total;
      recovered.push_back(std::move(e));
    }
  }
  json summary;
  summary["recovered"] = std::move(recovered);
  summary["matches_direct"] = true;
  out += summary.dump() + "\n";
  write_file(dir / name, out);
}

void provenance_fixture(const fs::path& dir) {
  // Two small factors with one cancellation-free product per entry.
  IntMat a{{{1, 1}, 1}, {{1, 2}, 2}, {{2, 2}, 3}};
  IntMat b{{{1, 1}, 4}, {{2, 1}, 5}, {{2, 2}, 6}};
  write_file(dir / "prov_a.tsv", int_mat_tsv(a));
  write_file(dir / "prov_b.tsv", int_mat_tsv(b));
  prov_expected(a, b, 2, dir, "prov.expected");

  // An identity right factor: every entry attributes to its own column.
  IntMat ident{{{1, 1}, 1}, {{2, 2}, 1}};
  write_file(dir / "prov_ident_b.tsv", int_mat_tsv(ident));
  prov_expected(a, ident, 2, dir, "prov_ident.expected");

  write_file(dir / "empty.tsv", "");
  prov_expected(IntMat{}, b, 2, dir, "prov_empty.expected");
}

struct RawEvent {
  Key src;
  Key dst;
  std::uint64_t count;
  double ts;
};

json window_json(std::size_t level, std::size_t index,
                 const std::vector<RawEvent>& slice, bool partial) {
  LinkMap links;
  for (const auto& e : slice) links[{e.src, e.dst}] += e.count;
  json j;
  j["level"] = level;
  j["index"] = index;
  j["nnz"] = links.size();
  j["stats"] = jsonfmt::stats_json(link_stats(links));
  j["partial"] = partial;
  return j;
}

void stream_fixtures(const fs::path& dir) {
  // Four events, one per window (m=1), three levels: the pairwise hierarchy
  // emits 0.0, 0.1, 1.0, 0.2, 0.3, 1.1, 2.0 in that order.
  std::vector<RawEvent> ev{{Key{std::int64_t(1)}, Key{std::int64_t(2)}, 1, 0.0},
                           {Key{std::int64_t(2)}, Key{std::int64_t(3)}, 1, 1.0},
                           {Key{std::int64_t(1)}, Key{std::int64_t(2)}, 2, 2.0},
                           {Key{std::int64_t(3)}, Key{std::int64_t(1)}, 1, 3.0}};
  std::string tsv;
  for (const auto& e : ev) {
    tsv += key_to_string(e.src) + "\t" + key_to_string(e.dst) + "\t" +
           std::to_string(e.count) + "\t" + std::to_string(e.ts) + "\n";
  }
  write_file(dir / "stream_small.tsv", tsv);

  auto slice = [&](std::size_t first, std::size_t last) {
    return std::vector<RawEvent>(ev.begin() + first, ev.begin() + last + 1);
  };
  std::string out;
  out += window_json(0, 0, slice(0, 0), false).dump() + "\n";
  out += window_json(0, 1, slice(1, 1), false).dump() + "\n";
  out += window_json(1, 0, slice(0, 1), false).dump() + "\n";
  out += window_json(0, 2, slice(2, 2), false).dump() + "\n";
  out += window_json(0, 3, slice(3, 3), false).dump() + "\n";
  out += window_json(1, 1, slice(2, 3), false).dump() + "\n";
  out += window_json(2, 0, slice(0, 3), false).dump() + "\n";
  write_file(dir / "stream_small.expected", out);

  // Time windows with a silent middle slot: [0,1) holds one event, [1,2) is
  // an explicit empty window, the open [2,3) window flushes as a partial.
  std::vector<RawEvent> tev{{Key{"a"}, Key{"b"}, 3, 0.5},
                            {Key{"b"}, Key{"c"}, 1, 2.5}};
  std::string ttsv;
  for (const auto& e : tev) {
    ttsv += key_to_string(e.src) + "\t" + key_to_string(e.dst) + "\t" +
            std::to_string(e.count) + "\t" + std::to_string(e.ts) + "\n";
  }
  write_file(dir / "stream_gap.tsv", ttsv);

  std::string tout;
  tout += window_json(0, 0, {tev[0]}, false).dump() + "\n";
  tout += window_json(0, 1, {}, false).dump() + "\n";
  tout += window_json(1, 0, {tev[0]}, false).dump() + "\n";
  tout += window_json(0, 2, {tev[1]}, true).dump() + "\n";
  write_file(dir / "stream_gap.expected", tout);

  // Timestamp order violation for the usage-error exit path.
  write_file(dir / "events_bad_order.tsv", "a\tb\t1\t5.0\nb\tc\t1\t4.0\n");
}

void misc_fixtures(const fs::path& dir) {
  write_file(dir / "triples_bad.tsv", "1\t2\t3\n4\t5\n");
  write_file(dir / "config_p4.cfg",
             "# partition settings\npartitions=4\nmode=destination\nseed=9\n");

  // Hypersparse bench input: 1000 distinct links in a 10^4 key space.
  Rng rng(11);
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> cells;
  while (cells.size() < 1000) {
    cells[{rng.below(10000), rng.below(10000)}] = 1 + rng.below(9);
  }
  std::string tsv;
  for (const auto& [kp, v] : cells) {
    tsv += std::to_string(kp.first) + "\t" + std::to_string(kp.second) + "\t" +
           std::to_string(v) + "\n";
  }
  write_file(dir / "bench_1k.tsv", tsv);
}

}  // namespace

int main(int argc, char** argv) {
  fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::path("tests/fixtures");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    std::cerr << "cannot create " << dir << ": " << ec.message() << "\n";
    return 1;
  }
  try {
    std::vector<std::tuple<Key, Key, double>> diamond{
        {Key{std::int64_t(1)}, Key{std::int64_t(2)}, 1},
        {Key{std::int64_t(1)}, Key{std::int64_t(3)}, 1},
        {Key{std::int64_t(2)}, Key{std::int64_t(4)}, 1},
        {Key{std::int64_t(3)}, Key{std::int64_t(4)}, 1}};
    paths_fixture(diamond, dir, "paths_diamond");
    paths_expected(diamond, Key{std::int64_t(1)}, Key{std::int64_t(4)}, 2, dir,
                   "paths_diamond");

    std::vector<std::tuple<Key, Key, double>> chain{
        {Key{std::int64_t(1)}, Key{std::int64_t(2)}, 2},
        {Key{std::int64_t(2)}, Key{std::int64_t(3)}, 3}};
    paths_fixture(chain, dir, "paths_chain");
    paths_expected(chain, Key{std::int64_t(1)}, Key{std::int64_t(3)}, 2, dir,
                   "paths_chain");

    std::vector<std::tuple<Key, Key, double>> edge{
        {Key{std::int64_t(1)}, Key{std::int64_t(2)}, 5}};
    paths_fixture(edge, dir, "paths_edge");
    paths_expected(edge, Key{std::int64_t(1)}, Key{std::int64_t(2)}, 1, dir,
                   "paths_edge");

    std::vector<std::tuple<Key, Key, double>> split{
        {Key{std::int64_t(1)}, Key{std::int64_t(2)}, 1},
        {Key{std::int64_t(3)}, Key{std::int64_t(4)}, 2}};
    paths_fixture(split, dir, "paths_split");
    paths_expected(split, Key{std::int64_t(1)}, Key{std::int64_t(4)}, 1, dir,
                   "paths_split");

    traffic_fixture(dir);
    provenance_fixture(dir);
    stream_fixtures(dir);
    misc_fixtures(dir);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  std::cout << "fixtures written to " << dir << "\n";
  return 0;
}

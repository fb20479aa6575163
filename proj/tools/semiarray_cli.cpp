#include <chrono>
#include <concepts>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json_format.hpp"
#include "semiarray/axioms.hpp"
#include "semiarray/dnn.hpp"
#include "semiarray/graph.hpp"
#include "semiarray/io.hpp"
#include "semiarray/names.hpp"
#include "semiarray/partition.hpp"
#include "semiarray/path.hpp"
#include "semiarray/provenance.hpp"
#include "semiarray/stream.hpp"
#include "semiarray/traffic.hpp"

// Exit codes: 0 success, 1 verification/property failure, 2 usage/input
// error. Stdout carries JSON lines only; diagnostics go to stderr.

namespace {

using namespace semiarray;
using jsonfmt::json;

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsageError = 2;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  return in;
}

// Output sink: stdout by default, --output file otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open output file: " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// `key=value` lines for the partition-facing settings; flags given on the
// command line take precedence over the file.
struct ConfigFile {
  std::map<std::string, std::string> values;

  static ConfigFile load(const std::string& path) {
    ConfigFile cfg;
    if (path.empty()) return cfg;
    std::ifstream in = open_input(path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": expected key=value, got: " + line);
      }
      std::string key = line.substr(0, eq);
      if (key != "partitions" && key != "strategy" && key != "seed" && key != "mode") {
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": unknown key '" + key +
                                    "' (valid: partitions, strategy, seed, mode)");
      }
      cfg.values[key] = line.substr(eq + 1);
    }
    return cfg;
  }

  void apply(const CLI::App& cmd, const std::string& flag, const std::string& key,
             std::string& target) const {
    auto it = values.find(key);
    if (it != values.end() && cmd.count(flag) == 0) target = it->second;
  }
  template <std::integral T>
  void apply(const CLI::App& cmd, const std::string& flag, const std::string& key,
             T& target) const {
    auto it = values.find(key);
    if (it != values.end() && cmd.count(flag) == 0) {
      target = static_cast<T>(std::stoull(it->second));
    }
  }
};

int run_check(const std::string& name, std::size_t trials, std::uint64_t seed,
              Sink& sink) {
  AxiomReport report = with_semiring(
      name, [&](auto s) { return axiom_check(s, trials, seed); });

  json j;
  j["semiring"] = name;
  j["trials"] = report.trials;
  j["seed"] = seed;
  j["failure_count"] = report.failures.size();
  json failures = json::array();
  for (const auto& f : report.failures) {
    json fj;
    fj["law"] = f.law;
    fj["counterexample"] = f.counterexample;
    failures.push_back(std::move(fj));
  }
  j["failures"] = std::move(failures);
  sink.out() << j.dump() << "\n";
  return report.ok() ? kOk : kVerificationFailure;
}

int run_stats(const std::string& input, std::size_t partitions,
              const std::string& mode_name, const std::string& strategy_name_opt,
              std::uint64_t seed, Sink& sink) {
  TrafficMode mode = parse_traffic_mode(mode_name);
  Strategy strategy =
      mode == TrafficMode::Source ? Strategy::RowBlock : Strategy::ColBlock;
  if (!strategy_name_opt.empty() && parse_strategy(strategy_name_opt) != strategy) {
    throw std::invalid_argument("mode '" + mode_name + "' requires strategy '" +
                                strategy_name(strategy) + "', got '" +
                                strategy_name_opt + "'");
  }

  std::ifstream in = open_input(input);
  auto triples = read_triples_tsv(in, NaturalSemiring{});
  auto a = from_triples(triples, NaturalSemiring{});
  auto parts = partition(a, partitions, strategy, seed);
  TrafficReport report = traffic_stats(parts, mode);

  json j;
  j["mode"] = traffic_mode_name(report.mode);
  j["partitions"] = partitions;
  j["whole"] = jsonfmt::stats_json(report.whole);
  json parts_json = json::array();
  for (const auto& st : report.per_part) parts_json.push_back(jsonfmt::stats_json(st));
  j["parts"] = std::move(parts_json);
  j["combined"] = jsonfmt::combined_stats_json(report.combined, report.mode);
  j["combined_matches"] = report.combined_matches;
  sink.out() << j.dump() << "\n";
  return report.combined_matches ? kOk : kVerificationFailure;
}

int run_paths(const std::string& input, const std::string& src_name,
              const std::string& dst_name, std::size_t hops, Sink& sink) {
  std::ifstream in = open_input(input);
  auto triples = read_triples_tsv(in, MinPlusSemiring{});
  std::vector<Edge<MinPlusSemiring>> edges;
  edges.reserve(triples.size());
  for (const auto& t : triples) edges.push_back({t.row, t.col, t.value});
  auto g = build_graph_arrays(edges, MinPlusSemiring{});

  Key src = parse_key(src_name);
  Key dst = parse_key(dst_name);
  if (!g.vertices.count(src)) {
    throw std::invalid_argument("unknown vertex: " + src_name);
  }
  if (!g.vertices.count(dst)) {
    throw std::invalid_argument("unknown vertex: " + dst_name);
  }

  auto b = optimal_nhop_paths(g, hops);
  sink.out() << jsonfmt::paths_line(src, dst, hops, b.at(src, dst)).dump() << "\n";
  return kOk;
}

template <Semiring B>
int run_provenance_with(B base, const std::string& input_a,
                        const std::string& input_b, Sink& sink) {
  std::ifstream ina = open_input(input_a);
  auto a = from_triples(read_triples_tsv(ina, base), base);
  std::ifstream inb = open_input(input_b);
  auto b = from_triples(read_triples_tsv(inb, base), base);

  // B's rows must cover A's columns for the product to conform; the CLI
  // widens both to their union so disjoint-support fixtures still conform.
  std::set<Key> inner = a.col_keys();
  inner.insert(b.row_keys().begin(), b.row_keys().end());
  a = from_triples(a.to_triples(), base, a.row_keys(), inner);
  b = from_triples(b.to_triples(), base, inner, b.col_keys());

  std::set<Key> vertices = inner;
  vertices.insert(a.row_keys().begin(), a.row_keys().end());
  vertices.insert(b.col_keys().begin(), b.col_keys().end());
  auto ps = provenance_semiring(base, vertices);

  auto c = provenance_product(a, b, ps);
  for (const auto& [kp, set] : c.entries()) {
    sink.out() << jsonfmt::provenance_line(base, kp.first, kp.second, set).dump()
               << "\n";
  }

  auto recovered = recover_product(c);
  auto direct = array_mul(a, b);
  bool matches = recovered == direct;

  json summary;
  json entries = json::array();
  for (const auto& [kp, v] : recovered.entries()) {
    json e;
    e["row"] = key_to_string(kp.first);
    e["col"] = key_to_string(kp.second);
    e["value"] = jsonfmt::value_json(base, v);
    entries.push_back(std::move(e));
  }
  summary["recovered"] = std::move(entries);
  summary["matches_direct"] = matches;
  sink.out() << summary.dump() << "\n";
  if (!matches) {
    std::cerr << "provenance: recovered product does not match the direct product\n";
  }
  return matches ? kOk : kVerificationFailure;
}

int run_provenance(const std::string& semiring_name, const std::string& input_a,
                   const std::string& input_b, Sink& sink) {
  auto stock = stock_semiring(semiring_name);
  return std::visit(
      [&](auto base) { return run_provenance_with(base, input_a, input_b, sink); },
      stock);
}

int run_stream(const std::string& input, const std::string& mode_name,
               std::size_t window_m, double window_t, std::size_t levels,
               bool verify, Sink& sink) {
  StreamConfig cfg;
  cfg.mode = parse_stream_mode(mode_name);
  cfg.m = window_m;
  cfg.t = window_t;
  cfg.dt = cfg.mode == StreamMode::FixedM ? 1.0 : window_t;
  cfg.levels = levels;

  std::ifstream in = open_input(input);
  auto events = read_events_tsv(in);

  StreamEngine engine(cfg);
  std::vector<WindowedMatrix> windows;
  for (const auto& e : events) {
    auto done = engine.ingest(e);
    windows.insert(windows.end(), done.begin(), done.end());
  }
  auto flushed = engine.flush();
  windows.insert(windows.end(), flushed.begin(), flushed.end());

  for (const auto& w : windows) sink.out() << jsonfmt::window_line(w).dump() << "\n";

  if (!verify) return kOk;

  // Recompute every window from its raw event slice and require exact
  // equality with the engine's matrix.
  bool ok = true;
  for (const auto& w : windows) {
    std::vector<Triple<NaturalSemiring>> slice;
    if (cfg.mode == StreamMode::FixedM) {
      if (w.event_count > 0) {
        for (std::size_t i = w.span.first_ordinal; i <= w.span.last_ordinal; ++i) {
          slice.push_back({events[i].src, events[i].dst, events[i].count});
        }
      }
    } else {
      for (const auto& e : events) {
        if (e.timestamp >= w.span.first_timestamp &&
            e.timestamp < w.span.last_timestamp) {
          slice.push_back({e.src, e.dst, e.count});
        }
      }
    }
    auto batch = from_triples(slice, NaturalSemiring{});
    if (!(batch == w.matrix)) {
      std::cerr << "stream verify: level " << w.level << " index " << w.index
                << " does not match its raw event slice\n";
      ok = false;
    }
  }
  return ok ? kOk : kVerificationFailure;
}

int run_bench(const std::string& input, const std::vector<std::size_t>& partitions,
              const std::string& strategy_name_str, std::uint64_t seed, Sink& sink) {
  Strategy strategy = parse_strategy(strategy_name_str);

  std::ifstream in = open_input(input);
  auto triples = read_triples_tsv(in, NaturalSemiring{});
  auto loaded = from_triples(triples, NaturalSemiring{});
  std::set<Key> keys = loaded.row_keys();
  keys.insert(loaded.col_keys().begin(), loaded.col_keys().end());
  auto a = from_triples(triples, NaturalSemiring{}, keys, keys);

  auto clock_ms = [](auto fn) {
    auto t0 = std::chrono::steady_clock::now();
    auto result = fn();
    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return std::make_pair(std::move(result), ms);
  };

  auto [whole, whole_ms] =
      clock_ms([&] { return array_mul(array_mul(a, a), a); });

  bool all_exact = true;
  for (std::size_t p : partitions) {
    auto parts = partition(a, p, strategy, seed);
    auto [result, part_ms] =
        clock_ms([&] { return triple_product(a, parts, a); });
    bool exact = result == whole;
    all_exact = all_exact && exact;

    json row;
    row["partitions"] = p;
    row["strategy"] = strategy_name(strategy);
    row["seed"] = seed;
    row["whole_ms"] = whole_ms;
    row["partitioned_ms"] = part_ms;
    json balance = json::array();
    for (const auto& part : parts.parts) balance.push_back(nnz(part));
    row["part_nnz"] = std::move(balance);
    row["exact"] = exact;
    sink.out() << row.dump() << "\n";
  }
  return all_exact ? kOk : kVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semiring associative-array toolkit"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  std::string config_path;
  std::string semiring_name = "arith-nat";
  std::string strategy_str;
  std::string mode_str;
  std::size_t partitions = 1;
  std::vector<std::size_t> partition_list{1, 2, 8};
  std::uint64_t seed = 0;
  std::size_t hops = 1;
  std::string src;
  std::string dst;
  std::size_t window_m = 1;
  double window_t = 1.0;
  std::size_t levels = 1;
  bool verify = false;
  std::size_t trials = 1000;

  auto* check = app.add_subcommand("check", "run the semiring law suite");
  check->add_option("semiring", semiring_name, "semiring name")->required();
  check->add_option("trials", trials, "random trials per law");
  check->add_option("seed", seed, "random seed");
  check->add_option("--output", output, "write JSON lines to a file");

  auto* stats = app.add_subcommand("stats", "partitioned traffic statistics");
  stats->add_option("--input", input, "traffic TSV: src dst count")->required();
  stats->add_option("--partitions", partitions, "number of parts");
  stats->add_option("--mode", mode_str, "source or destination");
  stats->add_option("--strategy", strategy_str, "partition strategy (forced by mode)");
  stats->add_option("--seed", seed, "partition seed");
  stats->add_option("--config", config_path, "key=value config file");
  stats->add_option("--output", output, "write JSON lines to a file");

  auto* paths = app.add_subcommand("paths", "least-weight n-hop paths");
  paths->add_option("--input", input, "graph TSV: src dst weight")->required();
  paths->add_option("--src", src, "source vertex")->required();
  paths->add_option("--dst", dst, "destination vertex")->required();
  paths->add_option("--hops", hops, "hop count n >= 1");
  paths->add_option("--output", output, "write JSON lines to a file");

  auto* provenance = app.add_subcommand("provenance", "product provenance tracking");
  provenance->add_option("input_a", input, "left factor TSV")->required();
  std::string input_b;
  provenance->add_option("input_b", input_b, "right factor TSV")->required();
  provenance->add_option("--semiring", semiring_name, "base semiring name");
  provenance->add_option("--output", output, "write JSON lines to a file");

  auto* stream = app.add_subcommand("stream", "windowed streaming hierarchy");
  stream->add_option("--input", input, "event TSV: src dst count timestamp")->required();
  stream->add_option("--mode", mode_str, "fixed-m or fixed-t");
  stream->add_option("--window-m", window_m, "events per window (fixed-m)");
  stream->add_option("--window-t", window_t, "seconds per window (fixed-t)");
  stream->add_option("--levels", levels, "hierarchy depth");
  stream->add_flag("--verify", verify, "recompute windows from raw events");
  stream->add_option("--output", output, "write JSON lines to a file");

  auto* bench = app.add_subcommand("bench", "partitioned triple-product timing");
  bench->add_option("--input", input, "matrix TSV: row col value")->required();
  bench->add_option("--partitions", partition_list, "part counts to try")
      ->delimiter(',');
  bench->add_option("--strategy", strategy_str, "partition strategy");
  bench->add_option("--seed", seed, "partition seed");
  bench->add_option("--config", config_path, "key=value config file");
  bench->add_option("--output", output, "write JSON lines to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*check) {
      Sink sink(output);
      return run_check(semiring_name, trials, seed, sink);
    }
    if (*stats) {
      ConfigFile cfg = ConfigFile::load(config_path);
      cfg.apply(*stats, "--partitions", "partitions", partitions);
      cfg.apply(*stats, "--strategy", "strategy", strategy_str);
      cfg.apply(*stats, "--seed", "seed", seed);
      cfg.apply(*stats, "--mode", "mode", mode_str);
      if (mode_str.empty()) mode_str = "source";
      Sink sink(output);
      return run_stats(input, partitions, mode_str, strategy_str, seed, sink);
    }
    if (*paths) {
      Sink sink(output);
      return run_paths(input, src, dst, hops, sink);
    }
    if (*provenance) {
      Sink sink(output);
      return run_provenance(semiring_name, input, input_b, sink);
    }
    if (*stream) {
      if (mode_str.empty()) mode_str = "fixed-m";
      Sink sink(output);
      return run_stream(input, mode_str, window_m, window_t, levels, verify, sink);
    }
    if (*bench) {
      ConfigFile cfg = ConfigFile::load(config_path);
      cfg.apply(*bench, "--strategy", "strategy", strategy_str);
      cfg.apply(*bench, "--seed", "seed", seed);
      if (strategy_str.empty()) strategy_str = "random";
      Sink sink(output);
      return run_bench(input, partition_list, strategy_str, seed, sink);
    }
  } catch (const RecoveryError& e) {
    std::cerr << e.what() << "\n";
    return kVerificationFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kUsageError;
  } catch (const std::logic_error& e) {
    // Internal cross-checks (closed forms, dual evaluations) disagreeing.
    std::cerr << e.what() << "\n";
    return kVerificationFailure;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

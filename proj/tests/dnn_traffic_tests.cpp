#include <algorithm>
#include <vector>

#include "doctest.h"
#include "semiarray/dnn.hpp"
#include "semiarray/partition.hpp"
#include "semiarray/rng.hpp"
#include "semiarray/traffic.hpp"

using namespace semiarray;

namespace {

Key k(std::int64_t i) { return Key{i}; }
Key k(const char* s) { return Key{std::string(s)}; }

// Dense reference: y[c] = max(Σ_r x[r] W[r][c] + b[c], 0), plain loops.
std::vector<double> dense_relu(const std::vector<double>& x,
                               const std::vector<std::vector<double>>& w,
                               const std::vector<double>& b) {
  std::size_t n = b.size();
  std::vector<double> y(n, 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    double acc = b[c];
    for (std::size_t r = 0; r < x.size(); ++r) acc += x[r] * w[r][c];
    y[c] = std::max(acc, 0.0);
  }
  return y;
}

struct DenseLayer {
  AssocArray<RealSemiring> w;
  AssocArray<RealSemiring> b;
  std::vector<std::vector<double>> w_dense;
  std::vector<double> b_dense;
};

DenseLayer random_layer(Rng& rng, std::size_t m, std::size_t n) {
  RealSemiring real;
  std::set<Key> rows;
  std::set<Key> cols;
  for (std::size_t i = 0; i < m; ++i) rows.insert(k(std::int64_t(i)));
  for (std::size_t j = 0; j < n; ++j) cols.insert(k(std::int64_t(j)));
  DenseLayer out{AssocArray<RealSemiring>(real, rows, cols),
                 AssocArray<RealSemiring>(real, {k("bias")}, cols),
                 std::vector<std::vector<double>>(m, std::vector<double>(n, 0.0)),
                 std::vector<double>(n, 0.0)};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double v = static_cast<double>(std::int64_t(rng.below(11)) - 5);
      out.w_dense[i][j] = v;
      if (v != 0.0) out.w.set(k(std::int64_t(i)), k(std::int64_t(j)), v);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    double v = static_cast<double>(std::int64_t(rng.below(11)) - 5);
    out.b_dense[j] = v;
    if (v != 0.0) out.b.set(k("bias"), k(std::int64_t(j)), v);
  }
  return out;
}

}  // namespace

TEST_CASE("column selectors cover contiguous blocks and sum to identity") {
  Rng rng(51);
  auto layer = random_layer(rng, 2, 6);
  auto part = make_column_partition(layer.w, layer.b, 3);
  REQUIRE(part.selectors.size() == 3);
  // Sorted columns {0..5} over 3 parts: {0,1}, {2,3}, {4,5}.
  for (std::int64_t j = 0; j < 6; ++j) {
    CHECK(part.selectors[std::size_t(j / 2)].diag.at(k(j), k(j)) == 1.0);
  }
  RealSemiring real;
  auto sum = part.selectors[0].diag;
  sum = ewise_add(sum, part.selectors[1].diag);
  sum = ewise_add(sum, part.selectors[2].diag);
  CHECK(sum == identity_diag(real, layer.w.col_keys()));

  // Weight parts hold disjoint column slices of W.
  std::size_t total = 0;
  for (const auto& wp : part.weight_parts) total += nnz(wp);
  CHECK(total == nnz(layer.w));
}

TEST_CASE("column partition validates its inputs") {
  Rng rng(53);
  auto layer = random_layer(rng, 2, 4);
  CHECK_THROWS_WITH_AS(make_column_partition(layer.w, layer.b, 5),
                       doctest::Contains("exceeds"), std::invalid_argument);
  CHECK_THROWS_AS(make_column_partition(layer.w, layer.b, 0),
                  std::invalid_argument);

  RealSemiring real;
  AssocArray<RealSemiring> bad_bias(real, {k("bias")},
                                    {k(std::int64_t(0)), k(std::int64_t(1))});
  CHECK_THROWS_WITH_AS(make_column_partition(layer.w, bad_bias, 2),
                       doctest::Contains("bias columns"), std::invalid_argument);

  AssocArray<RealSemiring> two_rows(real, {k("r1"), k("r2")}, layer.w.col_keys());
  CHECK_THROWS_WITH_AS(make_column_partition(layer.w, two_rows, 2),
                       doctest::Contains("one row"), std::invalid_argument);
}

TEST_CASE("a fixed layer evaluates to its hand-computed activations") {
  RealSemiring real;
  std::set<Key> rows{k(1), k(2)};
  std::set<Key> cols{k(1), k(2), k(3)};
  AssocArray<RealSemiring> w(real, rows, cols);
  w.set(k(1), k(1), 2.0);
  w.set(k(1), k(3), -1.0);
  w.set(k(2), k(2), -3.0);
  w.set(k(2), k(3), 4.0);
  AssocArray<RealSemiring> b(real, {k("bias")}, cols);
  b.set(k("bias"), k(1), 1.0);
  b.set(k("bias"), k(2), -2.0);

  // x = (1, 1): xW = (2, -3, 3); +b = (3, -5, 3); relu = (3, 0, 3).
  std::vector<double> x{1.0, 1.0};
  for (std::size_t P : {std::size_t(1), std::size_t(2), std::size_t(3)}) {
    auto y = relu_layer(x, make_column_partition(w, b, P));
    REQUIRE(y.size() == 3);
    CHECK(y[0] == 3.0);
    CHECK(y[1] == 0.0);
    CHECK(y[2] == 3.0);
  }
}

TEST_CASE("partitioned relu equals the dense reference exactly") {
  Rng rng(57);
  for (int t = 0; t < 20; ++t) {
    auto layer = random_layer(rng, 4, 6);
    std::vector<double> x(4);
    for (auto& v : x) v = static_cast<double>(std::int64_t(rng.below(11)) - 5);
    auto expected = dense_relu(x, layer.w_dense, layer.b_dense);
    for (std::size_t P : {std::size_t(1), std::size_t(2), std::size_t(3),
                          std::size_t(6)}) {
      auto y = relu_layer(x, make_column_partition(layer.w, layer.b, P));
      REQUIRE(y.size() == expected.size());
      for (std::size_t c = 0; c < y.size(); ++c) CHECK(y[c] == expected[c]);
    }
  }
}

TEST_CASE("relu layer validates input dimension") {
  Rng rng(59);
  auto layer = random_layer(rng, 3, 4);
  auto part = make_column_partition(layer.w, layer.b, 2);
  CHECK_THROWS_WITH_AS(relu_layer({1.0, 2.0}, part), doctest::Contains("dimension"),
                       std::invalid_argument);
}

TEST_CASE("traffic stats on a fixed matrix") {
  NaturalSemiring nat;
  auto a = from_triples<NaturalSemiring>({{k("a"), k("x"), 3},
                                          {k("a"), k("y"), 1},
                                          {k("b"), k("x"), 2},
                                          {k("c"), k("z"), 6}},
                                         nat);
  TrafficStats st = compute_traffic_stats(a);
  CHECK(st.total_packets == 12);
  CHECK(st.unique_sources == 3);
  CHECK(st.unique_destinations == 3);
  CHECK(st.unique_links == 4);
  CHECK(st.max_link_packets == 6);

  AssocArray<NaturalSemiring> empty(nat);
  TrafficStats zero = compute_traffic_stats(empty);
  CHECK(zero.total_packets == 0);
  CHECK(zero.unique_sources == 0);
  CHECK(zero.max_link_packets == 0);
}

TEST_CASE("unique counts come from the support, not the key sets") {
  NaturalSemiring nat;
  std::set<Key> wide{k("a"), k("b"), k("c"), k("unused")};
  AssocArray<NaturalSemiring> a(nat, wide, wide);
  a.set(k("a"), k("b"), 5);
  TrafficStats st = compute_traffic_stats(a);
  CHECK(st.unique_sources == 1);
  CHECK(st.unique_destinations == 1);
}

TEST_CASE("combined per-part stats match the whole in both modes") {
  NaturalSemiring nat;
  auto a = from_triples<NaturalSemiring>({{k("a"), k("x"), 3},
                                          {k("a"), k("y"), 1},
                                          {k("b"), k("x"), 2},
                                          {k("c"), k("z"), 6}},
                                         nat);

  auto src = traffic_stats(partition(a, 2, Strategy::RowBlock, 0),
                           TrafficMode::Source);
  CHECK(src.combined_matches);
  CHECK(src.combined.total_packets == 12);
  CHECK(src.combined.mode_uniques == 3);
  CHECK(src.combined.unique_links == 4);
  CHECK(src.combined.max_link_packets == 6);
  CHECK(src.per_part.size() == 2);
  // Rows {a,b} land in part 0, {c} in part 1.
  CHECK(src.per_part[0].total_packets == 6);
  CHECK(src.per_part[1].total_packets == 6);
  CHECK(src.per_part[1].max_link_packets == 6);

  auto dst = traffic_stats(partition(a, 3, Strategy::ColBlock, 0),
                           TrafficMode::Destination);
  CHECK(dst.combined_matches);
  CHECK(dst.combined.mode_uniques == 3);
}

TEST_CASE("off-mode uniques are genuinely not additive") {
  NaturalSemiring nat;
  // Two sources hitting one destination: splitting by source makes each part
  // see the destination once, so the per-part sum (2) exceeds the whole (1).
  // This is why combined stats only carry the partitioned side's uniques.
  auto a = from_triples<NaturalSemiring>(
      {{k("a"), k("x"), 1}, {k("b"), k("x"), 1}}, nat);
  auto report = traffic_stats(partition(a, 2, Strategy::RowBlock, 0),
                              TrafficMode::Source);
  CHECK(report.whole.unique_destinations == 1);
  std::size_t dst_sum = 0;
  for (const auto& p : report.per_part) dst_sum += p.unique_destinations;
  CHECK(dst_sum == 2);
  CHECK(report.combined_matches);  // source-side fields still agree
}

TEST_CASE("traffic stats reject a strategy that fights the mode") {
  NaturalSemiring nat;
  auto a = from_triples<NaturalSemiring>({{k("a"), k("x"), 1}}, nat);
  CHECK_THROWS_WITH_AS(traffic_stats(partition(a, 2, Strategy::ColBlock, 0),
                                     TrafficMode::Source),
                       doctest::Contains("strategy"), std::invalid_argument);
  CHECK_THROWS_AS(traffic_stats(partition(a, 2, Strategy::Random, 0),
                                TrafficMode::Destination),
                  std::invalid_argument);
}

TEST_CASE("random traffic matrices combine exactly at P=5") {
  NaturalSemiring nat;
  Rng rng(61);
  for (int t = 0; t < 10; ++t) {
    AssocArray<NaturalSemiring> a(nat);
    std::size_t links = 5 + rng.below(20);
    for (std::size_t i = 0; i < links; ++i) {
      a.accumulate(k(std::int64_t(rng.below(9))), k(std::int64_t(rng.below(9))),
                   1 + rng.below(50));
    }
    auto src = traffic_stats(partition(a, 5, Strategy::RowBlock, 0),
                             TrafficMode::Source);
    CHECK(src.combined_matches);
    auto dst = traffic_stats(partition(a, 5, Strategy::ColBlock, 0),
                             TrafficMode::Destination);
    CHECK(dst.combined_matches);
  }
}

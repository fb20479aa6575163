#include <set>
#include <vector>

#include "doctest.h"
#include "semiarray/partition.hpp"
#include "semiarray/path.hpp"
#include "semiarray/rng.hpp"
#include "semiarray/semiring.hpp"

using namespace semiarray;

namespace {

Key k(std::int64_t i) { return Key{i}; }

template <Semiring S>
AssocArray<S> random_square(S s, Rng& rng, std::size_t nnz_target,
                            std::uint64_t key_space) {
  std::set<Key> keys;
  for (std::uint64_t i = 0; i < key_space; ++i) keys.insert(k(std::int64_t(i)));
  AssocArray<S> a(s, keys, keys);
  for (std::size_t i = 0; i < nnz_target; ++i) {
    a.set(k(std::int64_t(rng.below(key_space))),
          k(std::int64_t(rng.below(key_space))), s.sample_nonzero(rng));
  }
  return a;
}

}  // namespace

TEST_CASE("strategy names round trip") {
  for (Strategy st : {Strategy::Random, Strategy::RowBlock, Strategy::ColBlock,
                      Strategy::Overlap}) {
    CHECK(parse_strategy(strategy_name(st)) == st);
  }
  CHECK_THROWS_WITH_AS(parse_strategy("diagonal"),
                       doctest::Contains("unknown strategy"),
                       std::invalid_argument);
}

TEST_CASE("every strategy reduces back to the original array") {
  NaturalSemiring nat;
  MinPlusSemiring mp;
  Rng rng(13);
  for (std::size_t P : {std::size_t(1), std::size_t(2), std::size_t(3),
                        std::size_t(8)}) {
    auto a = random_square(nat, rng, 60, 12);
    for (Strategy st : {Strategy::Random, Strategy::RowBlock, Strategy::ColBlock,
                        Strategy::Overlap}) {
      auto sp = partition(a, P, st, 42);
      CHECK(sp.parts.size() == P);
      CHECK(reduce(sp) == a);
    }
    auto b = random_square(mp, rng, 60, 12);
    for (Strategy st : {Strategy::Random, Strategy::RowBlock, Strategy::ColBlock,
                        Strategy::Overlap}) {
      CHECK(reduce(partition(b, P, st, 7)) == b);
    }
  }
}

TEST_CASE("disjoint strategies split the support exactly") {
  NaturalSemiring nat;
  Rng rng(17);
  auto a = random_square(nat, rng, 80, 10);
  for (Strategy st : {Strategy::Random, Strategy::RowBlock, Strategy::ColBlock}) {
    auto sp = partition(a, 4, st, 5);
    std::size_t total = 0;
    std::map<KeyPair, int> owners;
    for (const auto& part : sp.parts) {
      total += nnz(part);
      for (const auto& [kp, v] : part.entries()) owners[kp] += 1;
    }
    CHECK(total == nnz(a));
    for (const auto& [kp, count] : owners) CHECK(count == 1);
  }
}

TEST_CASE("overlap strategy duplicates support but preserves the sum") {
  NaturalSemiring nat;
  Rng rng(19);
  auto a = random_square(nat, rng, 40, 8);
  auto sp = partition(a, 3, Strategy::Overlap, 11);
  std::size_t total = 0;
  for (const auto& part : sp.parts) total += nnz(part);
  CHECK(total > nnz(a));  // values split across two parts each
  CHECK(reduce(sp) == a);
}

TEST_CASE("overlap is refused where values cannot be split") {
  TropicalPathSemiring tp;
  AssocArray<TropicalPathSemiring> a(tp);
  a.set(k(1), k(2), TropicalPathValue{Cost(1), {PathString{{k(1), k(2)}}}});
  CHECK_THROWS_WITH_AS(partition(a, 2, Strategy::Overlap, 0),
                       doctest::Contains("overlap"), std::invalid_argument);
}

TEST_CASE("block strategies put contiguous key ranges in each part") {
  NaturalSemiring nat;
  std::set<Key> keys;
  for (std::int64_t i = 0; i < 6; ++i) keys.insert(k(i));
  AssocArray<NaturalSemiring> a(nat, keys, keys);
  for (std::int64_t i = 0; i < 6; ++i) a.set(k(i), k(5 - i), 1 + i);

  auto sp = partition(a, 3, Strategy::RowBlock, 0);
  // Sorted rows {0..5} over 3 parts: {0,1}, {2,3}, {4,5}.
  for (std::int64_t i = 0; i < 6; ++i) {
    CHECK(sp.parts[i / 2].at(k(i), k(5 - i)) == std::uint64_t(1 + i));
  }

  auto cp = partition(a, 3, Strategy::ColBlock, 0);
  for (std::int64_t i = 0; i < 6; ++i) {
    CHECK(cp.parts[(5 - i) / 2].at(k(i), k(5 - i)) == std::uint64_t(1 + i));
  }
}

TEST_CASE("random assignment is stable across runs and seeds matter") {
  NaturalSemiring nat;
  Rng rng(23);
  auto a = random_square(nat, rng, 100, 40);
  auto sp1 = partition(a, 4, Strategy::Random, 9);
  auto sp2 = partition(a, 4, Strategy::Random, 9);
  for (std::size_t p = 0; p < 4; ++p) CHECK(sp1.parts[p] == sp2.parts[p]);

  auto sp3 = partition(a, 4, Strategy::Random, 10);
  bool any_differs = false;
  for (std::size_t p = 0; p < 4; ++p) {
    if (!(sp3.parts[p] == sp1.parts[p])) any_differs = true;
  }
  CHECK(any_differs);
}

TEST_CASE("partition rejects zero parts and reduce rejects no parts") {
  NaturalSemiring nat;
  AssocArray<NaturalSemiring> a(nat);
  CHECK_THROWS_AS(partition(a, 0, Strategy::Random, 0), std::invalid_argument);
  SumPartition<NaturalSemiring> empty;
  CHECK_THROWS_AS(reduce(empty), std::invalid_argument);
}

TEST_CASE("more parts than entries leaves extra parts empty but correct") {
  NaturalSemiring nat;
  auto a = from_triples<NaturalSemiring>({{k(1), k(2), 3}}, nat);
  auto sp = partition(a, 8, Strategy::RowBlock, 0);
  CHECK(reduce(sp) == a);
  std::size_t nonempty = 0;
  for (const auto& p : sp.parts) nonempty += nnz(p) > 0 ? 1 : 0;
  CHECK(nonempty == 1);
}

TEST_CASE("map reduce distributes linear maps over parts") {
  NaturalSemiring nat;
  Rng rng(29);
  auto a = random_square(nat, rng, 50, 9);
  auto sp = partition(a, 4, Strategy::Random, 3);

  auto same = map_reduce_linear(sp, [](const AssocArray<NaturalSemiring>& p) {
    return p;
  });
  CHECK(same == a);

  auto flipped = map_reduce_linear(sp, [](const AssocArray<NaturalSemiring>& p) {
    return transpose(p);
  });
  CHECK(flipped == transpose(a));

  auto b = random_square(nat, rng, 50, 9);
  auto scaled = map_reduce_linear(sp, [&](const AssocArray<NaturalSemiring>& p) {
    return array_mul(b, p);
  });
  CHECK(scaled == array_mul(b, a));
}

TEST_CASE("triple product over parts equals the whole-array product") {
  NaturalSemiring nat;
  MinPlusSemiring mp;
  Rng rng(31);
  auto a = random_square(nat, rng, 60, 10);
  auto b = random_square(nat, rng, 60, 10);
  auto c = random_square(nat, rng, 60, 10);
  auto whole = array_mul(array_mul(b, a), c);
  for (Strategy st : {Strategy::Random, Strategy::RowBlock, Strategy::ColBlock,
                      Strategy::Overlap}) {
    CHECK(triple_product(b, partition(a, 5, st, 1), c) == whole);
  }

  auto d = random_square(mp, rng, 60, 10);
  auto e = random_square(mp, rng, 60, 10);
  auto f = random_square(mp, rng, 60, 10);
  CHECK(triple_product(e, partition(d, 3, Strategy::Random, 1), f) ==
        array_mul(array_mul(e, d), f));
}

TEST_CASE("triple product validates conformability") {
  NaturalSemiring nat;
  Rng rng(37);
  auto a = random_square(nat, rng, 20, 6);
  auto sp = partition(a, 2, Strategy::Random, 0);
  auto wrong = from_triples<NaturalSemiring>({{k(99), k(98), 1}}, nat);
  CHECK_THROWS_WITH_AS(triple_product(wrong, sp, a),
                       doctest::Contains("columns"), std::invalid_argument);
}

TEST_CASE("masking over parts equals masking the whole array") {
  MinPlusSemiring mp;
  Rng rng(41);
  auto a = random_square(mp, rng, 50, 9);
  AssocArray<MinPlusSemiring> mask(mp, a.row_keys(), a.col_keys());
  for (const auto& [kp, v] : a.entries()) {
    if (rng.chance(0.5)) mask.set(kp.first, kp.second, Cost(0));
  }
  auto whole = ewise_mul(mask, a);
  for (Strategy st : {Strategy::Random, Strategy::RowBlock, Strategy::ColBlock}) {
    CHECK(apply_mask(mask, partition(a, 4, st, 2)) == whole);
  }

  auto bad_mask = from_triples<MinPlusSemiring>({{k(999), k(1), Cost(0)}}, mp);
  CHECK_THROWS_WITH_AS(apply_mask(bad_mask, partition(a, 2, Strategy::Random, 0)),
                       doctest::Contains("key sets"), std::invalid_argument);
}

TEST_CASE("global sums push down over partitions") {
  NaturalSemiring nat;
  Rng rng(43);
  auto a = random_square(nat, rng, 70, 12);
  std::uint64_t whole = global_sum(a);
  for (Strategy st : {Strategy::Random, Strategy::RowBlock, Strategy::ColBlock,
                      Strategy::Overlap}) {
    auto sp = partition(a, 6, st, 4);
    std::uint64_t combined = 0;
    for (const auto& p : sp.parts) combined = nat.add(combined, global_sum(p));
    CHECK(combined == whole);
  }
}

TEST_CASE("parallel map surfaces worker exceptions") {
  NaturalSemiring nat;
  Rng rng(47);
  auto a = random_square(nat, rng, 30, 8);
  auto sp = partition(a, 4, Strategy::Random, 0);
  CHECK_THROWS_AS(
      map_reduce_linear(sp,
                        [](const AssocArray<NaturalSemiring>& p)
                            -> AssocArray<NaturalSemiring> {
                          throw std::runtime_error("worker failure");
                        }),
      std::runtime_error);
}

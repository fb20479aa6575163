#include <set>

#include "doctest.h"
#include "semiarray/provenance.hpp"
#include "semiarray/rng.hpp"

using namespace semiarray;

namespace {

Key k(std::int64_t i) { return Key{i}; }

std::set<Key> verts12() { return {k(1), k(2)}; }

AssocArray<NaturalSemiring> mat_a() {
  NaturalSemiring nat;
  return from_triples<NaturalSemiring>(
      {{k(1), k(1), 1}, {k(1), k(2), 2}, {k(2), k(2), 3}}, nat, verts12(),
      verts12());
}

AssocArray<NaturalSemiring> mat_b() {
  NaturalSemiring nat;
  return from_triples<NaturalSemiring>(
      {{k(1), k(1), 4}, {k(2), k(1), 5}, {k(2), k(2), 6}}, nat, verts12(),
      verts12());
}

}  // namespace

TEST_CASE("provenance algebra identities") {
  auto ps = provenance_semiring(NaturalSemiring{}, verts12());
  CHECK(ps.zero().empty());
  CHECK(ps.one().size() == 2);

  ProvenanceSet<std::uint64_t> x{{k(1), 2, 3, 6}};
  CHECK(ps.eq(ps.mul(ps.one(), x), x));
  CHECK(ps.eq(ps.mul(x, ps.one()), x));
  CHECK(ps.eq(ps.mul(x, ps.zero()), ps.zero()));
  CHECK(ps.eq(ps.add(x, ps.zero()), x));

  // Tuples on different vertices never pair.
  ProvenanceSet<std::uint64_t> y{{k(2), 5, 5, 25}};
  CHECK(ps.mul(x, y).empty());

  CHECK(ps.to_string(ps.add(x, y)) == "{(1;2;3;6),(2;5;5;25)}");
}

TEST_CASE("lifting splits entries into row and column halves") {
  auto ps = provenance_semiring(NaturalSemiring{}, verts12());
  auto lifted = lift_provenance(mat_a(), ps);
  auto re = re_part(lifted);
  auto im = im_part(lifted);
  // A(1,2) = 2: Re gets (row key; 1; 2; 2), Im gets (col key; 2; 1; 2).
  CHECK(re.at(k(1), k(2)) == ProvenanceSet<std::uint64_t>{{k(1), 1, 2, 2}});
  CHECK(im.at(k(1), k(2)) == ProvenanceSet<std::uint64_t>{{k(2), 2, 1, 2}});

  auto bad = from_triples<NaturalSemiring>({{k(7), k(1), 1}}, NaturalSemiring{});
  CHECK_THROWS_WITH_AS(lift_provenance(bad, ps), doctest::Contains("vertex set"),
                       std::invalid_argument);
}

TEST_CASE("the worked product records every contributor") {
  auto ps = provenance_semiring(NaturalSemiring{}, verts12());
  auto c = provenance_product(mat_a(), mat_b(), ps);

  CHECK(c.at(k(1), k(1)) ==
        ProvenanceSet<std::uint64_t>{{k(1), 1, 4, 4}, {k(2), 2, 5, 10}});
  CHECK(c.at(k(1), k(2)) == ProvenanceSet<std::uint64_t>{{k(2), 2, 6, 12}});
  CHECK(c.at(k(2), k(1)) == ProvenanceSet<std::uint64_t>{{k(2), 3, 5, 15}});
  CHECK(c.at(k(2), k(2)) == ProvenanceSet<std::uint64_t>{{k(2), 3, 6, 18}});
  CHECK(ps.to_string(c.at(k(1), k(1))) == "{(1;1;4;4),(2;2;5;10)}");
}

TEST_CASE("value and key projections of the worked product") {
  auto ps = provenance_semiring(NaturalSemiring{}, verts12());
  auto vals = cat_val_mul(mat_a(), mat_b(), ps);
  using VP = std::pair<std::uint64_t, std::uint64_t>;
  CHECK(vals.at({k(1), k(1)}) == std::set<VP>{{1, 4}, {2, 5}});
  CHECK(vals.at({k(2), k(2)}) == std::set<VP>{{3, 6}});

  auto keys = cat_key_mul(mat_a(), mat_b(), ps);
  CHECK(keys.at({k(1), k(1)}) == std::set<Key>{k(1), k(2)});
  CHECK(keys.at({k(1), k(2)}) == std::set<Key>{k(2)});
}

TEST_CASE("recovery reproduces the direct product") {
  auto ps = provenance_semiring(NaturalSemiring{}, verts12());
  auto c = provenance_product(mat_a(), mat_b(), ps);
  auto recovered = recover_product(c);
  CHECK(recovered.at(k(1), k(1)) == 14);
  CHECK(recovered.at(k(1), k(2)) == 12);
  CHECK(recovered == array_mul(mat_a(), mat_b()));
}

TEST_CASE("recovery detects tampered records") {
  auto ps = provenance_semiring(NaturalSemiring{}, verts12());
  AssocArray<ProvenanceSemiring<NaturalSemiring>> c(ps);
  c.set(k(1), k(1), ProvenanceSet<std::uint64_t>{{k(1), 2, 3, 7}});  // 2*3 != 7
  CHECK_THROWS_WITH_AS(recover_product(c), doctest::Contains("(1,1)"),
                       RecoveryError);
}

TEST_CASE("provenance over min-plus uses tropical recovery") {
  MinPlusSemiring mp;
  auto a = from_triples<MinPlusSemiring>(
      {{k(1), k(1), Cost(1)}, {k(1), k(2), Cost(2)}, {k(2), k(2), Cost(3)}}, mp,
      verts12(), verts12());
  auto b = from_triples<MinPlusSemiring>(
      {{k(1), k(1), Cost(4)}, {k(2), k(1), Cost(5)}, {k(2), k(2), Cost(6)}}, mp,
      verts12(), verts12());
  auto ps = provenance_semiring(mp, verts12());
  auto c = provenance_product(a, b, ps);
  // (1,1): via 1 costs 1+4=5, via 2 costs 2+5=7; both are recorded.
  CHECK(c.at(k(1), k(1)) ==
        ProvenanceSet<Cost>{{k(1), Cost(1), Cost(4), Cost(5)},
                            {k(2), Cost(2), Cost(5), Cost(7)}});
  auto recovered = recover_product(c);
  CHECK(recovered.at(k(1), k(1)) == Cost(5));  // min over contributors
  CHECK(recovered == array_mul(a, b));
}

TEST_CASE("random products recover exactly") {
  NaturalSemiring nat;
  Rng rng(73);
  std::set<Key> verts;
  for (std::int64_t i = 0; i < 5; ++i) verts.insert(k(i));
  auto ps = provenance_semiring(nat, verts);
  for (int t = 0; t < 20; ++t) {
    AssocArray<NaturalSemiring> a(nat, verts, verts);
    AssocArray<NaturalSemiring> b(nat, verts, verts);
    for (const Key& r : verts) {
      for (const Key& c : verts) {
        if (rng.chance(0.5)) a.set(r, c, 1 + rng.below(9));
        if (rng.chance(0.5)) b.set(r, c, 1 + rng.below(9));
      }
    }
    auto c = provenance_product(a, b, ps);
    CHECK(recover_product(c) == array_mul(a, b));
  }
}

TEST_CASE("provenance product validates conformability and vertex cover") {
  NaturalSemiring nat;
  auto ps = provenance_semiring(nat, verts12());
  auto a = mat_a();
  auto skewed = from_triples<NaturalSemiring>({{k(1), k(1), 1}}, nat);
  CHECK_THROWS_WITH_AS(provenance_product(a, skewed, ps),
                       doctest::Contains("columns"), std::invalid_argument);
}

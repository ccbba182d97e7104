#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_util.hpp"

using namespace maxdim;
using testutil::from_spec;

TEST_CASE("closure basics") {
  auto s3 = testutil::s3();
  ElementId rot = kNoElement;
  for (ElementId x = 0; x < 6; ++x)
    if (s3->element_order(x) == 3) rot = x;
  auto c = closure(*s3, {rot});
  CHECK(c.order == 3);
  CHECK(closure(*s3, {}).order == 1);
}

TEST_CASE("closure agrees with product-saturation oracle") {
  auto a5 = testutil::a5();
  std::mt19937_64 rng(11);
  for (int t = 0; t < 12; ++t) {
    std::vector<ElementId> seed{static_cast<ElementId>(1 + rng() % 59),
                                static_cast<ElementId>(1 + rng() % 59)};
    auto mine = closure(*a5, seed);
    auto oracle = testutil::saturation_closure(*a5, seed);
    CHECK(mine.order == oracle.size());
    CHECK(60 % mine.order == 0);
    for (auto x : oracle) CHECK(mine.contains(x));
  }
}

TEST_CASE("closure is idempotent and monotone") {
  auto g = from_spec("family: symmetric 4");
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    std::vector<ElementId> xs{static_cast<ElementId>(rng() % g->order()),
                              static_cast<ElementId>(rng() % g->order())};
    auto cx = closure(*g, xs);
    auto cc = closure(*g, cx.members.to_ids());
    CHECK(cc.members == cx.members);
    auto ys = xs;
    ys.push_back(static_cast<ElementId>(rng() % g->order()));
    CHECK(cx.members.subset_of(closure(*g, ys).members));
  }
}

TEST_CASE("centralizers") {
  auto s3 = testutil::s3();
  CHECK(centralizer(*s3, {}).order == 6);
  CHECK(centralizer(*s3, {s3->identity()}).order == 6);
  ElementId rot = kNoElement;
  for (ElementId x = 0; x < 6; ++x)
    if (s3->element_order(x) == 3) rot = x;
  auto c = centralizer(*s3, {rot});
  CHECK(c.order == 3);  // brute-force over 6 elements gives <rot>
  CHECK(c.contains(rot));
  // centerless group: centralizer of a generating set is trivial
  CHECK(centralizer(*s3, s3->generator_ids()).order == 1);
}

TEST_CASE("normalizers") {
  auto s3 = testutil::s3();
  CHECK(normalizer(*s3, whole_group(*s3)).order == 6);
  ElementId rot = kNoElement;
  for (ElementId x = 0; x < 6; ++x)
    if (s3->element_order(x) == 3) rot = x;
  CHECK(normalizer(*s3, closure(*s3, {rot})).order == 6);  // A3 is normal

  auto a5 = testutil::a5();
  ElementId f = kNoElement;
  for (ElementId x = 0; x < 60; ++x)
    if (a5->element_order(x) == 5) f = x;
  auto syl5 = closure(*a5, {f});
  CHECK(normalizer(*a5, syl5).order == 10);
}

TEST_CASE("derived subgroup, solvability, nilpotency") {
  auto z6 = testutil::z(6);
  CHECK(derived_subgroup(*z6).order == 1);
  CHECK(is_solvable(*z6));
  CHECK(is_nilpotent(*z6));

  auto s3 = testutil::s3();
  auto der = derived_subgroup(*s3);
  CHECK(der.order == 3);  // A3
  // brute-force commutator oracle
  DenseBitset comms(s3->order());
  for (ElementId a = 0; a < 6; ++a)
    for (ElementId b = 0; b < 6; ++b)
      comms.set(s3->mul(s3->mul(s3->inv(a), s3->inv(b)), s3->mul(a, b)));
  CHECK(comms.subset_of(der.members));
  CHECK(is_solvable(*s3));
  CHECK_FALSE(is_nilpotent(*s3));

  auto a5 = testutil::a5();
  CHECK(derived_subgroup(*a5).order == 60);
  CHECK_FALSE(is_solvable(*a5));
  CHECK(is_perfect(*a5));
}

TEST_CASE("normal subgroups, maximal normals, rumpf") {
  auto a5 = testutil::a5();
  auto normals = normal_subgroups(*a5);
  CHECK(normals.size() == 2);
  CHECK(rumpf(*a5).order == 1);
  CHECK(is_simple(*a5));

  auto z6 = testutil::z(6);
  std::multiset<std::uint32_t> orders;
  for (auto const& n : normal_subgroups(*z6)) orders.insert(n.order);
  CHECK(orders == std::multiset<std::uint32_t>{1, 2, 3, 6});
  CHECK(rumpf(*z6).order == 1);

  auto s3s3 = from_spec("family: directProduct [family: symmetric 3] [family: symmetric 3]");
  auto r = rumpf(*s3s3);
  CHECK(r.order == 9);  // A3 x A3
  // oracle: rumpf = intersection of the maximal entries of a brute-force
  // normal-subgroup filter over the full lattice
  auto lat = all_subgroups(*s3s3);
  std::vector<SubgroupSet> normal;
  for (auto const& s : lat.subgroups)
    if (is_normal(*s3s3, s)) normal.push_back(s);
  DenseBitset meet = s3s3->all_bits();
  for (auto const& n : normal) {
    if (n.order == s3s3->order()) continue;
    bool maximal = true;
    for (auto const& m : normal)
      if (m.order < s3s3->order() && m.order > n.order && n.members.subset_of(m.members))
        maximal = false;
    if (maximal) meet &= n.members;
  }
  CHECK(meet == r.members);
}

TEST_CASE("conjugation fixes every normal subgroup as a set") {
  auto s4 = from_spec("family: symmetric 4");
  auto normals = normal_subgroups(*s4);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 5; ++t) {
    ElementId x = rng() % s4->order();
    auto cm = s4->conjugation_map(x);
    for (auto const& n : normals) {
      DenseBitset img(s4->order());
      n.members.for_each([&](std::size_t e) { img.set(cm[e]); });
      CHECK(img == n.members);
    }
  }
}

TEST_CASE("subgroup_from_bitmap rejects non-subgroups") {
  auto s3 = testutil::s3();
  DenseBitset bad(s3->order());
  bad.set(0);
  bad.set(1);
  bad.set(2);
  CHECK_THROWS(subgroup_from_bitmap(*s3, bad));
}

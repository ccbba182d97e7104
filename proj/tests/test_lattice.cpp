#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace maxdim;
using testutil::from_spec;

TEST_CASE("subgroup counts of small groups") {
  CHECK(all_subgroups(*testutil::z(6)).subgroups.size() == 4);
  // S3 and Q8 against the powerset-closure oracle
  auto s3 = testutil::s3();
  auto lat = all_subgroups(*s3);
  CHECK(lat.subgroups.size() == 6);
  CHECK(lat.subgroups.size() == testutil::powerset_subgroups(*s3).size());

  auto q8 = from_spec("family: quaternion 8");
  auto lat8 = all_subgroups(*q8);
  CHECK(lat8.subgroups.size() == 6);
  CHECK(lat8.subgroups.size() == testutil::powerset_subgroups(*q8).size());
}

TEST_CASE("lattice is closed under conjugation and bounded by the cap") {
  auto s4 = from_spec("family: symmetric 4");
  auto lat = all_subgroups(*s4);
  CHECK(lat.subgroups.size() == 30);
  for (auto gid : s4->generator_ids()) {
    auto cm = s4->conjugation_map(gid);
    for (auto const& s : lat.subgroups) {
      DenseBitset img(s4->order());
      s.members.for_each([&](std::size_t x) { img.set(cm[x]); });
      bool found = false;
      for (auto const& t : lat.subgroups)
        if (t.members == img) found = true;
      CHECK(found);
    }
  }
  CHECK_THROWS_AS(all_subgroups(*testutil::a5(), 30), CapExceeded);
}

TEST_CASE("maximal subgroups") {
  // prime cyclic: the trivial subgroup is the unique maximal one
  auto z5 = testutil::z(5);
  auto c5 = maximal_subgroups(*z5);
  REQUIRE(c5.size() == 1);
  CHECK(c5[0].order == 1);

  auto v4 = from_spec("family: elementaryAbelian 2 2");
  auto cv = maximal_subgroups(*v4);
  CHECK(cv.size() == 3);
  for (auto const& e : cv.entries) CHECK(e.subgroup.order == 2);

  auto a5 = testutil::a5();
  auto ca = maximal_subgroups(*a5);
  REQUIRE(ca.size() == 21);
  std::map<std::uint32_t, int> by_order;
  for (auto const& e : ca.entries) ++by_order[e.subgroup.order];
  CHECK(by_order[12] == 5);   // A4
  CHECK(by_order[10] == 6);   // D10
  CHECK(by_order[6] == 10);   // S3
}

TEST_CASE("frattini subgroups") {
  CHECK(frattini(*testutil::s3()).order == 1);
  CHECK(frattini(*testutil::z(4)).order == 2);

  auto w = from_spec("family: wreathCyclic 3");
  auto cat = maximal_subgroups(*w);
  auto phi = frattini(*w, cat);
  CHECK(phi.order == 9);
  // independent route: intersect the maximal entries found by the generic
  // walk on the full order-81 lattice
  auto lat = all_subgroups(*w);
  DenseBitset meet = w->all_bits();
  for (auto const& s : lat.subgroups) {
    if (s.order == w->order()) continue;
    bool maximal = true;
    for (auto const& t : lat.subgroups)
      if (t.order < w->order() && t.order > s.order && s.members.subset_of(t.members))
        maximal = false;
    if (maximal) meet &= s.members;
  }
  CHECK(meet == phi.members);

  auto fq = frattini_quotient(*w);
  CHECK(fq.quotient.group->order() == 9);
  CHECK(frattini(*fq.quotient.group).order == 1);  // Frattini-free quotient
}

TEST_CASE("invariant subgroups") {
  auto v4 = from_spec("family: elementaryAbelian 2 2");
  ActorSet trivial_action;  // no actors: everything is invariant
  auto whole = whole_group(*v4);
  auto inv = maximal_invariant_subgroups(*v4, whole, trivial_action);
  CHECK(inv.size() == 3);

  // S3 acting on A3 by conjugation: only the trivial subgroup is proper
  // and invariant
  auto s3 = testutil::s3();
  auto a3 = derived_subgroup(*s3);
  ActorSet conj;
  conj.conjugators = s3->generator_ids();
  auto inv3 = maximal_invariant_subgroups(*s3, a3, conj);
  REQUIRE(inv3.size() == 1);
  CHECK(inv3[0].order == 1);

  // base of Z3 wr Z3 under the top: cross-check against filtering the full
  // sublattice by invariance
  auto w = from_spec("family: wreathCyclic 3");
  SubgroupSet const* base = nullptr;
  auto normals = normal_subgroups(*w);
  for (auto const& n : normals)
    if (n.order == 27 && is_abelian_subgroup(*w, n)) base = &n;
  REQUIRE(base);
  ActorSet top;
  top.conjugators = w->generator_ids();
  auto invb = invariant_subgroups(*w, *base, top);
  auto lat = all_subgroups_within(*w, base->members, 2000);
  std::size_t expect = 0;
  for (auto const& s : lat.subgroups) {
    bool ok = true;
    for (auto gid : w->generator_ids()) {
      auto cm = w->conjugation_map(gid);
      DenseBitset img(w->order());
      s.members.for_each([&](std::size_t x) { img.set(cm[x]); });
      if (!(img == s.members)) ok = false;
    }
    if (ok) ++expect;
  }
  CHECK(invb.size() == expect);
}

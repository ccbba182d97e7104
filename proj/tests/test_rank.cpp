#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_util.hpp"

using namespace maxdim;
using testutil::from_spec;

TEST_CASE("is_irredundant basics") {
  auto s3 = testutil::s3();
  ElementId t = kNoElement, r = kNoElement;
  for (ElementId x = 0; x < 6; ++x) {
    if (s3->element_order(x) == 2 && t == kNoElement) t = x;
    if (s3->element_order(x) == 3 && r == kNoElement) r = x;
  }
  CHECK(is_irredundant(*s3, {t, r}, true));
  CHECK_FALSE(is_irredundant(*s3, {s3->identity(), t}, false));
  CHECK_FALSE(is_irredundant(*s3, {t, t}, false));
  // the empty set is vacuously irredundant; it generates only the trivial
  // group
  CHECK(is_irredundant(*s3, {}, false));
  CHECK_FALSE(is_irredundant(*s3, {}, true));
  auto z1 = testutil::z(1);
  CHECK(is_irredundant(*z1, {}, true));
}

TEST_CASE("ranks of elementary abelian groups equal the dimension") {
  for (auto const& [spec, dim] :
       std::vector<std::pair<std::string, int>>{{"family: elementaryAbelian 2 3", 3},
                                                {"family: elementaryAbelian 2 5", 5},
                                                {"family: elementaryAbelian 3 2", 2},
                                                {"family: elementaryAbelian 5 2", 2}}) {
    auto g = from_spec(spec);
    auto rk = rank_search(*g);
    INFO(spec);
    CHECK(rk.m == dim);
    CHECK(rk.i == dim);
  }
}

TEST_CASE("ranks of the wreath products") {
  auto w2 = from_spec("family: wreathCyclic 2");
  auto r2 = rank_search(*w2);
  CHECK(r2.m == 2);
  CHECK(r2.i == 2);

  auto w3 = from_spec("family: wreathCyclic 3");
  auto r3 = rank_search(*w3);
  CHECK(r3.m == 2);
  CHECK(r3.i == 3);
  CHECK(is_irredundant(*w3, r3.i_witness, false));
  CHECK_FALSE(closure(*w3, r3.i_witness).is_whole_group());
}

TEST_CASE("S4 is flat with rank 3") {
  auto s4 = from_spec("family: symmetric 4");
  auto rk = rank_search(*s4);
  CHECK(rk.m == 3);
  CHECK(rk.i == 3);
  CHECK(is_irredundant(*s4, rk.m_witness, true));
}

TEST_CASE("rank witnesses are conjugation invariant") {
  auto s4 = from_spec("family: symmetric 4");
  auto rk = rank_search(*s4);
  std::mt19937_64 rng(47);
  for (int t = 0; t < 8; ++t) {
    ElementId x = rng() % s4->order();
    std::vector<ElementId> conj;
    for (auto e : rk.i_witness) conj.push_back(s4->conj(x, e));
    CHECK(is_irredundant(*s4, conj, false));
  }
}

TEST_CASE("rank search respects the budget") {
  auto a5 = testutil::a5();
  auto rk = rank_search(*a5, 5);
  CHECK_FALSE(rk.exact);
}

TEST_CASE("certificates from generators") {
  auto s3 = testutil::s3();
  auto cat3 = maximal_subgroups(*s3);
  auto rk3 = rank_search(*s3);
  auto cert = certify_family_from_generators(*s3, rk3.m_witness, cat3);
  CHECK(cert.family.size() == 2);
  CHECK(is_general_position(cert.family));
  // pairing: g_j lies in M_i for i != j, never in its own member
  for (std::size_t i = 0; i < cert.elements.size(); ++i) {
    CHECK_FALSE(cert.family.members[i].contains(cert.elements[i]));
    for (std::size_t j = 0; j < cert.elements.size(); ++j)
      if (i != j) CHECK(cert.family.members[i].contains(cert.elements[j]));
  }

  auto v4 = from_spec("family: elementaryAbelian 2 2");
  auto rkv = rank_search(*v4);
  auto certv = certify_family_from_generators(*v4, rkv.m_witness, maximal_subgroups(*v4));
  CHECK(certv.family.size() == 2);
  std::set<std::vector<std::uint32_t>> distinct;
  for (auto const& m : certv.family.members) distinct.insert(m.members.to_ids());
  CHECK(distinct.size() == 2);

  auto a5 = testutil::a5();
  auto rka = rank_search(*a5);
  REQUIRE(rka.m == 3);
  auto certa = certify_family_from_generators(*a5, rka.m_witness, maximal_subgroups(*a5));
  CHECK(certa.family.size() == 3);
  CHECK(is_general_position(certa.family));

  CHECK_THROWS(certify_family_from_generators(*s3, {s3->identity()}, cat3));
}

TEST_CASE("certificates from families") {
  auto v4 = from_spec("family: elementaryAbelian 2 2");
  auto cat = maximal_subgroups(*v4);
  auto fam = MaximalFamily::of(*v4, {cat[0], cat[1]});
  auto cert = certify_irredundant_from_family(fam);
  CHECK(cert.elements.size() == 2);
  CHECK(is_irredundant(*v4, cert.elements, false));

  auto a5 = testutil::a5();
  auto md = max_dim(*a5, maximal_subgroups(*a5));
  auto certa = certify_irredundant_from_family(md.witness);
  CHECK(certa.elements.size() == 3);
  CHECK(is_irredundant(*a5, certa.elements, false));

  // singleton: one element outside the member
  auto single = MaximalFamily::of(*a5, {md.witness.members[0]});
  auto certs = certify_irredundant_from_family(single);
  CHECK(certs.elements.size() == 1);
  CHECK_FALSE(md.witness.members[0].contains(certs.elements[0]));

  // a family that is not in general position is rejected
  auto catv = maximal_subgroups(*v4);
  auto bad = MaximalFamily::of(*v4, {catv[0], catv[1], catv[2]});
  CHECK_THROWS_AS(certify_irredundant_from_family(bad), EmptyDifference);
}

TEST_CASE("certificate round trips establish the sandwich") {
  for (auto const* spec : {"family: symmetric 4", "family: dihedral 5",
                           "family: quaternion 8", "family: alternating 4"}) {
    auto g = from_spec(spec);
    auto cat = maximal_subgroups(*g);
    auto rk = rank_search(*g);
    auto md = max_dim(*g, cat);
    INFO(spec);
    CHECK(rk.m <= md.value);
    CHECK(md.value <= rk.i);
    auto c1 = certify_family_from_generators(*g, rk.m_witness, cat);
    CHECK(c1.family.size() == static_cast<std::size_t>(rk.m));
    auto c2 = certify_irredundant_from_family(md.witness);
    CHECK(c2.elements.size() == static_cast<std::size_t>(md.value));
  }
}

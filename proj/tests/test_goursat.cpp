#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace maxdim;
using testutil::from_spec;

namespace {

bool catalogs_equal(MaximalCatalog const& a, MaximalCatalog const& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i].members == b[i].members)) return false;  // both canonically sorted
  return true;
}

}  // namespace

TEST_CASE("Z2 x Z2 product catalog: two standard entries plus one pullback") {
  auto z2 = testutil::z(2);
  auto dp = direct_product(*z2, *z2);
  auto cat = maximal_subgroups_of_product(dp);
  REQUIRE(cat.size() == 3);
  int pullbacks = 0;
  for (auto const& e : cat.entries)
    if (e.provenance == MaximalProvenance::pullback) ++pullbacks;
  CHECK(pullbacks == 1);
  CHECK(catalogs_equal(cat, maximal_subgroups(*dp.group)));
}

TEST_CASE("S3 x Z5: no pullbacks, standard entries only") {
  auto s3 = testutil::s3();
  auto z5 = testutil::z(5);
  auto dp = direct_product(*s3, *z5);
  auto cat = maximal_subgroups_of_product(dp);
  // standard entries: one per maximal of S3 (A3 and three <t>) and one per
  // maximal of Z5 (the trivial subgroup); S3/A3 = Z2 and Z5/1 = Z5 share no
  // quotient, so no pullbacks
  CHECK(cat.size() == 5);
  for (auto const& e : cat.entries)
    CHECK(e.provenance != MaximalProvenance::pullback);
  CHECK(catalogs_equal(cat, maximal_subgroups(*dp.group)));
}

TEST_CASE("Goursat equals the generic catalog on mixed products") {
  for (auto const* spec :
       {"family: directProduct [family: symmetric 3] [family: symmetric 3]",
        "family: directProduct [family: quaternion 8] [family: symmetric 3]",
        "family: directProduct [family: alternating 4] [family: cyclic 5]",
        "family: directProduct [family: elementaryAbelian 3 2] [family: cyclic 2]"}) {
    auto built = build_group(parse_group_spec(spec));
    REQUIRE(built.product);
    auto goursat = maximal_subgroups_of_product(*built.product);
    auto generic = maximal_subgroups(*built.group);
    INFO(spec);
    CHECK(catalogs_equal(goursat, generic));
  }
}

TEST_CASE("A5 x A5: 21 + 21 standard entries and 120 pullbacks") {
  auto a5 = testutil::a5();
  auto dp = direct_product(*a5, *a5);
  auto cat = maximal_subgroups_of_product(dp);
  REQUIRE(cat.size() == 162);
  std::map<MaximalProvenance, int> counts;
  for (auto const& e : cat.entries) ++counts[e.provenance];
  CHECK(counts[MaximalProvenance::standard_left] == 21);
  CHECK(counts[MaximalProvenance::standard_right] == 21);
  CHECK(counts[MaximalProvenance::pullback] == 120);  // one per automorphism
  // every pullback is a full diagonal copy of A5
  for (auto const& e : cat.entries)
    if (e.provenance == MaximalProvenance::pullback) CHECK(e.subgroup.order == 60);
}

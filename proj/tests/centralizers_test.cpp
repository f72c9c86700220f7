#include "upkit/centralizers.hpp"

#include <gtest/gtest.h>

using namespace upkit;

TEST(Centralizers, CentralizerOfMaxRootIsEverything) {
  RootSystem R(4);
  auto c = centralizer_of_rootset(R, {R.max_root()});
  EXPECT_EQ(static_cast<int>(c.size()), R.size());
}

TEST(Centralizers, CentralizerXLemma) {
  auto g = UpGroup::make(4, Field::make(5));
  for (RootId a = 0; a < g->roots().size(); ++a) EXPECT_TRUE(verify_centralizer_lemma(g, a, 100, a).pass);
}

TEST(Centralizers, DisplayedSupportsItemsTwoToFour) {
  for (int n : {4, 5}) {
    RootSystem R(n);
    for (const auto& cl : simple_root_centralizer_claims(R)) {
      if (cl.label.rfind("item 1", 0) == 0) continue;
      EXPECT_EQ(centralizer_of_rootset(R, cl.input), cl.claimed) << cl.label;
    }
  }
}

TEST(Centralizers, ItemOneMissesLongRoot) {
  RootSystem R(4);
  for (const auto& cl : simple_root_centralizer_claims(R)) {
    if (cl.label != "item 1, i=2") continue;
    auto got = centralizer_of_rootset(R, cl.input);
    EXPECT_NE(got, cl.claimed);
    EXPECT_NE(std::find(got.begin(), got.end(), R.id({2, -2})), got.end());
  }
}

TEST(Centralizers, EmptySetRejected) {
  RootSystem R(3);
  EXPECT_THROW(centralizer_of_rootset(R, {}), Error);
}

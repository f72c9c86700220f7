#include "upkit/group.hpp"

#include <gtest/gtest.h>

using namespace upkit;

namespace {
GroupPtr G(int n = 4, uint32_t p = 5, uint32_t k = 1) { return UpGroup::make(n, Field::make(p, k)); }
}

TEST(Group, GeneratorsAreSymplectic) {
  auto g = G();
  for (RootId a = 0; a < g->roots().size(); ++a)
    for (Field::V xi = 0; xi < 5; ++xi) {
      auto x = g->elem(a, xi);
      EXPECT_TRUE(x.is_symplectic());
      EXPECT_TRUE(x.is_unitriangular());
      EXPECT_EQ(x * g->elem(a, g->field().neg(xi)), g->identity());
    }
}

TEST(Group, InverseAndIdentity) {
  auto g = G(5, 7);
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    auto a = g->random(rng);
    EXPECT_TRUE((a * a.inverse()).is_identity());
  }
}

TEST(Group, NormalFormRoundTrip) {
  auto g = G(4, 5, 2);
  Rng rng(9);
  for (int t = 0; t < 200; ++t) {
    Coords c = g->random_coords(rng);
    EXPECT_EQ(normal_form_coords(g->from_coords(c)), c);
  }
}

TEST(Group, NormalFormRejectsNonSymplectic) {
  auto g = G();
  auto a = g->identity();
  a(0, 1) = 1;
  EXPECT_THROW(normal_form_coords(a), Error);
  EXPECT_THROW(a.validate(), Error);
}

TEST(Group, FiltrationLevel) {
  auto g = G();
  const auto& R = g->roots();
  EXPECT_EQ(filtration_level(g->identity()), 8);
  EXPECT_EQ(filtration_level(g->elem(R.max_root(), 1)), 7);
  Rng rng(1);
  for (int s = 1; s <= 7; ++s) EXPECT_GE(filtration_level(g->random_level(rng, s)), s);
}

TEST(Group, CommutatorConvention) {
  auto g = G();
  const auto& R = g->roots();
  auto a = g->elem(R.simple(1), 1), b = g->elem(R.simple(2), 1);
  EXPECT_EQ(commutator(a, b), a * b * a.inverse() * b.inverse());
}

TEST(Group, PikAndU1Membership) {
  auto g = G();
  const auto& R = g->roots();
  EXPECT_TRUE(in_P_i_k(g->identity(), 3, 2));
  EXPECT_TRUE(in_U1(g->elem(R.chain(1, 3), 2)));
  EXPECT_FALSE(in_U1(g->elem(R.simple(2), 1)));
  EXPECT_FALSE(in_U1_level2(g->elem(R.simple(1), 1)));
  EXPECT_FALSE(in_P_i_k(g->elem(R.chain(1, 2), 1), 2, 2));
  EXPECT_TRUE(in_P_i_k(g->elem(R.chain(2, 3), 1), 2, 2));
  EXPECT_THROW(in_P_i_k(g->identity(), 0, 1), Error);
}

TEST(Group, MixedContextsRejected) {
  auto a = G()->identity();
  auto b = G(4, 7)->identity();
  EXPECT_THROW(a * b, Error);
}

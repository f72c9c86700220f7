#include "upkit/roots.hpp"

#include <gtest/gtest.h>

using namespace upkit;

TEST(Roots, CountsAndMaximalRoot) {
  for (int n = 2; n <= 6; ++n) {
    RootSystem R(n);
    EXPECT_EQ(R.size(), n * n);
    EXPECT_EQ(R[R.max_root()].height, 2 * n - 1);
    EXPECT_EQ(R[R.max_root()].name, (RootName{1, -1}));
    int longs = 0;
    for (const auto& r : R.roots()) longs += r.is_long;
    EXPECT_EQ(longs, n);
  }
}

TEST(Roots, CanonicalOrderByHeightRowCol) {
  RootSystem R(4);
  for (RootId a = 1; a < R.size(); ++a) {
    const Root &x = R[a - 1], &y = R[a];
    EXPECT_LE(x.height, y.height);
    if (x.height == y.height) EXPECT_LT(x.row, y.row);
  }
}

TEST(Roots, ChainsAndSimpleRoots) {
  RootSystem R(4);
  EXPECT_EQ(R[R.chain(1, 4)].name, (RootName{1, -4}));
  EXPECT_EQ(R[R.chain(1, 2)].name, (RootName{1, 3}));
  EXPECT_EQ(R[R.simple(4)].name, (RootName{4, -4}));
  EXPECT_EQ(R.simple(2), R.chain(2, 2));
  // alpha_max - alpha_1 - ... - alpha_i = e_1 + e_{i+1}
  for (int i = 1; i < 4; ++i) EXPECT_EQ(R.diff(R.max_root(), R.chain(1, i)), R.id({1, -(i + 1)}));
}

TEST(Roots, SumAndDiff) {
  RootSystem R(3);
  for (RootId a = 0; a < R.size(); ++a)
    for (RootId b = 0; b < R.size(); ++b)
      if (auto s = R.sum(a, b)) EXPECT_EQ(R.diff(*s, b), a);
  EXPECT_FALSE(R.sum(R.max_root(), R.simple(1)));
}

TEST(Roots, UnknownNameThrows) {
  RootSystem R(3);
  EXPECT_THROW(R.id({2, 1}), Error);
  EXPECT_THROW(RootSystem(1), Error);
}

TEST(StructureConstants, MagnitudesAndFieldIndependence) {
  auto a = compute_structure_constants(4, Field::make(5));
  auto b = compute_structure_constants(4, Field::make(11));
  EXPECT_EQ(a.N1, b.N1);
  EXPECT_EQ(a.N2, b.N2);
  RootSystem R(4);
  for (const auto& [k, v] : a.N1) {
    auto s = R.sum(k.first, k.second);
    bool two = !R[k.first].is_long && !R[k.second].is_long && R[*s].is_long;
    EXPECT_EQ(std::abs(v), two ? 2 : 1);
  }
}

#include "upkit/pcmaps.hpp"

#include <gtest/gtest.h>

using namespace upkit;

namespace {
GroupPtr G() { return UpGroup::make(4, Field::make(5)); }
}

TEST(PcMaps, EveryKindPreservesCommutators) {
  auto g = G();
  int i = 0;
  for (auto kind : all_map_kinds()) {
    auto d = random_standard_composition(g, 100 + i++, {kind});
    EXPECT_TRUE(is_pc_map(compose(d), g, 100, 7).pass) << d.front().describe();
  }
}

TEST(PcMaps, InverseDescriptor) {
  auto g = G();
  Rng rng(5);
  auto comp = random_standard_composition(g, 11, all_map_kinds());
  for (const auto& d : comp) {
    auto inv = d.inverse();
    for (int t = 0; t < 20; ++t) {
      auto a = g->random(rng);
      EXPECT_EQ(apply_map(inv, apply_map(d, a)), a) << d.describe();
    }
  }
}

TEST(PcMaps, ExtremalMapsAreHomomorphisms) {
  auto g = G();
  Rng rng(2);
  for (auto d : {MapDescriptor::extremal1(g, 3), MapDescriptor::extremal2(g, 2)})
    for (int t = 0; t < 200; ++t) {
      auto a = g->random(rng), b = g->random(rng);
      EXPECT_EQ(apply_map(d, a * b), apply_map(d, a) * apply_map(d, b));
    }
}

TEST(PcMaps, CentralMapMovesOnlyTheCorner) {
  auto g = G();
  Rng rng(4);
  auto f = random_central_function(g, rng);
  auto d = MapDescriptor::central(f);
  for (int t = 0; t < 50; ++t) {
    auto a = g->random(rng);
    auto c = normal_form_coords(apply_map(d, a) * a.inverse());
    EXPECT_TRUE(support_within(c, {g->roots().max_root()}));
  }
  EXPECT_TRUE(apply_map(d, g->identity()).is_identity());
}

TEST(PcMaps, InvalidDescriptors) {
  auto g = G();
  EXPECT_THROW(MapDescriptor::diagonal(g, {1, 0, 1, 1}).validate(), Error);
  EXPECT_THROW(MapDescriptor::semidiagonal(g, 0).validate(), Error);
  EXPECT_THROW(MapDescriptor::diagonal(g, {1, 1}).validate(), Error);
}

TEST(PcMaps, NonPcMapIsCaught) {
  auto g = G();
  const auto& R = g->roots();
  MapFn bad = [&](const UpMatrix& a) {
    auto out = a;
    if (a(0, 1)) out.right_mul_elem(R.simple(2), 1);
    return out;
  };
  auto rep = is_pc_map(bad, g, 200, 1);
  EXPECT_FALSE(rep.pass);
  EXPECT_TRUE(rep.counterexample.has_value());
}

#include "upkit/io.hpp"

#include <gtest/gtest.h>

using namespace upkit;

TEST(Io, FieldElementsAreCoefficientArrays) {
  auto F = Field::make(5, 2);
  for (Field::V a = 0; a < F->q(); ++a) EXPECT_EQ(elem_from_json(*F, elem_json(*F, a)), a);
  EXPECT_EQ(elem_json(*F, 7), json::parse("[2, 1]"));
  EXPECT_THROW(elem_from_json(*F, json::parse("[5, 0]")), Error);
}

TEST(Io, RootsAndMatrices) {
  auto g = UpGroup::make(4, Field::make(7));
  const auto& R = g->roots();
  EXPECT_EQ(root_json(R[R.max_root()]), json::parse(R"({"i": 1, "j": -1})"));
  for (RootId r = 0; r < R.size(); ++r) EXPECT_EQ(root_from_json(R, root_json(R[r])), r);
  Rng rng(1);
  auto a = g->random(rng);
  EXPECT_EQ(matrix_from_json(g, matrix_json(a)), a);
  EXPECT_EQ(word_to_matrix(word_from_json(g, word_json(normal_form(a)))), a);
  EXPECT_EQ(structure_table_json(*g).size(), g->N().N1.size());
}

TEST(Io, CompositionRoundTrip) {
  auto g = UpGroup::make(4, Field::make(5, 2));
  auto comp = random_standard_composition(g, 17, all_map_kinds());
  auto loaded = load_oracle(json::parse(composition_file(g, comp).dump()), nullptr);
  ASSERT_EQ(loaded.maps.size(), comp.size());
  Rng rng(2);
  for (int t = 0; t < 30; ++t) {
    auto a = g->random(rng);
    EXPECT_EQ(loaded.phi(a), apply_composition(comp, a));
  }
}

TEST(Io, CentralTableListsNonzeroEntriesOnly) {
  auto g = UpGroup::make(4, Field::make(5));
  auto f = std::make_shared<CentralFunction>(g);
  f->set(f->index({1, 0, 2, 0}), 3);
  auto j = descriptor_json(MapDescriptor::central(f));
  ASSERT_EQ(j["table"].size(), 1u);
  auto back = descriptor_from_json(g, j);
  EXPECT_EQ(*back.f, *f);
}

TEST(Io, LookupTableOracle) {
  auto g = UpGroup::make(2, Field::make(5));
  auto comp = random_standard_composition(g, 5, {MapKind::Inner, MapKind::Diagonal});
  auto table = lookup_table_json(g, compose(comp));
  auto loaded = load_oracle(table, nullptr);
  EXPECT_EQ(loaded.source, "lookup");
  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    auto a = g->random(rng);
    EXPECT_EQ(loaded.phi(a), apply_composition(comp, a));
  }
}

TEST(Io, BadInputs) {
  auto g = UpGroup::make(4, Field::make(5));
  EXPECT_THROW(descriptor_from_json(g, json::parse(R"({"kind": "rotation"})")), Error);
  EXPECT_THROW(descriptor_from_json(g, json::parse(R"({"kind": "diagonal", "t": [1, 0, 1, 1]})")), Error);
  EXPECT_THROW(load_oracle(json::parse("[]"), nullptr), Error);
}

TEST(Io, ReportsOmitTimingByDefault) {
  LemmaParams p;
  p.trials = 20;
  auto r = run_lemma("center", p);
  auto j = report_json(r);
  EXPECT_FALSE(j.contains("elapsed_ms"));
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["params"]["seed"], 42);
  EXPECT_TRUE(report_json(r, true).contains("elapsed_ms"));
}

#include "upkit/harness.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace upkit;

namespace {
LemmaParams quick() {
  LemmaParams p;
  p.trials = 40;
  return p;
}
}  // namespace

TEST(Harness, CatalogIsComplete) {
  const std::set<std::string> expected = {
      "steinberg", "structure_constants", "standard_maps", "standard_central_map", "extremal_homomorphism",
      "filtration", "center", "symmetry_of_zeros", "transvections_in_up_s", "extract_from_u1", "extract_middle",
      "pc_preserves_up_s", "pc_preserves_p_i_k", "centralizer_x", "simple_roots_as_c", "corollary_centralizers",
      "t12", "laundry", "u1", "simple_roots", "x_dirty", "n_1_to_n", "field_autom", "up_to_ai",
      "ai_giblets", "ai_only_skin", "ai_prod_of_simple", "ai_skin_max", "skinmax_expansion", "ai_is_central",
      "classifier"};
  std::set<std::string> have;
  for (const auto& l : lemma_catalog()) have.insert(l.id);
  for (const auto& id : expected) EXPECT_TRUE(have.count(id)) << id;
}

TEST(Harness, UnknownLemmaAndBadParams) {
  try {
    run_lemma("no_such_lemma", quick());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnknownLemma);
  }
  auto p = quick();
  p.p = 3;
  try {
    run_lemma("steinberg", p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BadParams);
  }
  p = quick();
  p.n = 3;
  EXPECT_THROW(run_lemma("classifier", p), Error);
  p = quick();
  p.fault = "oracle_output";
  EXPECT_THROW(run_lemma("steinberg", p), Error);
}

TEST(Harness, ReportsAreDeterministic) {
  auto a = run_lemma("pc_preserves_p_i_k", quick());
  auto b = run_lemma("pc_preserves_p_i_k", quick());
  EXPECT_EQ(a.trials, b.trials);
  EXPECT_EQ(a.notes, b.notes);
  EXPECT_TRUE(a.pass);
}

TEST(Harness, FailuresNonEmptyIffFail) {
  for (const char* id : {"center", "simple_roots_as_c", "extract_middle"}) {
    auto r = run_lemma(id, quick());
    EXPECT_EQ(r.failures.empty(), r.pass) << id;
  }
}

TEST(Harness, ExtractFromU1Readings) {
  EXPECT_TRUE(run_extract_from_u1(quick(), 2).pass);
  auto lit = run_extract_from_u1(quick(), 1);
  EXPECT_FALSE(lit.pass);
  EXPECT_FALSE(lit.failures.empty());
}

TEST(Harness, FaultInjectionIsDetected) {
  auto p = quick();
  p.fault = "structure_constant";
  auto r = run_lemma("steinberg", p);
  EXPECT_FALSE(r.pass);
  EXPECT_NE(r.failures.front().witness.find("R4 (e1-e2, e2-e3)"), std::string::npos);
  p.fault = "oracle_output";
  EXPECT_FALSE(run_lemma("classifier", p).pass);
  EXPECT_FALSE(run_lemma("ai_is_central", p).pass);
  p.fault = "central_table";
  EXPECT_FALSE(run_lemma("classifier", p).pass);
}

TEST(Harness, RunAllSkipsLargeRankEntries) {
  auto p = quick();
  p.n = 3;
  p.trials = 10;
  auto s = run_all(p);
  EXPECT_FALSE(s.skipped.empty());
  for (const auto& r : s.reports) EXPECT_GE(3, find_lemma(r.lemma)->min_n);
}

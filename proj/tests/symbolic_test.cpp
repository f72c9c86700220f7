#include "upkit/symbolic.hpp"

#include <gtest/gtest.h>

using namespace upkit;

TEST(SmoothRational, ArithmeticAndNormalization) {
  auto half = SmoothRational(1) / SmoothRational(2);
  EXPECT_EQ(half + half, SmoothRational(1));
  EXPECT_EQ(SmoothRational(12), SmoothRational::make(1, 2, 1));
  EXPECT_EQ((SmoothRational(5) / SmoothRational(3)) * SmoothRational(3), SmoothRational(5));
  EXPECT_THROW(SmoothRational(1) / SmoothRational(5), Error);
  EXPECT_THROW(SmoothRational(1) / SmoothRational(0), Error);
  auto F = Field::make(7);
  EXPECT_EQ(half.to_field(*F), 4u);
}

TEST(SparsePoly, ParseAndPrint) {
  VarTable v;
  auto p = SparsePoly::parse("-2 a1 c12 + a1^2 b2 + 3", v);
  EXPECT_EQ(p.to_string(v), SparsePoly::parse(p.to_string(v), v).to_string(v));
  EXPECT_EQ(p.degree_in(*v.find("a1")), 2);
  auto q = p.substitute(*v.find("a1"), SparsePoly(1));
  EXPECT_EQ(q, SparsePoly::parse("-2 c12 + b2 + 3", v));
}

TEST(SparsePoly, RingLaws) {
  VarTable v;
  auto a = SparsePoly::parse("x + 2 y", v), b = SparsePoly::parse("x y - 1", v), c = SparsePoly::parse("3 z + x", v);
  EXPECT_EQ(a * (b + c), a * b + a * c);
  EXPECT_EQ((a * b) * c, a * (b * c));
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_TRUE(a.equal_up_to_sign(SparsePoly::parse("x - 2 y", v)));
}

TEST(SymMatrix, InverseAndEvaluation) {
  auto g = UpGroup::make(3, Field::make(7));
  VarTable v;
  const auto& R = g->roots();
  std::vector<SymFactor> spec;
  for (RootId r = 0; r < R.size(); ++r) spec.push_back({r, SparsePoly::var(v.id("t" + std::to_string(r)))});
  auto m = parametric_element(g, spec);
  EXPECT_TRUE((m * m.inverse()).is_identity());
  std::vector<Field::V> vals(v.size());
  for (size_t i = 0; i < vals.size(); ++i) vals[i] = static_cast<Field::V>((3 * i + 1) % 7);
  auto num = m.eval(vals);
  auto nf = sym_normal_form(m);
  for (RootId r = 0; r < R.size(); ++r) EXPECT_EQ(nf[r].eval(g->field(), vals), normal_form_coords(num)[r]);
}

TEST(Symbolic, LaundryDisplaysMatch) {
  for (int n : {3, 4}) {
    auto rep = verify_laundry(n);
    EXPECT_TRUE(rep.report.pass) << (rep.report.failures.empty() ? "" : rep.report.failures.front());
  }
}

TEST(Symbolic, SkinMaxRecursionMatchesButCentralTermIsOmitted) {
  auto rep = verify_skinmax_expansion(4);
  EXPECT_FALSE(rep.report.pass);
  for (const auto& f : rep.report.failures) EXPECT_NE(f.find("x_2e1"), std::string::npos) << f;
}

TEST(Symbolic, ConsistentWithMatrixEngine) {
  auto g = UpGroup::make(4, Field::make(5));
  EXPECT_TRUE(symbolic_consistency(g, 50, 3).pass);
}

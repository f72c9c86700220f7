#include "upkit/classify.hpp"

#include <gtest/gtest.h>

using namespace upkit;

TEST(Classify, RoundTripSmallField) {
  auto g = UpGroup::make(4, Field::make(5));
  for (uint64_t s = 1; s <= 5; ++s) {
    auto comp = random_standard_composition(g, s, all_map_kinds());
    auto phi = compose(comp);
    auto fz = classify(g, phi, 50, s);
    EXPECT_TRUE(fz.verification.pass);
    EXPECT_TRUE(verify_factorization(g, fz.descriptors(), phi, 100, s + 99).pass);
  }
}

TEST(Classify, RecoversFrobeniusPower) {
  auto g = UpGroup::make(4, Field::make(5, 2));
  std::vector<MapDescriptor> comp = {MapDescriptor::field(g, 1), MapDescriptor::extremal1(g, 7)};
  auto fz = classify(g, compose(comp), 30, 3);
  EXPECT_EQ(fz.frobenius_power, 1);
}

TEST(Classify, IdentityHasTrivialResidual) {
  auto g = UpGroup::make(4, Field::make(7));
  auto fz = classify(g, [](const UpMatrix& a) { return a; }, 30, 1);
  EXPECT_TRUE(fz.certificate.f->is_zero());
}

TEST(Classify, RejectsSmallRankAndNonPcMaps) {
  auto g3 = UpGroup::make(3, Field::make(5));
  EXPECT_THROW(classify(g3, [](const UpMatrix& a) { return a; }, 10, 1), Error);
  auto g = UpGroup::make(4, Field::make(5));
  const auto& R = g->roots();
  MapFn bad = [&](const UpMatrix& a) {
    auto out = a;
    if (a(0, 1)) out.right_mul_elem(R.chain(2, 3), 1);
    return out;
  };
  EXPECT_THROW(classify(g, bad, 10, 1), Error);
}

TEST(Classify, CommutatorSolver) {
  auto g = UpGroup::make(5, Field::make(7));
  auto supp = u12_support(g->roots());
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    auto a = g->random_supported(rng, supp);
    auto [b, c] = express_U12_as_commutator(a);
    EXPECT_EQ(commutator(b, c), a);
  }
  EXPECT_THROW(express_U12_as_commutator(g->elem(g->roots().simple(2), 1)), Error);
}

TEST(Classify, CertificateFlagsNonCentralResidual) {
  auto g = UpGroup::make(4, Field::make(5));
  const auto& R = g->roots();
  MapFn bad = [&](const UpMatrix& a) {
    auto out = a;
    if (a(0, 1)) out.right_mul_elem(R.chain(2, 3), 1);
    return out;
  };
  EXPECT_FALSE(residual_central_certificate(g, bad, 20, 1).report.pass);
}

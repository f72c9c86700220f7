#include "upkit/field.hpp"

#include <gtest/gtest.h>

using namespace upkit;

TEST(Field, RejectsBadCharacteristic) {
  EXPECT_THROW(Field::make(4), Error);
  EXPECT_THROW(Field::make(2), Error);
  EXPECT_THROW(Field::make(3, 2), Error);
  try {
    Field::make(9);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotPrime);
  }
}

TEST(Field, PrimeFieldArithmetic) {
  auto F = Field::make(7);
  EXPECT_EQ(F->add(5, 4), 2u);
  EXPECT_EQ(F->mul(3, 5), 1u);
  EXPECT_EQ(F->inv(3), 5u);
  EXPECT_EQ(F->from_int(-1), 6u);
  EXPECT_EQ(F->lift(6), -1);
  EXPECT_THROW(F->inv(0), Error);
}

TEST(Field, ExtensionFieldIsAField) {
  auto F = Field::make(5, 2);
  ASSERT_EQ(F->q(), 25u);
  for (Field::V a = 1; a < F->q(); ++a) {
    EXPECT_EQ(F->mul(a, F->inv(a)), 1u);
    EXPECT_EQ(F->pow(a, 24), 1u);
  }
  for (Field::V a = 0; a < F->q(); ++a)
    for (Field::V b = 0; b < F->q(); ++b) {
      EXPECT_EQ(F->frobenius(F->add(a, b), 1), F->add(F->frobenius(a, 1), F->frobenius(b, 1)));
      EXPECT_EQ(F->frobenius(F->mul(a, b), 1), F->mul(F->frobenius(a, 1), F->frobenius(b, 1)));
    }
}

TEST(Field, FrobeniusFixesExactlyPrimeField) {
  auto F = Field::make(7, 2);
  int fixed = 0;
  for (Field::V a = 0; a < F->q(); ++a) {
    fixed += F->frobenius(a, 1) == a;
    EXPECT_EQ(F->frobenius(a, 2), a);
    EXPECT_EQ(F->frobenius(F->frobenius(a, 1), -1), a);
  }
  EXPECT_EQ(fixed, 7);
}

TEST(Field, CoefficientsRoundTrip) {
  auto F = Field::make(5, 3);
  for (Field::V a = 0; a < F->q(); ++a) EXPECT_EQ(F->from_coeffs(F->coeffs(a)), a);
}

TEST(FieldElem, MixedFieldsRejected) {
  auto F5 = Field::make(5), F7 = Field::make(7);
  FieldElem a(F5, 1), b(F7, 1);
  EXPECT_THROW(a + b, Error);
  EXPECT_EQ((FieldElem(F5, 2) * FieldElem(F5, 3)).value(), 1u);
}

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "upkit/error.hpp"

namespace upkit {

// Ascending coefficients of a monic polynomial, length k + 1.
struct FieldSpec {
  uint32_t p = 0;
  uint32_t k = 0;
  std::vector<uint32_t> modulus;

  uint32_t q() const;
  bool operator==(const FieldSpec&) const = default;
};

// F_{p^k} with elements encoded as integers sum c_i p^i over the basis 1, x, ..., x^{k-1}.
class Field {
 public:
  using V = uint32_t;

  static std::shared_ptr<const Field> make(uint32_t p, uint32_t k = 1);
  static std::vector<uint32_t> smallest_irreducible(uint32_t p, uint32_t k);

  const FieldSpec& spec() const { return spec_; }
  uint32_t p() const { return spec_.p; }
  uint32_t k() const { return spec_.k; }
  uint32_t q() const { return q_; }

  V zero() const { return 0; }
  V one() const { return 1; }
  V add(V a, V b) const {
    if (spec_.k == 1) {
      V s = a + b;
      return s >= q_ ? s - q_ : s;
    }
    if (!add_table_.empty()) return add_table_[a * q_ + b];
    return add_slow(a, b);
  }
  V neg(V a) const { return neg_[a]; }
  V sub(V a, V b) const { return add(a, neg_[b]); }
  V mul(V a, V b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  V inv(V a) const;
  V div(V a, V b) const { return mul(a, inv(b)); }
  V pow(V a, uint64_t e) const;
  // a^(p^m), m taken mod k.
  V frobenius(V a, int64_t m) const;
  V from_int(int64_t x) const;
  V from_coeffs(const std::vector<uint32_t>& c) const;
  std::vector<uint32_t> coeffs(V a) const;
  bool in_prime_field(V a) const { return a < spec_.p; }
  // Smallest-absolute-value integer lift of a prime-field element.
  std::optional<int64_t> lift(V a) const;
  std::string to_string(V a) const;

 private:
  Field(uint32_t p, uint32_t k);
  V add_slow(V a, V b) const;
  V mul_poly(V a, V b) const;

  FieldSpec spec_;
  uint32_t q_;
  std::vector<V> neg_;
  std::vector<V> add_table_;
  std::vector<V> exp_;
  std::vector<uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const Field>;

class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(FieldPtr f, Field::V v) : f_(std::move(f)), v_(v) {}
  static FieldElem from_int(const FieldPtr& f, int64_t x) { return {f, f->from_int(x)}; }

  const FieldPtr& field() const { return f_; }
  Field::V value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem inv() const;
  FieldElem pow(uint64_t e) const;
  FieldElem frobenius(int64_t m) const;
  std::vector<uint32_t> coeffs() const { return f_->coeffs(v_); }
  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

 private:
  const Field& same(const FieldElem& o) const;
  FieldPtr f_;
  Field::V v_ = 0;
};

bool is_prime(uint64_t n);
std::vector<uint64_t> prime_factors(uint64_t n);

}  // namespace upkit

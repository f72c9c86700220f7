#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "upkit/centralizers.hpp"
#include "upkit/group.hpp"

namespace upkit {

// num * 2^e2 * 3^e3 with num coprime to 6. Only 2 and 3 may ever be inverted.
class SmoothRational {
 public:
  SmoothRational(int64_t v = 0);
  static SmoothRational make(int64_t num, int e2, int e3);

  bool is_zero() const { return num_ == 0; }
  int64_t num() const { return num_; }
  int e2() const { return e2_; }
  int e3() const { return e3_; }
  int sign() const { return (num_ > 0) - (num_ < 0); }
  bool is_integer() const { return e2_ >= 0 && e3_ >= 0; }
  std::optional<int64_t> as_integer() const;

  SmoothRational operator-() const;
  SmoothRational operator+(const SmoothRational& o) const;
  SmoothRational operator-(const SmoothRational& o) const { return *this + (-o); }
  SmoothRational operator*(const SmoothRational& o) const;
  // Division by a {2,3}-smooth value; anything else throws.
  SmoothRational operator/(const SmoothRational& o) const;
  SmoothRational abs() const { return sign() < 0 ? -*this : *this; }
  bool operator==(const SmoothRational& o) const { return num_ == o.num_ && e2_ == o.e2_ && e3_ == o.e3_; }
  bool operator!=(const SmoothRational& o) const { return !(*this == o); }

  Field::V to_field(const Field& F) const;
  std::string to_string() const;

 private:
  void normalize();
  int64_t num_ = 0;
  int e2_ = 0, e3_ = 0;
};

// Sorted (variable, exponent) pairs.
using Monomial = std::vector<std::pair<int, int>>;

Monomial mono_mul(const Monomial& a, const Monomial& b);
std::optional<Monomial> mono_div(const Monomial& a, const Monomial& b);

class VarTable {
 public:
  int id(const std::string& name);  // registers on first use
  std::optional<int> find(const std::string& name) const;
  const std::string& name(int v) const { return names_.at(v); }
  int size() const { return static_cast<int>(names_.size()); }

 private:
  std::vector<std::string> names_;
};

class SparsePoly {
 public:
  SparsePoly() = default;
  SparsePoly(const SmoothRational& c);
  static SparsePoly var(int v, int exp = 1);
  static SparsePoly term(const SmoothRational& c, Monomial m);
  // Terms like "-2 a1 am112 c12 + a1^2 cm11"; unknown names are registered.
  static SparsePoly parse(const std::string& s, VarTable& vars);

  const std::map<Monomial, SmoothRational>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  SmoothRational coeff(const Monomial& m) const;

  SparsePoly operator-() const;
  SparsePoly operator+(const SparsePoly& o) const;
  SparsePoly operator-(const SparsePoly& o) const;
  SparsePoly operator*(const SparsePoly& o) const;
  SparsePoly& operator+=(const SparsePoly& o);
  bool operator==(const SparsePoly& o) const { return t_ == o.t_; }
  bool operator!=(const SparsePoly& o) const { return t_ != o.t_; }

  int degree_in(int v) const;
  SparsePoly coeff_in(int v, int exp) const;  // polynomial multiplying v^exp
  SparsePoly substitute(int v, const SparsePoly& value) const;
  std::optional<SparsePoly> div_monomial(const Monomial& m) const;
  Field::V eval(const Field& F, const std::vector<Field::V>& values) const;
  std::string to_string(const VarTable& vars) const;
  // True when every monomial agrees and coefficients agree in absolute value.
  bool equal_up_to_sign(const SparsePoly& o) const;

 private:
  void add_term(const Monomial& m, const SmoothRational& c);
  std::map<Monomial, SmoothRational> t_;
};

std::string mono_string(const Monomial& m, const VarTable& vars);

// Unitriangular 2n x 2n matrix over SparsePoly, tied to a group for root data.
class SymMatrix {
 public:
  SymMatrix() = default;
  static SymMatrix identity(const GroupPtr& g);
  static SymMatrix elem(const GroupPtr& g, RootId a, const SparsePoly& xi);

  const GroupPtr& group() const { return g_; }
  int dim() const { return d_; }
  const SparsePoly& operator()(int r, int c) const { return e_[r * d_ + c]; }
  SparsePoly& operator()(int r, int c) { return e_[r * d_ + c]; }

  SymMatrix operator*(const SymMatrix& o) const;
  SymMatrix inverse() const;
  bool operator==(const SymMatrix& o) const { return e_ == o.e_; }
  bool is_identity() const;
  UpMatrix eval(const std::vector<Field::V>& values) const;

 private:
  GroupPtr g_;
  int d_ = 0;
  std::vector<SparsePoly> e_;
};

using SymFactor = std::pair<RootId, SparsePoly>;

SymMatrix parametric_element(const GroupPtr& g, const std::vector<SymFactor>& spec);
SymMatrix sym_commutator(const SymMatrix& x, const SymMatrix& y);
std::vector<SparsePoly> sym_normal_form(const SymMatrix& a);  // indexed by RootId
std::vector<RootId> sym_support(const std::vector<SparsePoly>& coords);
std::string dump_coords(const GroupPtr& g, const std::vector<SparsePoly>& coords, const VarTable& vars);

struct SymbolicReport {
  CheckReport report;
  std::vector<std::string> notes;  // informational lines
  std::string dump;                 // expanded polynomials, stable text form
};

// Root of the shape alpha_max - (p copies of alpha_1) - (q copies of alpha_2), or alpha_1 + alpha_2 for "12".
RootId laundry_root(const RootSystem& R, const std::string& tag);

SymbolicReport verify_laundry(int n);
SymbolicReport verify_skinmax_expansion(int n);
// Evaluates symbolic commutators at random points and compares with the matrix engine.
CheckReport symbolic_consistency(const GroupPtr& g, int trials, uint64_t seed);

}  // namespace upkit

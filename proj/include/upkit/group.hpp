#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "upkit/field.hpp"
#include "upkit/rng.hpp"
#include "upkit/roots.hpp"

namespace upkit {

class UpMatrix;
struct RootWord;

// Normal-form coordinates: one coefficient per root, indexed by RootId.
using Coords = std::vector<Field::V>;

// Up(2n, F): rank, field and root data shared by all matrices of the group.
class UpGroup : public std::enable_shared_from_this<UpGroup> {
 public:
  static std::shared_ptr<const UpGroup> make(int n, const FieldPtr& f);

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  const RootSystem& roots() const { return *roots_; }
  const StructureConstants& N() const;
  bool same_context(const UpGroup& o) const;

  UpMatrix identity() const;
  UpMatrix elem(RootId a, Field::V xi) const;
  UpMatrix from_coords(const Coords& c) const;
  UpMatrix from_word(const RootWord& w) const;
  UpMatrix random(Rng& rng) const;
  // Random element whose normal form is supported on `support`.
  UpMatrix random_supported(Rng& rng, const std::vector<RootId>& support) const;
  UpMatrix random_level(Rng& rng, int s) const;
  Coords random_coords(Rng& rng) const;

  // Mirror entry sign of the short-root generator (0 for long roots).
  int mirror_sign(RootId a) const { return mirror_sign_[a]; }
  Field::V gram(int r, int c) const;  // 0-based

 private:
  UpGroup(int n, FieldPtr f);
  int n_;
  FieldPtr field_;
  RootSystemPtr roots_;
  std::vector<int> mirror_sign_;
  mutable std::once_flag consts_once_;
  mutable std::unique_ptr<StructureConstants> consts_;
};

using GroupPtr = std::shared_ptr<const UpGroup>;

class UpMatrix {
 public:
  UpMatrix() = default;
  UpMatrix(GroupPtr g, std::vector<Field::V> entries);

  const GroupPtr& group() const { return g_; }
  int dim() const { return g_->dim(); }
  // 0-based access.
  Field::V operator()(int r, int c) const { return a_[r * dim() + c]; }
  Field::V& operator()(int r, int c) { return a_[r * dim() + c]; }
  const std::vector<Field::V>& entries() const { return a_; }

  UpMatrix operator*(const UpMatrix& o) const;
  UpMatrix inverse() const;
  bool operator==(const UpMatrix& o) const { return a_ == o.a_; }
  bool operator!=(const UpMatrix& o) const { return a_ != o.a_; }
  bool is_identity() const;

  // In-place multiplication by a root generator.
  void left_mul_elem(RootId a, Field::V xi);
  void right_mul_elem(RootId a, Field::V xi);

  bool is_unitriangular() const;
  bool is_symplectic() const;
  void validate() const;  // throws NotInGroup
  std::string to_string() const;

 private:
  GroupPtr g_;
  std::vector<Field::V> a_;
};

struct RootWord {
  GroupPtr g;
  std::vector<std::pair<RootId, Field::V>> terms;

  Coords coords() const;
  static RootWord from_coords(const GroupPtr& g, const Coords& c);
};

UpMatrix commutator(const UpMatrix& a, const UpMatrix& b);
UpMatrix elem_unipotent(const GroupPtr& g, RootId a, Field::V xi);
UpMatrix word_to_matrix(const RootWord& w);

// Throws NotInGroup if `a` is not a unitriangular symplectic matrix.
Coords normal_form_coords(const UpMatrix& a);
RootWord normal_form(const UpMatrix& a);

// Smallest height with a nonzero coefficient; 2n for the identity.
int filtration_level(const UpMatrix& a);
bool in_P_i_k(const UpMatrix& a, int i, int k);
bool in_U1(const UpMatrix& a);
bool in_U1_level2(const UpMatrix& a);
bool support_within(const Coords& c, const std::vector<RootId>& allowed);
std::vector<RootId> support(const Coords& c);

// Diagonal entries diag(t_1..t_n, t_n^-1..t_1^-1).
std::vector<Field::V> torus_elem(const UpGroup& g, const std::vector<Field::V>& t);
UpMatrix torus_conjugate(const std::vector<Field::V>& diag, const UpMatrix& a);

void check_same(const UpMatrix& a, const UpMatrix& b);

}  // namespace upkit

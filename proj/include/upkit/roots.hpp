#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "upkit/error.hpp"
#include "upkit/field.hpp"

namespace upkit {

// (i, j): e_i - e_j for j > 0, e_i + e_|j| for j < 0, 2e_i for j = -i.
struct RootName {
  int i = 0;
  int j = 0;
  auto operator<=>(const RootName&) const = default;
};

struct Root {
  RootName name;
  std::vector<int> m;  // simple-root coefficients
  int height = 0;
  bool is_long = false;
  int row = 0;  // 1-based matrix position carrying the coefficient
  int col = 0;
  std::string label() const;
};

using RootId = int;  // index into the canonical order

class RootSystem {
 public:
  explicit RootSystem(int n);
  static std::shared_ptr<const RootSystem> make(int n);

  int n() const { return n_; }
  int size() const { return static_cast<int>(roots_.size()); }
  const Root& operator[](RootId id) const { return roots_[id]; }
  const std::vector<Root>& roots() const { return roots_; }

  RootId id(const RootName& name) const;
  std::optional<RootId> find(const RootName& name) const;
  std::optional<RootId> from_m(const std::vector<int>& m) const;
  // Root at matrix position (row, col), if any; only rows <= n carry roots.
  std::optional<RootId> at(int row, int col) const;
  std::optional<RootId> sum(RootId a, RootId b) const;
  std::optional<RootId> diff(RootId a, RootId b) const;  // a - b
  RootId simple(int i) const { return simple_[i - 1]; }  // alpha_i, 1-based
  RootId max_root() const { return max_; }
  int max_height() const { return 2 * n_ - 1; }
  const std::vector<RootId>& of_height(int h) const { return by_height_[h]; }
  std::vector<RootId> perp(RootId a) const;
  // alpha_i + ... + alpha_j as coefficient vector lookup, 1-based inclusive.
  RootId chain(int i, int j) const;

 private:
  int n_;
  std::vector<Root> roots_;
  std::map<RootName, RootId> by_name_;
  std::map<std::vector<int>, RootId> by_m_;
  std::vector<int> at_;  // (row-1)*2n + (col-1) -> id or -1
  std::vector<std::vector<RootId>> by_height_;
  std::vector<RootId> simple_;
  RootId max_ = -1;
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

std::vector<Root> positive_roots(int n);

// Measured Chevalley structure constants relative to [a,b] = a b a^-1 b^-1.
struct StructureConstants {
  int n = 0;
  // N1[(a,b)] for a + b in Phi. N2[(a,b)] is the coefficient of the second
  // root term: x_{a+2b}(N2 xi zeta^2) when a is long, x_{2a+b}(N2 xi^2 zeta)
  // when b is long.
  std::map<std::pair<RootId, RootId>, int> N1;
  std::map<std::pair<RootId, RootId>, int> N2;

  int n1(RootId a, RootId b) const;
  int n2(RootId a, RootId b) const;
};

StructureConstants compute_structure_constants(int n, const FieldPtr& field);

}  // namespace upkit

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "upkit/group.hpp"

namespace upkit {

// Total function F^n -> F on the superdiagonal prefix (a_12, ..., a_{n,n+1}).
class CentralFunction {
 public:
  CentralFunction() = default;
  CentralFunction(GroupPtr g);  // zero function

  const GroupPtr& group() const { return g_; }
  size_t size() const { return table_.size(); }
  size_t index(const std::vector<Field::V>& t) const;
  std::vector<Field::V> tuple(size_t idx) const;
  Field::V at(size_t idx) const { return table_[idx]; }
  void set(size_t idx, Field::V v);
  Field::V operator()(const std::vector<Field::V>& t) const { return table_[index(t)]; }
  Field::V of(const UpMatrix& a) const;  // evaluate on a's superdiagonal
  bool operator==(const CentralFunction& o) const { return table_ == o.table_; }
  bool is_zero() const;

 private:
  GroupPtr g_;
  std::vector<Field::V> table_;
};

std::vector<Field::V> superdiagonal_prefix(const UpMatrix& a);

enum class MapKind { Inner, Diagonal, SemiDiagonal, Field, Extremal1, Extremal2, Central };

const char* map_kind_name(MapKind k);
std::optional<MapKind> map_kind_from_name(const std::string& s);

struct MapDescriptor {
  MapKind kind = MapKind::Inner;
  GroupPtr g;
  UpMatrix conj;                 // Inner
  std::vector<Field::V> t;       // Diagonal
  Field::V eps = 1;              // SemiDiagonal
  int m = 0;                     // Field
  Field::V u = 0;                // Extremal1, Extremal2
  std::shared_ptr<const CentralFunction> f;  // Central

  static MapDescriptor inner(const UpMatrix& c);
  static MapDescriptor diagonal(const GroupPtr& g, std::vector<Field::V> t);
  static MapDescriptor semidiagonal(const GroupPtr& g, Field::V eps);
  static MapDescriptor field(const GroupPtr& g, int m);
  static MapDescriptor extremal1(const GroupPtr& g, Field::V u);
  static MapDescriptor extremal2(const GroupPtr& g, Field::V u);
  static MapDescriptor central(std::shared_ptr<const CentralFunction> f);

  void validate() const;  // throws InvalidDescriptor
  MapDescriptor inverse() const;
  bool is_trivial() const;
  std::string describe() const;
};

using MapFn = std::function<UpMatrix(const UpMatrix&)>;

UpMatrix apply_map(const MapDescriptor& d, const UpMatrix& a);
// Rightmost descriptor is applied first.
UpMatrix apply_composition(const std::vector<MapDescriptor>& ds, const UpMatrix& a);
MapFn compose(const std::vector<MapDescriptor>& ds);
MapFn compose_fns(const MapFn& outer, const MapFn& inner);

// Images of x_{alpha_1}(xi) under the extremal maps, as normal-form coordinates.
Coords extremal_image(const UpGroup& g, MapKind kind, Field::V u, Field::V xi);

struct PcReport {
  bool pass = true;
  int trials = 0;
  std::optional<std::pair<UpMatrix, UpMatrix>> counterexample;
};

PcReport is_pc_map(const MapFn& phi, const GroupPtr& g, int trials, uint64_t seed);

std::vector<MapDescriptor> random_standard_composition(const GroupPtr& g, uint64_t seed,
                                                       const std::vector<MapKind>& kinds);
std::vector<MapKind> all_map_kinds();
std::shared_ptr<CentralFunction> random_central_function(const GroupPtr& g, Rng& rng);

}  // namespace upkit

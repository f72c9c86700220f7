#include <map>
#include <mutex>

#include "upkit/group.hpp"

namespace upkit {

namespace {

int lift_or_throw(const Field& F, Field::V v) {
  auto l = F.lift(v);
  if (!l) throw Error(Errc::InconsistentLift, "structure constant outside the prime field");
  return static_cast<int>(*l);
}

StructureConstants measure(int n, const FieldPtr& f) {
  auto g = UpGroup::make(n, f);
  const RootSystem& R = g->roots();
  const Field& F = *f;
  StructureConstants t;
  t.n = n;
  for (RootId a = 0; a < R.size(); ++a)
    for (RootId b = 0; b < R.size(); ++b) {
      auto s = R.sum(a, b);
      if (!s) continue;
      Coords c = normal_form_coords(commutator(g->elem(a, 1), g->elem(b, 1)));
      t.N1[{a, b}] = lift_or_throw(F, c[*s]);
      c[*s] = 0;
      std::optional<RootId> second;
      if (R[a].is_long) second = R.sum(*s, b);
      else if (R[b].is_long) second = R.sum(*s, a);
      if (second) {
        t.N2[{a, b}] = lift_or_throw(F, c[*second]);
        c[*second] = 0;
      }
      for (auto x : c)
        if (x) throw Error(Errc::InconsistentLift, "commutator has unexpected support");
    }
  return t;
}

}  // namespace

StructureConstants compute_structure_constants(int n, const FieldPtr& field) {
  auto first = measure(n, field);
  auto other = Field::make(field->p() == 5 ? 7 : 5);
  auto second = measure(n, other);
  if (first.N1 != second.N1 || first.N2 != second.N2)
    throw Error(Errc::InconsistentLift, "structure constants differ between fields");
  return first;
}

StructureConstants structure_constants_cached(int n) {
  static std::mutex mu;
  static std::map<int, StructureConstants> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  auto t = compute_structure_constants(n, Field::make(5));
  std::lock_guard<std::mutex> lock(mu);
  cache[n] = t;
  return t;
}

}  // namespace upkit

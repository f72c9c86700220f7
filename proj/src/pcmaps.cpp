#include "upkit/pcmaps.hpp"

#include <algorithm>
#include <sstream>

namespace upkit {

CentralFunction::CentralFunction(GroupPtr g) : g_(std::move(g)) {
  size_t sz = 1;
  for (int i = 0; i < g_->n(); ++i) sz *= g_->field().q();
  table_.assign(sz, 0);
}

size_t CentralFunction::index(const std::vector<Field::V>& t) const {
  if (static_cast<int>(t.size()) != g_->n()) throw Error(Errc::DimensionMismatch, "central function arity");
  size_t idx = 0;
  for (int i = g_->n() - 1; i >= 0; --i) idx = idx * g_->field().q() + t[i];
  return idx;
}

std::vector<Field::V> CentralFunction::tuple(size_t idx) const {
  std::vector<Field::V> t(g_->n());
  for (auto& x : t) {
    x = static_cast<Field::V>(idx % g_->field().q());
    idx /= g_->field().q();
  }
  return t;
}

void CentralFunction::set(size_t idx, Field::V v) { table_.at(idx) = v; }

std::vector<Field::V> superdiagonal_prefix(const UpMatrix& a) {
  int n = a.group()->n();
  std::vector<Field::V> t(n);
  for (int i = 0; i < n; ++i) t[i] = a(i, i + 1);
  return t;
}

Field::V CentralFunction::of(const UpMatrix& a) const {
  size_t idx = 0;
  size_t q = g_->field().q();
  for (int i = g_->n() - 1; i >= 0; --i) idx = idx * q + a(i, i + 1);
  return table_[idx];
}

bool CentralFunction::is_zero() const {
  return std::all_of(table_.begin(), table_.end(), [](Field::V v) { return v == 0; });
}

const char* map_kind_name(MapKind k) {
  switch (k) {
    case MapKind::Inner: return "inner";
    case MapKind::Diagonal: return "diagonal";
    case MapKind::SemiDiagonal: return "semidiagonal";
    case MapKind::Field: return "field";
    case MapKind::Extremal1: return "extremal1";
    case MapKind::Extremal2: return "extremal2";
    case MapKind::Central: return "central";
  }
  return "?";
}

std::optional<MapKind> map_kind_from_name(const std::string& s) {
  for (auto k : all_map_kinds())
    if (s == map_kind_name(k)) return k;
  return std::nullopt;
}

std::vector<MapKind> all_map_kinds() {
  return {MapKind::Inner,     MapKind::Diagonal,  MapKind::SemiDiagonal, MapKind::Field,
          MapKind::Extremal1, MapKind::Extremal2, MapKind::Central};
}

MapDescriptor MapDescriptor::inner(const UpMatrix& c) {
  MapDescriptor d;
  d.kind = MapKind::Inner;
  d.g = c.group();
  d.conj = c;
  return d;
}

MapDescriptor MapDescriptor::diagonal(const GroupPtr& g, std::vector<Field::V> t) {
  MapDescriptor d;
  d.kind = MapKind::Diagonal;
  d.g = g;
  d.t = std::move(t);
  return d;
}

MapDescriptor MapDescriptor::semidiagonal(const GroupPtr& g, Field::V eps) {
  MapDescriptor d;
  d.kind = MapKind::SemiDiagonal;
  d.g = g;
  d.eps = eps;
  return d;
}

MapDescriptor MapDescriptor::field(const GroupPtr& g, int m) {
  MapDescriptor d;
  d.kind = MapKind::Field;
  d.g = g;
  int k = static_cast<int>(g->field().k());
  d.m = ((m % k) + k) % k;
  return d;
}

MapDescriptor MapDescriptor::extremal1(const GroupPtr& g, Field::V u) {
  MapDescriptor d;
  d.kind = MapKind::Extremal1;
  d.g = g;
  d.u = u;
  return d;
}

MapDescriptor MapDescriptor::extremal2(const GroupPtr& g, Field::V u) {
  MapDescriptor d = extremal1(g, u);
  d.kind = MapKind::Extremal2;
  return d;
}

MapDescriptor MapDescriptor::central(std::shared_ptr<const CentralFunction> f) {
  MapDescriptor d;
  d.kind = MapKind::Central;
  d.g = f ? f->group() : nullptr;
  d.f = std::move(f);
  return d;
}

void MapDescriptor::validate() const {
  if (!g) throw Error(Errc::InvalidDescriptor, "descriptor without group context");
  const Field& F = g->field();
  switch (kind) {
    case MapKind::Inner:
      if (!conj.group() || !conj.group()->same_context(*g)) throw Error(Errc::InvalidDescriptor, "conjugator context");
      try {
        normal_form_coords(conj);
      } catch (const Error&) {
        throw Error(Errc::InvalidDescriptor, "conjugator is not in Up");
      }
      break;
    case MapKind::Diagonal:
      if (static_cast<int>(t.size()) != g->n()) throw Error(Errc::InvalidDescriptor, "torus vector length");
      for (auto x : t)
        if (x == 0 || x >= F.q()) throw Error(Errc::InvalidDescriptor, "torus entry zero or out of range");
      break;
    case MapKind::SemiDiagonal:
      if (eps == 0 || eps >= F.q()) throw Error(Errc::InvalidDescriptor, "semi-diagonal scalar zero or out of range");
      break;
    case MapKind::Field:
      if (m < 0 || m >= static_cast<int>(F.k())) throw Error(Errc::InvalidDescriptor, "Frobenius power out of range");
      break;
    case MapKind::Extremal1:
    case MapKind::Extremal2:
      if (u >= F.q()) throw Error(Errc::InvalidDescriptor, "extremal parameter out of range");
      if (g->n() < 3 && kind == MapKind::Extremal2) throw Error(Errc::InvalidDescriptor, "extremal2 needs rank >= 3");
      break;
    case MapKind::Central:
      if (!f || !f->group() || !f->group()->same_context(*g)) throw Error(Errc::InvalidDescriptor, "central table context");
      if (f->at(0) != 0) throw Error(Errc::InvalidDescriptor, "central function must vanish at 0");
      break;
  }
}

MapDescriptor MapDescriptor::inverse() const {
  const Field& F = g->field();
  switch (kind) {
    case MapKind::Inner: return inner(conj.inverse());
    case MapKind::Diagonal: {
      std::vector<Field::V> ti(t.size());
      for (size_t i = 0; i < t.size(); ++i) ti[i] = F.inv(t[i]);
      return diagonal(g, ti);
    }
    case MapKind::SemiDiagonal: return semidiagonal(g, F.inv(eps));
    case MapKind::Field: return field(g, -m);
    case MapKind::Extremal1: return extremal1(g, F.neg(u));
    case MapKind::Extremal2: return extremal2(g, F.neg(u));
    case MapKind::Central: {
      auto h = std::make_shared<CentralFunction>(f->group());
      for (size_t i = 0; i < f->size(); ++i) h->set(i, F.neg(f->at(i)));
      return central(h);
    }
  }
  return *this;
}

bool MapDescriptor::is_trivial() const {
  switch (kind) {
    case MapKind::Inner: return conj.is_identity();
    case MapKind::Diagonal: return std::all_of(t.begin(), t.end(), [](Field::V x) { return x == 1; });
    case MapKind::SemiDiagonal: return eps == 1;
    case MapKind::Field: return m == 0;
    case MapKind::Extremal1:
    case MapKind::Extremal2: return u == 0;
    case MapKind::Central: return f->is_zero();
  }
  return false;
}

std::string MapDescriptor::describe() const {
  const Field& F = g->field();
  std::ostringstream os;
  os << map_kind_name(kind);
  switch (kind) {
    case MapKind::Inner: {
      os << "(";
      bool first = true;
      auto c = normal_form_coords(conj);
      for (RootId a = 0; a < static_cast<RootId>(c.size()); ++a)
        if (c[a]) {
          os << (first ? "" : " ") << "x_" << g->roots()[a].label() << "(" << F.to_string(c[a]) << ")";
          first = false;
        }
      os << ")";
      break;
    }
    case MapKind::Diagonal:
      os << "(";
      for (size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << F.to_string(t[i]);
      os << ")";
      break;
    case MapKind::SemiDiagonal: os << "(" << F.to_string(eps) << ")"; break;
    case MapKind::Field: os << "(" << m << ")"; break;
    case MapKind::Extremal1:
    case MapKind::Extremal2: os << "(" << F.to_string(u) << ")"; break;
    case MapKind::Central: {
      size_t nz = 0;
      for (size_t i = 0; i < f->size(); ++i) nz += f->at(i) != 0;
      os << "(" << nz << " nonzero entries)";
      break;
    }
  }
  return os.str();
}

Coords extremal_image(const UpGroup& g, MapKind kind, Field::V u, Field::V xi) {
  const Field& F = g.field();
  const RootSystem& R = g.roots();
  const auto& N = g.N();
  RootId a1 = R.simple(1), mx = R.max_root();
  Coords c(R.size(), 0);
  c[a1] = xi;
  Field::V uxi = F.mul(u, xi);
  if (kind == MapKind::Extremal1) {
    RootId b = *R.diff(mx, a1);
    c[b] = uxi;
    Field::V half = F.inv(F.from_int(2));
    c[mx] = F.mul(F.mul(half, F.from_int(N.n1(b, a1))), F.mul(uxi, xi));
  } else {
    RootId g2 = *R.diff(*R.diff(mx, a1), a1);
    RootId b = *R.diff(mx, a1);
    c[g2] = uxi;
    Field::V half = F.inv(F.from_int(2)), third = F.inv(F.from_int(3));
    c[b] = F.mul(F.mul(half, F.from_int(N.n1(g2, a1))), F.mul(uxi, xi));
    // Sign fixed by requiring g(xi)g(zeta) = g(xi+zeta) under [a,b] = a b a^-1 b^-1.
    c[mx] = F.mul(F.mul(third, F.from_int(-N.n2(g2, a1))), F.mul(F.mul(uxi, xi), xi));
  }
  return c;
}

UpMatrix apply_map(const MapDescriptor& d, const UpMatrix& a) {
  if (!d.g || !a.group()->same_context(*d.g)) throw Error(Errc::MixedContexts, "map and matrix from different groups");
  const UpGroup& g = *a.group();
  const Field& F = g.field();
  int n = g.n(), dim = g.dim();
  switch (d.kind) {
    case MapKind::Inner: return d.conj * a * d.conj.inverse();
    case MapKind::Diagonal: return torus_conjugate(torus_elem(g, d.t), a);
    case MapKind::SemiDiagonal: {
      UpMatrix out = a;
      for (int i = 0; i < n; ++i)
        for (int j = n; j < dim; ++j) out(i, j) = F.mul(d.eps, a(i, j));
      return out;
    }
    case MapKind::Field: {
      UpMatrix out = a;
      if (d.m == 0) return out;
      for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) out(i, j) = F.frobenius(a(i, j), d.m);
      return out;
    }
    case MapKind::Extremal1:
    case MapKind::Extremal2: {
      Coords c = normal_form_coords(a);
      RootId a1 = g.roots().simple(1);
      UpMatrix out = g.identity();
      for (RootId id = 0; id < static_cast<RootId>(c.size()); ++id) {
        if (!c[id]) continue;
        if (id == a1) {
          Coords img = extremal_image(g, d.kind, d.u, c[id]);
          for (RootId j = 0; j < static_cast<RootId>(img.size()); ++j) out.right_mul_elem(j, img[j]);
        } else {
          out.right_mul_elem(id, c[id]);
        }
      }
      return out;
    }
    case MapKind::Central: {
      UpMatrix out = a;
      out.right_mul_elem(g.roots().max_root(), d.f->of(a));
      return out;
    }
  }
  throw Error(Errc::InvalidDescriptor, "unknown kind");
}

UpMatrix apply_composition(const std::vector<MapDescriptor>& ds, const UpMatrix& a) {
  UpMatrix x = a;
  for (auto it = ds.rbegin(); it != ds.rend(); ++it) x = apply_map(*it, x);
  return x;
}

MapFn compose(const std::vector<MapDescriptor>& ds) {
  for (const auto& d : ds) {
    d.validate();
    if (!d.g->same_context(*ds.front().g)) throw Error(Errc::MixedContexts, "descriptors over different groups");
  }
  return [ds](const UpMatrix& a) { return apply_composition(ds, a); };
}

MapFn compose_fns(const MapFn& outer, const MapFn& inner) {
  return [outer, inner](const UpMatrix& a) { return outer(inner(a)); };
}

PcReport is_pc_map(const MapFn& phi, const GroupPtr& g, int trials, uint64_t seed) {
  PcReport r;
  for (int i = 0; i < trials; ++i) {
    Rng rng(seed, i);
    UpMatrix x = g->random(rng), y = g->random(rng);
    ++r.trials;
    if (phi(commutator(x, y)) != commutator(phi(x), phi(y))) {
      r.pass = false;
      r.counterexample = {x, y};
      break;
    }
  }
  return r;
}

std::shared_ptr<CentralFunction> random_central_function(const GroupPtr& g, Rng& rng) {
  auto f = std::make_shared<CentralFunction>(g);
  for (size_t i = 1; i < f->size(); ++i) f->set(i, rng.elem(g->field()));
  return f;
}

std::vector<MapDescriptor> random_standard_composition(const GroupPtr& g, uint64_t seed,
                                                       const std::vector<MapKind>& kinds) {
  Rng rng(seed);
  const Field& F = g->field();
  std::vector<MapKind> order = kinds;
  std::shuffle(order.begin(), order.end(), rng.engine());
  std::vector<MapDescriptor> out;
  for (auto k : order) {
    switch (k) {
      case MapKind::Inner: out.push_back(MapDescriptor::inner(g->random(rng))); break;
      case MapKind::Diagonal: {
        std::vector<Field::V> t(g->n());
        for (auto& x : t) x = rng.nonzero(F);
        out.push_back(MapDescriptor::diagonal(g, t));
        break;
      }
      case MapKind::SemiDiagonal: out.push_back(MapDescriptor::semidiagonal(g, rng.nonzero(F))); break;
      case MapKind::Field: out.push_back(MapDescriptor::field(g, static_cast<int>(rng.below(F.k())))); break;
      case MapKind::Extremal1: out.push_back(MapDescriptor::extremal1(g, rng.elem(F))); break;
      case MapKind::Extremal2: out.push_back(MapDescriptor::extremal2(g, rng.elem(F))); break;
      case MapKind::Central: out.push_back(MapDescriptor::central(random_central_function(g, rng))); break;
    }
  }
  return out;
}

}  // namespace upkit

#include "upkit/group.hpp"

#include <map>
#include <sstream>

namespace upkit {

std::shared_ptr<const UpGroup> UpGroup::make(int n, const FieldPtr& f) {
  if (n < 2) throw Error(Errc::RankTooSmall, "rank must be at least 2");
  static std::mutex mu;
  static std::map<std::tuple<int, uint32_t, uint32_t>, std::shared_ptr<const UpGroup>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, f->p(), f->k()}];
  if (!slot) slot = std::shared_ptr<const UpGroup>(new UpGroup(n, f));
  return slot;
}

UpGroup::UpGroup(int n, FieldPtr f) : n_(n), field_(std::move(f)), roots_(RootSystem::make(n)) {
  for (const auto& r : roots_->roots()) mirror_sign_.push_back(r.is_long ? 0 : (r.name.j > 0 ? -1 : 1));
}

StructureConstants structure_constants_cached(int n);

const StructureConstants& UpGroup::N() const {
  std::call_once(consts_once_, [&] { consts_ = std::make_unique<StructureConstants>(structure_constants_cached(n_)); });
  return *consts_;
}

bool UpGroup::same_context(const UpGroup& o) const {
  return this == &o || (n_ == o.n_ && field_->spec() == o.field_->spec());
}

Field::V UpGroup::gram(int r, int c) const {
  int d = dim();
  if (c != d - 1 - r) return 0;
  return r < n_ ? field_->one() : field_->neg(field_->one());
}

UpMatrix UpGroup::identity() const {
  int d = dim();
  std::vector<Field::V> e(d * d, 0);
  for (int i = 0; i < d; ++i) e[i * d + i] = 1;
  return UpMatrix(shared_from_this(), std::move(e));
}

UpMatrix UpGroup::elem(RootId a, Field::V xi) const {
  UpMatrix m = identity();
  m.right_mul_elem(a, xi);
  return m;
}

UpMatrix UpGroup::from_coords(const Coords& c) const {
  UpMatrix m = identity();
  for (RootId a = 0; a < static_cast<RootId>(c.size()); ++a)
    if (c[a]) m.right_mul_elem(a, c[a]);
  return m;
}

UpMatrix UpGroup::from_word(const RootWord& w) const {
  UpMatrix m = identity();
  for (auto [a, xi] : w.terms) m.right_mul_elem(a, xi);
  return m;
}

Coords UpGroup::random_coords(Rng& rng) const {
  Coords c(roots_->size());
  for (auto& x : c) x = rng.elem(*field_);
  return c;
}

UpMatrix UpGroup::random(Rng& rng) const { return from_coords(random_coords(rng)); }

UpMatrix UpGroup::random_supported(Rng& rng, const std::vector<RootId>& sup) const {
  Coords c(roots_->size(), 0);
  for (RootId a : sup) c[a] = rng.elem(*field_);
  return from_coords(c);
}

UpMatrix UpGroup::random_level(Rng& rng, int s) const {
  Coords c(roots_->size(), 0);
  for (RootId a = 0; a < roots_->size(); ++a)
    if (roots()[a].height >= s) c[a] = rng.elem(*field_);
  return from_coords(c);
}

UpMatrix::UpMatrix(GroupPtr g, std::vector<Field::V> entries) : g_(std::move(g)), a_(std::move(entries)) {
  if (static_cast<int>(a_.size()) != g_->dim() * g_->dim()) throw Error(Errc::DimensionMismatch, "entry count");
}

void check_same(const UpMatrix& a, const UpMatrix& b) {
  if (!a.group() || !b.group() || !a.group()->same_context(*b.group()))
    throw Error(Errc::DimensionMismatch, "matrices from different groups");
}

UpMatrix UpMatrix::operator*(const UpMatrix& o) const {
  check_same(*this, o);
  const Field& F = g_->field();
  int d = dim();
  std::vector<Field::V> c(d * d, 0);
  for (int i = 0; i < d; ++i) {
    Field::V* crow = &c[i * d];
    for (int k = 0; k < d; ++k) {
      Field::V x = a_[i * d + k];
      if (!x) continue;
      const Field::V* brow = &o.a_[k * d];
      for (int j = 0; j < d; ++j)
        if (brow[j]) crow[j] = F.add(crow[j], F.mul(x, brow[j]));
    }
  }
  return UpMatrix(g_, std::move(c));
}

UpMatrix UpMatrix::inverse() const {
  const Field& F = g_->field();
  int d = dim();
  std::vector<Field::V> x(d * d, 0);
  for (int j = 0; j < d; ++j) {
    x[j * d + j] = 1;
    for (int i = j - 1; i >= 0; --i) {
      Field::V s = 0;
      for (int k = i + 1; k <= j; ++k)
        if (a_[i * d + k] && x[k * d + j]) s = F.add(s, F.mul(a_[i * d + k], x[k * d + j]));
      x[i * d + j] = F.neg(s);
    }
  }
  return UpMatrix(g_, std::move(x));
}

bool UpMatrix::is_identity() const {
  int d = dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (a_[i * d + j] != (i == j ? 1u : 0u)) return false;
  return true;
}

void UpMatrix::left_mul_elem(RootId a, Field::V xi) {
  if (!xi) return;
  const Field& F = g_->field();
  const Root& r = g_->roots()[a];
  int d = dim();
  int r0 = r.row - 1, c0 = r.col - 1;
  for (int j = 0; j < d; ++j)
    if (a_[c0 * d + j]) a_[r0 * d + j] = F.add(a_[r0 * d + j], F.mul(xi, a_[c0 * d + j]));
  int ms = g_->mirror_sign(a);
  if (ms) {
    Field::V y = ms > 0 ? xi : F.neg(xi);
    int cs = d - 1 - c0, rs = d - 1 - r0;
    for (int j = 0; j < d; ++j)
      if (a_[rs * d + j]) a_[cs * d + j] = F.add(a_[cs * d + j], F.mul(y, a_[rs * d + j]));
  }
}

void UpMatrix::right_mul_elem(RootId a, Field::V xi) {
  if (!xi) return;
  const Field& F = g_->field();
  const Root& r = g_->roots()[a];
  int d = dim();
  int r0 = r.row - 1, c0 = r.col - 1;
  for (int i = 0; i < d; ++i)
    if (a_[i * d + r0]) a_[i * d + c0] = F.add(a_[i * d + c0], F.mul(xi, a_[i * d + r0]));
  int ms = g_->mirror_sign(a);
  if (ms) {
    Field::V y = ms > 0 ? xi : F.neg(xi);
    int cs = d - 1 - c0, rs = d - 1 - r0;
    for (int i = 0; i < d; ++i)
      if (a_[i * d + cs]) a_[i * d + rs] = F.add(a_[i * d + rs], F.mul(y, a_[i * d + cs]));
  }
}

bool UpMatrix::is_unitriangular() const {
  int d = dim();
  for (int i = 0; i < d; ++i) {
    if (a_[i * d + i] != 1) return false;
    for (int j = 0; j < i; ++j)
      if (a_[i * d + j]) return false;
  }
  return true;
}

bool UpMatrix::is_symplectic() const {
  const Field& F = g_->field();
  int d = dim();
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Field::V s = 0;
      for (int r = 0; r < d; ++r) {
        Field::V t = F.mul(a_[r * d + a], a_[(d - 1 - r) * d + b]);
        s = r < g_->n() ? F.add(s, t) : F.sub(s, t);
      }
      if (s != g_->gram(a, b)) return false;
    }
  return true;
}

void UpMatrix::validate() const {
  if (!is_unitriangular()) throw Error(Errc::NotInGroup, "matrix is not unitriangular");
  if (!is_symplectic()) throw Error(Errc::NotInGroup, "matrix is not symplectic");
}

std::string UpMatrix::to_string() const {
  std::ostringstream os;
  int d = dim();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) os << (j ? " " : "") << g_->field().to_string(a_[i * d + j]);
    os << '\n';
  }
  return os.str();
}

Coords RootWord::coords() const {
  Coords c(g->roots().size(), 0);
  for (auto [a, xi] : terms) c[a] = xi;
  return c;
}

RootWord RootWord::from_coords(const GroupPtr& g, const Coords& c) {
  RootWord w{g, {}};
  for (RootId a = 0; a < static_cast<RootId>(c.size()); ++a)
    if (c[a]) w.terms.emplace_back(a, c[a]);
  return w;
}

UpMatrix commutator(const UpMatrix& a, const UpMatrix& b) { return a * b * a.inverse() * b.inverse(); }

UpMatrix elem_unipotent(const GroupPtr& g, RootId a, Field::V xi) { return g->elem(a, xi); }

UpMatrix word_to_matrix(const RootWord& w) { return w.g->from_word(w); }

Coords normal_form_coords(const UpMatrix& a) {
  if (!a.is_unitriangular()) throw Error(Errc::NotInGroup, "matrix is not unitriangular");
  const UpGroup& g = *a.group();
  const Field& F = g.field();
  const RootSystem& R = g.roots();
  int d = g.dim();
  UpMatrix res = a;
  Coords c(R.size(), 0);
  for (int h = 1; h <= R.max_height(); ++h) {
    for (RootId id : R.of_height(h)) c[id] = res(R[id].row - 1, R[id].col - 1);
    for (RootId id : R.of_height(h))
      if (c[id]) res.left_mul_elem(id, F.neg(c[id]));
    for (int i = 0; i + h < d; ++i)
      if (res(i, i + h)) throw Error(Errc::NotInGroup, "matrix is not symplectic (height " + std::to_string(h) + ")");
  }
  return c;
}

RootWord normal_form(const UpMatrix& a) { return RootWord::from_coords(a.group(), normal_form_coords(a)); }

int filtration_level(const UpMatrix& a) {
  int d = a.dim();
  for (int h = 1; h < d; ++h)
    for (int i = 0; i + h < d; ++i)
      if (a(i, i + h)) return h;
  return d;
}

bool in_P_i_k(const UpMatrix& a, int i, int k) {
  const RootSystem& R = a.group()->roots();
  if (i < 1 || i > R.max_height() || k < 1 || k > R.n())
    throw Error(Errc::BadIndices, "P^i_k needs 1 <= i <= 2n-1, 1 <= k <= n");
  Coords c = normal_form_coords(a);
  for (RootId id = 0; id < R.size(); ++id) {
    if (!c[id]) continue;
    const Root& r = R[id];
    if (r.height < i) return false;
    if (r.height == i)
      for (int t = 1; t < k; ++t)
        if (r.m[t - 1] > 0) return false;
  }
  return true;
}

bool in_U1(const UpMatrix& a) {
  const RootSystem& R = a.group()->roots();
  Coords c = normal_form_coords(a);
  for (RootId id = 0; id < R.size(); ++id)
    if (c[id] && R[id].m[0] == 0) return false;
  return true;
}

bool in_U1_level2(const UpMatrix& a) { return in_U1(a) && filtration_level(a) >= 2; }

bool support_within(const Coords& c, const std::vector<RootId>& allowed) {
  std::vector<bool> ok(c.size(), false);
  for (RootId a : allowed) ok[a] = true;
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i] && !ok[i]) return false;
  return true;
}

std::vector<RootId> support(const Coords& c) {
  std::vector<RootId> out;
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i]) out.push_back(static_cast<RootId>(i));
  return out;
}

std::vector<Field::V> torus_elem(const UpGroup& g, const std::vector<Field::V>& t) {
  if (static_cast<int>(t.size()) != g.n()) throw Error(Errc::DimensionMismatch, "torus vector length");
  const Field& F = g.field();
  std::vector<Field::V> d(g.dim());
  for (int i = 0; i < g.n(); ++i) {
    if (!t[i]) throw Error(Errc::ZeroTorusEntry, "torus entry " + std::to_string(i + 1) + " is zero");
    d[i] = t[i];
    d[g.dim() - 1 - i] = F.inv(t[i]);
  }
  return d;
}

UpMatrix torus_conjugate(const std::vector<Field::V>& diag, const UpMatrix& a) {
  const Field& F = a.group()->field();
  UpMatrix out = a;
  int d = a.dim();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (a(i, j)) out(i, j) = F.mul(F.mul(diag[i], a(i, j)), F.inv(diag[j]));
  return out;
}

}  // namespace upkit

#include "upkit/symbolic.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace upkit {

namespace {

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::Overflow, "smooth rational numerator overflow");
  return r;
}

int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::Overflow, "smooth rational numerator overflow");
  return r;
}

int64_t scale_up(int64_t x, int e2, int e3) {
  for (int i = 0; i < e2; ++i) x = checked_mul(x, 2);
  for (int i = 0; i < e3; ++i) x = checked_mul(x, 3);
  return x;
}

}  // namespace

SmoothRational::SmoothRational(int64_t v) : num_(v) { normalize(); }

SmoothRational SmoothRational::make(int64_t num, int e2, int e3) {
  SmoothRational r;
  r.num_ = num;
  r.e2_ = e2;
  r.e3_ = e3;
  r.normalize();
  return r;
}

void SmoothRational::normalize() {
  if (num_ == 0) {
    e2_ = e3_ = 0;
    return;
  }
  while (num_ % 2 == 0) num_ /= 2, ++e2_;
  while (num_ % 3 == 0) num_ /= 3, ++e3_;
}

std::optional<int64_t> SmoothRational::as_integer() const {
  if (!is_integer()) return std::nullopt;
  return scale_up(num_, e2_, e3_);
}

SmoothRational SmoothRational::operator-() const { return make(-num_, e2_, e3_); }

SmoothRational SmoothRational::operator+(const SmoothRational& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  int m2 = std::min(e2_, o.e2_), m3 = std::min(e3_, o.e3_);
  int64_t x = scale_up(num_, e2_ - m2, e3_ - m3);
  int64_t y = scale_up(o.num_, o.e2_ - m2, o.e3_ - m3);
  return make(checked_add(x, y), m2, m3);
}

SmoothRational SmoothRational::operator*(const SmoothRational& o) const {
  if (is_zero() || o.is_zero()) return {};
  return make(checked_mul(num_, o.num_), e2_ + o.e2_, e3_ + o.e3_);
}

SmoothRational SmoothRational::operator/(const SmoothRational& o) const {
  if (o.is_zero()) throw Error(Errc::DivisionByZero, "smooth rational division by zero");
  if (o.num_ != 1 && o.num_ != -1)
    throw Error(Errc::NonSmoothDenominator, "division by " + o.to_string() + " leaves the {2,3}-smooth locus");
  return make(num_ * o.num_, e2_ - o.e2_, e3_ - o.e3_);
}

Field::V SmoothRational::to_field(const Field& F) const {
  Field::V v = F.from_int(num_);
  Field::V two = F.from_int(2), three = F.from_int(3);
  v = F.mul(v, e2_ >= 0 ? F.pow(two, e2_) : F.pow(F.inv(two), -e2_));
  return F.mul(v, e3_ >= 0 ? F.pow(three, e3_) : F.pow(F.inv(three), -e3_));
}

std::string SmoothRational::to_string() const {
  int64_t top = scale_up(num_, std::max(e2_, 0), std::max(e3_, 0));
  int64_t bot = scale_up(1, std::max(-e2_, 0), std::max(-e3_, 0));
  return bot == 1 ? std::to_string(top) : std::to_string(top) + "/" + std::to_string(bot);
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) r.push_back(a[i++]);
    else if (i == a.size() || b[j].first < a[i].first) r.push_back(b[j++]);
    else {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i, ++j;
    }
  }
  return r;
}

std::optional<Monomial> mono_div(const Monomial& a, const Monomial& b) {
  Monomial r;
  size_t i = 0;
  for (auto [v, e] : b) {
    while (i < a.size() && a[i].first < v) r.push_back(a[i++]);
    if (i == a.size() || a[i].first != v || a[i].second < e) return std::nullopt;
    if (a[i].second > e) r.emplace_back(v, a[i].second - e);
    ++i;
  }
  while (i < a.size()) r.push_back(a[i++]);
  return r;
}

int VarTable::id(const std::string& name) {
  if (auto v = find(name)) return *v;
  names_.push_back(name);
  return size() - 1;
}

std::optional<int> VarTable::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<int>(it - names_.begin());
}

std::string mono_string(const Monomial& m, const VarTable& vars) {
  std::string s;
  for (auto [v, e] : m) {
    if (!s.empty()) s += " ";
    s += vars.name(v);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

SparsePoly::SparsePoly(const SmoothRational& c) {
  if (!c.is_zero()) t_[{}] = c;
}

SparsePoly SparsePoly::var(int v, int exp) { return term(1, {{v, exp}}); }

SparsePoly SparsePoly::term(const SmoothRational& c, Monomial m) {
  SparsePoly p;
  p.add_term(m, c);
  return p;
}

SparsePoly SparsePoly::parse(const std::string& s, VarTable& vars) {
  std::string spaced;
  for (char ch : s) {
    if (ch == '+' || ch == '-') (spaced += ' ', spaced += ch) += ' ';
    else spaced += ch;
  }
  std::istringstream is(spaced);
  SparsePoly out;
  int sign = 1;
  SmoothRational coef = 1;
  Monomial mono;
  bool any = false;
  auto flush = [&] {
    if (any) out.add_term(mono, sign < 0 ? -coef : coef);
    sign = 1, coef = 1, mono.clear(), any = false;
  };
  std::string tok;
  while (is >> tok) {
    if (tok == "+" || tok == "-") {
      if (any) flush();
      if (tok == "-") sign = -sign;
    } else if (std::isdigit(static_cast<unsigned char>(tok[0]))) {
      coef = coef * SmoothRational(std::stoll(tok));
      any = true;
    } else {
      int e = 1;
      auto caret = tok.find('^');
      if (caret != std::string::npos) {
        e = std::stoi(tok.substr(caret + 1));
        tok = tok.substr(0, caret);
      }
      mono = mono_mul(mono, {{vars.id(tok), e}});
      any = true;
    }
  }
  flush();
  return out;
}

void SparsePoly::add_term(const Monomial& m, const SmoothRational& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t_.emplace(m, c);
  if (!fresh) {
    it->second = it->second + c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

SmoothRational SparsePoly::coeff(const Monomial& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? SmoothRational() : it->second;
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly r;
  for (auto& [m, c] : t_) r.t_[m] = -c;
  return r;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  for (auto& [m, c] : o.t_) add_term(m, c);
  return *this;
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
  SparsePoly r = *this;
  return r += o;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const { return *this + (-o); }

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
  SparsePoly r;
  for (auto& [m1, c1] : t_)
    for (auto& [m2, c2] : o.t_) r.add_term(mono_mul(m1, m2), c1 * c2);
  return r;
}

int SparsePoly::degree_in(int v) const {
  int d = 0;
  for (auto& [m, c] : t_)
    for (auto [w, e] : m)
      if (w == v) d = std::max(d, e);
  return d;
}

SparsePoly SparsePoly::coeff_in(int v, int exp) const {
  SparsePoly r;
  for (auto& [m, c] : t_) {
    int e = 0;
    Monomial rest;
    for (auto [w, k] : m) {
      if (w == v) e = k;
      else rest.emplace_back(w, k);
    }
    if (e == exp) r.add_term(rest, c);
  }
  return r;
}

SparsePoly SparsePoly::substitute(int v, const SparsePoly& value) const {
  SparsePoly r;
  int deg = degree_in(v);
  std::vector<SparsePoly> powers(deg + 1, SparsePoly(1));
  for (int i = 1; i <= deg; ++i) powers[i] = powers[i - 1] * value;
  for (int e = 0; e <= deg; ++e) {
    SparsePoly c = coeff_in(v, e);
    if (!c.is_zero()) r += c * powers[e];
  }
  return r;
}

std::optional<SparsePoly> SparsePoly::div_monomial(const Monomial& m) const {
  SparsePoly r;
  for (auto& [mm, c] : t_) {
    auto q = mono_div(mm, m);
    if (!q) return std::nullopt;
    r.t_[*q] = c;
  }
  return r;
}

Field::V SparsePoly::eval(const Field& F, const std::vector<Field::V>& values) const {
  Field::V acc = 0;
  for (auto& [m, c] : t_) {
    Field::V t = c.to_field(F);
    for (auto [v, e] : m) t = F.mul(t, F.pow(values.at(v), e));
    acc = F.add(acc, t);
  }
  return acc;
}

std::string SparsePoly::to_string(const VarTable& vars) const {
  if (t_.empty()) return "0";
  std::string s;
  for (auto& [m, c] : t_) {
    bool neg = c.sign() < 0;
    std::string mag = c.abs().to_string();
    if (s.empty()) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    if (m.empty()) s += mag;
    else s += (mag == "1" ? "" : mag + " ") + mono_string(m, vars);
  }
  return s;
}

bool SparsePoly::equal_up_to_sign(const SparsePoly& o) const {
  if (t_.size() != o.t_.size()) return false;
  for (auto i = t_.begin(), j = o.t_.begin(); i != t_.end(); ++i, ++j)
    if (i->first != j->first || i->second.abs() != j->second.abs()) return false;
  return true;
}

SymMatrix SymMatrix::identity(const GroupPtr& g) {
  SymMatrix m;
  m.g_ = g;
  m.d_ = g->dim();
  m.e_.assign(m.d_ * m.d_, SparsePoly());
  for (int i = 0; i < m.d_; ++i) m(i, i) = SparsePoly(1);
  return m;
}

SymMatrix SymMatrix::elem(const GroupPtr& g, RootId a, const SparsePoly& xi) {
  SymMatrix m = identity(g);
  const Root& r = g->roots()[a];
  int d = m.d_;
  m(r.row - 1, r.col - 1) += xi;
  int ms = g->mirror_sign(a);
  if (ms) m(d - r.col, d - r.row) += ms > 0 ? xi : -xi;
  return m;
}

SymMatrix SymMatrix::operator*(const SymMatrix& o) const {
  SymMatrix r = identity(g_);
  for (int i = 0; i < d_; ++i)
    for (int j = i + 1; j < d_; ++j) {
      SparsePoly acc;
      for (int k = i; k <= j; ++k) {
        const SparsePoly& x = (*this)(i, k);
        const SparsePoly& y = o(k, j);
        if (!x.is_zero() && !y.is_zero()) acc += x * y;
      }
      r(i, j) = acc;
    }
  return r;
}

SymMatrix SymMatrix::inverse() const {
  SymMatrix x = identity(g_);
  for (int i = d_ - 1; i >= 0; --i)
    for (int j = i + 1; j < d_; ++j) {
      SparsePoly acc;
      for (int k = i + 1; k <= j; ++k) {
        const SparsePoly& a = (*this)(i, k);
        if (!a.is_zero() && !x(k, j).is_zero()) acc += a * x(k, j);
      }
      x(i, j) = -acc;
    }
  return x;
}

bool SymMatrix::is_identity() const { return *this == identity(g_); }

UpMatrix SymMatrix::eval(const std::vector<Field::V>& values) const {
  std::vector<Field::V> out(d_ * d_);
  for (int i = 0; i < d_ * d_; ++i) out[i] = e_[i].eval(g_->field(), values);
  return UpMatrix(g_, out);
}

SymMatrix parametric_element(const GroupPtr& g, const std::vector<SymFactor>& spec) {
  SymMatrix m = SymMatrix::identity(g);
  for (auto& [a, xi] : spec) m = m * SymMatrix::elem(g, a, xi);
  return m;
}

SymMatrix sym_commutator(const SymMatrix& x, const SymMatrix& y) { return x * y * x.inverse() * y.inverse(); }

std::vector<SparsePoly> sym_normal_form(const SymMatrix& a) {
  const GroupPtr& g = a.group();
  const RootSystem& R = g->roots();
  std::vector<SparsePoly> out(R.size());
  SymMatrix res = a;
  for (int h = 1; h <= R.max_height(); ++h)
    for (RootId r : R.of_height(h)) {
      out[r] = res(R[r].row - 1, R[r].col - 1);
      if (!out[r].is_zero()) res = SymMatrix::elem(g, r, -out[r]) * res;
    }
  if (!res.is_identity()) throw Error(Errc::NotInGroup, "symbolic matrix is not a product of root unipotents");
  return out;
}

std::vector<RootId> sym_support(const std::vector<SparsePoly>& coords) {
  std::vector<RootId> s;
  for (RootId r = 0; r < static_cast<RootId>(coords.size()); ++r)
    if (!coords[r].is_zero()) s.push_back(r);
  return s;
}

std::string dump_coords(const GroupPtr& g, const std::vector<SparsePoly>& coords, const VarTable& vars) {
  std::string s;
  for (RootId r : sym_support(coords)) s += "  x_" + g->roots()[r].label() + ": " + coords[r].to_string(vars) + "\n";
  return s;
}

RootId laundry_root(const RootSystem& R, const std::string& tag) {
  if (tag == "12") return R.chain(1, 2);
  if (tag == "max") return R.max_root();
  if (tag.empty() || tag[0] != 'm') throw Error(Errc::BadParams, "unknown root tag " + tag);
  RootId r = R.max_root();
  for (size_t i = 1; i < tag.size(); ++i) {
    auto d = R.diff(r, R.simple(tag[i] - '0'));
    if (!d) throw Error(Errc::BadParams, "root tag " + tag + " is not a root");
    r = *d;
  }
  return r;
}

namespace {

struct DisplayLine {
  const char* tag;
  const char* poly;
};

struct Display {
  const char* name;
  std::vector<DisplayLine> lines;
};

// Coefficients as printed for [a,c], [c,bbar] and [a,bbar] c^-1.
const std::vector<Display>& laundry_displays() {
  static const std::vector<Display> d = {
      {"[a,c]",
       {{"max", "-2 a1 am112 c12 - am1122 c12^2 + 2 a1 cm1 + a1^2 cm11 + 2 a1 c12 cm112"},
        {"m1", "-am112 c12 + a1 cm11"},
        {"m12", "-am1122 c12 + a1 cm112"}}},
      {"[c,bbar]",
       {{"max", "2 b12 bm1122 c12 + 2 bm12 c12 + bm1122 c12^2 - b12^2 cm1122 - 2 b12 c12 cm1122 - 2 b12 cm12"},
        {"m1", "bm112 c12 + b2 bm1122 c12 - b12 cm112 - b12 b2 cm1122 - b2 c12 cm1122 - b2 cm12"},
        {"m12", "bm1122 c12 - b12 cm1122"},
        {"m11", "-2 b2 cm112 - b2^2 cm1122"},
        {"m112", "-b2 cm1122"}}},
      {"[a,bbar] c^-1",
       {{"12", "a1 b2 - c12"},
        {"max",
         "-2 a1 am112 b12 - am1122 b12^2 - 2 a1^2 am112 b2 + a1^2 am1122 b2^2 + 2 a1 bm1 + a1^2 bm11 "
         "+ 2 a1 b12 bm112 - 2 am1122 b12 c12 - 2 a1 am1122 b2 c12 + 2 a1 bm112 c12 - cm - 2 c12 cm12"},
        {"m1",
         "-am112 b12 - 2 a1 am112 b2 - am1122 b12 b2 + a1 bm11 + a1 b2 bm112 - am1122 b2 c12 - cm1 - c12 cm112"},
        {"m12", "-am1122 b12 - a1 am1122 b2 + a1 bm112 - cm12"},
        {"m11", "-2 am112 b2 - am1122 b2^2 - cm11"},
        {"m112", "-am1122 b2 - cm112"}}},
  };
  return d;
}

struct LaundrySetup {
  GroupPtr g;
  VarTable vars;
  std::vector<SymFactor> a, bbar, c;
};

LaundrySetup laundry_setup(const GroupPtr& g) {
  LaundrySetup s;
  s.g = g;
  const RootSystem& R = g->roots();
  auto f = [&](const char* tag, const char* name) -> SymFactor {
    return {tag == std::string("1") ? R.simple(1) : tag == std::string("2") ? R.simple(2) : laundry_root(R, tag),
            SparsePoly::var(s.vars.id(name))};
  };
  s.a = {f("1", "a1"), f("max", "am"), f("m1", "am1"), f("m11", "am11"), f("m112", "am112"), f("m1122", "am1122")};
  s.c = {f("12", "c12"), f("max", "cm"), f("m1", "cm1"), f("m12", "cm12"), f("m112", "cm112"), f("m11", "cm11"),
         f("m1122", "cm1122")};
  s.bbar = {f("2", "b2"),          f("12", "b12"),         f("m12", "bm12"), f("m1", "bm1"),
            f("max", "bm"),        f("m1122", "bm1122"),   f("m112", "bm112"), f("m11", "bm11")};
  return s;
}

std::vector<SymMatrix> laundry_products(const LaundrySetup& s) {
  SymMatrix a = parametric_element(s.g, s.a), b = parametric_element(s.g, s.bbar), c = parametric_element(s.g, s.c);
  return {sym_commutator(a, c), sym_commutator(c, b), sym_commutator(a, b) * c.inverse()};
}

// Replays a fixed chain of substitutions and derived relations on the expanded equations.
class Replay {
 public:
  Replay(VarTable& vars, std::vector<std::string> invertible) : vars_(vars) {
    for (auto& v : invertible) invertible_.insert(vars.id(v));
  }

  SparsePoly reduce(SparsePoly p, bool use_relations) const {
    for (auto& [v, val] : subst_) p = p.substitute(v, val);
    if (!use_relations) return p;
    for (auto& [rel, lead] : relations_) {
      for (int guard = 0; guard < 1000; ++guard) {
        bool hit = false;
        for (auto& [m, c] : p.terms()) {
          if (auto q = mono_div(m, lead)) {
            p = p - SparsePoly::term(c, *q) * rel;
            hit = true;
            break;
          }
        }
        if (!hit) break;
      }
    }
    return p;
  }

  // Divides out the invertible monomial content and the leading scalar.
  SparsePoly primitive(const SparsePoly& p) const {
    if (p.is_zero()) return p;
    Monomial g;
    bool first = true;
    for (auto& [m, c] : p.terms()) {
      Monomial inv;
      for (auto [v, e] : m)
        if (invertible_.count(v)) inv.emplace_back(v, e);
      if (first) g = inv, first = false;
      else {
        Monomial ng;
        for (auto [v, e] : g)
          for (auto [w, k] : inv)
            if (v == w) ng.emplace_back(v, std::min(e, k));
        g = ng;
      }
    }
    SparsePoly q = *p.div_monomial(g);
    SmoothRational lead = q.terms().rbegin()->second;
    return q * SparsePoly(SmoothRational(1) / unit_part(lead));
  }

  void zero(int v, const SparsePoly& source, const std::string& why, CheckReport& rep) {
    SparsePoly p = primitive(reduce(source, true));
    ++rep.trials;
    if (p != SparsePoly::var(v))
      return rep.fail("replay: " + why + " does not force " + vars_.name(v) + " = 0; reduced to " +
                      p.to_string(vars_));
    set(v, SparsePoly());
  }

  void solve(int v, const SparsePoly& source, bool use_relations, const std::string& why, CheckReport& rep,
             std::string* shown) {
    SparsePoly p = primitive(reduce(source, use_relations));
    ++rep.trials;
    SparsePoly lin = p.coeff_in(v, 1);
    if (p.degree_in(v) != 1 || lin.terms().size() != 1 || !lin.terms().begin()->first.empty())
      return rep.fail("replay: " + why + " is not solvable for " + vars_.name(v) + ": " + p.to_string(vars_));
    SparsePoly value = -(p.coeff_in(v, 0) * SparsePoly(SmoothRational(1) / lin.terms().begin()->second));
    if (shown) *shown = vars_.name(v) + " = " + value.to_string(vars_);
    set(v, value);
  }

  SparsePoly relation(const SparsePoly& source, const SparsePoly& shown, const std::string& lead_s,
                      const std::string& why, CheckReport& rep) {
    SparsePoly p = primitive(reduce(source, true));
    SparsePoly lead = SparsePoly::parse(lead_s, vars_);
    Monomial lm = lead.terms().begin()->first;
    ++rep.trials;
    if (p.coeff(lm).is_zero()) {
      rep.fail("replay: " + why + " gives " + p.to_string(vars_) + ", expected a multiple of " + shown.to_string(vars_));
      return p;
    }
    p = p * SparsePoly(SmoothRational(1) / p.coeff(lm));
    SparsePoly pp = shown * SparsePoly(SmoothRational(1) / shown.coeff(lm));
    if (!p.equal_up_to_sign(pp))
      rep.fail("replay: " + why + " gives " + p.to_string(vars_) + ", expected " + pp.to_string(vars_));
    relations_.push_back({p, lm});
    return p;
  }

 private:
  static SmoothRational unit_part(const SmoothRational& c) {
    if (c.num() != 1 && c.num() != -1)
      throw Error(Errc::NonSmoothDenominator, "leading coefficient " + c.to_string() + " is not a unit");
    return c;
  }

  void set(int v, const SparsePoly& value) {
    for (auto& [w, val] : subst_) val = val.substitute(v, value);
    subst_.emplace_back(v, value);
  }

  VarTable& vars_;
  std::set<int> invertible_;
  std::vector<std::pair<int, SparsePoly>> subst_;
  std::vector<std::pair<SparsePoly, Monomial>> relations_;
};

}  // namespace

SymbolicReport verify_laundry(int n) {
  if (n < 3) throw Error(Errc::RankTooSmall, "laundry expansion needs rank >= 3");
  SymbolicReport out;
  CheckReport& rep = out.report;
  GroupPtr g = UpGroup::make(n, Field::make(5));
  const RootSystem& R = g->roots();
  LaundrySetup s = laundry_setup(g);
  auto prods = laundry_products(s);
  const auto& displays = laundry_displays();

  // computed[display][tag]
  std::vector<std::map<std::string, SparsePoly>> computed(displays.size());
  for (size_t k = 0; k < displays.size(); ++k) {
    const Display& d = displays[k];
    auto coords = sym_normal_form(prods[k]);
    out.dump += std::string(d.name) + " n=" + std::to_string(n) + "\n" + dump_coords(g, coords, s.vars);
    if (k == 2) {
      // This display is printed without c_m1122; compare on c_m1122 = 0, which [c,bbar] forces.
      int cv = s.vars.id("cm1122");
      int dropped = 0;
      for (auto& p : coords) {
        SparsePoly q = p.substitute(cv, SparsePoly());
        dropped += static_cast<int>(p.terms().size()) - static_cast<int>(q.terms().size());
        p = q;
      }
      out.notes.push_back(std::string(d.name) + ": compared on c_m1122 = 0 (" + std::to_string(dropped) +
                          " monomials containing c_m1122 dropped)");
    }
    std::vector<RootId> want;
    for (auto& line : d.lines) want.push_back(laundry_root(R, line.tag));
    std::sort(want.begin(), want.end());
    ++rep.trials;
    if (sym_support(coords) != want)
      rep.fail(std::string("MismatchAtCoefficient: ") + d.name + " support " + root_set_string(R, sym_support(coords)) +
               " vs displayed " + root_set_string(R, want));
    for (auto& line : d.lines) {
      RootId r = laundry_root(R, line.tag);
      SparsePoly ours = coords[r];
      SparsePoly shown = SparsePoly::parse(line.poly, s.vars);
      computed[k][line.tag] = ours;
      std::string where = std::string(d.name) + " at x_" + R[r].label();
      ++rep.trials;
      int flips = 0;
      for (auto& [m, c] : shown.terms()) {
        SmoothRational o = ours.coeff(m);
        auto mag = c.abs().as_integer();
        if (!mag || *mag < 1 || *mag > 3)
          rep.fail("MismatchAtCoefficient: " + where + " displayed coefficient " + c.to_string() + " outside {1,2,3}");
        if (o.abs() != c.abs())
          rep.fail("MismatchAtCoefficient: " + where + " monomial " + mono_string(m, s.vars) + ": computed " +
                   o.to_string() + ", displayed " + c.to_string());
        else if (o != c) ++flips;
      }
      for (auto& [m, c] : ours.terms())
        if (shown.coeff(m).is_zero())
          rep.fail("MismatchAtCoefficient: " + where + " extra monomial " + mono_string(m, s.vars) + " with coefficient " +
                   c.to_string());
      out.notes.push_back(where + ": " + std::to_string(shown.terms().size()) + " monomials, " +
                          std::to_string(flips) + " sign flips");
    }
  }
  out.notes.push_back("[a,bbar] c^-1: the printed factor \"a_{m112} b_12\" is read as a_{m112} b_{12}");

  auto& V = s.vars;
  auto P = [&](const char* t) { return SparsePoly::parse(t, V); };
  Replay rp(V, {"a1", "b2", "c12"});
  rp.zero(V.id("cm1122"), computed[1]["m112"], "[c,bbar] at m112", rep);
  rp.zero(V.id("bm1122"), computed[1]["m12"], "[c,bbar] at m12", rep);
  rp.zero(V.id("cm112"), computed[1]["m11"], "[c,bbar] at m11", rep);
  rp.zero(V.id("am1122"), computed[0]["m12"], "[a,c] at m12", rep);
  SparsePoly r1 = rp.relation(computed[0]["m1"], P("am112 c12 - a1 cm11"), "am112 c12", "[a,c] at m1", rep);
  SparsePoly r2 = rp.relation(computed[0]["max"], P("a1 cm11 - 2 cm1"), "a1 cm11", "[a,c] at max", rep);
  out.notes.push_back("derived: " + r1.to_string(V) + " = 0");
  out.notes.push_back("derived: " + r2.to_string(V) + " = 0");
  std::string shown;
  rp.solve(V.id("c12"), computed[2]["12"], true, "[a,bbar] c^-1 at 12", rep, &shown);
  out.notes.push_back("derived: " + shown);
  rp.solve(V.id("cm11"), r1, false, "relation " + r1.to_string(V), rep, &shown);
  out.notes.push_back("derived: " + shown);
  rp.zero(V.id("am112"), computed[2]["m11"], "[a,bbar] c^-1 at m11", rep);
  for (const char* v : {"am1122", "am112", "cm1122", "cm112", "cm11"}) {
    ++rep.trials;
    SparsePoly z = rp.reduce(P(v), false);
    if (!z.is_zero()) rep.fail(std::string("replay: conclusion ") + v + " = 0 not reached, left " + z.to_string(V));
  }
  out.notes.push_back("conclusion: a_m1122 = a_m112 = c_m1122 = c_m112 = c_m11 = 0 (c_m1122 is present and forced to 0)");
  return out;
}

namespace {

struct SkinSetup {
  GroupPtr g;
  VarTable vars;
  std::vector<int> zeta, eta, xi;  // 1-based
  int t = 0;
  std::vector<SymFactor> b, c;
};

RootId S_root(const RootSystem& R, int i) { return R.chain(1, i); }
RootId H_root(const RootSystem& R, int i) { return i == 0 ? R.max_root() : R.id({1, -(i + 1)}); }

SkinSetup skin_setup(const GroupPtr& g) {
  SkinSetup s;
  s.g = g;
  int n = g->n();
  const RootSystem& R = g->roots();
  s.zeta.assign(n, -1), s.eta.assign(n, -1), s.xi.assign(n + 1, -1);
  for (int i = 1; i < n; ++i) s.zeta[i] = s.vars.id("zeta" + std::to_string(i));
  for (int i = 1; i < n; ++i) s.eta[i] = s.vars.id("eta" + std::to_string(i));
  for (int i = 1; i <= n; ++i) s.xi[i] = s.vars.id("xi" + std::to_string(i));
  s.t = s.vars.id("t");
  for (int i = 1; i < n; ++i) {
    s.b.push_back({S_root(R, i), SparsePoly::var(s.zeta[i])});
    s.b.push_back({H_root(R, i), SparsePoly::var(s.eta[i])});
  }
  for (int i = 1; i <= n; ++i) s.c.push_back({R.simple(i), SparsePoly::var(s.xi[i])});
  return s;
}

SymMatrix subst_matrix(const SymMatrix& m, int v, const SparsePoly& value) {
  SymMatrix r = m;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = i + 1; j < m.dim(); ++j) r(i, j) = m(i, j).substitute(v, value);
  return r;
}

}  // namespace

SymbolicReport verify_skinmax_expansion(int n) {
  if (n < 4) throw Error(Errc::RankTooSmall, "skin expansion needs rank >= 4");
  SymbolicReport out;
  CheckReport& rep = out.report;
  GroupPtr g = UpGroup::make(n, Field::make(5));
  const RootSystem& R = g->roots();
  const StructureConstants& N = g->N();
  SkinSetup s = skin_setup(g);
  auto X = [](int v, int e = 1) { return SparsePoly::var(v, e); };
  auto K = [](int c) { return SparsePoly(SmoothRational(c)); };
  auto Nk = [&](int k) { return k < n ? N.n1(R.simple(k), H_root(R, k)) : N.n1(S_root(R, n - 1), R.simple(n)); };

  // A_i(t) = [x_{alpha_1}(xi_1)...x_{alpha_i}(xi_i), x_{H(i)}(t)]
  std::vector<SymMatrix> A(n);
  for (int i = 1; i < n; ++i) {
    std::vector<SymFactor> pre(s.c.begin(), s.c.begin() + i);
    A[i] = sym_commutator(parametric_element(g, pre), SymMatrix::elem(g, H_root(R, i), X(s.t)));
  }
  ++rep.trials;
  if (!(A[1] == SymMatrix::elem(g, R.max_root(), K(Nk(1)) * X(s.xi[1]) * X(s.t))))
    rep.fail("MismatchAtCoefficient: A_1(t) is not x_max(N xi1 t)");
  for (int i = 2; i < n; ++i) {
    SparsePoly arg = K(Nk(i)) * X(s.xi[i]) * X(s.t);
    SymMatrix rec = subst_matrix(A[i - 1], s.t, arg) * SymMatrix::elem(g, H_root(R, i - 1), arg);
    ++rep.trials;
    if (!(rec == A[i])) rep.fail("MismatchAtCoefficient: A_" + std::to_string(i) + " recursion differs from direct expansion");
  }
  for (int i = 1; i < n; ++i) {
    std::vector<SymFactor> closed;
    for (int j = 1; j <= i; ++j) {
      SparsePoly coef = X(s.t);
      for (int k = j; k <= i; ++k) coef = coef * K(Nk(k)) * X(s.xi[k]);
      closed.push_back({H_root(R, j - 1), coef});
    }
    ++rep.trials;
    if (!(parametric_element(g, closed) == A[i]))
      rep.fail("MismatchAtCoefficient: closed form of A_" + std::to_string(i) + " differs from direct expansion");
  }
  out.notes.push_back("A_i recursion and closed form agree with direct expansion for i = 1.." + std::to_string(n - 1));

  SymMatrix B = parametric_element(g, s.b);
  SparsePoly omitted;  // central terms of [b, x_alpha_i] missing from the per-generator display
  auto want_max_of = [&](const std::vector<std::pair<RootId, SparsePoly>>& v) {
    for (auto& [r, p] : v)
      if (r == R.max_root()) return p;
    return SparsePoly();
  };
  for (int i = 1; i <= n; ++i) {
    std::vector<std::pair<RootId, SparsePoly>> shown;
    if (i == 1) {
      shown.push_back({R.max_root(), K(N.n1(H_root(R, 1), R.simple(1))) * X(s.eta[1]) * X(s.xi[1])});
    } else if (i < n) {
      shown.push_back({S_root(R, i), K(N.n1(S_root(R, i - 1), R.simple(i))) * X(s.zeta[i - 1]) * X(s.xi[i])});
      shown.push_back({H_root(R, i - 1), K(N.n1(H_root(R, i), R.simple(i))) * X(s.eta[i]) * X(s.xi[i])});
    } else {
      shown.push_back({S_root(R, n), K(Nk(n)) * X(s.zeta[n - 1]) * X(s.xi[n])});
      shown.push_back({R.max_root(), K(N.n2(S_root(R, n - 1), R.simple(n))) * X(s.zeta[n - 1], 2) * X(s.xi[n])});
    }
    auto got = sym_normal_form(sym_commutator(B, SymMatrix::elem(g, R.simple(i), X(s.xi[i]))));
    omitted = omitted + (got[R.max_root()] - want_max_of(shown));
    std::vector<SparsePoly> want(R.size());
    for (auto& [r, p] : shown) want[r] = p;
    for (RootId r = 0; r < R.size(); ++r) {
      ++rep.trials;
      if (!got[r].equal_up_to_sign(want[r]))
        rep.fail("MismatchAtCoefficient: [b, x_alpha" + std::to_string(i) + "(xi" + std::to_string(i) + ")] at x_" +
                 R[r].label() + ": computed " + got[r].to_string(s.vars) + ", displayed " + want[r].to_string(s.vars));
    }
  }

  SymMatrix D = sym_commutator(B, parametric_element(g, s.c));
  auto coords = sym_normal_form(D);
  out.dump = "[b,c] n=" + std::to_string(n) + "\n" + dump_coords(g, coords, s.vars);
  std::vector<RootId> want = {R.max_root(), S_root(R, n)};
  for (int i = 2; i <= n; ++i) want.push_back(S_root(R, i));
  for (int i = 2; i <= n - 1; ++i) want.push_back(H_root(R, i - 1));
  std::sort(want.begin(), want.end());
  want.erase(std::unique(want.begin(), want.end()), want.end());
  ++rep.trials;
  if (sym_support(coords) != want)
    rep.fail("MismatchAtCoefficient: [b,c] support " + root_set_string(R, sym_support(coords)) + " vs " +
             root_set_string(R, want));

  // Displayed factor list, evaluated with the measured constants.
  std::vector<std::pair<RootId, SparsePoly>> shown;
  auto prodN = [&](int from, int to) {
    SparsePoly p = K(1);
    for (int k = from; k <= to; ++k) p = p * K(Nk(k)) * X(s.xi[k]);
    return p;
  };
  for (int i = 2; i <= n - 1; ++i) {
    shown.push_back({S_root(R, i), K(N.n1(S_root(R, i - 1), R.simple(i))) * X(s.zeta[i - 1]) * X(s.xi[i])});
    SparsePoly h = K(N.n1(H_root(R, i), R.simple(i))) * X(s.eta[i]) * X(s.xi[i]);
    for (int j = i + 1; j <= n - 1; ++j) h = h - X(s.eta[j]) * prodN(i, j);
    h = h - X(s.zeta[n - 1]) * prodN(i, n);
    shown.push_back({H_root(R, i - 1), h});
  }
  shown.push_back({S_root(R, n), K(Nk(n)) * X(s.zeta[n - 1]) * X(s.xi[n])});
  SparsePoly mx = K(N.n1(H_root(R, 1), R.simple(1))) * X(s.eta[1]) * X(s.xi[1]) +
                  K(N.n2(S_root(R, n - 1), R.simple(n))) * X(s.zeta[n - 1], 2) * X(s.xi[n]);
  for (int j = 2; j <= n - 1; ++j) mx = mx - X(s.eta[j]) * prodN(1, j);
  mx = mx - X(s.zeta[n - 1]) * prodN(1, n);

  // Our coefficients with respect to the displayed factor order.
  std::vector<SymFactor> ordered;
  for (auto& [r, p] : shown) ordered.push_back({r, coords[r]});
  SymMatrix rest = parametric_element(g, ordered).inverse() * D;
  SparsePoly our_max = rest(0, 2 * n - 1);
  ++rep.trials;
  if (!(rest == SymMatrix::elem(g, R.max_root(), our_max)))
    rep.fail("MismatchAtCoefficient: [b,c] is not the displayed product times a central factor");
  shown.push_back({R.max_root(), mx});
  for (auto& [r, p] : shown) {
    SparsePoly ours = r == R.max_root() ? our_max : coords[r];
    ++rep.trials;
    if (!ours.equal_up_to_sign(p)) {
      rep.fail("MismatchAtCoefficient: [b,c] at x_" + R[r].label() + ": computed " + ours.to_string(s.vars) +
               ", displayed " + p.to_string(s.vars));
      if (r == R.max_root() && (ours - omitted).equal_up_to_sign(p))
        out.notes.push_back("[b,c] at x_" + R[r].label() + " matches the display up to monomial signs once the omitted "
                            "central terms " + omitted.to_string(s.vars) + " are removed");
    }
    else if (ours != p)
      out.notes.push_back("[b,c] at x_" + R[r].label() + " matches up to monomial signs");
  }
  return out;
}

CheckReport symbolic_consistency(const GroupPtr& g, int trials, uint64_t seed) {
  CheckReport rep;
  const Field& F = g->field();
  struct Case {
    std::string name;
    SymMatrix sym;
    std::function<UpMatrix(const std::vector<Field::V>&)> direct;
    int nvars;
  };
  std::vector<Case> cases;
  auto build = [&](const std::vector<SymFactor>& spec, const std::vector<Field::V>& vals) {
    UpMatrix m = g->identity();
    for (auto& [r, p] : spec) m.right_mul_elem(r, p.eval(F, vals));
    return m;
  };
  auto ls = std::make_shared<LaundrySetup>(laundry_setup(g));
  auto lp = laundry_products(*ls);
  cases.push_back({"[a,c]", lp[0], [=](auto& v) { return commutator(build(ls->a, v), build(ls->c, v)); },
                   ls->vars.size()});
  cases.push_back({"[c,bbar]", lp[1], [=](auto& v) { return commutator(build(ls->c, v), build(ls->bbar, v)); },
                   ls->vars.size()});
  cases.push_back({"[a,bbar] c^-1", lp[2],
                   [=](auto& v) { return commutator(build(ls->a, v), build(ls->bbar, v)) * build(ls->c, v).inverse(); },
                   ls->vars.size()});
  if (g->n() >= 4) {
    auto ss = std::make_shared<SkinSetup>(skin_setup(g));
    SymMatrix D = sym_commutator(parametric_element(g, ss->b), parametric_element(g, ss->c));
    cases.push_back({"[b,c]", D, [=](auto& v) { return commutator(build(ss->b, v), build(ss->c, v)); },
                     ss->vars.size()});
  }
  for (int t = 0; t < trials; ++t) {
    Rng rng(seed, t);
    for (auto& c : cases) {
      std::vector<Field::V> vals(c.nvars);
      for (auto& v : vals) v = rng.elem(F);
      ++rep.trials;
      if (c.sym.eval(vals) != c.direct(vals)) rep.fail("symbolic " + c.name + " disagrees with matrix engine at trial " + std::to_string(t));
    }
  }
  return rep;
}

}  // namespace upkit

#include "upkit/field.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <utility>

namespace upkit {

namespace {

constexpr uint32_t kMaxOrder = 10000;
constexpr uint32_t kAddTableLimit = 1024;

using Poly = std::vector<int64_t>;  // ascending, mod p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic b over F_p.
Poly poly_mod(Poly a, const Poly& b, int64_t p) {
  trim(a);
  size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    int64_t c = a.back();
    size_t shift = a.size() - 1 - db;
    for (size_t i = 0; i <= db; ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

}  // namespace

uint32_t FieldSpec::q() const {
  uint32_t r = 1;
  for (uint32_t i = 0; i < k; ++i) r *= p;
  return r;
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<uint32_t> Field::smallest_irreducible(uint32_t p, uint32_t k) {
  if (k == 1) return {0, 1};
  uint64_t count = 1;
  for (uint32_t i = 0; i < k; ++i) count *= p;
  // Enumerate (c_{k-1}, ..., c_0) lexicographically.
  for (uint64_t idx = 0; idx < count; ++idx) {
    Poly f(k + 1, 0);
    f[k] = 1;
    uint64_t t = idx;
    for (uint32_t i = 0; i < k; ++i) {
      f[i] = static_cast<int64_t>(t % p);
      t /= p;
    }
    bool irreducible = true;
    for (uint32_t d = 1; d <= k / 2 && irreducible; ++d) {
      uint64_t cnt = 1;
      for (uint32_t i = 0; i < d; ++i) cnt *= p;
      for (uint64_t g = 0; g < cnt && irreducible; ++g) {
        Poly h(d + 1, 0);
        h[d] = 1;
        uint64_t s = g;
        for (uint32_t i = 0; i < d; ++i) {
          h[i] = static_cast<int64_t>(s % p);
          s /= p;
        }
        if (poly_mod(f, h, p).empty()) irreducible = false;
      }
    }
    if (irreducible) return {f.begin(), f.end()};
  }
  throw Error(Errc::BadParams, "no irreducible polynomial found");
}

std::shared_ptr<const Field> Field::make(uint32_t p, uint32_t k) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (p == 2 || p == 3) throw Error(Errc::CharDividesSix, "characteristic " + std::to_string(p));
  if (k == 0) throw Error(Errc::BadParams, "degree must be positive");
  uint64_t q = 1;
  for (uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxOrder) throw Error(Errc::FieldTooLarge, "p^k exceeds " + std::to_string(kMaxOrder));
  }
  static std::mutex mu;
  static std::map<std::pair<uint32_t, uint32_t>, std::shared_ptr<const Field>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, k}];
  if (!slot) slot = std::shared_ptr<const Field>(new Field(p, k));
  return slot;
}

Field::Field(uint32_t p, uint32_t k) {
  spec_.p = p;
  spec_.k = k;
  spec_.modulus = smallest_irreducible(p, k);
  q_ = spec_.q();
  neg_.resize(q_);
  for (V a = 0; a < q_; ++a) {
    auto c = coeffs(a);
    for (auto& x : c) x = (p - x) % p;
    neg_[a] = from_coeffs(c);
  }
  if (k > 1 && q_ <= kAddTableLimit) {
    add_table_.resize(static_cast<size_t>(q_) * q_);
    for (V a = 0; a < q_; ++a)
      for (V b = 0; b < q_; ++b) add_table_[a * q_ + b] = add_slow(a, b);
  }
  // Find a primitive element using schoolbook multiplication.
  auto factors = prime_factors(q_ - 1);
  auto slow_pow = [&](V a, uint64_t e) {
    V r = 1;
    while (e) {
      if (e & 1) r = mul_poly(r, a);
      a = mul_poly(a, a);
      e >>= 1;
    }
    return r;
  };
  V g = 0;
  for (V cand = 1; cand < q_; ++cand) {
    bool ok = true;
    for (auto r : factors)
      if (slow_pow(cand, (q_ - 1) / r) == 1) {
        ok = false;
        break;
      }
    if (ok) {
      g = cand;
      break;
    }
  }
  exp_.resize(2 * (q_ - 1));
  log_.assign(q_, 0);
  V x = 1;
  for (uint32_t i = 0; i < q_ - 1; ++i) {
    exp_[i] = x;
    exp_[i + q_ - 1] = x;
    log_[x] = i;
    x = mul_poly(x, g);
  }
}

Field::V Field::add_slow(V a, V b) const {
  V r = 0, m = 1;
  for (uint32_t i = 0; i < spec_.k; ++i) {
    r += ((a % spec_.p + b % spec_.p) % spec_.p) * m;
    a /= spec_.p;
    b /= spec_.p;
    m *= spec_.p;
  }
  return r;
}

Field::V Field::mul_poly(V a, V b) const {
  auto ca = coeffs(a), cb = coeffs(b);
  Poly prod(2 * spec_.k, 0);
  for (uint32_t i = 0; i < spec_.k; ++i)
    for (uint32_t j = 0; j < spec_.k; ++j) prod[i + j] = (prod[i + j] + int64_t(ca[i]) * cb[j]) % spec_.p;
  Poly m(spec_.modulus.begin(), spec_.modulus.end());
  auto r = poly_mod(prod, m, spec_.p);
  std::vector<uint32_t> out(spec_.k, 0);
  for (size_t i = 0; i < r.size(); ++i) out[i] = static_cast<uint32_t>(r[i]);
  return from_coeffs(out);
}

Field::V Field::inv(V a) const {
  if (a == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Field::V Field::pow(V a, uint64_t e) const {
  V r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Field::V Field::frobenius(V a, int64_t m) const {
  int64_t k = spec_.k;
  m = ((m % k) + k) % k;
  for (int64_t i = 0; i < m; ++i) a = pow(a, spec_.p);
  return a;
}

Field::V Field::from_int(int64_t x) const {
  int64_t p = spec_.p;
  return static_cast<V>(((x % p) + p) % p);
}

Field::V Field::from_coeffs(const std::vector<uint32_t>& c) const {
  if (c.size() != spec_.k) throw Error(Errc::DimensionMismatch, "expected " + std::to_string(spec_.k) + " coefficients");
  V r = 0, m = 1;
  for (auto x : c) {
    if (x >= spec_.p) throw Error(Errc::BadParams, "coefficient out of range");
    r += x * m;
    m *= spec_.p;
  }
  return r;
}

std::vector<uint32_t> Field::coeffs(V a) const {
  std::vector<uint32_t> c(spec_.k);
  for (auto& x : c) {
    x = a % spec_.p;
    a /= spec_.p;
  }
  return c;
}

std::optional<int64_t> Field::lift(V a) const {
  if (!in_prime_field(a)) return std::nullopt;
  int64_t v = a;
  if (2 * v > int64_t(spec_.p)) v -= spec_.p;
  return v;
}

std::string Field::to_string(V a) const {
  if (spec_.k == 1) return std::to_string(a);
  std::ostringstream os;
  auto c = coeffs(a);
  os << '[';
  for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ']';
  return os.str();
}

const Field& FieldElem::same(const FieldElem& o) const {
  if (!f_ || !o.f_) throw Error(Errc::MixedFields, "uninitialised element");
  if (f_ != o.f_ && !(f_->spec() == o.f_->spec())) throw Error(Errc::MixedFields, "elements from different fields");
  return *f_;
}

FieldElem FieldElem::operator+(const FieldElem& o) const { return {f_, same(o).add(v_, o.v_)}; }
FieldElem FieldElem::operator-(const FieldElem& o) const { return {f_, same(o).sub(v_, o.v_)}; }
FieldElem FieldElem::operator*(const FieldElem& o) const { return {f_, same(o).mul(v_, o.v_)}; }
FieldElem FieldElem::operator/(const FieldElem& o) const { return {f_, same(o).div(v_, o.v_)}; }
FieldElem FieldElem::operator-() const { return {f_, f_->neg(v_)}; }
FieldElem FieldElem::inv() const { return {f_, f_->inv(v_)}; }
FieldElem FieldElem::pow(uint64_t e) const { return {f_, f_->pow(v_, e)}; }
FieldElem FieldElem::frobenius(int64_t m) const { return {f_, f_->frobenius(v_, m)}; }
bool FieldElem::operator==(const FieldElem& o) const {
  same(o);
  return v_ == o.v_;
}

}  // namespace upkit

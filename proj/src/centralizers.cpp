#include "upkit/centralizers.hpp"

#include <algorithm>

namespace upkit {

bool commutes(const UpMatrix& a, const UpMatrix& b) { return a * b == b * a; }

std::string root_set_string(const RootSystem& R, const std::vector<RootId>& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + R[s[i]].label();
  return out + "}";
}

std::vector<RootId> centralizer_of_rootset(const RootSystem& R, const std::vector<RootId>& S) {
  if (S.empty()) throw Error(Errc::EmptySet, "centralizer of an empty root set");
  std::vector<RootId> out;
  for (RootId b = 0; b < R.size(); ++b)
    if (std::none_of(S.begin(), S.end(), [&](RootId a) { return R.sum(a, b).has_value(); })) out.push_back(b);
  return out;
}

namespace {

std::vector<RootId> sorted(std::vector<RootId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

RootId minus(const RootSystem& R, RootId a, const std::vector<int>& m) {
  std::vector<int> r = R[a].m;
  for (size_t k = 0; k < r.size(); ++k) r[k] -= m[k];
  return *R.from_m(r);
}

std::vector<int> chain_m(int n, int i, int j) {
  std::vector<int> m(n, 0);
  for (int k = i; k <= j; ++k) m[k - 1] = 1;
  return m;
}

}  // namespace

std::vector<CentralizerClaim> simple_root_centralizer_claims(const RootSystem& R) {
  int n = R.n();
  RootId mx = R.max_root();
  std::vector<RootId> u1;
  for (RootId a = 0; a < R.size(); ++a)
    if (R[a].m[0] >= 1) u1.push_back(a);
  auto without = [&](std::vector<RootId> excl) {
    std::vector<RootId> out;
    for (RootId a : u1)
      if (std::find(excl.begin(), excl.end(), a) == excl.end()) out.push_back(a);
    return out;
  };
  std::vector<CentralizerClaim> out;
  for (int i = 1; i < n; ++i) {
    std::vector<RootId> excl = {minus(R, mx, chain_m(n, 1, i))};
    if (i >= 2) excl.push_back(R.chain(1, i - 1));
    CentralizerClaim c;
    c.label = "item 1, i=" + std::to_string(i);
    c.input = without(excl);
    c.claimed = {R.simple(i), R.chain(1, i), i >= 2 ? minus(R, mx, chain_m(n, 1, i - 1)) : mx, mx};
    c.claimed = sorted(c.claimed);
    out.push_back(c);
  }
  {
    CentralizerClaim c;
    c.label = "item 2";
    for (int i = 1; i <= n - 3; ++i) c.input.push_back(R.simple(i));
    for (int j = 1; j <= n - 1; ++j) c.input.push_back(minus(R, mx, chain_m(n, 1, j)));
    c.input.push_back(mx);
    std::vector<int> m(n, 0);
    m[n - 2] = 2;
    m[n - 1] = 1;
    std::vector<int> full(n, 1);
    std::vector<int> full2 = full;
    full2[n - 2] = 2;
    c.claimed = sorted({R.simple(n), R.chain(n - 1, n), *R.from_m(m), *R.from_m(full), *R.from_m(full2), mx});
    c.input = sorted(c.input);
    out.push_back(c);
  }
  {
    CentralizerClaim c;
    c.label = "item 3";
    c.input = without({minus(R, mx, chain_m(n, 1, 1)), minus(R, mx, chain_m(n, 1, 2))});
    c.claimed = sorted({R.simple(1), R.chain(1, 2), mx});
    out.push_back(c);
  }
  {
    CentralizerClaim c;
    c.label = "item 4";
    c.input = without({R.simple(1), R.chain(1, 2), R.chain(1, n - 1)});
    // alpha_i + ... + alpha_n + ... + alpha_i = 2 e_i has m = (0..0, 2..2, 1).
    auto twice_from = [&](int i) {
      std::vector<int> m(n, 0);
      for (int k = i; k < n; ++k) m[k - 1] = 2;
      m[n - 1] = 1;
      return *R.from_m(m);
    };
    auto plus_back = [&](int i, int j) {  // alpha_i + ... + alpha_n + ... + alpha_j (j > i)
      std::vector<int> m(n, 0);
      for (int k = i; k < j; ++k) m[k - 1] = 1;
      for (int k = j; k < n; ++k) m[k - 1] = 2;
      m[n - 1] = 1;
      return *R.from_m(m);
    };
    c.claimed = sorted({R.simple(n), R.chain(2, n), plus_back(2, 3), R.chain(3, n), twice_from(2), twice_from(3),
                        minus(R, mx, chain_m(n, 1, 1)), minus(R, mx, chain_m(n, 1, 2)), R.chain(1, n), mx});
    out.push_back(c);
  }
  return out;
}

CheckReport verify_centralizer_lemma(const GroupPtr& g, RootId a, int trials, uint64_t seed) {
  const RootSystem& R = g->roots();
  const Field& F = g->field();
  CheckReport rep;
  auto perp = R.perp(a);
  std::vector<bool> in_perp(R.size(), false);
  for (RootId b : perp) in_perp[b] = true;
  UpMatrix xa = g->elem(a, 1);
  Rng rng(seed, 0);
  for (RootId b : perp)
    for (int s = 0; s < 5; ++s) {
      Field::V xi = rng.elem(F);
      ++rep.trials;
      if (!commutes(xa, g->elem(b, xi)))
        rep.fail("x_" + R[b].label() + "(" + F.to_string(xi) + ") does not commute with x_" + R[a].label() + "(1)");
    }
  std::vector<RootId> outside;
  for (RootId b = 0; b < R.size(); ++b)
    if (!in_perp[b]) outside.push_back(b);
  for (int t = 0; t < trials; ++t) {
    Rng r(seed, t + 1);
    Coords c = g->random_coords(r);
    bool escapes = false;
    for (RootId b : outside) escapes = escapes || c[b] != 0;
    if (!escapes && !outside.empty()) c[outside[r.below(outside.size())]] = r.nonzero(F);
    UpMatrix b = g->from_coords(c);
    ++rep.trials;
    bool expect = outside.empty();
    if (commutes(xa, b) != expect)
      rep.fail(std::string(expect ? "central element failed to commute" : "element outside the claimed centralizer commutes") +
               " with x_" + R[a].label() + "(1)");
    // Refinement: the centralizer does not depend on xi != 0 or on a central factor.
    Field::V xi = r.nonzero(F), z = r.elem(F);
    UpMatrix y = g->elem(a, xi);
    UpMatrix yz = y;
    yz.right_mul_elem(R.max_root(), z);
    UpMatrix inside = g->random_supported(r, perp);
    for (const UpMatrix* w : {&b, &inside}) {
      bool c1 = commutes(*w, xa), c2 = commutes(*w, y), c3 = commutes(*w, yz);
      if (c1 != c2 || c2 != c3) rep.fail("centralizer of x_" + R[a].label() + " depends on the argument");
    }
    if (!commutes(inside, xa)) rep.fail("element supported on the perp set does not commute with x_" + R[a].label());
  }
  return rep;
}

}  // namespace upkit

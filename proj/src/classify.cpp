#include "upkit/classify.hpp"

#include <algorithm>
#include <sstream>

namespace upkit {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(Errc::StepPostconditionFailed, msg);
}

std::string coords_string(const UpGroup& g, const Coords& c) {
  std::ostringstream os;
  bool first = true;
  for (RootId a = 0; a < static_cast<RootId>(c.size()); ++a)
    if (c[a]) {
      os << (first ? "" : " ") << "x_" << g.roots()[a].label() << "(" << g.field().to_string(c[a]) << ")";
      first = false;
    }
  return first ? "e" : os.str();
}

// -(N(beta, gamma) * lead)^-1 * target: the parameter t with x_beta(t) conjugation cancelling `target`.
Field::V cancel(const UpGroup& g, RootId beta, RootId gamma, Field::V lead, Field::V target) {
  const Field& F = g.field();
  Field::V nn = F.from_int(g.N().n1(beta, gamma));
  return F.neg(F.div(target, F.mul(nn, lead)));
}

std::vector<Field::V> all_elems(const Field& F) {
  std::vector<Field::V> v(F.q());
  for (Field::V x = 0; x < F.q(); ++x) v[x] = x;
  return v;
}

void check_support(const PipelineState& s, RootId a, Field::V xi, const std::vector<RootId>& allowed,
                   const std::string& step) {
  Coords c = s.image(a, xi);
  if (!support_within(c, allowed))
    throw Error(Errc::StepPostconditionFailed, step + ": image of x_" + s.g->roots()[a].label() + "(" +
                                                   s.g->field().to_string(xi) + ") = " + coords_string(*s.g, c) +
                                                   " leaves " + root_set_string(s.g->roots(), allowed));
}

}  // namespace

PipelineState::PipelineState(GroupPtr g_, MapFn oracle_) : g(std::move(g_)), oracle(oracle_), phi(std::move(oracle_)) {}

void PipelineState::apply_left(const std::string& role, const MapDescriptor& d) {
  applied.push_back({role, d});
  MapFn prev = phi;
  phi = [d, prev](const UpMatrix& a) { return apply_map(d, prev(a)); };
  log(role + ": " + d.describe());
}

Coords PipelineState::image(RootId a, Field::V xi) const { return normal_form_coords(phi(g->elem(a, xi))); }

CheckReport step_T12_check(const PipelineState& s) {
  const RootSystem& R = s.g->roots();
  if (R.n() < 3) throw Error(Errc::RankTooSmall, "T12 check needs rank >= 3");
  RootId mx = R.max_root(), a1 = R.simple(1);
  RootId m11 = *R.diff(*R.diff(mx, a1), a1);
  RootId m112 = *R.diff(m11, R.simple(2));
  RootId m1122 = *R.diff(m112, R.simple(2));
  std::vector<RootId> allowed = {m11, m112, m1122};
  for (RootId a = 0; a < R.size(); ++a)
    if (R[a].m[0] >= 1) allowed.push_back(a);
  CheckReport rep;
  for (Field::V xi : all_elems(s.g->field())) {
    ++rep.trials;
    Coords c = s.image(a1, xi);
    if (!support_within(c, allowed))
      rep.fail("image of x_" + R[a1].label() + "(" + s.g->field().to_string(xi) + ") = " + coords_string(*s.g, c));
  }
  return rep;
}

void step_U1(PipelineState& s) {
  const UpGroup& g = *s.g;
  const RootSystem& R = g.roots();
  const Field& F = g.field();
  int n = R.n();
  RootId a1 = R.simple(1), mx = R.max_root();
  RootId m1 = *R.diff(mx, a1), m11 = *R.diff(m1, a1);

  Coords a = s.image(a1, 1);
  require(a[a1] != 0, "U1: image of x_alpha1(1) has zero alpha1 coefficient");
  UpMatrix c1 = g.identity();
  for (int j = 3; j <= n; ++j)
    for (int sgn : {1, -1}) {
      RootId beta = R.id({2, sgn * j});
      c1.right_mul_elem(beta, cancel(g, beta, a1, a[a1], a[*R.sum(beta, a1)]));
    }
  s.apply_left("inner C1 (first row of alpha1 image)", MapDescriptor::inner(c1));

  RootId g12 = R.chain(1, 2);
  Coords b = s.image(g12, 1);
  require(b[g12] != 0, "U1: image of x_alpha1+alpha2(1) has zero leading coefficient");
  UpMatrix c1b = g.identity();
  for (int j = 4; j <= n; ++j)
    for (int sgn : {1, -1}) {
      RootId beta = R.id({3, sgn * j});
      c1b.right_mul_elem(beta, cancel(g, beta, g12, b[g12], b[*R.sum(beta, g12)]));
    }
  s.apply_left("inner C1 (first row of alpha1+alpha2 image)", MapDescriptor::inner(c1b));

  a = s.image(a1, 1);
  check_support(s, a1, 1, {a1, m11, m1, mx}, "U1 after C1");
  s.apply_left("extremal2", MapDescriptor::extremal2(s.g, F.neg(F.div(a[m11], a[a1]))));

  for (int k = 2; k <= n - 1; ++k) {
    RootId gam = R.chain(1, k);
    Coords c = s.image(gam, 1);
    require(c[gam] != 0, "U1: zero leading coefficient in image of x_" + R[gam].label());
    UpMatrix ck = g.identity();
    for (int j = k + 2; j <= n; ++j)
      for (int sgn : {1, -1}) {
        RootId beta = R.id({k + 1, sgn * j});
        ck.right_mul_elem(beta, cancel(g, beta, gam, c[gam], c[*R.sum(beta, gam)]));
      }
    if (!ck.is_identity()) s.apply_left("inner C" + std::to_string(k) + " (row " + std::to_string(k + 1) + ")",
                                        MapDescriptor::inner(ck));
    c = s.image(gam, 1);
    RootId lng = R.id({k + 1, -(k + 1)});
    UpMatrix cl = g.elem(lng, cancel(g, lng, gam, c[gam], c[*R.sum(lng, gam)]));
    s.apply_left("inner C" + std::to_string(k) + " (long root " + R[lng].label() + ")", MapDescriptor::inner(cl));
    check_support(s, gam, 1, {gam, mx}, "U1 step " + std::to_string(k));
  }

  a = s.image(a1, 1);
  s.apply_left("extremal1 eta", MapDescriptor::extremal1(s.g, F.neg(F.div(a[m1], a[a1]))));

  for (RootId r = 0; r < R.size(); ++r)
    if (R[r].m[0] >= 1) check_support(s, r, 1, {r, mx}, "U1 postcondition");
}

void step_simple_roots(PipelineState& s) {
  const UpGroup& g = *s.g;
  const RootSystem& R = g.roots();
  const Field& F = g.field();
  int n = R.n();
  RootId mx = R.max_root();
  UpMatrix c1 = g.identity();
  for (int i = 2; i <= n - 1; ++i) {
    RootId ai = R.simple(i);
    Coords c = s.image(ai, 1);
    require(c[ai] != 0, "simple roots: zero leading coefficient for x_" + R[ai].label());
    RootId beta = R.chain(1, i - 1);       // e1 - e_i
    RootId beta2 = R.id({1, -(i + 1)});   // e1 + e_{i+1}
    c1.right_mul_elem(beta, cancel(g, beta, ai, c[ai], c[R.chain(1, i)]));
    c1.right_mul_elem(beta2, cancel(g, beta2, ai, c[ai], c[R.id({1, -i})]));
  }
  s.apply_left("inner C1 (simple roots)", MapDescriptor::inner(c1));

  RootId last = R.chain(n - 1, n);  // alpha_{n-1} + alpha_n = e_{n-1} + e_n
  Coords c = s.image(last, 1);
  require(c[last] != 0, "simple roots: zero leading coefficient for x_" + R[last].label());
  RootId beta = R.chain(1, n - 1);  // e1 - e_n
  s.apply_left("inner C2 (simple roots)",
               MapDescriptor::inner(g.elem(beta, cancel(g, beta, last, c[last], c[R.id({1, -(n - 1)})]))));

  RootId e1n = R.chain(1, n);  // e1 + e_n
  for (Field::V xi : all_elems(F)) {
    for (RootId r = 0; r < R.size(); ++r) {
      if (R[r].m[0] >= 1 && r != R.simple(1) && r != R.id({1, -2}) && r != mx)
        check_support(s, r, xi, {r}, "simple roots postcondition");
    }
    for (int i = 1; i < n; ++i) check_support(s, R.simple(i), xi, {R.simple(i), mx}, "simple roots postcondition");
    check_support(s, R.id({1, -2}), xi, {R.id({1, -2}), mx}, "simple roots postcondition");
    check_support(s, last, xi, {last, mx}, "simple roots postcondition");
    check_support(s, R.simple(n), xi, {R.simple(n), e1n, mx}, "simple roots postcondition");
  }
}

void step_diagonal(PipelineState& s) {
  const UpGroup& g = *s.g;
  const RootSystem& R = g.roots();
  const Field& F = g.field();
  int n = R.n();
  RootId mx = R.max_root();
  std::vector<Field::V> t(n, 1);
  for (int i = 1; i < n; ++i) {
    Field::V d = s.image(R.simple(i), 1)[R.simple(i)];
    require(d != 0, "diagonal: zero coefficient");
    t[i] = F.mul(t[i - 1], d);
  }
  s.apply_left("diagonal D1", MapDescriptor::diagonal(s.g, t));
  RootId last = R.chain(n - 1, n);
  Field::V dn = s.image(last, 1)[last];
  require(dn != 0, "diagonal: zero coefficient for x_" + R[last].label());
  s.apply_left("semidiagonal D2", MapDescriptor::semidiagonal(s.g, F.inv(dn)));

  std::vector<RootId> pi_prime;
  for (int i = 1; i < n; ++i) pi_prime.push_back(R.simple(i));
  pi_prime.push_back(last);
  for (RootId r : pi_prime) {
    Coords c = s.image(r, 1);
    require(support_within(c, {r, mx}) && c[r] == 1,
            "diagonal postcondition: image of x_" + R[r].label() + "(1) = " + coords_string(g, c));
  }
  Field::V two = F.from_int(2);
  for (RootId r = 0; r < R.size(); ++r) {
    if (std::find(pi_prime.begin(), pi_prime.end(), r) != pi_prime.end() || r == R.simple(n)) continue;
    Field::V arg = R[r].is_long ? two : 1;
    Coords c = s.image(r, arg);
    Coords want(R.size(), 0);
    want[r] = arg;
    require(c == want, "diagonal postcondition: image of x_" + R[r].label() + "(" + F.to_string(arg) + ") = " +
                           coords_string(g, c));
  }
}

void step_field_central(PipelineState& s) {
  const UpGroup& g = *s.g;
  const RootSystem& R = g.roots();
  const Field& F = g.field();
  int n = R.n();
  uint32_t q = F.q();
  RootId mx = R.max_root();
  RootId e1n = R.chain(1, n);
  std::vector<std::vector<Field::V>> fi(n, std::vector<Field::V>(q, 0));
  for (int i = 1; i <= n; ++i) {
    RootId ai = R.simple(i);
    std::vector<bool> seen(q, false);
    for (Field::V xi = 0; xi < q; ++xi) {
      Coords c = s.image(ai, xi);
      std::vector<RootId> allowed = {ai, mx};
      if (i == n) allowed.push_back(e1n);
      require(support_within(c, allowed), "field/central: image of x_" + R[ai].label() + " = " + coords_string(g, c));
      if (seen[c[ai]]) throw Error(Errc::TauNotAutomorphism, "coefficient map of x_" + R[ai].label() + " is not injective");
      seen[c[ai]] = true;
      fi[i - 1][c[ai]] = F.neg(c[mx]);
    }
  }
  auto f = std::make_shared<CentralFunction>(s.g);
  for (size_t idx = 0; idx < f->size(); ++idx) {
    auto t = f->tuple(idx);
    Field::V v = 0;
    for (int i = 0; i < n; ++i) v = F.add(v, fi[i][t[i]]);
    f->set(idx, v);
  }
  s.apply_left("central Z", MapDescriptor::central(f));

  std::vector<Field::V> tau(q);
  for (Field::V xi = 0; xi < q; ++xi) tau[xi] = s.image(R.simple(1), xi)[R.simple(1)];
  uint64_t pairs = uint64_t(q) * q;
  Rng rng(q);
  for (uint64_t k = 0; k < std::min<uint64_t>(pairs, 1000000); ++k) {
    Field::V x, y;
    if (pairs <= 1000000) {
      x = static_cast<Field::V>(k / q);
      y = static_cast<Field::V>(k % q);
    } else {
      x = rng.elem(F);
      y = rng.elem(F);
    }
    if (tau[F.add(x, y)] != F.add(tau[x], tau[y]) || tau[F.mul(x, y)] != F.mul(tau[x], tau[y]))
      throw Error(Errc::TauNotAutomorphism, "tau fails at (" + F.to_string(x) + ", " + F.to_string(y) + ")");
  }
  int m = -1;
  for (int cand = 0; cand < static_cast<int>(F.k()) && m < 0; ++cand) {
    bool ok = true;
    for (Field::V xi = 0; xi < q && ok; ++xi) ok = tau[xi] == F.frobenius(xi, cand);
    if (ok) m = cand;
  }
  if (m < 0) throw Error(Errc::TauNotAutomorphism, "tau is not a power of Frobenius");
  s.frobenius_power = m;
  s.apply_left("field tau^-1", MapDescriptor::field(s.g, -m));

  RootId last = R.chain(n - 1, n);
  for (RootId r = 0; r < R.size(); ++r)
    for (Field::V xi = 0; xi < q; ++xi) {
      Coords c = s.image(r, xi);
      Coords want(R.size(), 0);
      want[r] = xi;
      if (r == last) c[mx] = 0;
      require(c == want, "field/central postcondition: image of x_" + R[r].label() + "(" + F.to_string(xi) +
                             ") = " + coords_string(g, c));
    }
  for (Field::V xi = 0; xi < q; ++xi)
    for (Field::V z = 0; z < q; ++z) {
      UpMatrix a = g.elem(e1n, xi);
      a.right_mul_elem(mx, z);
      require(s.phi(a) == a, "field/central postcondition: x_" + R[e1n].label() + "(" + F.to_string(xi) +
                                 ") x_" + R[mx].label() + "(" + F.to_string(z) + ") is moved");
    }
}

std::vector<RootId> u12_support(const RootSystem& R) {
  std::vector<RootId> out;
  for (RootId a = 0; a < R.size(); ++a)
    if (R[a].m[0] >= 1 && a != R.simple(1)) out.push_back(a);
  return out;
}

std::pair<UpMatrix, UpMatrix> express_U12_as_commutator(const UpMatrix& a) {
  const GroupPtr& gp = a.group();
  const UpGroup& g = *gp;
  const RootSystem& R = g.roots();
  const Field& F = g.field();
  int n = R.n();
  if (n < 3) throw Error(Errc::RankTooSmall, "commutator solver needs rank >= 3");
  Coords target = normal_form_coords(a);
  if (!support_within(target, u12_support(R))) throw Error(Errc::NotInU12, "element is not in U_1 of level 2");

  // zeta_i at e1 - e_{i+1}, eta_i at e1 + e_{i+1} (i = 1..n-1); xi_i at alpha_i (i = 1..n).
  std::vector<Field::V> zeta(n, 0), eta(n, 0), xi(n + 1, 0);
  auto build = [&] {
    UpMatrix b = g.identity(), c = g.identity();
    for (int i = 1; i <= n - 1; ++i) {
      b.right_mul_elem(R.chain(1, i), zeta[i]);
      b.right_mul_elem(R.id({1, -(i + 1)}), eta[i]);
    }
    for (int i = 1; i <= n; ++i) c.right_mul_elem(R.simple(i), xi[i]);
    return std::make_pair(b, c);
  };
  auto coeff_at = [&](RootId r) {
    auto [b, c] = build();
    return normal_form_coords(commutator(b, c))[r];
  };
  // Solve the coordinate at r for the variable v, which enters affinely.
  auto solve = [&](Field::V& v, RootId r) {
    v = 0;
    Field::V c0 = coeff_at(r);
    v = 1;
    Field::V slope = F.sub(coeff_at(r), c0);
    if (!slope) throw Error(Errc::NotInU12, "degenerate slope at " + R[r].label());
    v = F.div(F.sub(target[r], c0), slope);
  };
  zeta[n - 1] = 1;
  solve(xi[n], R.chain(1, n));
  for (int i = n - 1; i >= 2; --i) {
    xi[i] = 1;
    solve(zeta[i - 1], R.chain(1, i));
    solve(eta[i], R.id({1, -i}));
  }
  xi[1] = 1;
  solve(eta[1], R.max_root());
  auto [b, c] = build();
  if (commutator(b, c) != a) throw Error(Errc::NotInU12, "back-substitution did not reproduce the element");
  return {b, c};
}

ResidualCertificate residual_central_certificate(const GroupPtr& gp, const MapFn& A, int trials, uint64_t seed) {
  const UpGroup& g = *gp;
  const RootSystem& R = g.roots();
  int d = g.dim();
  ResidualCertificate cert;
  CheckReport& rep = cert.report;
  auto off_corner = [&](const UpMatrix& x, const UpMatrix& y, int lo, int hi) -> std::string {
    for (int i = lo; i < hi; ++i)
      for (int j = i + 1; j < hi; ++j)
        if ((i != 0 || j != d - 1) && x(i, j) != y(i, j))
          return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
    return "";
  };
  std::vector<RootId> u1;
  for (RootId r = 0; r < R.size(); ++r)
    if (R[r].m[0] >= 1) u1.push_back(r);
  auto u12 = u12_support(R);
  for (int t = 0; t < trials; ++t) {
    Rng rng(seed, t);
    UpMatrix a = g.random(rng);
    UpMatrix img = A(a);
    ++rep.trials;
    Coords z = normal_form_coords(img * a.inverse());
    if (!support_within(z, {R.max_root()}))
      rep.fail("phi(a) a^-1 not central for a = " + coords_string(g, normal_form_coords(a)));
    std::string where = off_corner(img, a, 1, d - 1);
    if (!where.empty()) rep.fail("interior " + where + " moved for a = " + coords_string(g, normal_form_coords(a)));
    UpMatrix u = g.random_supported(rng, u1);
    where = off_corner(A(u), u, 0, d);
    if (!where.empty()) rep.fail("U_1 element moved at " + where + ": a = " + coords_string(g, normal_form_coords(u)));
    UpMatrix w = g.random_supported(rng, u12);
    auto [b, c] = express_U12_as_commutator(w);
    if (commutator(b, c) != w) rep.fail("commutator solver failed");
    if (A(w) != w) rep.fail("U_1^(2) element moved: a = " + coords_string(g, normal_form_coords(w)));
  }
  cert.f = std::make_shared<CentralFunction>(gp);
  for (size_t idx = 0; idx < cert.f->size(); ++idx) {
    auto tup = cert.f->tuple(idx);
    UpMatrix a = g.identity();
    for (int i = 0; i < R.n(); ++i) a.right_mul_elem(R.simple(i + 1), tup[i]);
    UpMatrix img = A(a);
    std::string where = off_corner(img, a, 0, d);
    if (!where.empty()) {
      rep.fail("superdiagonal probe moved at " + where + ": a = " + coords_string(g, normal_form_coords(a)));
      continue;
    }
    cert.f->set(idx, g.field().sub(img(0, d - 1), a(0, d - 1)));
  }
  return cert;
}

std::vector<MapDescriptor> Factorization::descriptors() const {
  std::vector<MapDescriptor> out;
  for (const auto& f : factors) out.push_back(f.map);
  return out;
}

CheckReport verify_factorization(const GroupPtr& g, const std::vector<MapDescriptor>& factors, const MapFn& phi,
                                 int points, uint64_t seed) {
  const RootSystem& R = g->roots();
  const Field& F = g->field();
  CheckReport rep;
  auto check = [&](const UpMatrix& x, const std::string& what) {
    ++rep.trials;
    if (apply_composition(factors, x) != phi(x)) rep.fail("factorization differs from oracle at " + what);
  };
  for (RootId r = 0; r < R.size(); ++r)
    for (Field::V xi = 0; xi < F.q(); ++xi) check(g->elem(r, xi), "x_" + R[r].label() + "(" + F.to_string(xi) + ")");
  for (int t = 0; t < points; ++t) {
    Rng rng(seed, t);
    Coords c = g->random_coords(rng);
    check(g->from_coords(c), coords_string(*g, c));
  }
  return rep;
}

Factorization classify(const GroupPtr& g, const MapFn& phi, int trials, uint64_t seed) {
  if (g->n() < 4) throw Error(Errc::RankTooSmall, "classification needs rank >= 4");
  auto pc = is_pc_map(phi, g, 50, seed);
  if (!pc.pass) throw Error(Errc::StepPostconditionFailed, "oracle does not preserve commutators");
  PipelineState s(g, phi);
  auto t12 = step_T12_check(s);
  if (!t12.pass) throw Error(Errc::StepPostconditionFailed, "T12: " + t12.failures.front());
  s.log("T12 check passed on " + std::to_string(t12.trials) + " arguments");
  step_U1(s);
  step_simple_roots(s);
  step_diagonal(s);
  step_field_central(s);
  Factorization out;
  out.g = g;
  out.frobenius_power = s.frobenius_power;
  out.certificate = residual_central_certificate(g, s.phi, trials, seed);
  if (!out.certificate.report.pass)
    throw Error(Errc::ResidualNotCentral, out.certificate.report.failures.front());
  for (const auto& f : s.applied) {
    MapDescriptor inv = f.map.inverse();
    if (!out.factors.empty() && inv.kind == MapKind::Inner && out.factors.back().map.kind == MapKind::Inner) {
      auto& prev = out.factors.back();
      prev.map = MapDescriptor::inner(prev.map.conj * inv.conj);
      prev.role += " + " + f.role;
      continue;
    }
    out.factors.push_back({f.role + " (inverse)", inv});
  }
  out.factors.push_back({"central residual A", MapDescriptor::central(out.certificate.f)});
  out.audit = s.audit;
  out.verification = verify_factorization(g, out.descriptors(), phi, trials, seed ^ 0x5eedULL);
  if (!out.verification.pass) throw Error(Errc::VerificationMismatch, out.verification.failures.front());
  return out;
}

}  // namespace upkit

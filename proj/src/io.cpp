#include "upkit/io.hpp"

#include <cmath>
#include <map>

namespace upkit {

namespace {

[[noreturn]] void bad(const std::string& s) { throw Error(Errc::BadParams, s); }

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key '") + key + "'");
  return j.at(key);
}

Coords coords_from_json(const GroupPtr& g, const json& j) {
  const RootSystem& R = g->roots();
  if (!j.is_array() || static_cast<int>(j.size()) != R.size()) bad("coordinate list must have one entry per positive root");
  Coords c(R.size());
  for (int i = 0; i < R.size(); ++i) c[i] = elem_from_json(g->field(), j[i]);
  return c;
}

json coords_json(const UpGroup& g, const Coords& c) {
  json out = json::array();
  for (auto v : c) out.push_back(elem_json(g.field(), v));
  return out;
}

}  // namespace

json field_spec_json(const FieldSpec& s) { return {{"p", s.p}, {"k", s.k}, {"modulus", s.modulus}}; }

FieldPtr field_from_json(const json& j) {
  try {
    auto F = Field::make(need(j, "p").get<uint32_t>(), j.value("k", 1u));
    if (j.contains("modulus") && j.at("modulus").get<std::vector<uint32_t>>() != F->spec().modulus)
      bad("only the default modulus is supported for this field");
    return F;
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

json elem_json(const Field& F, Field::V v) { return F.coeffs(v); }

Field::V elem_from_json(const Field& F, const json& j) {
  if (j.is_number_integer()) {
    if (F.k() != 1) bad("extension field elements are coefficient arrays");
    return F.from_int(j.get<int64_t>());
  }
  if (!j.is_array() || j.size() != F.k()) bad("field element must be an array of k coefficients");
  std::vector<uint32_t> c;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<int64_t>() < 0 || x.get<int64_t>() >= F.p()) bad("coefficient out of range");
    c.push_back(x.get<uint32_t>());
  }
  return F.from_coeffs(c);
}

json root_json(const Root& r) { return {{"i", r.name.i}, {"j", r.name.j}}; }

RootId root_from_json(const RootSystem& R, const json& j) {
  auto id = R.find({need(j, "i").get<int>(), need(j, "j").get<int>()});
  if (!id) bad("not a positive root: " + j.dump());
  return *id;
}

json structure_table_json(const UpGroup& g) {
  const RootSystem& R = g.roots();
  const auto& N = g.N();
  json out = json::array();
  for (const auto& [key, v] : N.N1) {
    json e = {{"alpha", root_json(R[key.first])}, {"beta", root_json(R[key.second])}, {"N1", v}};
    auto it = N.N2.find(key);
    if (it != N.N2.end()) e["N2"] = it->second;
    out.push_back(e);
  }
  return out;
}

json matrix_json(const UpMatrix& a) {
  const Field& F = a.group()->field();
  json rows = json::array();
  for (int r = 0; r < a.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < a.dim(); ++c) row.push_back(elem_json(F, a(r, c)));
    rows.push_back(row);
  }
  return rows;
}

UpMatrix matrix_from_json(const GroupPtr& g, const json& j) {
  int d = g->dim();
  if (!j.is_array() || static_cast<int>(j.size()) != d) bad("matrix must have 2n rows");
  std::vector<Field::V> e;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != d) bad("matrix rows must have 2n entries");
    for (const auto& x : row) e.push_back(elem_from_json(g->field(), x));
  }
  UpMatrix m(g, e);
  m.validate();
  return m;
}

json word_json(const RootWord& w) {
  json out = json::array();
  for (const auto& [r, v] : w.terms)
    out.push_back({{"root", root_json(w.g->roots()[r])}, {"coeff", elem_json(w.g->field(), v)}});
  return out;
}

RootWord word_from_json(const GroupPtr& g, const json& j) {
  if (!j.is_array()) bad("root word must be a list");
  RootWord w{g, {}};
  for (const auto& t : j) w.terms.push_back({root_from_json(g->roots(), need(t, "root")), elem_from_json(g->field(), need(t, "coeff"))});
  return w;
}

json descriptor_json(const MapDescriptor& d) {
  const Field& F = d.g->field();
  json out = {{"kind", map_kind_name(d.kind)}};
  switch (d.kind) {
    case MapKind::Inner: out["conj"] = word_json(normal_form(d.conj)); break;
    case MapKind::Diagonal: {
      json t = json::array();
      for (auto v : d.t) t.push_back(elem_json(F, v));
      out["t"] = t;
      break;
    }
    case MapKind::SemiDiagonal: out["eps"] = elem_json(F, d.eps); break;
    case MapKind::Field: out["m"] = d.m; break;
    case MapKind::Extremal1:
    case MapKind::Extremal2: out["u"] = elem_json(F, d.u); break;
    case MapKind::Central: {
      json table = json::array();
      for (size_t i = 0; i < d.f->size(); ++i) {
        if (!d.f->at(i)) continue;
        json tup = json::array();
        for (auto v : d.f->tuple(i)) tup.push_back(elem_json(F, v));
        table.push_back({{"tuple", tup}, {"value", elem_json(F, d.f->at(i))}});
      }
      out["table"] = table;
      break;
    }
  }
  return out;
}

MapDescriptor descriptor_from_json(const GroupPtr& g, const json& j) {
  const Field& F = g->field();
  auto kind = map_kind_from_name(need(j, "kind").get<std::string>());
  if (!kind) bad("unknown map kind " + j.at("kind").dump());
  MapDescriptor d;
  try {
    switch (*kind) {
      case MapKind::Inner: {
        const json& c = need(j, "conj");
        bool matrix = c.is_array() && !c.empty() && c[0].is_array() && static_cast<int>(c.size()) == g->dim();
        d = MapDescriptor::inner(matrix ? matrix_from_json(g, c) : word_to_matrix(word_from_json(g, c)));
        break;
      }
      case MapKind::Diagonal: {
        std::vector<Field::V> t;
        for (const auto& x : need(j, "t")) t.push_back(elem_from_json(F, x));
        d = MapDescriptor::diagonal(g, t);
        break;
      }
      case MapKind::SemiDiagonal: d = MapDescriptor::semidiagonal(g, elem_from_json(F, need(j, "eps"))); break;
      case MapKind::Field: d = MapDescriptor::field(g, need(j, "m").get<int>()); break;
      case MapKind::Extremal1: d = MapDescriptor::extremal1(g, elem_from_json(F, need(j, "u"))); break;
      case MapKind::Extremal2: d = MapDescriptor::extremal2(g, elem_from_json(F, need(j, "u"))); break;
      case MapKind::Central: {
        auto f = std::make_shared<CentralFunction>(g);
        for (const auto& e : need(j, "table")) {
          std::vector<Field::V> tup;
          for (const auto& x : need(e, "tuple")) tup.push_back(elem_from_json(F, x));
          if (static_cast<int>(tup.size()) != g->n()) bad("central table tuples have n entries");
          f->set(f->index(tup), elem_from_json(F, need(e, "value")));
        }
        d = MapDescriptor::central(f);
        break;
      }
    }
  } catch (const json::exception& e) {
    bad(e.what());
  }
  d.validate();
  return d;
}

json composition_json(const std::vector<MapDescriptor>& ds) {
  json out = json::array();
  for (const auto& d : ds) out.push_back(descriptor_json(d));
  return out;
}

json composition_file(const GroupPtr& g, const std::vector<MapDescriptor>& ds) {
  return {{"n", g->n()}, {"field", field_spec_json(g->field().spec())}, {"maps", composition_json(ds)}};
}

LoadedOracle load_oracle(const json& j, const GroupPtr& fallback) {
  LoadedOracle out;
  out.g = fallback;
  const json* maps = &j;
  if (j.is_object()) {
    if (j.contains("n") || j.contains("field")) {
      try {
        out.g = UpGroup::make(need(j, "n").get<int>(), field_from_json(need(j, "field")));
      } catch (const Error& e) {
        if (e.code() == Errc::BadParams) throw;
        bad(e.what());
      }
    }
    if (j.contains("lookup")) {
      const GroupPtr g = out.g;
      double size = std::pow(double(g->field().q()), g->roots().size());
      if (size > 1e6) bad("lookup tables are limited to 10^6 entries");
      auto table = std::make_shared<std::map<Coords, Coords>>();
      for (const auto& e : j.at("lookup")) (*table)[coords_from_json(g, need(e, "in"))] = coords_from_json(g, need(e, "out"));
      if (static_cast<double>(table->size()) != size) bad("lookup table must list every group element exactly once");
      out.source = "lookup";
      out.phi = [g, table](const UpMatrix& a) { return g->from_coords(table->at(normal_form_coords(a))); };
      return out;
    }
    maps = &need(j, "maps");
  }
  if (!out.g) bad("composition needs n and field");
  if (!maps->is_array()) bad("composition must be a list of maps");
  for (const auto& m : *maps) out.maps.push_back(descriptor_from_json(out.g, m));
  out.source = "composition";
  out.phi = compose(out.maps);
  return out;
}

json lookup_table_json(const GroupPtr& g, const MapFn& phi) {
  const RootSystem& R = g->roots();
  uint32_t q = g->field().q();
  double size = std::pow(double(q), R.size());
  if (size > 1e6) bad("lookup tables are limited to 10^6 entries");
  json entries = json::array();
  Coords c(R.size(), 0);
  for (uint64_t idx = 0; idx < static_cast<uint64_t>(size); ++idx) {
    uint64_t x = idx;
    for (int i = 0; i < R.size(); ++i, x /= q) c[i] = static_cast<Field::V>(x % q);
    entries.push_back({{"in", coords_json(*g, c)}, {"out", coords_json(*g, normal_form_coords(phi(g->from_coords(c))))}});
  }
  return {{"n", g->n()}, {"field", field_spec_json(g->field().spec())}, {"lookup", entries}};
}

json check_report_json(const CheckReport& r) {
  return {{"status", r.pass ? "pass" : "fail"}, {"trials", r.trials}, {"failures", r.failures}};
}

json factorization_json(const Factorization& f) {
  json factors = json::array();
  for (const auto& x : f.factors) factors.push_back({{"role", x.role}, {"map", descriptor_json(x.map)}});
  json cert = check_report_json(f.certificate.report);
  cert["residual"] = descriptor_json(MapDescriptor::central(f.certificate.f));
  return {{"n", f.g->n()},
          {"field", field_spec_json(f.g->field().spec())},
          {"factors", factors},
          {"frobenius_power", f.frobenius_power},
          {"certificate", cert},
          {"verification", check_report_json(f.verification)},
          {"audit", f.audit}};
}

json report_json(const VerificationReport& r, bool timing) {
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back({{"witness", f.witness}, {"expected", f.expected}, {"actual", f.actual}});
  json params = {{"n", r.params.n}, {"p", r.params.p}, {"k", r.params.k}, {"trials", r.params.trials}, {"seed", r.params.seed}};
  if (!r.params.fault.empty()) params["fault"] = r.params.fault;
  json out = {{"lemma", r.lemma},        {"params", params},   {"status", r.status()}, {"trials", r.trials},
              {"failure_count", r.failure_count}, {"failures", failures}, {"notes", r.notes}};
  if (timing) out["elapsed_ms"] = r.elapsed_ms;
  return out;
}

json suite_json(const SuiteReport& s, bool timing) {
  json reports = json::array();
  for (const auto& r : s.reports) reports.push_back(report_json(r, timing));
  return {{"status", s.pass() ? "pass" : "fail"}, {"reports", reports}, {"skipped", s.skipped}};
}

}  // namespace upkit

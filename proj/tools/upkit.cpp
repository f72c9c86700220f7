#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "upkit/io.hpp"

using namespace upkit;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

void write_json(const std::string& path, const json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw Error(Errc::BadParams, "cannot write " + path);
  out << j.dump(2) << "\n";
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::BadParams, "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::BadParams, path + ": " + e.what());
  }
}

void print_report(const VerificationReport& r, bool verbose) {
  std::cout << report_line(r) << "\n";
  if (!verbose) return;
  for (const auto& n : r.notes) std::cout << "    note: " << n << "\n";
  for (size_t i = 1; i < r.failures.size(); ++i) std::cout << "    failure: " << r.failures[i].witness << "\n";
}

bool is_usage_error(Errc e) {
  switch (e) {
    case Errc::StepPostconditionFailed:
    case Errc::TauNotAutomorphism:
    case Errc::ResidualNotCentral:
    case Errc::NotInU12:
    case Errc::VerificationMismatch:
    case Errc::MismatchAtCoefficient:
      return false;
    default:
      return true;
  }
}

int selftest() {
  LemmaParams p;
  p.trials = 50;
  int bad = 0;
  auto expect = [&](const VerificationReport& r, bool want_pass) {
    bool ok = r.pass == want_pass;
    std::cout << (ok ? "ok   " : "BAD  ") << r.lemma << (r.params.fault.empty() ? "" : " [fault " + r.params.fault + "]")
              << " -> " << r.status() << "\n";
    bad += !ok;
  };
  for (const char* id : {"field_axioms", "steinberg", "normal_form", "center", "standard_maps", "commutator_solver", "classifier"})
    expect(run_lemma(id, p), true);
  expect(run_extract_from_u1(p, 1), false);
  for (auto [id, fault] : {std::pair{"steinberg", "structure_constant"}, {"classifier", "oracle_output"}, {"classifier", "central_table"}}) {
    LemmaParams f = p;
    f.fault = fault;
    expect(run_lemma(id, f), false);
  }
  std::cout << (bad ? "selftest failed" : "selftest passed") << "\n";
  return bad ? kFail : kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"upkit: unitriangular symplectic groups, their PC-maps and a lemma-by-lemma verifier"};
  app.require_subcommand(1);

  LemmaParams params;
  std::string json_out;
  bool timing = false, verbose = false;
  auto add_params = [&](CLI::App* c) {
    c->add_option("--n", params.n, "rank")->capture_default_str();
    c->add_option("--p", params.p, "characteristic")->capture_default_str();
    c->add_option("--k", params.k, "extension degree")->capture_default_str();
    c->add_option("--trials", params.trials, "random trials per check")->capture_default_str();
    c->add_option("--seed", params.seed, "master seed")->capture_default_str();
  };

  auto* verify = app.add_subcommand("verify", "run catalog checks");
  verify->require_subcommand(1);
  auto* v_all = verify->add_subcommand("all", "run every catalog entry");
  auto* v_lemma = verify->add_subcommand("lemma", "run one catalog entry");
  auto* v_list = verify->add_subcommand("list", "list catalog entries");
  std::string lemma_id;
  int factor = 2;
  for (auto* c : {v_all, v_lemma}) {
    add_params(c);
    c->add_option("--json", json_out, "write the JSON report here");
    c->add_option("--fault", params.fault, "inject a fault: structure_constant, oracle_output, central_table");
    c->add_flag("--timing", timing, "include elapsed times in the JSON report");
    c->add_flag("-v,--verbose", verbose, "print notes and further failures");
  }
  v_lemma->add_option("id", lemma_id, "catalog id")->required();
  v_lemma->add_option("--factor", factor, "extract_from_u1 only: 1 or 2")->check(CLI::IsMember({1, 2}));

  auto* cls = app.add_subcommand("classify", "factor an oracle into standard maps");
  std::string map_path, out_path;
  int points = 200;
  add_params(cls);
  cls->add_option("--map", map_path, "composition or lookup-table JSON")->required();
  cls->add_option("--points", points, "random verification points")->capture_default_str();
  cls->add_option("--out", out_path, "write the factorization JSON here");

  auto* rnd = app.add_subcommand("random-map", "write a random standard composition");
  add_params(rnd);
  rnd->add_option("--out", out_path, "output path")->required();

  auto* tab = app.add_subcommand("tabulate", "write the full lookup table of a composition (tiny groups only)");
  add_params(tab);
  tab->add_option("--map", map_path, "composition JSON")->required();
  tab->add_option("--out", out_path, "output path")->required();

  auto* self = app.add_subcommand("selftest", "quick health check, including fault detection");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (*v_list) {
      for (const auto& l : lemma_catalog()) std::cout << l.id << "  (n >= " << l.min_n << ")  " << l.title << "\n";
      return kPass;
    }
    if (*v_all) {
      auto suite = run_all(params);
      for (const auto& r : suite.reports) print_report(r, verbose);
      for (const auto& s : suite.skipped) std::cout << "SKIP " << s << "  (rank too small)\n";
      write_json(json_out, suite_json(suite, timing));
      std::cout << (suite.pass() ? "all checks passed" : "some checks failed") << "\n";
      return suite.pass() ? kPass : kFail;
    }
    if (*v_lemma) {
      bool extract = lemma_id == "extract_from_u1" && v_lemma->count("--factor");
      auto r = extract ? run_extract_from_u1(params, factor) : run_lemma(lemma_id, params);
      print_report(r, true);
      write_json(json_out, report_json(r, timing));
      return r.pass ? kPass : kFail;
    }
    auto g = [&] { return UpGroup::make(params.n, Field::make(params.p, params.k)); };
    if (*rnd) {
      auto grp = g();
      auto kinds = all_map_kinds();
      if (params.n < 3) std::erase_if(kinds, [](MapKind k) { return k == MapKind::Extremal1 || k == MapKind::Extremal2; });
      write_json(out_path, composition_file(grp, random_standard_composition(grp, params.seed, kinds)));
      return kPass;
    }
    if (*tab) {
      auto oracle = load_oracle(read_json(map_path), g());
      write_json(out_path, lookup_table_json(oracle.g, oracle.phi));
      return kPass;
    }
    if (*cls) {
      auto oracle = load_oracle(read_json(map_path), g());
      auto fz = classify(oracle.g, oracle.phi, points, params.seed);
      for (const auto& line : fz.audit) std::cout << line << "\n";
      std::cout << "factors (outermost first):\n";
      for (const auto& f : fz.factors) std::cout << "  " << f.role << ": " << f.map.describe() << "\n";
      std::cout << "verification: " << fz.verification.trials << " probes, "
                << (fz.verification.pass ? "all agree" : "mismatch") << "\n";
      write_json(out_path, factorization_json(fz));
      return kPass;
    }
    if (*self) return selftest();
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return is_usage_error(e.code()) ? kUsage : kFail;
  }
  return kUsage;
}

#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "upkit/harness.hpp"

using namespace upkit;

namespace {

struct Run {
  bool pass = true;
  std::vector<std::string> detail;

  void need(const VerificationReport& r, bool want_pass = true) {
    bool ok = r.pass == want_pass;
    if (!ok || !want_pass) detail.push_back(report_line(r));
    pass = pass && ok;
  }
};

LemmaParams params(int n, uint32_t p, uint32_t k = 1, int trials = 500) {
  LemmaParams P;
  P.n = n;
  P.p = p;
  P.k = k;
  P.trials = trials;
  P.seed = 42;
  return P;
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    std::function<void(Run&)> body;
  };
  std::vector<Criterion> criteria = {
      {"Steinberg relations R2-R6, n in {4,5}, F_5 F_7 F_25",
       [](Run& r) {
         for (int n : {4, 5})
           for (auto [p, k] : {std::pair{5u, 1u}, {7u, 1u}, {5u, 2u}}) r.need(run_lemma("steinberg", params(n, p, k)));
       }},
      {"structure constants |N| and field independence, n in {4,5}",
       [](Run& r) {
         for (int n : {4, 5}) r.need(run_lemma("structure_constants", params(n, 5)));
       }},
      {"generators are symplectic",
       [](Run& r) {
         for (int n : {4, 5}) r.need(run_lemma("generator_symplectic", params(n, 5, 2)));
       }},
      {"normal form round trip (1000) and filtration (500 per bucket)",
       [](Run& r) {
         r.need(run_lemma("normal_form", params(4, 5, 1, 1000)));
         r.need(run_lemma("filtration", params(4, 5)));
       }},
      {"centre is X_max (500 elements)", [](Run& r) { r.need(run_lemma("center", params(4, 5))); }},
      {"standard maps: PC, extremal homomorphisms, central bijections",
       [](Run& r) {
         r.need(run_lemma("standard_maps", params(4, 5)));
         r.need(run_lemma("extremal_homomorphism", params(4, 5, 1, 1000)));
         r.need(run_lemma("standard_central_map", params(4, 5)));
       }},
      {"centralizers: displayed supports at n in {4,5}, centralizer of X_alpha",
       [](Run& r) {
         for (int n : {4, 5}) r.need(run_lemma("simple_roots_as_c", params(n, 5)));
         r.need(run_lemma("centralizer_x", params(4, 5)));
       }},
      {"symbolic identities and 200 engine consistency checks",
       [](Run& r) {
         r.need(run_lemma("laundry", params(4, 5)));
         r.need(run_lemma("skinmax_expansion", params(4, 5)));
         r.need(run_lemma("symbolic_consistency", params(4, 5)));
       }},
      {"commutator solver on 500 elements of U_1^(2)", [](Run& r) { r.need(run_lemma("commutator_solver", params(4, 5))); }},
      {"classifier round trip: 50 at q=5, 10 at q=25, 200 points each",
       [](Run& r) {
         r.need(run_lemma("classifier", params(4, 5)));
         r.need(run_lemma("classifier", params(4, 5, 2)));
         r.need(run_lemma("field_autom", params(4, 5, 2, 250)));
       }},
      {"extract from U_1: factor 2 holds, factor 1 fails",
       [](Run& r) {
         r.need(run_extract_from_u1(params(4, 5), 2));
         r.need(run_extract_from_u1(params(4, 5), 1), false);
       }},
      {"fault injection is detected with a witness",
       [](Run& r) {
         for (auto [id, fault] : {std::pair{"steinberg", "structure_constant"}, {"classifier", "oracle_output"},
                                  {"classifier", "central_table"}, {"ai_is_central", "oracle_output"}}) {
           auto P = params(4, 5, 1, 100);
           P.fault = fault;
           auto rep = run_lemma(id, P);
           r.need(rep, false);
           if (rep.failures.empty() || rep.failures.front().witness.empty()) r.pass = false;
         }
       }},
  };

  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Run run;
    try {
      criteria[i].body(run);
    } catch (const Error& e) {
      run.pass = false;
      run.detail.push_back(e.what());
    }
    std::printf("criterion %2zu: %s  %s\n", i + 1, run.pass ? "PASS" : "FAIL", criteria[i].title);
    for (const auto& d : run.detail) std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
    failed += !run.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}

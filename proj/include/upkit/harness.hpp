#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "upkit/group.hpp"

namespace upkit {

struct LemmaParams {
  int n = 4;
  uint32_t p = 5;
  uint32_t k = 1;
  int trials = 500;
  uint64_t seed = 42;
  // "", "structure_constant", "oracle_output" or "central_table".
  std::string fault;
};

struct Failure {
  std::string witness;
  std::string expected;
  std::string actual;
};

struct VerificationReport {
  std::string lemma;
  LemmaParams params;
  bool pass = true;
  int trials = 0;
  int failure_count = 0;
  std::vector<Failure> failures;  // first 20 only
  std::vector<std::string> notes;
  double elapsed_ms = 0;

  std::string status() const { return pass ? "pass" : "fail"; }
};

struct LemmaInfo {
  std::string id;
  std::string title;
  int min_n = 2;
  std::vector<std::string> faults;  // supported fault kinds
};

const std::vector<LemmaInfo>& lemma_catalog();
const LemmaInfo* find_lemma(const std::string& id);

// Throws UnknownLemma or BadParams.
VerificationReport run_lemma(const std::string& id, const LemmaParams& params);

// The statement with x_max(+-factor * a_1j); factor 2 holds, factor 1 does not.
VerificationReport run_extract_from_u1(const LemmaParams& params, int factor);

struct SuiteReport {
  LemmaParams params;
  std::vector<VerificationReport> reports;
  std::vector<std::string> skipped;  // entries needing a larger rank
  bool pass() const;
};

// Entries whose minimum rank exceeds params.n are skipped; runs sequentially in catalog order.
SuiteReport run_all(const LemmaParams& params);

std::string report_line(const VerificationReport& r);

}  // namespace upkit

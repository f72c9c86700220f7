#pragma once

#include <string>
#include <vector>

#include "upkit/group.hpp"

namespace upkit {

std::vector<RootId> centralizer_of_rootset(const RootSystem& R, const std::vector<RootId>& S);

// One centralizer identity: the centralizer of the product over `input`
// is claimed to be the product over `claimed`.
struct CentralizerClaim {
  std::string label;
  std::vector<RootId> input;
  std::vector<RootId> claimed;
};

std::vector<CentralizerClaim> simple_root_centralizer_claims(const RootSystem& R);

struct CheckReport {
  bool pass = true;
  int trials = 0;
  std::vector<std::string> failures;
  void fail(const std::string& s) {
    pass = false;
    if (failures.size() < 20) failures.push_back(s);
  }
  void merge(const CheckReport& o) {
    trials += o.trials;
    for (const auto& f : o.failures) fail(f);
    if (!o.pass) pass = false;
  }
};

CheckReport verify_centralizer_lemma(const GroupPtr& g, RootId a, int trials, uint64_t seed);

bool commutes(const UpMatrix& a, const UpMatrix& b);
std::string root_set_string(const RootSystem& R, const std::vector<RootId>& s);

}  // namespace upkit

#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "upkit/centralizers.hpp"
#include "upkit/pcmaps.hpp"

namespace upkit {

struct Factor {
  std::string role;
  MapDescriptor map;
};

// Oracle together with the standard maps already composed onto it on the left.
struct PipelineState {
  GroupPtr g;
  MapFn oracle;       // the input map
  MapFn phi;          // current map: applied[k] o ... o applied[0] o oracle
  std::vector<Factor> applied;
  std::vector<std::string> audit;
  int frobenius_power = 0;

  PipelineState(GroupPtr g, MapFn oracle);
  void apply_left(const std::string& role, const MapDescriptor& d);
  Coords image(RootId a, Field::V xi) const;
  void log(const std::string& s) { audit.push_back(s); }
};

CheckReport step_T12_check(const PipelineState& s);
void step_U1(PipelineState& s);
void step_simple_roots(PipelineState& s);
void step_diagonal(PipelineState& s);
void step_field_central(PipelineState& s);

struct ResidualCertificate {
  CheckReport report;
  std::shared_ptr<CentralFunction> f;
};

ResidualCertificate residual_central_certificate(const GroupPtr& g, const MapFn& residual, int trials, uint64_t seed);

// (b, c) with [b, c] = a for a in U_1 of level at least 2.
std::pair<UpMatrix, UpMatrix> express_U12_as_commutator(const UpMatrix& a);
std::vector<RootId> u12_support(const RootSystem& R);

struct Factorization {
  GroupPtr g;
  std::vector<Factor> factors;  // leftmost is outermost
  ResidualCertificate certificate;
  std::vector<std::string> audit;
  int frobenius_power = 0;
  CheckReport verification;

  std::vector<MapDescriptor> descriptors() const;
};

// Generator probes x_alpha(xi) for every root and every xi, followed by `points` random elements.
CheckReport verify_factorization(const GroupPtr& g, const std::vector<MapDescriptor>& factors, const MapFn& phi,
                                 int points, uint64_t seed);

Factorization classify(const GroupPtr& g, const MapFn& phi, int trials, uint64_t seed);

}  // namespace upkit

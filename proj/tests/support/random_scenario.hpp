#pragma once

#include <random>
#include <utility>
#include <vector>

#include <dismed/scenario.hpp>

namespace testgen {

struct RandomOptions {
  double drop_response = 0.0;    // chance each condition link is left undeclared
  double piecewise = 0.2;        // chance a response is piecewise-linear
  bool overlays = true;
  bool context_responses = false;
  bool time_paths = false;       // paths on rho_s / rho_p / P_s, sometimes short
};

// Every (driven, driver) pair some condition differentiates.
const std::vector<std::pair<dismed::Symbol, dismed::Symbol>>& condition_links();

// A scenario that passes validation. Listing-state values are small
// integers so argmax ties occur.
dismed::Scenario random_scenario(std::mt19937_64& rng, const RandomOptions& opt = {});

// A base-context response through the scenario's current point.
dismed::ResponseFunction random_response(std::mt19937_64& rng, const dismed::Scenario& s,
                                         dismed::Symbol driven, dismed::Symbol driver,
                                         double piecewise = 0.0,
                                         dismed::Context ctx = dismed::Context::Base);

}  // namespace testgen

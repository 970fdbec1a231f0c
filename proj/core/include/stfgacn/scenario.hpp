#pragma once

#include <vector>

#include "stfgacn/radar_sim.hpp"

namespace stfgacn {

/// Complete simulation setup: radar layout, target classes, and simulator.
struct Scenario {
  std::vector<sim::RadarConfig> radars;
  std::vector<sim::AircraftProfile> profiles;
  sim::Simulator simulator;
};

/// Nine radars in two subnets (five at 6.25 GHz, four at 1.52 GHz) and the
/// two micro-motion-distinguished aircraft classes.
Scenario standard_scenario();

/// Experiment sizing knobs.
struct ExperimentScale {
  int count_per_class = 100;
  int hidden = 16;
  int max_epochs = 30;

  static ExperimentScale desk() { return {100, 16, 30}; }
  static ExperimentScale paper() { return {1000, 64, 100}; }
};

}  // namespace stfgacn

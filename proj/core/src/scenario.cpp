#include "stfgacn/scenario.hpp"

namespace stfgacn {

Scenario standard_scenario() {
  Scenario s;

  constexpr double kSubnet1Freq = 6.25e9;
  constexpr double kSubnet2Freq = 1.52e9;
  const double km = 1000.0;

  auto radar = [&](int id, double x_km, double y_km, double fc, int subnet) {
    sim::RadarConfig r;
    r.id = id;
    r.position = Eigen::Vector3d(x_km * km, y_km * km, 0.0);
    r.carrier_frequency_hz = fc;
    r.subnet_id = subnet;
    return r;
  };

  s.radars = {
      radar(0, 0.0, 0.0, kSubnet1Freq, 0),
      radar(1, 6.0, 4.0, kSubnet1Freq, 0),
      radar(2, 12.0, -2.0, kSubnet1Freq, 0),
      radar(3, 4.0, 12.0, kSubnet1Freq, 0),
      radar(4, 10.0, 9.0, kSubnet1Freq, 0),
      radar(5, 2.0, -9.0, kSubnet2Freq, 1),
      radar(6, 14.0, 6.0, kSubnet2Freq, 1),
      radar(7, 8.0, -13.0, kSubnet2Freq, 1),
      radar(8, 16.0, 15.0, kSubnet2Freq, 1),
  };

  sim::AircraftProfile type1;
  type1.class_label = 0;
  type1.micro_f1_hz = 0.64;
  type1.micro_f2_hz = 1.67;
  sim::AircraftProfile type2;
  type2.class_label = 1;
  type2.micro_f1_hz = 2.75;
  type2.micro_f2_hz = 8.72;
  s.profiles = {type1, type2};

  return s;
}

}  // namespace stfgacn

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "stfgacn/common.hpp"
#include "stfgacn/sample.hpp"

namespace stfgacn::sim {

/// One radar node of the heterogeneous network.
struct RadarConfig {
  int id = 0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();  // meters, radar frame
  double carrier_frequency_hz = 0.0;
  int subnet_id = 0;
};

/// Kinematic and micro-motion parameters of one target class. The two classes
/// share the mass trajectory and differ only in micro-motion frequencies.
struct AircraftProfile {
  int class_label = 0;
  double speed_mps = 5000.0;
  double micro_f1_hz = 0.0;
  double micro_f2_hz = 0.0;
  double micro_amp1_rad = 0.05;
  double micro_amp2_rad = 0.02;
  double base_rcs_dbsm = 0.0;
};

/// Aircraft state at one instant. Attitude angles in (-pi, pi].
struct TrajectoryState {
  double time_s = 0.0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();  // meters, radar frame
  double yaw_rad = 0.0;
  double pitch_rad = 0.0;
  double roll_rad = 0.0;
};

/// Correlated jitter on the line-of-sight angles.
struct LosNoiseModel {
  double rho = 0.95;          // correlation coefficient in [0, 1]
  double sigma_phi = 0.02;    // rad
  double sigma_theta = 0.02;  // rad
  std::uint64_t rng_seed = 0;
};

/// One radar's RCS time series with metadata.
struct RcsSegment {
  int radar_id = 0;
  int class_label = 0;
  std::optional<double> snr_db;  // nullopt = clean
  std::vector<double> samples;   // dBsm, length K = duration * sample_rate
  double sample_rate_hz = 20.0;
  long segment_id = 0;
};

/// Analytic aspect-pattern surrogate for the RCS response. Smooth multi-lobe
/// shape in (theta, phi) with an electrical-length term that makes the
/// carrier frequency observable. Normalized so that the pattern vanishes at
/// the broadside reference angle (theta = phi = pi/4) for every carrier.
struct SurrogateRcs {
  double lobe_theta_db = 0.6;
  double lobe_phi_db = 0.8;
  double lobe_fc_db = 6.0;
  double electrical_length_m = 0.2524;
  double reference_angle_rad = 0.78539816339744831;  // pi/4
};

/// Straight-line pass at fixed altitude; start point, heading, and segment
/// start time drawn per trajectory seed. Heading is measured in the XY plane
/// from the +X axis. The start-time offset places the observation window at
/// an arbitrary epoch of the spin, so micro-motion phase varies per pass.
struct TrajectoryModel {
  double altitude_m = 10000.0;
  double start_x_min_m = -150000.0;
  double start_x_max_m = -120000.0;
  double start_y_min_m = -25000.0;
  double start_y_max_m = 25000.0;
  double heading_min_rad = -0.26;
  double heading_max_rad = 0.26;
  double start_time_min_s = 0.0;
  double start_time_max_s = 2.0;
};

/// Realized pass for one sample, shared by every radar in the bundle.
struct PassPlan {
  Eigen::Vector3d start = Eigen::Vector3d::Zero();
  double heading_rad = 0.0;
  double start_time_s = 0.0;
};

/// Displacement from aircraft to radar, rotated into the aircraft-body frame:
/// the X/Y/Z rotations for (yaw, pitch, roll) composed in that order and
/// applied to (radar position - aircraft position).
Eigen::Vector3d relative_coordinates(const RadarConfig& radar, const TrajectoryState& state);

/// (theta, phi) line-of-sight angles with correlated clipped-Gaussian jitter.
/// Pure function of (delta, noise.rng_seed, t). Throws DegenerateGeometry on
/// |dy/dx| > 1, dx = 0, or a zero-norm displacement.
std::pair<double, double> line_of_sight_angles(const Eigen::Vector3d& delta,
                                               const LosNoiseModel& noise, double t);

/// Spin-induced aspect-angle modulation delta(t), added to theta.
double micro_motion_aspect(const AircraftProfile& profile, double t);

/// Deterministic surrogate RCS in dBsm for the given aspect and carrier.
double surrogate_rcs(const SurrogateRcs& model, double theta, double phi,
                     double carrier_frequency_hz, const AircraftProfile& profile);

class Simulator {
 public:
  SurrogateRcs rcs;
  TrajectoryModel trajectory;
  LosNoiseModel base_noise;
  double sample_rate_hz = 20.0;
  double duration_s = 10.0;
  int max_geometry_retries = 8;

  int samples_per_segment() const {
    return static_cast<int>(duration_s * sample_rate_hz + 0.5);
  }

  PassPlan sample_pass(const AircraftProfile& profile, std::uint64_t trajectory_seed) const;

  TrajectoryState state_at(const AircraftProfile& profile, const PassPlan& pass, double t) const;

  /// Generates one radar's segment for one pass. Reproducible from
  /// (trajectory_seed, noise.rng_seed). With snr_db set, white Gaussian noise
  /// is added to the dBsm waveform, scaled so the realized linear power ratio
  /// of the clean waveform's AC power to the noise power equals snr_db.
  RcsSegment generate_segment(const RadarConfig& radar, const AircraftProfile& profile,
                              std::uint64_t trajectory_seed, const LosNoiseModel& noise,
                              std::optional<double> snr_db, long segment_id = 0) const;

  /// count_per_class samples per profile; each GraphSample bundles one
  /// synchronized segment per radar. Degenerate trajectories are resampled up
  /// to max_geometry_retries times, then the error propagates.
  std::vector<GraphSample> generate_dataset(const std::vector<RadarConfig>& radars,
                                            const std::vector<AircraftProfile>& profiles,
                                            int count_per_class, std::optional<double> snr_db,
                                            std::uint64_t master_seed) const;
};

}  // namespace stfgacn::sim

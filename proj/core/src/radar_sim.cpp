#include "stfgacn/radar_sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "stfgacn/rng.hpp"

namespace stfgacn::sim {

namespace {

constexpr std::uint64_t kTrajectoryTag = 0x72616a5eed;
constexpr std::uint64_t kAwgnTag = 0x6177676e;
constexpr std::uint64_t kLosTag = 0x6c6f73;

Eigen::Matrix3d rotation_x(double a) {
  Eigen::Matrix3d m;
  m << 1, 0, 0,
       0, std::cos(a), std::sin(a),
       0, -std::sin(a), std::cos(a);
  return m;
}

Eigen::Matrix3d rotation_y(double a) {
  Eigen::Matrix3d m;
  m << std::cos(a), 0, -std::sin(a),
       0, 1, 0,
       std::sin(a), 0, std::cos(a);
  return m;
}

Eigen::Matrix3d rotation_z(double a) {
  Eigen::Matrix3d m;
  m << std::cos(a), std::sin(a), 0,
       -std::sin(a), std::cos(a), 0,
       0, 0, 1;
  return m;
}

double clipped_gaussian(std::uint64_t seed, double t, std::uint64_t channel) {
  const std::uint64_t key = derive_seed(std::bit_cast<std::uint64_t>(t), {kLosTag, channel});
  return std::clamp(gaussian_at(seed, key), -1.0, 1.0);
}

void validate_profile(const AircraftProfile& profile, double sample_rate_hz) {
  if (profile.speed_mps <= 0.0) {
    throw ConfigError("aircraft speed must be positive");
  }
  if (!(profile.micro_f1_hz < profile.micro_f2_hz)) {
    throw ConfigError("micro-motion frequencies must satisfy f1 < f2");
  }
  if (profile.micro_f2_hz >= 0.5 * sample_rate_hz) {
    throw ConfigError("micro-motion frequency exceeds the Nyquist limit");
  }
}

}  // namespace

Eigen::Vector3d relative_coordinates(const RadarConfig& radar, const TrajectoryState& state) {
  const Eigen::Vector3d displacement = radar.position - state.position;
  return rotation_x(state.yaw_rad) * rotation_y(state.pitch_rad) * rotation_z(state.roll_rad) *
         displacement;
}

std::pair<double, double> line_of_sight_angles(const Eigen::Vector3d& delta,
                                               const LosNoiseModel& noise, double t) {
  const double norm = delta.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DegenerateGeometry("line-of-sight displacement has zero or non-finite norm");
  }
  if (delta.x() == 0.0) {
    throw DegenerateGeometry("delta_x is zero; horizontal angle undefined");
  }
  const double ratio = delta.y() / delta.x();
  if (std::abs(ratio) > 1.0) {
    throw DegenerateGeometry("|delta_y/delta_x| > 1; trajectory passed through a pole");
  }
  const double spread = std::sqrt(1.0 - noise.rho);
  const double w_phi = clipped_gaussian(noise.rng_seed, t, 0);
  const double w_theta = clipped_gaussian(noise.rng_seed, t, 1);
  const double phi = noise.rho * std::acos(ratio) + spread * noise.sigma_phi * w_phi;
  const double theta = noise.rho * std::acos(delta.z() / norm) + spread * noise.sigma_theta * w_theta;
  return {theta, phi};
}

double micro_motion_aspect(const AircraftProfile& profile, double t) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return profile.micro_amp1_rad * std::sin(two_pi * profile.micro_f1_hz * t) +
         profile.micro_amp2_rad * std::sin(two_pi * profile.micro_f2_hz * t);
}

double surrogate_rcs(const SurrogateRcs& model, double theta, double phi,
                     double carrier_frequency_hz, const AircraftProfile& profile) {
  const double electrical_phase =
      2.0 * std::numbers::pi * carrier_frequency_hz * model.electrical_length_m / kSpeedOfLight;
  const double ref = model.reference_angle_rad;
  // cos(2*ref) vanishes at the pi/4 reference; the carrier term is offset by
  // its reference value so the pattern is exactly base_rcs at broadside for
  // every carrier frequency.
  const double pattern = model.lobe_theta_db * std::cos(2.0 * theta) +
                         model.lobe_phi_db * std::cos(2.0 * phi) +
                         model.lobe_fc_db * (std::sin(electrical_phase + theta) -
                                             std::sin(electrical_phase + ref));
  const double ref_pattern = model.lobe_theta_db * std::cos(2.0 * ref) +
                             model.lobe_phi_db * std::cos(2.0 * ref);
  return profile.base_rcs_dbsm + pattern - ref_pattern;
}

PassPlan Simulator::sample_pass(const AircraftProfile& profile, std::uint64_t trajectory_seed) const {
  (void)profile;
  Prng rng(derive_seed(trajectory_seed, {kTrajectoryTag}));
  PassPlan pass;
  pass.start = Eigen::Vector3d(rng.uniform(trajectory.start_x_min_m, trajectory.start_x_max_m),
                               rng.uniform(trajectory.start_y_min_m, trajectory.start_y_max_m),
                               trajectory.altitude_m);
  pass.heading_rad = rng.uniform(trajectory.heading_min_rad, trajectory.heading_max_rad);
  pass.start_time_s = rng.uniform(trajectory.start_time_min_s, trajectory.start_time_max_s);
  return pass;
}

TrajectoryState Simulator::state_at(const AircraftProfile& profile, const PassPlan& pass,
                                    double t) const {
  TrajectoryState state;
  state.time_s = t;
  const Eigen::Vector3d velocity(profile.speed_mps * std::cos(pass.heading_rad),
                                 profile.speed_mps * std::sin(pass.heading_rad), 0.0);
  state.position = pass.start + velocity * t;
  // Attitude aligned with velocity: yaw from heading, pitch and roll zero.
  state.yaw_rad = pass.heading_rad;
  state.pitch_rad = 0.0;
  state.roll_rad = 0.0;
  return state;
}

RcsSegment Simulator::generate_segment(const RadarConfig& radar, const AircraftProfile& profile,
                                       std::uint64_t trajectory_seed, const LosNoiseModel& noise,
                                       std::optional<double> snr_db, long segment_id) const {
  validate_profile(profile, sample_rate_hz);
  if (snr_db && !std::isfinite(*snr_db)) {
    throw ConfigError("snr_db must be finite or the clean sentinel");
  }

  const int k_samples = samples_per_segment();
  const PassPlan pass = sample_pass(profile, trajectory_seed);

  RcsSegment segment;
  segment.radar_id = radar.id;
  segment.class_label = profile.class_label;
  segment.snr_db = snr_db;
  segment.sample_rate_hz = sample_rate_hz;
  segment.segment_id = segment_id;
  segment.samples.resize(k_samples);

  for (int k = 0; k < k_samples; ++k) {
    // Absolute pass time: the window starts start_time_s into the pass, so
    // the micro-motion phase at sample 0 varies per trajectory seed.
    const double t = pass.start_time_s + static_cast<double>(k) / sample_rate_hz;
    const TrajectoryState state = state_at(profile, pass, t);
    const Eigen::Vector3d delta = relative_coordinates(radar, state);
    auto [theta, phi] = line_of_sight_angles(delta, noise, t);
    theta += micro_motion_aspect(profile, t);
    segment.samples[k] = surrogate_rcs(rcs, theta, phi, radar.carrier_frequency_hz, profile);
  }

  if (snr_db) {
    double mean = 0.0;
    for (double v : segment.samples) mean += v;
    mean /= k_samples;
    double signal_power = 0.0;  // AC power of the clean waveform
    for (double v : segment.samples) signal_power += (v - mean) * (v - mean);
    signal_power /= k_samples;
    if (!(signal_power > 0.0)) {
      throw Error("clean segment has zero AC power; SNR is undefined");
    }
    const double noise_power = signal_power / db_to_linear(*snr_db);

    Prng rng(derive_seed(noise.rng_seed, {kAwgnTag, static_cast<std::uint64_t>(radar.id)}));
    std::vector<double> draws(k_samples);
    double sum_sq = 0.0;
    for (int k = 0; k < k_samples; ++k) {
      draws[k] = rng.gaussian();
      sum_sq += draws[k] * draws[k];
    }
    // Scale the realized vector to the exact target power so the injected
    // SNR matches snr_db without sampling error.
    const double scale = std::sqrt(noise_power * k_samples / sum_sq);
    for (int k = 0; k < k_samples; ++k) {
      segment.samples[k] += scale * draws[k];
    }
  }
  return segment;
}

std::vector<GraphSample> Simulator::generate_dataset(const std::vector<RadarConfig>& radars,
                                                     const std::vector<AircraftProfile>& profiles,
                                                     int count_per_class,
                                                     std::optional<double> snr_db,
                                                     std::uint64_t master_seed) const {
  if (count_per_class < 1) {
    throw ConfigError("count_per_class must be >= 1");
  }
  if (radars.empty()) {
    throw ConfigError("at least one radar is required");
  }

  const int k_samples = samples_per_segment();
  const int n_radars = static_cast<int>(radars.size());
  std::vector<GraphSample> samples;
  samples.reserve(profiles.size() * static_cast<std::size_t>(count_per_class));

  for (std::size_t c = 0; c < profiles.size(); ++c) {
    const AircraftProfile& profile = profiles[c];
    for (int i = 0; i < count_per_class; ++i) {
      const long sample_id = static_cast<long>(c) * count_per_class + i;
      GraphSample sample;
      sample.signals.resize(n_radars, k_samples);
      sample.label = profile.class_label;
      sample.snr_db = snr_db;
      sample.sample_id = sample_id;

      bool done = false;
      for (int attempt = 0; attempt <= max_geometry_retries && !done; ++attempt) {
        const std::uint64_t trajectory_seed = derive_seed(
            master_seed, {kTrajectoryTag, c, static_cast<std::uint64_t>(i),
                          static_cast<std::uint64_t>(attempt)});
        try {
          for (int n = 0; n < n_radars; ++n) {
            LosNoiseModel noise = base_noise;
            noise.rng_seed = derive_seed(
                master_seed, {kLosTag, c, static_cast<std::uint64_t>(i),
                              static_cast<std::uint64_t>(radars[n].id)});
            const RcsSegment segment =
                generate_segment(radars[n], profile, trajectory_seed, noise, snr_db, sample_id);
            for (int k = 0; k < k_samples; ++k) {
              sample.signals(n, k) = segment.samples[k];
            }
          }
          done = true;
        } catch (const DegenerateGeometry&) {
          if (attempt == max_geometry_retries) throw;
        }
      }
      samples.push_back(std::move(sample));
    }
  }
  return samples;
}

}  // namespace stfgacn::sim

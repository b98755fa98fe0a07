#pragma once

#include "fluidhaptics/device_sim.hpp"
#include "fluidhaptics/fluid_model.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace fluidhaptics {

// All tunables of the engine, loadable from a `key = value` file. Defaults
// are embedded here; a config file only overrides what it names. `#` starts a
// comment, blank lines are ignored, unknown keys are errors.
//
//   liquid = galinstan            # or water, or a custom name with overrides:
//   liquid.density_g_per_cm3 = 6.44
//   liquid.viscosity_pa_s = 0.0024
//   geometry.plunger_radius_mm = 10.0
//   geometry.pushrod_speed_mm_s = 60.0
//   geometry.receptacle_near_pos_mm = 0.0
//   geometry.receptacle_far_pos_mm = 120.0
//   geometry.receptacle_capacity_ml = 50.0
//   geometry.device_empty_mass_g = 130.0
//   geometry.max_total_mass_g = 902.8
//   noise.relative_sigma = 0.02
//   noise.step_volume_ml = 0.0126
//   noise.seed = 1
//   controller.telemetry_period_s = 0.05
//   session.retransmit_interval_s = 0.2
//   channel.drop_probability = 0.0
//   clock.quantum_s = 0.01
//   vibration.threshold_ms2 = 800.0
//   vibration.gain_per_newton = 1.0
//   vibration.max_drive = 100.0
//   vibration.burst_decay_per_s = 8.0
//   vibration.burst_angular_frequency_rad_s = 314.159...
//   vibration.burst_phase_rad = 0.0
//   vibration.burst_duration_s = 0.5
//   vibration.refractory_s = 0.5   # defaults to the burst duration
//   scenario.spray_update_period_s = 0.1
struct Config {
    Liquid liquid = Liquid::water();
    ActuatorGeometry geometry{};
    NoiseModel noise{};

    double telemetry_period_s = 0.05;
    double retransmit_interval_s = 0.2;
    double drop_probability = 0.0;
    double clock_quantum_s = 0.01;

    double accel_threshold_ms2 = 800.0;
    double gain_per_newton = 1.0;
    double max_drive = 100.0;
    double burst_decay_per_s = 8.0;
    double burst_angular_frequency_rad_s = 2.0 * 3.14159265358979323846 * 50.0;
    double burst_phase_rad = 0.0;
    double burst_duration_s = 0.5;
    // Unset means "burst duration": no overlapping bursts.
    std::optional<double> refractory_override_s;

    double spray_update_period_s = 0.1;

    double refractory_s() const {
        return refractory_override_s.value_or(burst_duration_s);
    }

    void validate() const;

    // Applies one `key = value` override. Throws ParseError on unknown keys
    // or malformed values.
    void set(const std::string& key, const std::string& value);

    static Config load_file(const std::string& path);
    static Config load_stream(std::istream& in, const std::string& origin);
};

// Selects one of the built-in liquids by name ("water"/"galinstan").
Liquid liquid_by_name(const std::string& name);

} // namespace fluidhaptics

#include "fluidhaptics/config.hpp"

#include "fluidhaptics/errors.hpp"
#include "fluidhaptics/numeric_text.hpp"

#include <fstream>
#include <istream>
#include <sstream>

namespace fluidhaptics {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

} // namespace

Liquid liquid_by_name(const std::string& name) {
    if (name == "water") {
        return Liquid::water();
    }
    if (name == "galinstan") {
        return Liquid::galinstan();
    }
    throw ParseError("unknown liquid '" + name + "' (expected water or galinstan)");
}

void Config::validate() const {
    liquid.validate();
    geometry.validate();
    noise.validate();
    if (!(telemetry_period_s > 0.0)) throw std::invalid_argument("config: telemetry period must be > 0");
    if (!(retransmit_interval_s > 0.0)) throw std::invalid_argument("config: retransmit interval must be > 0");
    if (drop_probability < 0.0 || drop_probability >= 1.0) {
        throw std::invalid_argument("config: drop probability must be in [0, 1)");
    }
    if (!(clock_quantum_s > 0.0)) throw std::invalid_argument("config: clock quantum must be > 0");
    if (!(spray_update_period_s > 0.0)) throw std::invalid_argument("config: spray period must be > 0");
    if (refractory_s() < 0.0) throw std::invalid_argument("config: refractory must be >= 0");
}

void Config::set(const std::string& key, const std::string& value) {
    const auto num = [&] { return parse_double(value); };
    if (key == "liquid") {
        liquid = liquid_by_name(value);
    } else if (key == "liquid.name") {
        liquid.name = value;
    } else if (key == "liquid.density_g_per_cm3") {
        liquid.density_g_per_cm3 = num();
    } else if (key == "liquid.viscosity_pa_s") {
        liquid.viscosity_pa_s = num();
    } else if (key == "geometry.plunger_radius_mm") {
        geometry.plunger_radius_mm = num();
    } else if (key == "geometry.pushrod_speed_mm_s") {
        geometry.pushrod_speed_mm_s = num();
    } else if (key == "geometry.receptacle_near_pos_mm") {
        geometry.receptacle_near_pos_mm = num();
    } else if (key == "geometry.receptacle_far_pos_mm") {
        geometry.receptacle_far_pos_mm = num();
    } else if (key == "geometry.receptacle_capacity_ml") {
        geometry.receptacle_capacity_ml = num();
    } else if (key == "geometry.device_empty_mass_g") {
        geometry.device_empty_mass_g = num();
    } else if (key == "geometry.max_total_mass_g") {
        geometry.max_total_mass_g = num();
    } else if (key == "noise.relative_sigma") {
        noise.relative_sigma = num();
    } else if (key == "noise.step_volume_ml") {
        noise.step_volume_ml = num();
    } else if (key == "noise.seed") {
        noise.seed = parse_u64(value);
    } else if (key == "controller.telemetry_period_s") {
        telemetry_period_s = num();
    } else if (key == "session.retransmit_interval_s") {
        retransmit_interval_s = num();
    } else if (key == "channel.drop_probability") {
        drop_probability = num();
    } else if (key == "clock.quantum_s") {
        clock_quantum_s = num();
    } else if (key == "vibration.threshold_ms2") {
        accel_threshold_ms2 = num();
    } else if (key == "vibration.gain_per_newton") {
        gain_per_newton = num();
    } else if (key == "vibration.max_drive") {
        max_drive = num();
    } else if (key == "vibration.burst_decay_per_s") {
        burst_decay_per_s = num();
    } else if (key == "vibration.burst_angular_frequency_rad_s") {
        burst_angular_frequency_rad_s = num();
    } else if (key == "vibration.burst_phase_rad") {
        burst_phase_rad = num();
    } else if (key == "vibration.burst_duration_s") {
        burst_duration_s = num();
    } else if (key == "vibration.refractory_s") {
        refractory_override_s = num();
    } else if (key == "scenario.spray_update_period_s") {
        spray_update_period_s = num();
    } else {
        throw ParseError("unknown config key '" + key + "'");
    }
}

Config Config::load_stream(std::istream& in, const std::string& origin) {
    Config config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ParseError(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
        }
        try {
            config.set(key, value);
        } catch (const ParseError& e) {
            throw ParseError(origin + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    config.validate();
    return config;
}

Config Config::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open config: " + path);
    }
    return load_stream(in, path);
}

} // namespace fluidhaptics

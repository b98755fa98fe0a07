#include "fluidhaptics/fluid_model.hpp"

#include <numbers>
#include <stdexcept>

namespace fluidhaptics {

void Liquid::validate() const {
    if (!(density_g_per_cm3 > 0.0)) {
        throw std::invalid_argument("Liquid '" + name + "': density must be > 0");
    }
    if (!(viscosity_pa_s > 0.0)) {
        throw std::invalid_argument("Liquid '" + name + "': viscosity must be > 0");
    }
}

Liquid Liquid::water() {
    return Liquid{"water", 1.000, 1.0e-3};
}

Liquid Liquid::galinstan() {
    return Liquid{"galinstan", 6.44, 24e-4};
}

void ActuatorGeometry::validate() const {
    if (!(plunger_radius_mm > 0.0)) {
        throw std::invalid_argument("geometry: plunger_radius_mm must be > 0");
    }
    if (!(pushrod_speed_mm_s > 0.0)) {
        throw std::invalid_argument("geometry: pushrod_speed_mm_s must be > 0");
    }
    if (!(receptacle_far_pos_mm > receptacle_near_pos_mm)) {
        throw std::invalid_argument("geometry: far receptacle must sit beyond the near one");
    }
    if (!(receptacle_capacity_ml > 0.0)) {
        throw std::invalid_argument("geometry: receptacle_capacity_ml must be > 0");
    }
    if (!(device_empty_mass_g < max_total_mass_g)) {
        throw std::invalid_argument("geometry: empty mass must be below max_total_mass_g");
    }
}

double ActuatorGeometry::plunger_area_mm2() const {
    return std::numbers::pi * plunger_radius_mm * plunger_radius_mm;
}

double ActuatorGeometry::flow_rate_ml_s() const {
    // mm^2 * mm/s = mm^3/s; 1000 mm^3 = 1 mL.
    return plunger_area_mm2() * pushrod_speed_mm_s / 1000.0;
}

double volume_for_mass(double mass_g, const Liquid& liquid) {
    if (mass_g < 0.0) {
        throw std::domain_error("volume_for_mass: mass must be >= 0");
    }
    liquid.validate();
    return mass_g / liquid.density_g_per_cm3;
}

double mass_for_volume(double volume_cm3, const Liquid& liquid) {
    if (volume_cm3 < 0.0) {
        throw std::domain_error("mass_for_volume: volume must be >= 0");
    }
    liquid.validate();
    return volume_cm3 * liquid.density_g_per_cm3;
}

double plunger_travel_mm(double volume_cm3, const ActuatorGeometry& geometry) {
    if (volume_cm3 < 0.0) {
        throw std::domain_error("plunger_travel_mm: volume must be >= 0");
    }
    geometry.validate();
    return volume_cm3 * 1000.0 / geometry.plunger_area_mm2();
}

double fill_duration_s(double volume_cm3, const ActuatorGeometry& geometry) {
    return plunger_travel_mm(volume_cm3, geometry) / geometry.pushrod_speed_mm_s;
}

} // namespace fluidhaptics

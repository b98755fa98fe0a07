#pragma once

#include <string>

namespace fluidhaptics {

// Working fluid. Density drives every mass<->volume conversion; viscosity is
// carried for reporting only (the plunger displaces fluid as a rigid column,
// so kinematics are viscosity-independent).
struct Liquid {
    std::string name;
    double density_g_per_cm3 = 1.0;
    double viscosity_pa_s = 1.0e-3;

    void validate() const;

    static Liquid water();      // 1.000 g/cm3 at room temperature
    static Liquid galinstan();  // 6.44 g/cm3, 24e-4 Pa.s
};

// Syringe-and-receptacle geometry plus the structural mass envelope.
// Distances are measured from the grip along the device axis.
struct ActuatorGeometry {
    double plunger_radius_mm = 10.0;
    double pushrod_speed_mm_s = 60.0;
    double receptacle_near_pos_mm = 0.0;
    double receptacle_far_pos_mm = 120.0;
    double receptacle_capacity_ml = 50.0;
    double device_empty_mass_g = 130.0;
    double max_total_mass_g = 902.8;

    void validate() const;

    // Plunger cross-section in mm^2.
    double plunger_area_mm2() const;

    // Volume moved per second of pushrod travel, in mL/s.
    double flow_rate_ml_s() const;
};

// 1 cm^3 == 1 mL throughout; volumes are used interchangeably in both units.

// V = m / rho. Negative mass -> std::domain_error.
double volume_for_mass(double mass_g, const Liquid& liquid);

// m = V * rho. Negative volume -> std::domain_error.
double mass_for_volume(double volume_cm3, const Liquid& liquid);

// Pushrod travel that displaces the given volume: d = V / (pi r^2).
double plunger_travel_mm(double volume_cm3, const ActuatorGeometry& geometry);

// Time to move the given volume at the configured pushrod speed. Withdrawal
// runs at the same speed as injection.
double fill_duration_s(double volume_cm3, const ActuatorGeometry& geometry);

} // namespace fluidhaptics

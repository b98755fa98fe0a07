#include "fluidhaptics/weight_renderer.hpp"

#include "fluidhaptics/errors.hpp"
#include "fluidhaptics/numeric_text.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fluidhaptics {

const char* to_string(Receptacle r) {
    return r == Receptacle::Near ? "near" : "far";
}

const char* to_string(TransferDirection d) {
    return d == TransferDirection::Inject ? "inject" : "withdraw";
}

double TransferPlan::duration_s() const {
    double longest = 0.0;
    for (const auto& cmd : commands) {
        longest = std::max(longest, cmd.duration_s);
    }
    return longest;
}

double TransferPlan::total_volume_ml() const {
    double total = 0.0;
    for (const auto& cmd : commands) {
        total += cmd.volume_ml;
    }
    return total;
}

ReceptacleFill split_for_com(const WeightTarget& target, const Liquid& liquid,
                             const ActuatorGeometry& geometry) {
    liquid.validate();
    geometry.validate();
    if (target.mass_g < 0.0) {
        throw std::domain_error("split_for_com: mass must be >= 0");
    }
    if (target.mass_g == 0.0) {
        return ReceptacleFill{0.0, 0.0};
    }

    const double x_near = geometry.receptacle_near_pos_mm;
    const double x_far = geometry.receptacle_far_pos_mm;
    if (target.com_offset_mm < x_near || target.com_offset_mm > x_far) {
        throw InfeasibleTargetError(
            "center of gravity " + to_text(target.com_offset_mm) +
            " mm lies outside the receptacle span [" + to_text(x_near) + ", " +
            to_text(x_far) + "] mm");
    }

    const double span = x_far - x_near;
    const double far_share = (target.com_offset_mm - x_near) / span;
    const double near_share = 1.0 - far_share;
    const double mass_near = target.mass_g * near_share;
    const double mass_far = target.mass_g * far_share;

    const double cap_mass = geometry.receptacle_capacity_ml * liquid.density_g_per_cm3;
    if (mass_near > cap_mass || mass_far > cap_mass) {
        double feasible = std::numeric_limits<double>::infinity();
        if (near_share > 0.0) feasible = std::min(feasible, cap_mass / near_share);
        if (far_share > 0.0) feasible = std::min(feasible, cap_mass / far_share);
        throw CapacityError("target mass " + to_text(target.mass_g) +
                                " g overflows a receptacle; at this offset the"
                                " feasible maximum is " +
                                to_text(feasible) + " g",
                            feasible);
    }

    return ReceptacleFill{volume_for_mass(mass_near, liquid),
                          volume_for_mass(mass_far, liquid)};
}

ReceptacleFill check_envelope(const ReceptacleFill& fill, const Liquid& liquid,
                              const ActuatorGeometry& geometry) {
    liquid.validate();
    geometry.validate();
    if (fill.near_ml < 0.0 || fill.far_ml < 0.0) {
        throw std::domain_error("check_envelope: volumes must be >= 0");
    }
    if (fill.near_ml > geometry.receptacle_capacity_ml ||
        fill.far_ml > geometry.receptacle_capacity_ml) {
        const double cap_mass = geometry.receptacle_capacity_ml * liquid.density_g_per_cm3;
        throw CapacityError("receptacle volume " +
                                to_text(std::max(fill.near_ml, fill.far_ml)) +
                                " mL exceeds capacity " +
                                to_text(geometry.receptacle_capacity_ml) + " mL",
                            cap_mass);
    }
    const double fluid_mass = mass_for_volume(fill.total_ml(), liquid);
    const double total = geometry.device_empty_mass_g + fluid_mass;
    if (total > geometry.max_total_mass_g) {
        throw EnvelopeError("loaded mass " + to_text(total) + " g exceeds envelope " +
                                to_text(geometry.max_total_mass_g) + " g",
                            total);
    }
    return fill;
}

TransferPlan plan_transfer(const ReceptacleFill& current, const ReceptacleFill& goal,
                           const ActuatorGeometry& geometry) {
    geometry.validate();
    TransferPlan plan;
    const auto add = [&](Receptacle r, double delta_ml) {
        if (delta_ml == 0.0) {
            return;
        }
        TransferCommand cmd;
        cmd.receptacle = r;
        cmd.direction = delta_ml > 0.0 ? TransferDirection::Inject : TransferDirection::Withdraw;
        cmd.volume_ml = std::abs(delta_ml);
        cmd.duration_s = fill_duration_s(cmd.volume_ml, geometry);
        plan.commands.push_back(cmd);
    };
    add(Receptacle::Near, goal.near_ml - current.near_ml);
    add(Receptacle::Far, goal.far_ml - current.far_ml);
    return plan;
}

ReceptacleFill apply_plan(const ReceptacleFill& start, const TransferPlan& plan) {
    ReceptacleFill fill = start;
    for (const auto& cmd : plan.commands) {
        double& volume = cmd.receptacle == Receptacle::Near ? fill.near_ml : fill.far_ml;
        volume += cmd.direction == TransferDirection::Inject ? cmd.volume_ml : -cmd.volume_ml;
    }
    return fill;
}

} // namespace fluidhaptics

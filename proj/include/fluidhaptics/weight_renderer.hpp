#pragma once

#include "fluidhaptics/fluid_model.hpp"

#include <vector>

namespace fluidhaptics {

// A requested perceived weight: total fluid mass plus the center-of-gravity
// offset of that fluid along the device axis.
struct WeightTarget {
    double mass_g = 0.0;
    double com_offset_mm = 0.0;
};

// Per-receptacle fluid volumes realizing a target.
struct ReceptacleFill {
    double near_ml = 0.0;
    double far_ml = 0.0;

    double total_ml() const { return near_ml + far_ml; }
    bool empty() const { return near_ml == 0.0 && far_ml == 0.0; }
    bool operator==(const ReceptacleFill&) const = default;
};

enum class Receptacle { Near, Far };
enum class TransferDirection { Inject, Withdraw };

const char* to_string(Receptacle r);
const char* to_string(TransferDirection d);

struct TransferCommand {
    Receptacle receptacle = Receptacle::Near;
    TransferDirection direction = TransferDirection::Inject;
    double volume_ml = 0.0;
    double duration_s = 0.0;
    // The two syringes have independent drives, so commands addressing
    // different receptacles run simultaneously.
    bool concurrent = true;

    bool operator==(const TransferCommand&) const = default;
};

// Ordered command list that moves the device from one fill to another.
struct TransferPlan {
    std::vector<TransferCommand> commands;

    bool empty() const { return commands.empty(); }
    // Largest single-command duration; concurrent commands overlap, so this
    // is the wall-clock length of the plan.
    double duration_s() const;
    // Sum of |delta volume| over all commands.
    double total_volume_ml() const;

    bool operator==(const TransferPlan&) const = default;
};

// Solve the two-point torque balance:
//   m_near + m_far = mass,  m_near*x_near + m_far*x_far = mass*com
// and convert the masses to volumes. The center of gravity is rendered over
// the fluid payload alone; the empty device's own mass distribution is not
// modeled. mass == 0 returns (0,0) for any offset (CoG undefined there).
//
// Throws InfeasibleTargetError when com lies outside the receptacle span and
// CapacityError (carrying the feasible maximum mass at this offset) when a
// receptacle would overflow.
ReceptacleFill split_for_com(const WeightTarget& target, const Liquid& liquid,
                             const ActuatorGeometry& geometry);

// Accepts the fill unchanged iff the loaded device stays within the payload
// envelope and per-receptacle capacity. Never scales; throws CapacityError or
// EnvelopeError with the offending quantity.
ReceptacleFill check_envelope(const ReceptacleFill& fill, const Liquid& liquid,
                              const ActuatorGeometry& geometry);

// Componentwise delta between two valid fills. Per-command duration follows
// syringe kinematics; zero deltas produce no command.
TransferPlan plan_transfer(const ReceptacleFill& current, const ReceptacleFill& goal,
                           const ActuatorGeometry& geometry);

// Applies a plan to a fill (used to check plan soundness and by tests).
ReceptacleFill apply_plan(const ReceptacleFill& start, const TransferPlan& plan);

} // namespace fluidhaptics

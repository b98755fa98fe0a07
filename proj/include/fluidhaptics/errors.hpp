#pragma once

#include <stdexcept>
#include <string>

namespace fluidhaptics {

// Requested center of gravity cannot be realized by the two receptacles.
class InfeasibleTargetError : public std::runtime_error {
public:
    explicit InfeasibleTargetError(const std::string& what) : std::runtime_error(what) {}
};

// A receptacle would have to hold more than its capacity. Carries the largest
// mass that is feasible for the same center-of-gravity offset.
class CapacityError : public std::runtime_error {
public:
    CapacityError(const std::string& what, double feasible_max_mass_g)
        : std::runtime_error(what), feasible_max_mass_g(feasible_max_mass_g) {}
    double feasible_max_mass_g;
};

// Total device mass would exceed the structural payload envelope.
class EnvelopeError : public std::runtime_error {
public:
    EnvelopeError(const std::string& what, double offending_mass_g)
        : std::runtime_error(what), offending_mass_g(offending_mass_g) {}
    double offending_mass_g;
};

// Malformed wire line, scenario line, or config entry.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A message violates its own invariants and cannot be put on the wire.
class EncodeError : public std::runtime_error {
public:
    explicit EncodeError(const std::string& what) : std::runtime_error(what) {}
};

// Raised by an actuator port when the hardware (or its simulation) faults.
class ActuatorFault : public std::runtime_error {
public:
    explicit ActuatorFault(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fluidhaptics

#pragma once

#include "fluidhaptics/device_controller.hpp"
#include "fluidhaptics/event_log.hpp"
#include "fluidhaptics/fluid_model.hpp"
#include "fluidhaptics/weight_renderer.hpp"

#include <cstdint>
#include <random>

namespace fluidhaptics {

// Calibrated imperfection of the open-loop transfer mechanism: a per-command
// multiplicative Gaussian on delivered volume plus stepper quantization.
// Defaults land the stability benchmark within the headline error bounds
// (overall mean deviation under 5%, max 2 g at a 50 g target); they are
// implementer-calibrated, not measured values.
struct NoiseModel {
    double relative_sigma = 0.02;
    // One 1.8-degree step of a 200 step/rev, 8 mm lead screw moves the
    // 10 mm plunger by 0.04 mm: 0.04 * pi * 10^2 mm^3 ~= 0.0126 mL.
    double step_volume_ml = 0.0126;
    std::uint64_t seed = 1;

    void validate() const;
};

// Virtual clock for host-side scheduling. No wall-clock sleeping anywhere;
// runs faster than real time.
struct SimClock {
    double now_s = 0.0;
    double quantum_s = 0.01;

    void advance() { now_s += quantum_s; }
};

// Nearest step multiple, ties away from zero.
double quantize_to_step(double volume_ml, double step_volume_ml);

// 0.1 g bench scale: nearest tenth of a gram, ties away from zero.
double read_scale(double true_mass_g);

// Deterministic simulated transfer mechanism and reservoirs. Owns its RNG
// state, so instances are independent and may run in parallel. The true
// receptacle volumes here are what a physical teardown would find; the
// controller's open-loop integral can disagree, and that gap is exactly what
// the stability benchmark measures.
class SimulatedActuator final : public ActuatorPort {
public:
    SimulatedActuator(ActuatorGeometry geometry, NoiseModel noise, EventLog* log = nullptr);

    // delivered = quantize(volume * (1 + eps)), eps ~ N(0, relative_sigma),
    // truncated so the receptacle never under- or overflows. Truncations are
    // reported in telemetry, not raised.
    double inject(Receptacle receptacle, double volume_ml) override;
    double withdraw(Receptacle receptacle, double volume_ml) override;
    void step(double dt_s) override;

    double now_s() const { return now_s_; }
    double true_volume_ml(Receptacle receptacle) const;
    double true_total_volume_ml() const;
    double true_fluid_mass_g(const Liquid& liquid) const;

    // Scale reading of the loaded device minus the separately weighed empty
    // device -- the measurement protocol of the stability experiment.
    double measured_fluid_mass_g(const Liquid& liquid) const;

    // A faulted actuator throws ActuatorFault from inject/withdraw until cleared.
    void set_fault(bool faulted) { faulted_ = faulted; }

private:
    double actuate(TransferDirection direction, Receptacle receptacle, double volume_ml);

    ActuatorGeometry geometry_;
    NoiseModel noise_;
    EventLog* log_;
    std::mt19937_64 rng_;
    double near_ml_ = 0.0;
    double far_ml_ = 0.0;
    double now_s_ = 0.0;
    bool faulted_ = false;
};

} // namespace fluidhaptics

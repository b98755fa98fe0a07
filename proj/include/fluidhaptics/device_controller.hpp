#pragma once

#include "fluidhaptics/fluid_model.hpp"
#include "fluidhaptics/protocol.hpp"
#include "fluidhaptics/vibration.hpp"
#include "fluidhaptics/weight_renderer.hpp"

#include <optional>
#include <vector>

namespace fluidhaptics {

// Fluid-transfer side of the firmware. The only cycle under fault-free,
// preemption-free operation is Idle -> Filling -> Holding -> Draining -> Idle;
// a preempting SET_TARGET may re-plan directly between Filling and Draining.
// Vibration never touches the fluid mode.
enum class DeviceMode { Idle, Filling, Holding, Draining };

const char* to_string(DeviceMode mode);

// Abstract transfer mechanism. Volumes are committed when a command finishes
// (or is preempted mid-flight, with the partial volume moved so far). step()
// advances the actuator's own clock alongside the controller's.
class ActuatorPort {
public:
    virtual ~ActuatorPort() = default;
    virtual double inject(Receptacle receptacle, double volume_ml) = 0;
    virtual double withdraw(Receptacle receptacle, double volume_ml) = 0;
    virtual void step(double dt_s) = 0;
};

struct ActiveCommand {
    TransferCommand command;
    double start_ml = 0.0;    // receptacle volume when the command began
    double elapsed_s = 0.0;
    bool applied = false;     // volume has been committed to the actuator

    double fraction() const {
        return command.duration_s == 0.0 ? 1.0 : elapsed_s / command.duration_s;
    }
};

struct ActiveBurst {
    VibrationBurst burst;
    double elapsed_s = 0.0;
};

struct DeviceState {
    DeviceMode mode = DeviceMode::Idle;
    ReceptacleFill current;   // open-loop integral of commanded motion
    ReceptacleFill goal;
    std::vector<ActiveCommand> plan;
    std::optional<ActiveBurst> burst;
    bool faulted = false;
};

// True when both states would behave identically from here on. Used by the
// duplicate-delivery (idempotence) checks.
bool equivalent(const DeviceState& a, const DeviceState& b);

struct ControllerConfig {
    Liquid liquid = Liquid::water();
    ActuatorGeometry geometry{};
    double telemetry_period_s = 0.05;
};

// Consumes decoded messages, drives its transfer mechanism, synthesizes the
// vibration drive, and reports state. Progress is integrated from commanded
// pushrod speed -- open loop, no weight sensing. One logical thread owns an
// instance; hand the value off, never share it.
class DeviceController {
public:
    // The actuator must outlive the controller.
    DeviceController(ControllerConfig config, ActuatorPort& actuator);

    // Applies one decoded message. PICKUP needs the host-resolved target (the
    // device stores no catalog). Every sequenced message is ACKed; infeasible
    // targets add an ERR reply and leave the state untouched. Duplicate
    // deliveries are harmless: targets carry absolute values.
    std::vector<Message> handle_message(const Message& message,
                                        const std::optional<WeightTarget>& resolved_target = {});

    // Advances plan, burst, and telemetry clocks by dt. Emits STATE reports at
    // the telemetry period; an actuator fault surfaces as ERR and freezes the
    // fluid mode.
    std::vector<Message> tick(double dt_s);

    const DeviceState& state() const { return state_; }
    const ControllerConfig& config() const { return config_; }

    // Instantaneous vibration drive value (0 outside a burst).
    double current_drive() const;

private:
    void apply_target(const WeightTarget& target, std::vector<Message>& replies);
    void adopt_goal(const ReceptacleFill& goal);
    void commit_partial(std::vector<Message>& replies);
    double commit_command(ActiveCommand& active, double volume_ml);
    double& volume_of(Receptacle receptacle);

    ControllerConfig config_;
    ActuatorPort& actuator_;
    DeviceState state_;
    double telemetry_elapsed_s_ = 0.0;
};

} // namespace fluidhaptics

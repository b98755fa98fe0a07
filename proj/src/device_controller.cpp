#include "fluidhaptics/device_controller.hpp"

#include "fluidhaptics/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fluidhaptics {

namespace {
constexpr double kTimeEps = 1e-12;
} // namespace

const char* to_string(DeviceMode mode) {
    switch (mode) {
        case DeviceMode::Idle: return "Idle";
        case DeviceMode::Filling: return "Filling";
        case DeviceMode::Holding: return "Holding";
        case DeviceMode::Draining: return "Draining";
    }
    return "?";
}

bool equivalent(const DeviceState& a, const DeviceState& b) {
    if (a.mode != b.mode || a.faulted != b.faulted) return false;
    if (!(a.current == b.current) || !(a.goal == b.goal)) return false;
    if (a.plan.size() != b.plan.size()) return false;
    for (std::size_t i = 0; i < a.plan.size(); ++i) {
        const auto& x = a.plan[i];
        const auto& y = b.plan[i];
        if (!(x.command == y.command) || x.start_ml != y.start_ml ||
            x.elapsed_s != y.elapsed_s || x.applied != y.applied) {
            return false;
        }
    }
    if (a.burst.has_value() != b.burst.has_value()) return false;
    if (a.burst && (!(a.burst->burst == b.burst->burst) ||
                    a.burst->elapsed_s != b.burst->elapsed_s)) {
        return false;
    }
    return true;
}

DeviceController::DeviceController(ControllerConfig config, ActuatorPort& actuator)
    : config_(std::move(config)), actuator_(actuator) {
    config_.liquid.validate();
    config_.geometry.validate();
    if (!(config_.telemetry_period_s > 0.0)) {
        throw std::invalid_argument("controller: telemetry period must be > 0");
    }
}

double& DeviceController::volume_of(Receptacle receptacle) {
    return receptacle == Receptacle::Near ? state_.current.near_ml : state_.current.far_ml;
}

double DeviceController::commit_command(ActiveCommand& active, double volume_ml) {
    if (active.command.direction == TransferDirection::Inject) {
        return actuator_.inject(active.command.receptacle, volume_ml);
    }
    return actuator_.withdraw(active.command.receptacle, volume_ml);
}

void DeviceController::commit_partial(std::vector<Message>& replies) {
    for (auto& active : state_.plan) {
        if (active.applied || active.elapsed_s <= 0.0) {
            continue;
        }
        const double moved = active.command.volume_ml * std::min(active.fraction(), 1.0);
        try {
            commit_command(active, moved);
        } catch (const ActuatorFault& fault) {
            state_.faulted = true;
            replies.push_back(Message{{}, ErrReport{"actuator_fault", fault.what()}});
            return;
        }
        const double sign = active.command.direction == TransferDirection::Inject ? 1.0 : -1.0;
        volume_of(active.command.receptacle) = active.start_ml + sign * moved;
        active.applied = true;
    }
}

void DeviceController::adopt_goal(const ReceptacleFill& goal) {
    state_.goal = goal;
    auto plan = plan_transfer(state_.current, goal, config_.geometry);
    state_.plan.clear();
    if (plan.empty()) {
        state_.current = goal;
        state_.mode = goal.empty() ? DeviceMode::Idle : DeviceMode::Holding;
        return;
    }
    const double net_ml = goal.total_ml() - state_.current.total_ml();
    for (auto& cmd : plan.commands) {
        ActiveCommand active;
        active.command = cmd;
        active.start_ml = volume_of(cmd.receptacle);
        state_.plan.push_back(active);
    }
    state_.mode = net_ml >= 0.0 ? DeviceMode::Filling : DeviceMode::Draining;
}

void DeviceController::apply_target(const WeightTarget& target, std::vector<Message>& replies) {
    ReceptacleFill goal;
    try {
        goal = check_envelope(split_for_com(target, config_.liquid, config_.geometry),
                              config_.liquid, config_.geometry);
    } catch (const InfeasibleTargetError& e) {
        replies.push_back(Message{{}, ErrReport{"infeasible_target", e.what()}});
        return;
    } catch (const CapacityError& e) {
        replies.push_back(Message{{}, ErrReport{"capacity_exceeded", e.what()}});
        return;
    } catch (const EnvelopeError& e) {
        replies.push_back(Message{{}, ErrReport{"envelope_exceeded", e.what()}});
        return;
    } catch (const std::domain_error& e) {
        replies.push_back(Message{{}, ErrReport{"invalid_target", e.what()}});
        return;
    }
    // Validation passed; a preempted plan flushes its in-flight volume before
    // the re-plan so the physical fluid stays accounted for.
    commit_partial(replies);
    if (state_.faulted) {
        return;
    }
    adopt_goal(goal);
}

std::vector<Message> DeviceController::handle_message(
    const Message& message, const std::optional<WeightTarget>& resolved_target) {
    std::vector<Message> replies;
    if (message.seq) {
        replies.push_back(Message{{}, Ack{*message.seq}});
    }

    const bool fluid_frozen = state_.faulted;
    std::visit(
        [&](const auto& payload) {
            using T = std::decay_t<decltype(payload)>;
            if constexpr (std::is_same_v<T, SetTarget>) {
                if (fluid_frozen) {
                    replies.push_back(Message{{}, ErrReport{"actuator_fault", "fluid mode frozen"}});
                } else {
                    apply_target(WeightTarget{payload.mass_g, payload.com_mm}, replies);
                }
            } else if constexpr (std::is_same_v<T, Pickup>) {
                if (fluid_frozen) {
                    replies.push_back(Message{{}, ErrReport{"actuator_fault", "fluid mode frozen"}});
                } else if (resolved_target) {
                    apply_target(*resolved_target, replies);
                } else {
                    replies.push_back(Message{{}, ErrReport{"unresolved_object", payload.object_id}});
                }
            } else if constexpr (std::is_same_v<T, Release>) {
                if (fluid_frozen) {
                    replies.push_back(Message{{}, ErrReport{"actuator_fault", "fluid mode frozen"}});
                } else {
                    std::vector<Message> side;
                    commit_partial(side);
                    for (auto& m : side) replies.push_back(std::move(m));
                    if (!state_.faulted) {
                        adopt_goal(ReceptacleFill{0.0, 0.0});
                    }
                }
            } else if constexpr (std::is_same_v<T, Vibrate>) {
                VibrationBurst burst;
                burst.amplitude = payload.amplitude;
                burst.decay_per_s = payload.decay;
                burst.angular_frequency_rad_s = payload.angular_frequency;
                burst.phase_rad = payload.phase;
                burst.duration_s = payload.duration_ms / 1000.0;
                try {
                    burst.validate();
                    state_.burst = ActiveBurst{burst, 0.0};
                } catch (const std::invalid_argument& e) {
                    replies.push_back(Message{{}, ErrReport{"invalid_burst", e.what()}});
                }
            } else {
                // ACK/STATE/ERR are device-to-host; receiving one here is a
                // wiring mistake.
                replies.push_back(Message{{}, ErrReport{"unexpected_message", "not a host verb"}});
            }
        },
        message.payload);

    return replies;
}

std::vector<Message> DeviceController::tick(double dt_s) {
    if (!(dt_s > 0.0)) {
        throw std::invalid_argument("tick: dt must be > 0");
    }
    std::vector<Message> replies;

    if (!state_.faulted &&
        (state_.mode == DeviceMode::Filling || state_.mode == DeviceMode::Draining)) {
        bool all_applied = true;
        for (auto& active : state_.plan) {
            if (active.applied) {
                continue;
            }
            const double remaining = active.command.duration_s - active.elapsed_s;
            active.elapsed_s += std::min(dt_s, remaining);
            const double sign =
                active.command.direction == TransferDirection::Inject ? 1.0 : -1.0;
            if (active.elapsed_s >= active.command.duration_s - kTimeEps) {
                try {
                    commit_command(active, active.command.volume_ml);
                } catch (const ActuatorFault& fault) {
                    state_.faulted = true;
                    replies.push_back(Message{{}, ErrReport{"actuator_fault", fault.what()}});
                    break;
                }
                active.applied = true;
                volume_of(active.command.receptacle) =
                    active.start_ml + sign * active.command.volume_ml;
            } else {
                volume_of(active.command.receptacle) =
                    active.start_ml + sign * active.command.volume_ml * active.fraction();
                all_applied = false;
            }
        }
        if (!state_.faulted && all_applied) {
            state_.plan.clear();
            state_.current = state_.goal;
            state_.mode = state_.goal.empty() ? DeviceMode::Idle : DeviceMode::Holding;
        }
    }

    if (state_.burst) {
        state_.burst->elapsed_s += dt_s;
        if (state_.burst->elapsed_s >= state_.burst->burst.duration_s) {
            state_.burst.reset();
        }
    }

    actuator_.step(dt_s);

    telemetry_elapsed_s_ += dt_s;
    if (telemetry_elapsed_s_ >= config_.telemetry_period_s - kTimeEps) {
        telemetry_elapsed_s_ =
            std::clamp(telemetry_elapsed_s_ - config_.telemetry_period_s, 0.0,
                       config_.telemetry_period_s);
        replies.push_back(Message{
            {}, StateReport{to_string(state_.mode), state_.current.near_ml, state_.current.far_ml}});
    }
    return replies;
}

double DeviceController::current_drive() const {
    if (!state_.burst) {
        return 0.0;
    }
    const double t = std::min(state_.burst->elapsed_s, state_.burst->burst.duration_s);
    return waveform_sample(state_.burst->burst, t);
}

} // namespace fluidhaptics

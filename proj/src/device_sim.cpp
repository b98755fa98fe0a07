#include "fluidhaptics/device_sim.hpp"

#include "fluidhaptics/errors.hpp"
#include "fluidhaptics/numeric_text.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fluidhaptics {

void NoiseModel::validate() const {
    if (!(relative_sigma >= 0.0)) {
        throw std::invalid_argument("noise: relative_sigma must be >= 0");
    }
    if (!(step_volume_ml > 0.0)) {
        throw std::invalid_argument("noise: step_volume_ml must be > 0");
    }
}

double quantize_to_step(double volume_ml, double step_volume_ml) {
    if (!(step_volume_ml > 0.0)) {
        throw std::domain_error("quantize_to_step: step must be > 0");
    }
    return static_cast<double>(std::llround(volume_ml / step_volume_ml)) * step_volume_ml;
}

double read_scale(double true_mass_g) {
    if (true_mass_g < 0.0) {
        throw std::domain_error("read_scale: mass must be >= 0");
    }
    return std::round(true_mass_g * 10.0) / 10.0;
}

SimulatedActuator::SimulatedActuator(ActuatorGeometry geometry, NoiseModel noise, EventLog* log)
    : geometry_(std::move(geometry)), noise_(noise), log_(log), rng_(noise.seed) {
    geometry_.validate();
    noise_.validate();
}

double SimulatedActuator::actuate(TransferDirection direction, Receptacle receptacle,
                                  double volume_ml) {
    if (volume_ml < 0.0) {
        throw std::domain_error("actuate: volume must be >= 0");
    }
    if (faulted_) {
        throw ActuatorFault("simulated actuator fault");
    }

    double noisy = volume_ml;
    if (noise_.relative_sigma > 0.0) {
        std::normal_distribution<double> eps(0.0, noise_.relative_sigma);
        noisy = volume_ml * (1.0 + eps(rng_));
    }
    double delivered = std::max(0.0, quantize_to_step(noisy, noise_.step_volume_ml));

    double& tank = receptacle == Receptacle::Near ? near_ml_ : far_ml_;
    const double bound =
        direction == TransferDirection::Inject ? geometry_.receptacle_capacity_ml - tank : tank;
    if (delivered > bound) {
        if (log_) {
            log_->append(now_s_, "truncate",
                         std::string(to_string(receptacle)) + " " + to_string(direction) + " " +
                             to_text(delivered) + " -> " + to_text(bound));
        }
        delivered = bound;
    }
    tank += direction == TransferDirection::Inject ? delivered : -delivered;

    if (log_) {
        log_->append(now_s_, to_string(direction),
                     std::string(to_string(receptacle)) + " requested " + to_text(volume_ml) +
                         " delivered " + to_text(delivered));
    }
    return delivered;
}

double SimulatedActuator::inject(Receptacle receptacle, double volume_ml) {
    return actuate(TransferDirection::Inject, receptacle, volume_ml);
}

double SimulatedActuator::withdraw(Receptacle receptacle, double volume_ml) {
    return actuate(TransferDirection::Withdraw, receptacle, volume_ml);
}

void SimulatedActuator::step(double dt_s) {
    if (!(dt_s > 0.0)) {
        throw std::invalid_argument("step: dt must be > 0");
    }
    now_s_ += dt_s;
}

double SimulatedActuator::true_volume_ml(Receptacle receptacle) const {
    return receptacle == Receptacle::Near ? near_ml_ : far_ml_;
}

double SimulatedActuator::true_total_volume_ml() const {
    return near_ml_ + far_ml_;
}

double SimulatedActuator::true_fluid_mass_g(const Liquid& liquid) const {
    return mass_for_volume(true_total_volume_ml(), liquid);
}

double SimulatedActuator::measured_fluid_mass_g(const Liquid& liquid) const {
    const double loaded = read_scale(geometry_.device_empty_mass_g + true_fluid_mass_g(liquid));
    const double empty = read_scale(geometry_.device_empty_mass_g);
    return loaded - empty;
}

} // namespace fluidhaptics

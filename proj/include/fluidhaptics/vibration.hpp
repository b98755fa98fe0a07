#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fluidhaptics {

// One damped-sine burst:
//   y(t) = A * exp(-lambda t) * (cos(w t + phi) + sin(w t + phi))
struct VibrationBurst {
    double amplitude = 1.0;            // drive units
    double decay_per_s = 8.0;          // lambda
    double angular_frequency_rad_s = 2.0 * 3.14159265358979323846 * 50.0;  // omega
    double phase_rad = 0.0;            // phi
    double duration_s = 0.5;

    void validate() const;
    bool operator==(const VibrationBurst&) const = default;
};

struct AccelSample {
    double time_s = 0.0;
    double accel_ms2 = 0.0;
};

// Evaluates the damped sine at t. t outside [0, duration] -> std::domain_error.
double waveform_sample(const VibrationBurst& burst, double t_s);

// Impact force to drive amplitude: gain * (mass in kg) * accel, clamped to
// max_drive. Mass arrives in grams, matching the rest of the engine.
double amplitude_from_impact(double mass_g, double peak_accel_ms2,
                             double gain_per_newton, double max_drive);

// Uniform discretization of a burst: ceil(duration*rate)+1 samples; the last
// timestamp is clamped to the burst end so every sample stays in-domain.
std::vector<double> render_burst(const VibrationBurst& burst, double sample_rate_hz);

// Streaming threshold detector. A trigger fires at the first sample of each
// upward crossing (previous magnitude <= threshold, current > threshold);
// further crossings within the refractory window are suppressed and consumed.
// The value before the first sample counts as below threshold. State lives in
// this value, so independent streams are independent detectors.
class TriggerDetector {
public:
    TriggerDetector(double threshold_ms2, double refractory_s);

    // Returns the trigger time when this sample fires. Samples must arrive in
    // nondecreasing time order.
    std::optional<double> push(const AccelSample& sample);

    double threshold_ms2() const { return threshold_; }
    double refractory_s() const { return refractory_; }

private:
    double threshold_;
    double refractory_;
    bool prev_below_or_equal_ = true;
    bool has_prev_ = false;
    double prev_time_s_ = 0.0;
    std::optional<double> last_trigger_s_;
};

// Batch form of the detector over a time-sorted trace. Unsorted input ->
// std::invalid_argument.
std::vector<double> detect_triggers(std::span<const AccelSample> trace,
                                    double threshold_ms2, double refractory_s);

// Same scan, reporting sample indices instead of times.
std::vector<std::size_t> detect_trigger_indices(std::span<const AccelSample> trace,
                                                double threshold_ms2, double refractory_s);

// Reads a `time_s,accel_ms2` CSV trace (header required).
std::vector<AccelSample> load_accel_trace(const std::string& path);

} // namespace fluidhaptics

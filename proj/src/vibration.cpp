#include "fluidhaptics/vibration.hpp"

#include "fluidhaptics/errors.hpp"
#include "fluidhaptics/numeric_text.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fluidhaptics {

void VibrationBurst::validate() const {
    if (!(decay_per_s >= 0.0)) {
        throw std::invalid_argument("burst: decay must be >= 0");
    }
    if (!(angular_frequency_rad_s > 0.0)) {
        throw std::invalid_argument("burst: angular frequency must be > 0");
    }
    if (!(duration_s > 0.0)) {
        throw std::invalid_argument("burst: duration must be > 0");
    }
}

double waveform_sample(const VibrationBurst& burst, double t_s) {
    burst.validate();
    if (t_s < 0.0 || t_s > burst.duration_s) {
        throw std::domain_error("waveform_sample: t=" + to_text(t_s) +
                                " outside [0, " + to_text(burst.duration_s) + "]");
    }
    const double angle = burst.angular_frequency_rad_s * t_s + burst.phase_rad;
    return burst.amplitude * std::exp(-burst.decay_per_s * t_s) *
           (std::cos(angle) + std::sin(angle));
}

double amplitude_from_impact(double mass_g, double peak_accel_ms2,
                             double gain_per_newton, double max_drive) {
    if (mass_g < 0.0) {
        throw std::domain_error("amplitude_from_impact: mass must be >= 0");
    }
    if (peak_accel_ms2 < 0.0) {
        throw std::domain_error("amplitude_from_impact: acceleration must be >= 0");
    }
    const double force_n = (mass_g / 1000.0) * peak_accel_ms2;
    return std::min(gain_per_newton * force_n, max_drive);
}

std::vector<double> render_burst(const VibrationBurst& burst, double sample_rate_hz) {
    burst.validate();
    if (!(sample_rate_hz > 0.0)) {
        throw std::domain_error("render_burst: sample rate must be > 0");
    }
    const auto count =
        static_cast<std::size_t>(std::ceil(burst.duration_s * sample_rate_hz)) + 1;
    std::vector<double> buffer;
    buffer.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = std::min(static_cast<double>(i) / sample_rate_hz, burst.duration_s);
        buffer.push_back(waveform_sample(burst, t));
    }
    return buffer;
}

TriggerDetector::TriggerDetector(double threshold_ms2, double refractory_s)
    : threshold_(threshold_ms2), refractory_(refractory_s) {
    if (refractory_s < 0.0) {
        throw std::invalid_argument("trigger detector: refractory must be >= 0");
    }
}

std::optional<double> TriggerDetector::push(const AccelSample& sample) {
    if (has_prev_ && sample.time_s < prev_time_s_) {
        throw std::invalid_argument("trigger detector: sample at t=" +
                                    to_text(sample.time_s) + " arrived after t=" +
                                    to_text(prev_time_s_));
    }
    has_prev_ = true;
    prev_time_s_ = sample.time_s;

    const bool crossing = prev_below_or_equal_ && sample.accel_ms2 > threshold_;
    prev_below_or_equal_ = sample.accel_ms2 <= threshold_;

    if (!crossing) {
        return std::nullopt;
    }
    if (last_trigger_s_ && sample.time_s - *last_trigger_s_ < refractory_) {
        return std::nullopt;
    }
    last_trigger_s_ = sample.time_s;
    return sample.time_s;
}

std::vector<double> detect_triggers(std::span<const AccelSample> trace,
                                    double threshold_ms2, double refractory_s) {
    TriggerDetector detector(threshold_ms2, refractory_s);
    std::vector<double> times;
    for (const auto& sample : trace) {
        if (auto t = detector.push(sample)) {
            times.push_back(*t);
        }
    }
    return times;
}

std::vector<std::size_t> detect_trigger_indices(std::span<const AccelSample> trace,
                                                double threshold_ms2, double refractory_s) {
    TriggerDetector detector(threshold_ms2, refractory_s);
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (detector.push(trace[i])) {
            indices.push_back(i);
        }
    }
    return indices;
}

std::vector<AccelSample> load_accel_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open acceleration trace: " + path);
    }
    std::string line;
    if (!std::getline(in, line) || line != "time_s,accel_ms2") {
        throw ParseError(path + ": expected header 'time_s,accel_ms2'");
    }
    std::vector<AccelSample> trace;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected 'time_s,accel_ms2'");
        }
        AccelSample sample;
        try {
            sample.time_s = parse_double(std::string_view(line).substr(0, comma));
            sample.accel_ms2 = parse_double(std::string_view(line).substr(comma + 1));
        } catch (const ParseError& e) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        if (!trace.empty() && sample.time_s < trace.back().time_s) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": time goes backwards");
        }
        trace.push_back(sample);
    }
    return trace;
}

} // namespace fluidhaptics

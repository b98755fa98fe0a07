#pragma once

#include "fluidhaptics/config.hpp"
#include "fluidhaptics/event_log.hpp"
#include "fluidhaptics/scenario.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fluidhaptics {

// Stable per-stream seed derivation (splitmix64 over the master seed), so
// independent runs and repetitions get independent, reproducible RNG streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

struct PickupReport {
    std::string object_id;
    double time_s = 0.0;
    double target_mass_g = 0.0;
    double achieved_mass_g = 0.0;
    double fill_latency_s = 0.0;
    int trigger_count = 0;
    bool completed = false;
};

struct RunReport {
    std::vector<PickupReport> pickups;
    int total_triggers = 0;
    bool timed_out = false;
};

struct ReplayResult {
    RunReport report;
    EventLog log;
};

// Deterministic full-stack replay: scenario events become host sends, which
// travel through the session and a lossy in-process channel into the device
// controller driving the simulated actuator, all on a virtual clock.
ReplayResult replay(const Scenario& scenario, const Catalog& catalog, const Config& config,
                    std::uint64_t seed);

struct StabilityRep {
    double target_g = 0.0;
    int rep = 0;
    std::uint64_t seed = 0;
    double measured_g = 0.0;
    double deviation_g = 0.0;
};

struct StabilityRow {
    double target_g = 0.0;
    int reps = 0;
    double mean_abs_dev_g = 0.0;
    double mean_rel_dev = 0.0;  // fraction, not percent
    double max_abs_dev_g = 0.0;
};

struct StabilityResult {
    std::vector<StabilityRep> raw;
    std::vector<StabilityRow> rows;
    StabilityRow overall;
};

// Open-loop stability benchmark: for each target, command the fill on a fresh
// device (centered fill), read the simulated scale, subtract the empty-device
// mass, and record the deviation. Repetitions use seeds derived from `seed`.
StabilityResult run_stability(const std::vector<double>& targets_g, int reps,
                              const Config& config, std::uint64_t seed);

// Recomputes the aggregate rows from raw repetitions; replay of the CSV
// content, used to cross-check the published statistics.
StabilityResult aggregate_stability(std::vector<StabilityRep> raw);

void write_report_csv(const RunReport& report, std::ostream& out);
void write_stability_csv(const StabilityResult& result, std::ostream& out);
void write_stability_raw_csv(const StabilityResult& result, std::ostream& out);
std::vector<StabilityRep> read_stability_raw_csv(std::istream& in);
void write_stability_svg(const StabilityResult& result, std::ostream& out);

} // namespace fluidhaptics

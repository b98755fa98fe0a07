#include "fluidhaptics/harness.hpp"

#include "fluidhaptics/device_controller.hpp"
#include "fluidhaptics/device_sim.hpp"
#include "fluidhaptics/errors.hpp"
#include "fluidhaptics/numeric_text.hpp"
#include "fluidhaptics/protocol.hpp"
#include "fluidhaptics/vibration.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace fluidhaptics {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + (stream + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

namespace {

// In-process unidirectional wire with i.i.d. drops. FIFO for what survives.
class LossyChannel {
public:
    LossyChannel(double drop_probability, std::uint64_t seed)
        : drop_probability_(drop_probability), rng_(seed) {}

    bool push(std::string line) {
        if (drop_probability_ > 0.0) {
            std::uniform_real_distribution<double> u(0.0, 1.0);
            if (u(rng_) < drop_probability_) {
                return false;
            }
        }
        queue_.push_back(std::move(line));
        return true;
    }

    std::vector<std::string> drain() {
        std::vector<std::string> lines(queue_.begin(), queue_.end());
        queue_.clear();
        return lines;
    }

    bool empty() const { return queue_.empty(); }

private:
    double drop_probability_;
    std::mt19937_64 rng_;
    std::deque<std::string> queue_;
};

std::string strip_newline(std::string line) {
    if (!line.empty() && line.back() == '\n') {
        line.pop_back();
    }
    return line;
}

// One host-side transmission, fully scheduled before the run starts: the host
// script depends only on the scenario, never on device feedback.
struct HostSend {
    double time_s = 0.0;
    Payload payload;
    int pickup_index = -1;  // row started by this send, when it is a pickup
};

struct HostScript {
    std::vector<HostSend> sends;
    std::vector<PickupReport> pickups;
    int total_triggers = 0;
};

// Expands pickups, releases, sprays and acceleration traces into timed sends.
// Spray drain and trigger amplitudes use the nominal held mass, which is
// deterministic from the scenario alone.
HostScript build_script(const Scenario& scenario, const Catalog& catalog, const Config& config) {
    HostScript script;
    const CatalogEntry* held = nullptr;
    double held_mass_g = 0.0;
    int current_pickup = -1;

    for (const auto& event : scenario.events) {
        const double t = event.time_s;
        std::visit(
            [&](const auto& kind) {
                using T = std::decay_t<decltype(kind)>;
                if constexpr (std::is_same_v<T, PickupEvent>) {
                    held = &catalog.at(kind.object_id);
                    held_mass_g = held->mass_g;
                    PickupReport row;
                    row.object_id = held->object_id;
                    row.time_s = t;
                    row.target_mass_g = held_mass_g;
                    script.pickups.push_back(row);
                    current_pickup = static_cast<int>(script.pickups.size()) - 1;
                    script.sends.push_back(HostSend{
                        t, SetTarget{held_mass_g, held->com_offset_mm}, current_pickup});
                } else if constexpr (std::is_same_v<T, ReleaseEvent>) {
                    held = nullptr;
                    held_mass_g = 0.0;
                    current_pickup = -1;
                    script.sends.push_back(HostSend{t, Release{}, -1});
                } else if constexpr (std::is_same_v<T, SprayEvent>) {
                    if (held == nullptr || held->drain_rate_g_s <= 0.0) {
                        return;  // nothing to drain
                    }
                    const double period = config.spray_update_period_s;
                    for (double offset = period; offset <= kind.duration_s + 1e-12;
                         offset += period) {
                        const double mass =
                            std::max(0.0, held_mass_g - held->drain_rate_g_s * offset);
                        script.sends.push_back(
                            HostSend{t + offset, SetTarget{mass, held->com_offset_mm}, -1});
                        if (mass == 0.0) {
                            break;
                        }
                    }
                    held_mass_g = std::max(
                        0.0, held_mass_g - held->drain_rate_g_s * kind.duration_s);
                } else if constexpr (std::is_same_v<T, AccelTraceEvent>) {
                    const auto trace = load_accel_trace(kind.path);
                    const auto triggers =
                        detect_triggers(trace, config.accel_threshold_ms2, config.refractory_s());
                    for (const double trigger_s : triggers) {
                        // Impact strength: the acceleration peak inside the
                        // refractory window that this trigger opens.
                        double peak = 0.0;
                        for (const auto& sample : trace) {
                            if (sample.time_s >= trigger_s &&
                                sample.time_s < trigger_s + config.refractory_s()) {
                                peak = std::max(peak, std::abs(sample.accel_ms2));
                            }
                        }
                        const double amplitude = amplitude_from_impact(
                            held_mass_g, peak, config.gain_per_newton, config.max_drive);
                        script.sends.push_back(HostSend{
                            t + trigger_s,
                            Vibrate{amplitude, config.burst_decay_per_s,
                                    config.burst_angular_frequency_rad_s, config.burst_phase_rad,
                                    static_cast<std::uint32_t>(
                                        std::llround(config.burst_duration_s * 1000.0))},
                            -1});
                        ++script.total_triggers;
                        if (current_pickup >= 0) {
                            ++script.pickups[static_cast<std::size_t>(current_pickup)]
                                  .trigger_count;
                        }
                    }
                }
            },
            event.kind);
    }

    std::stable_sort(script.sends.begin(), script.sends.end(),
                     [](const HostSend& a, const HostSend& b) { return a.time_s < b.time_s; });
    return script;
}

} // namespace

ReplayResult replay(const Scenario& scenario, const Catalog& catalog, const Config& config,
                    std::uint64_t seed) {
    config.validate();
    validate_scenario(scenario, catalog);

    ReplayResult result;
    auto script = build_script(scenario, catalog, config);
    result.report.pickups = std::move(script.pickups);
    result.report.total_triggers = script.total_triggers;

    EventLog& log = result.log;
    NoiseModel noise = config.noise;
    noise.seed = derive_seed(seed, 0);
    SimulatedActuator sim(config.geometry, noise, &log);
    DeviceController device(
        ControllerConfig{config.liquid, config.geometry, config.telemetry_period_s}, sim);
    Session session(config.retransmit_interval_s);
    LossyChannel to_device(config.drop_probability, derive_seed(seed, 1));
    LossyChannel to_host(config.drop_probability, derive_seed(seed, 2));

    double horizon_s = 0.0;
    for (const auto& send : script.sends) {
        horizon_s = std::max(horizon_s, send.time_s);
    }
    // Worst case transfer plus generous protocol slack; a lossy channel can
    // stretch a run but not stall it forever below drop_probability 1.
    const double guard_s =
        horizon_s + 4.0 * fill_duration_s(2.0 * config.geometry.receptacle_capacity_ml,
                                          config.geometry) +
        30.0;

    std::size_t next_send = 0;
    int pending_pickup = -1;
    double pending_send_time_s = 0.0;
    double now_s = 0.0;

    const auto queue_device_reply = [&](const Message& reply) {
        const auto wire = encode(reply);
        log.append(now_s, "tx_device", strip_newline(wire));
        if (!to_host.push(wire)) {
            log.append(now_s, "drop", "device->host " + strip_newline(wire));
        }
    };

    while (true) {
        while (next_send < script.sends.size() &&
               script.sends[next_send].time_s <= now_s + 1e-12) {
            const auto& send = script.sends[next_send];
            const auto [seq, wire] = session.send(send.payload, now_s);
            log.append(now_s, "tx_host", strip_newline(wire));
            if (!to_device.push(wire)) {
                log.append(now_s, "drop", "host->device " + strip_newline(wire));
            }
            if (send.pickup_index >= 0) {
                pending_pickup = send.pickup_index;
                pending_send_time_s = script.sends[next_send].time_s;
            }
            ++next_send;
        }

        for (auto& wire : session.tick(now_s)) {
            log.append(now_s, "retx_host", strip_newline(wire));
            if (!to_device.push(wire)) {
                log.append(now_s, "drop", "host->device " + strip_newline(wire));
            }
        }

        for (const auto& line : to_device.drain()) {
            log.append(now_s, "rx_device", strip_newline(line));
            const auto message = decode(line);
            std::optional<WeightTarget> resolved;
            if (const auto* pickup = std::get_if<Pickup>(&message.payload)) {
                if (const auto* entry = catalog.find(pickup->object_id)) {
                    resolved = WeightTarget{entry->mass_g, entry->com_offset_mm};
                }
            }
            for (const auto& reply : device.handle_message(message, resolved)) {
                queue_device_reply(reply);
            }
        }

        for (const auto& reply : device.tick(config.clock_quantum_s)) {
            queue_device_reply(reply);
        }
        if (device.state().burst) {
            log.append(now_s, "drive", to_text(device.current_drive()));
        }

        for (const auto& line : to_host.drain()) {
            log.append(now_s, "rx_host", strip_newline(line));
            const auto message = decode(line);
            if (const auto* ack = std::get_if<Ack>(&message.payload)) {
                session.on_ack(ack->seq);
            }
        }

        now_s += config.clock_quantum_s;

        if (pending_pickup >= 0) {
            auto& row = result.report.pickups[static_cast<std::size_t>(pending_pickup)];
            const bool done_zero =
                row.target_mass_g == 0.0 && device.state().mode == DeviceMode::Idle;
            if (device.state().mode == DeviceMode::Holding || done_zero) {
                row.achieved_mass_g = sim.measured_fluid_mass_g(config.liquid);
                row.fill_latency_s = now_s - pending_send_time_s;
                row.completed = true;
                log.append(now_s, "pickup_settled",
                           row.object_id + " achieved " + to_text(row.achieved_mass_g) +
                               " g after " + to_text(row.fill_latency_s) + " s");
                pending_pickup = -1;
            }
        }

        const bool idle = next_send == script.sends.size() && session.pending() == 0 &&
                          to_device.empty() && to_host.empty() && device.state().plan.empty() &&
                          !device.state().burst;
        if (idle) {
            break;
        }
        if (now_s > guard_s) {
            result.report.timed_out = true;
            log.append(now_s, "timeout", "guard expired before quiescence");
            break;
        }
    }

    return result;
}

StabilityResult run_stability(const std::vector<double>& targets_g, int reps,
                              const Config& config, std::uint64_t seed) {
    if (reps < 1) {
        throw std::invalid_argument("stability: reps must be >= 1");
    }
    config.validate();

    const double com_mid =
        0.5 * (config.geometry.receptacle_near_pos_mm + config.geometry.receptacle_far_pos_mm);
    std::vector<StabilityRep> raw;
    raw.reserve(targets_g.size() * static_cast<std::size_t>(reps));

    std::uint64_t stream = 0;
    for (const double target : targets_g) {
        if (target < 0.0) {
            throw std::invalid_argument("stability: targets must be >= 0");
        }
        for (int rep = 0; rep < reps; ++rep, ++stream) {
            NoiseModel noise = config.noise;
            noise.seed = derive_seed(seed, stream);
            SimulatedActuator sim(config.geometry, noise, nullptr);
            DeviceController device(
                ControllerConfig{config.liquid, config.geometry, config.telemetry_period_s}, sim);

            device.handle_message(Message{1, SetTarget{target, com_mid}});
            const double guard_s =
                fill_duration_s(2.0 * config.geometry.receptacle_capacity_ml, config.geometry) +
                1.0;
            double elapsed = 0.0;
            while (!device.state().plan.empty() && elapsed < guard_s) {
                device.tick(config.clock_quantum_s);
                elapsed += config.clock_quantum_s;
            }

            StabilityRep r;
            r.target_g = target;
            r.rep = rep;
            r.seed = noise.seed;
            r.measured_g = sim.measured_fluid_mass_g(config.liquid);
            r.deviation_g = r.measured_g - target;
            raw.push_back(r);
        }
    }
    return aggregate_stability(std::move(raw));
}

StabilityResult aggregate_stability(std::vector<StabilityRep> raw) {
    StabilityResult result;
    result.raw = std::move(raw);

    std::vector<double> order;
    for (const auto& r : result.raw) {
        if (std::find(order.begin(), order.end(), r.target_g) == order.end()) {
            order.push_back(r.target_g);
        }
    }

    const auto fold = [](StabilityRow& row, const StabilityRep& r) {
        row.reps += 1;
        row.mean_abs_dev_g += std::abs(r.deviation_g);
        if (r.target_g > 0.0) {
            row.mean_rel_dev += std::abs(r.deviation_g) / r.target_g;
        }
        row.max_abs_dev_g = std::max(row.max_abs_dev_g, std::abs(r.deviation_g));
    };
    const auto finish = [](StabilityRow& row) {
        if (row.reps > 0) {
            row.mean_abs_dev_g /= row.reps;
            row.mean_rel_dev /= row.reps;
        }
    };

    for (const double target : order) {
        StabilityRow row;
        row.target_g = target;
        for (const auto& r : result.raw) {
            if (r.target_g == target) {
                fold(row, r);
            }
        }
        finish(row);
        result.rows.push_back(row);
    }
    for (const auto& r : result.raw) {
        fold(result.overall, r);
    }
    finish(result.overall);
    return result;
}

void write_report_csv(const RunReport& report, std::ostream& out) {
    out << "object_id,t_pickup_s,target_mass_g,achieved_mass_g,fill_latency_s,trigger_count\n";
    for (const auto& row : report.pickups) {
        out << row.object_id << ',' << to_text(row.time_s) << ',' << to_text(row.target_mass_g)
            << ',' << (row.completed ? to_text(row.achieved_mass_g) : std::string("nan")) << ','
            << (row.completed ? to_text(row.fill_latency_s) : std::string("nan")) << ','
            << row.trigger_count << '\n';
    }
}

void write_stability_csv(const StabilityResult& result, std::ostream& out) {
    out << "target_g,reps,mean_abs_dev_g,mean_rel_dev_pct,max_abs_dev_g\n";
    const auto row_out = [&out](const std::string& label, const StabilityRow& row) {
        out << label << ',' << row.reps << ',' << to_text(row.mean_abs_dev_g) << ','
            << to_text(row.mean_rel_dev * 100.0) << ',' << to_text(row.max_abs_dev_g) << '\n';
    };
    for (const auto& row : result.rows) {
        row_out(to_text(row.target_g), row);
    }
    row_out("overall", result.overall);
}

void write_stability_raw_csv(const StabilityResult& result, std::ostream& out) {
    out << "target_g,rep,seed,measured_g,deviation_g\n";
    for (const auto& r : result.raw) {
        out << to_text(r.target_g) << ',' << r.rep << ',' << r.seed << ',' << to_text(r.measured_g)
            << ',' << to_text(r.deviation_g) << '\n';
    }
}

std::vector<StabilityRep> read_stability_raw_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "target_g,rep,seed,measured_g,deviation_g") {
        throw ParseError("stability raw csv: bad header");
    }
    std::vector<StabilityRep> raw;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        if (fields.size() != 5) {
            throw ParseError("stability raw csv: expected 5 fields");
        }
        StabilityRep r;
        r.target_g = parse_double(fields[0]);
        r.rep = static_cast<int>(parse_u64(fields[1]));
        r.seed = parse_u64(fields[2]);
        r.measured_g = parse_double(fields[3]);
        r.deviation_g = parse_double(fields[4]);
        raw.push_back(r);
    }
    return raw;
}

void write_stability_svg(const StabilityResult& result, std::ostream& out) {
    // Minimal static bar chart: mean relative deviation per target weight.
    const int width = 640;
    const int height = 400;
    const int margin = 60;
    const double plot_w = width - 2.0 * margin;
    const double plot_h = height - 2.0 * margin;

    double max_pct = 0.0;
    for (const auto& row : result.rows) {
        max_pct = std::max(max_pct, row.mean_rel_dev * 100.0);
    }
    if (max_pct <= 0.0) {
        max_pct = 1.0;
    }
    max_pct *= 1.25;

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << "Open-loop weight stability (mean relative deviation, overall "
        << to_text(result.overall.mean_rel_dev * 100.0) << "%)</text>\n";

    const std::size_t n = result.rows.size();
    const double slot = n > 0 ? plot_w / static_cast<double>(n) : plot_w;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = result.rows[i];
        const double pct = row.mean_rel_dev * 100.0;
        const double bar_h = plot_h * pct / max_pct;
        const double x = margin + slot * static_cast<double>(i) + slot * 0.2;
        const double y = margin + plot_h - bar_h;
        out << "<rect x=\"" << to_text(x) << "\" y=\"" << to_text(y) << "\" width=\""
            << to_text(slot * 0.6) << "\" height=\"" << to_text(bar_h)
            << "\" fill=\"#4878a8\"/>\n";
        out << "<text x=\"" << to_text(x + slot * 0.3) << "\" y=\"" << height - margin + 20
            << "\" text-anchor=\"middle\" font-size=\"12\">" << to_text(row.target_g)
            << " g</text>\n";
        out << "<text x=\"" << to_text(x + slot * 0.3) << "\" y=\"" << to_text(y - 6)
            << "\" text-anchor=\"middle\" font-size=\"12\">" << to_text(pct) << "%</text>\n";
    }
    out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
        << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
        << height - margin << "\" stroke=\"black\"/>\n";
    out << "</svg>\n";
}

} // namespace fluidhaptics

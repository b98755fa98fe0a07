#include "fluidhaptics/config.hpp"
#include "fluidhaptics/errors.hpp"
#include "fluidhaptics/harness.hpp"
#include "fluidhaptics/numeric_text.hpp"
#include "fluidhaptics/scenario.hpp"
#include "fluidhaptics/vibration.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace fluidhaptics;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

Config load_config(const std::string& config_path, const std::string& liquid_name,
                   std::uint64_t seed) {
    Config config = config_path.empty() ? Config{} : Config::load_file(config_path);
    if (!liquid_name.empty()) {
        config.liquid = liquid_by_name(liquid_name);
    }
    config.noise.seed = seed;
    config.validate();
    return config;
}

int run_replay(const std::string& scenario_path, const std::string& catalog_path,
               const std::string& config_path, const std::string& liquid_name, std::uint64_t seed,
               const std::string& out_dir) {
    const auto scenario = load_scenario(scenario_path);
    const auto catalog = catalog_path.empty() ? Catalog::defaults() : Catalog::load_file(catalog_path);
    const auto config = load_config(config_path, liquid_name, seed);
    validate_scenario(scenario, catalog);

    const auto result = replay(scenario, catalog, config, seed);

    fs::create_directories(out_dir);
    {
        auto out = open_out(fs::path(out_dir) / "report.csv");
        write_report_csv(result.report, out);
    }
    result.log.write_csv_file((fs::path(out_dir) / "events.log").string());

    for (const auto& row : result.report.pickups) {
        std::cout << row.object_id << ": target " << to_text(row.target_mass_g) << " g, achieved "
                  << (row.completed ? to_text(row.achieved_mass_g) : std::string("n/a"))
                  << " g, latency "
                  << (row.completed ? to_text(row.fill_latency_s) : std::string("n/a"))
                  << " s, triggers " << row.trigger_count << "\n";
    }
    std::cout << "total vibration triggers: " << result.report.total_triggers << "\n";
    std::cout << "wrote " << (fs::path(out_dir) / "report.csv").string() << " and "
              << (fs::path(out_dir) / "events.log").string() << "\n";
    if (result.report.timed_out) {
        std::cerr << "error: replay did not reach quiescence before the guard time\n";
        return kExitRuntime;
    }
    return kExitOk;
}

int run_stability_cmd(std::vector<double> targets, int reps, const std::string& config_path,
                      const std::string& liquid_name, std::uint64_t seed,
                      const std::string& out_dir, bool svg) {
    const auto config = load_config(config_path, liquid_name, seed);
    const auto result = run_stability(targets, reps, config, seed);

    fs::create_directories(out_dir);
    {
        auto out = open_out(fs::path(out_dir) / "stability.csv");
        write_stability_csv(result, out);
    }
    {
        auto out = open_out(fs::path(out_dir) / "stability_reps.csv");
        write_stability_raw_csv(result, out);
    }
    if (svg) {
        auto out = open_out(fs::path(out_dir) / "stability.svg");
        write_stability_svg(result, out);
    }

    for (const auto& row : result.rows) {
        std::cout << "target " << to_text(row.target_g) << " g: mean |dev| "
                  << to_text(row.mean_abs_dev_g) << " g, mean rel "
                  << to_text(row.mean_rel_dev * 100.0) << "%, max |dev| "
                  << to_text(row.max_abs_dev_g) << " g\n";
    }
    std::cout << "overall mean relative deviation: " << to_text(result.overall.mean_rel_dev * 100.0)
              << "%\n";
    std::cout << "wrote " << (fs::path(out_dir) / "stability.csv").string() << "\n";
    return kExitOk;
}

int run_waveform(double amplitude, double decay, double omega, double phi, double duration,
                 double rate, const std::string& out_path) {
    VibrationBurst burst;
    burst.amplitude = amplitude;
    burst.decay_per_s = decay;
    burst.angular_frequency_rad_s = omega;
    burst.phase_rad = phi;
    burst.duration_s = duration;
    const auto samples = render_burst(burst, rate);

    auto out = open_out(out_path);
    out << "time_s,drive\n";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double t = std::min(static_cast<double>(i) / rate, burst.duration_s);
        out << to_text(t) << ',' << to_text(samples[i]) << '\n';
    }
    std::cout << "wrote " << samples.size() << " samples to " << out_path << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fluid-driven weight/CoG haptic engine: replay scenarios against the simulated "
                 "device, benchmark open-loop stability, dump vibration waveforms"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string catalog_path;
    std::string config_path;
    std::string liquid_name;
    std::string out_dir = ".";
    std::uint64_t seed = 1;

    auto* replay_cmd = app.add_subcommand("replay", "Replay a scenario trace deterministically");
    replay_cmd->add_option("scenario", scenario_path, "Scenario file")->required();
    replay_cmd->add_option("--catalog", catalog_path, "Object catalog file (defaults built in)");
    replay_cmd->add_option("--config", config_path, "Engine config file");
    replay_cmd->add_option("--liquid", liquid_name, "Working liquid: water or galinstan");
    replay_cmd->add_option("--seed", seed, "Master RNG seed");
    replay_cmd->add_option("--out", out_dir, "Output directory");

    std::vector<double> targets = {10.0, 20.0, 30.0, 40.0, 50.0};
    int reps = 60;
    bool svg = false;
    auto* stability_cmd =
        app.add_subcommand("stability", "Run the open-loop weight stability benchmark");
    stability_cmd->add_option("--targets", targets, "Target weights in grams")->delimiter(',');
    stability_cmd->add_option("--reps", reps, "Repetitions per target");
    stability_cmd->add_option("--config", config_path, "Engine config file");
    stability_cmd->add_option("--liquid", liquid_name, "Working liquid: water or galinstan");
    stability_cmd->add_option("--seed", seed, "Master RNG seed");
    stability_cmd->add_option("--out", out_dir, "Output directory");
    stability_cmd->add_flag("--svg", svg, "Also emit stability.svg");

    double amplitude = 1.0;
    double decay = 8.0;
    double omega = 2.0 * 3.14159265358979323846 * 50.0;
    double phi = 0.0;
    double duration = 0.5;
    double rate = 1000.0;
    std::string waveform_out = "waveform.csv";
    auto* waveform_cmd = app.add_subcommand("waveform", "Dump one damped-sine burst as CSV");
    waveform_cmd->add_option("--A", amplitude, "Amplitude (drive units)");
    waveform_cmd->add_option("--lambda", decay, "Decay constant (1/s)");
    waveform_cmd->add_option("--omega", omega, "Angular frequency (rad/s)");
    waveform_cmd->add_option("--phi", phi, "Phase (rad)");
    waveform_cmd->add_option("--duration", duration, "Burst duration (s)");
    waveform_cmd->add_option("--rate", rate, "Sample rate (Hz)");
    waveform_cmd->add_option("--out", waveform_out, "Output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (replay_cmd->parsed()) {
            return run_replay(scenario_path, catalog_path, config_path, liquid_name, seed, out_dir);
        }
        if (stability_cmd->parsed()) {
            return run_stability_cmd(targets, reps, config_path, liquid_name, seed, out_dir, svg);
        }
        if (waveform_cmd->parsed()) {
            return run_waveform(amplitude, decay, omega, phi, duration, rate, waveform_out);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "fault: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

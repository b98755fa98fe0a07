#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fluidhaptics/config.hpp"
#include "fluidhaptics/device_sim.hpp"
#include "fluidhaptics/errors.hpp"
#include "fluidhaptics/fluid_model.hpp"
#include "fluidhaptics/harness.hpp"
#include "fluidhaptics/numeric_text.hpp"
#include "fluidhaptics/protocol.hpp"
#include "fluidhaptics/scenario.hpp"
#include "fluidhaptics/vibration.hpp"
#include "fluidhaptics/weight_renderer.hpp"

#include <sstream>

namespace py = pybind11;
using namespace fluidhaptics;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fluid-driven weight/CoG haptic engine core";

    py::register_exception<InfeasibleTargetError>(m, "InfeasibleTargetError", PyExc_ValueError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);
    py::register_exception<EnvelopeError>(m, "EnvelopeError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ProtocolParseError", PyExc_ValueError);
    py::register_exception<EncodeError>(m, "ProtocolEncodeError", PyExc_ValueError);

    // Domain types
    py::class_<Liquid>(m, "Liquid")
        .def(py::init<std::string, double, double>(), py::arg("name"),
             py::arg("density_g_per_cm3"), py::arg("viscosity_pa_s"))
        .def_readwrite("name", &Liquid::name)
        .def_readwrite("density_g_per_cm3", &Liquid::density_g_per_cm3)
        .def_readwrite("viscosity_pa_s", &Liquid::viscosity_pa_s)
        .def_static("water", &Liquid::water)
        .def_static("galinstan", &Liquid::galinstan)
        .def("__repr__", [](const Liquid& l) {
            return "Liquid(" + l.name + ", rho=" + to_text(l.density_g_per_cm3) + ")";
        });

    py::class_<ActuatorGeometry>(m, "ActuatorGeometry")
        .def(py::init<>())
        .def_readwrite("plunger_radius_mm", &ActuatorGeometry::plunger_radius_mm)
        .def_readwrite("pushrod_speed_mm_s", &ActuatorGeometry::pushrod_speed_mm_s)
        .def_readwrite("receptacle_near_pos_mm", &ActuatorGeometry::receptacle_near_pos_mm)
        .def_readwrite("receptacle_far_pos_mm", &ActuatorGeometry::receptacle_far_pos_mm)
        .def_readwrite("receptacle_capacity_ml", &ActuatorGeometry::receptacle_capacity_ml)
        .def_readwrite("device_empty_mass_g", &ActuatorGeometry::device_empty_mass_g)
        .def_readwrite("max_total_mass_g", &ActuatorGeometry::max_total_mass_g);

    py::class_<WeightTarget>(m, "WeightTarget")
        .def(py::init<double, double>(), py::arg("mass_g"), py::arg("com_offset_mm"))
        .def_readwrite("mass_g", &WeightTarget::mass_g)
        .def_readwrite("com_offset_mm", &WeightTarget::com_offset_mm);

    py::class_<ReceptacleFill>(m, "ReceptacleFill")
        .def(py::init<double, double>(), py::arg("near_ml") = 0.0, py::arg("far_ml") = 0.0)
        .def_readwrite("near_ml", &ReceptacleFill::near_ml)
        .def_readwrite("far_ml", &ReceptacleFill::far_ml)
        .def("total_ml", &ReceptacleFill::total_ml)
        .def("__repr__", [](const ReceptacleFill& f) {
            return "ReceptacleFill(near=" + to_text(f.near_ml) + ", far=" + to_text(f.far_ml) + ")";
        });

    py::enum_<Receptacle>(m, "Receptacle")
        .value("Near", Receptacle::Near)
        .value("Far", Receptacle::Far);
    py::enum_<TransferDirection>(m, "TransferDirection")
        .value("Inject", TransferDirection::Inject)
        .value("Withdraw", TransferDirection::Withdraw);

    py::class_<TransferCommand>(m, "TransferCommand")
        .def_readonly("receptacle", &TransferCommand::receptacle)
        .def_readonly("direction", &TransferCommand::direction)
        .def_readonly("volume_ml", &TransferCommand::volume_ml)
        .def_readonly("duration_s", &TransferCommand::duration_s)
        .def_readonly("concurrent", &TransferCommand::concurrent);

    py::class_<TransferPlan>(m, "TransferPlan")
        .def_readonly("commands", &TransferPlan::commands)
        .def("duration_s", &TransferPlan::duration_s)
        .def("total_volume_ml", &TransferPlan::total_volume_ml);

    py::class_<VibrationBurst>(m, "VibrationBurst")
        .def(py::init<>())
        .def_readwrite("amplitude", &VibrationBurst::amplitude)
        .def_readwrite("decay_per_s", &VibrationBurst::decay_per_s)
        .def_readwrite("angular_frequency_rad_s", &VibrationBurst::angular_frequency_rad_s)
        .def_readwrite("phase_rad", &VibrationBurst::phase_rad)
        .def_readwrite("duration_s", &VibrationBurst::duration_s);

    // Fluid model
    m.def("volume_for_mass", &volume_for_mass, py::arg("mass_g"), py::arg("liquid"),
          "Volume in cm^3 occupied by a fluid mass: V = m / rho.");
    m.def("mass_for_volume", &mass_for_volume, py::arg("volume_cm3"), py::arg("liquid"),
          "Mass in grams of a fluid volume: m = V * rho.");
    m.def("plunger_travel_mm", &plunger_travel_mm, py::arg("volume_cm3"), py::arg("geometry"),
          "Pushrod travel displacing the given volume.");
    m.def("fill_duration_s", &fill_duration_s, py::arg("volume_cm3"), py::arg("geometry"),
          "Transfer time for the given volume at the configured pushrod speed.");

    // Weight renderer
    m.def("split_for_com", &split_for_com, py::arg("target"), py::arg("liquid"),
          py::arg("geometry"), "Two-point torque balance: target -> per-receptacle volumes.");
    m.def("check_envelope", &check_envelope, py::arg("fill"), py::arg("liquid"),
          py::arg("geometry"), "Validates a fill against capacity and payload envelope.");
    m.def("plan_transfer", &plan_transfer, py::arg("current"), py::arg("goal"),
          py::arg("geometry"), "Componentwise transfer plan between two fills.");

    // Vibration engine
    m.def("waveform_sample", &waveform_sample, py::arg("burst"), py::arg("t_s"),
          "Damped sine: A exp(-lambda t) (cos(w t + phi) + sin(w t + phi)).");
    m.def("amplitude_from_impact", &amplitude_from_impact, py::arg("mass_g"),
          py::arg("peak_accel_ms2"), py::arg("gain_per_newton"), py::arg("max_drive"),
          "Impact force (F = m a) mapped to clamped drive amplitude.");
    m.def("render_burst", &render_burst, py::arg("burst"), py::arg("sample_rate_hz"),
          "Uniformly sampled burst, ceil(duration*rate)+1 samples.");
    m.def(
        "detect_triggers",
        [](const std::vector<std::pair<double, double>>& samples, double threshold_ms2,
           double refractory_s) {
            std::vector<AccelSample> trace;
            trace.reserve(samples.size());
            for (const auto& [t, a] : samples) {
                trace.push_back(AccelSample{t, a});
            }
            return detect_triggers(trace, threshold_ms2, refractory_s);
        },
        py::arg("samples"), py::arg("threshold_ms2"), py::arg("refractory_s"),
        "Trigger times for upward threshold crossings of a (time, accel) trace.");

    // Protocol
    py::class_<Pickup>(m, "Pickup")
        .def(py::init<std::string>(), py::arg("object_id"))
        .def_readwrite("object_id", &Pickup::object_id);
    py::class_<Release>(m, "Release").def(py::init<>());
    py::class_<SetTarget>(m, "SetTarget")
        .def(py::init<double, double>(), py::arg("mass_g"), py::arg("com_mm"))
        .def_readwrite("mass_g", &SetTarget::mass_g)
        .def_readwrite("com_mm", &SetTarget::com_mm);
    py::class_<Vibrate>(m, "Vibrate")
        .def(py::init<double, double, double, double, std::uint32_t>(), py::arg("amplitude"),
             py::arg("decay"), py::arg("angular_frequency"), py::arg("phase"),
             py::arg("duration_ms"))
        .def_readwrite("amplitude", &Vibrate::amplitude)
        .def_readwrite("decay", &Vibrate::decay)
        .def_readwrite("angular_frequency", &Vibrate::angular_frequency)
        .def_readwrite("phase", &Vibrate::phase)
        .def_readwrite("duration_ms", &Vibrate::duration_ms);
    py::class_<Ack>(m, "Ack")
        .def(py::init<std::uint64_t>(), py::arg("seq"))
        .def_readwrite("seq", &Ack::seq);
    py::class_<StateReport>(m, "StateReport")
        .def(py::init<std::string, double, double>(), py::arg("mode"), py::arg("near_ml"),
             py::arg("far_ml"))
        .def_readwrite("mode", &StateReport::mode)
        .def_readwrite("near_ml", &StateReport::near_ml)
        .def_readwrite("far_ml", &StateReport::far_ml);
    py::class_<ErrReport>(m, "ErrReport")
        .def(py::init<std::string, std::string>(), py::arg("code"), py::arg("detail") = "")
        .def_readwrite("code", &ErrReport::code)
        .def_readwrite("detail", &ErrReport::detail);

    py::class_<Message>(m, "Message")
        .def(py::init([](std::optional<std::uint64_t> seq, Payload payload) {
                 return Message{seq, std::move(payload)};
             }),
             py::arg("seq"), py::arg("payload"))
        .def_readwrite("seq", &Message::seq)
        .def_readwrite("payload", &Message::payload)
        .def("__eq__", [](const Message& a, const Message& b) { return a == b; })
        .def("__repr__", [](const Message& msg) {
            auto line = encode(msg);
            if (!line.empty() && line.back() == '\n') {
                line.pop_back();
            }
            return "Message('" + line + "')";
        });

    m.def("encode", &encode, py::arg("message"), "Message -> newline-terminated wire line.");
    m.def("decode", &decode, py::arg("line"), "Wire line -> Message (strict grammar).");

    // Device simulation
    m.def("read_scale", &read_scale, py::arg("true_mass_g"),
          "0.1 g scale: nearest tenth of a gram, ties away from zero.");
    m.def("quantize_to_step", &quantize_to_step, py::arg("volume_ml"), py::arg("step_volume_ml"),
          "Nearest stepper-step multiple, ties away from zero.");

    // Harness
    py::class_<StabilityRep>(m, "StabilityRep")
        .def_readonly("target_g", &StabilityRep::target_g)
        .def_readonly("rep", &StabilityRep::rep)
        .def_readonly("seed", &StabilityRep::seed)
        .def_readonly("measured_g", &StabilityRep::measured_g)
        .def_readonly("deviation_g", &StabilityRep::deviation_g);
    py::class_<StabilityRow>(m, "StabilityRow")
        .def_readonly("target_g", &StabilityRow::target_g)
        .def_readonly("reps", &StabilityRow::reps)
        .def_readonly("mean_abs_dev_g", &StabilityRow::mean_abs_dev_g)
        .def_readonly("mean_rel_dev", &StabilityRow::mean_rel_dev)
        .def_readonly("max_abs_dev_g", &StabilityRow::max_abs_dev_g);
    py::class_<StabilityResult>(m, "StabilityResult")
        .def_readonly("raw", &StabilityResult::raw)
        .def_readonly("rows", &StabilityResult::rows)
        .def_readonly("overall", &StabilityResult::overall);

    py::class_<PickupReport>(m, "PickupReport")
        .def_readonly("object_id", &PickupReport::object_id)
        .def_readonly("time_s", &PickupReport::time_s)
        .def_readonly("target_mass_g", &PickupReport::target_mass_g)
        .def_readonly("achieved_mass_g", &PickupReport::achieved_mass_g)
        .def_readonly("fill_latency_s", &PickupReport::fill_latency_s)
        .def_readonly("trigger_count", &PickupReport::trigger_count)
        .def_readonly("completed", &PickupReport::completed);
    py::class_<RunReport>(m, "RunReport")
        .def_readonly("pickups", &RunReport::pickups)
        .def_readonly("total_triggers", &RunReport::total_triggers)
        .def_readonly("timed_out", &RunReport::timed_out);

    m.def(
        "run_stability",
        [](const std::vector<double>& targets_g, int reps, std::uint64_t seed,
           const std::string& liquid) {
            Config config;
            config.liquid = liquid_by_name(liquid);
            config.noise.seed = seed;
            return run_stability(targets_g, reps, config, seed);
        },
        py::arg("targets_g"), py::arg("reps"), py::arg("seed") = 1, py::arg("liquid") = "water",
        "Open-loop stability benchmark with the default noise model.");

    m.def(
        "replay_scenario",
        [](const std::string& scenario_path, std::optional<std::string> catalog_path,
           const std::string& liquid, std::uint64_t seed) {
            Config config;
            config.liquid = liquid_by_name(liquid);
            config.noise.seed = seed;
            const auto catalog =
                catalog_path ? Catalog::load_file(*catalog_path) : Catalog::defaults();
            const auto scenario = load_scenario(scenario_path);
            return replay(scenario, catalog, config, seed).report;
        },
        py::arg("scenario_path"), py::arg("catalog_path") = py::none(),
        py::arg("liquid") = "water", py::arg("seed") = 1,
        "Deterministic full-stack replay of a scenario file; returns the run report.");
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "vrusim/aoi.hpp"
#include "vrusim/config.hpp"
#include "vrusim/engine.hpp"
#include "vrusim/errors.hpp"
#include "vrusim/io.hpp"
#include "vrusim/radio.hpp"

namespace py = pybind11;

namespace {

// The python layer talks JSON at the boundary: configs come in as JSON text
// (the package wrapper dumps dicts) and results go out as the same JSON the
// CLI prints, so both front ends are guaranteed to agree.
std::string run_json(const std::string& config_text, bool log_packets) {
    const vrusim::ScenarioConfig cfg = vrusim::parse_config(config_text);
    vrusim::RunOptions options;
    options.log_packets = log_packets;
    return vrusim::sim_result_to_json(vrusim::run(cfg, options));
}

std::string sweep_density_json(const std::string& config_text,
                               const std::vector<int>& vru_counts, int replications) {
    const vrusim::ScenarioConfig cfg = vrusim::parse_config(config_text);
    return vrusim::results_to_json(
        vrusim::records_from_sweep(vrusim::sweep_density(cfg, vru_counts, replications)));
}

std::string sweep_interarrival_json(const std::string& config_text,
                                    const std::vector<double>& period_values_s,
                                    int replications) {
    const vrusim::ScenarioConfig cfg = vrusim::parse_config(config_text);
    return vrusim::results_to_json(vrusim::records_from_sweep(
        vrusim::sweep_interarrival(cfg, period_values_s, replications)));
}

py::dict step_dict(const vrusim::AoiTracker::StepResult& step) {
    py::dict out;
    out["delivery_applied"] = step.delivery_applied;
    out["delivery_stale"] = step.delivery_stale;
    out["peak"] = step.peak ? py::cast(*step.peak) : py::none();
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Discrete-time simulator of the peak information age of periodic road-user "
              "awareness messages under edge and remote processing placements";

    // translator order is LIFO: register the base first so the more specific
    // config errors surface as ValueError subclasses
    py::register_exception<vrusim::Error>(m, "Error", PyExc_RuntimeError);
    static py::exception<vrusim::ParseError> parse_exc(m, "ParseError", PyExc_ValueError);
    static py::exception<vrusim::ValidationError> validation_exc(m, "ValidationError",
                                                                 PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const vrusim::ParseError& e) {
            py::set_error(parse_exc, e.what());
        } catch (const vrusim::ValidationError& e) {
            py::set_error(validation_exc, e.what());
        }
    });

    m.def("default_config_json", [] { return vrusim::serialize_config(vrusim::default_config()); },
          "Canonical JSON of the calibrated default scenario");
    m.def("config_digest",
          [](const std::string& text) {
              return vrusim::config_digest(vrusim::parse_config(text));
          },
          py::arg("config_json"),
          "Scenario digest; identical for runs differing only in seed or architecture");
    m.def("run_json", &run_json, py::arg("config_json"), py::arg("log_packets") = false,
          "Run one scenario; returns the result report as JSON text");
    m.def("sweep_density_json", &sweep_density_json, py::arg("config_json"),
          py::arg("vru_counts"), py::arg("replications"),
          "Sweep the VRU count; returns result rows as JSON text");
    m.def("sweep_interarrival_json", &sweep_interarrival_json, py::arg("config_json"),
          py::arg("period_values_s"), py::arg("replications"),
          "Sweep the message period (seconds); returns result rows as JSON text");

    m.def("pathloss_db", &vrusim::pathloss_db, py::arg("distance_m"),
          py::arg("carrier_freq_ghz"), py::arg("h_enb_m"), py::arg("h_ue_m"),
          "Urban macro pathloss in dB");
    m.def("shannon_rate", &vrusim::shannon_rate, py::arg("bandwidth_hz"), py::arg("snr_db"),
          "Shannon capacity in bit/s");

    py::class_<vrusim::AoiTracker>(m, "AoiTracker",
                                   "Discrete-time age recursion for one message source")
        .def(py::init<int>(), py::arg("vru_id") = 0)
        .def("step",
             [](vrusim::AoiTracker& self, std::int64_t t,
                std::optional<std::int64_t> delivered_generation) {
                 return step_dict(self.step(t, delivered_generation));
             },
             py::arg("t"), py::arg("delivered_generation") = py::none(),
             "Advance one slot, optionally applying a delivery; returns what happened")
        .def_property_readonly("vru_id", &vrusim::AoiTracker::vru_id)
        .def_property_readonly("has_delivery", &vrusim::AoiTracker::has_delivery)
        .def_property_readonly("current_age", &vrusim::AoiTracker::current_age)
        .def_property_readonly("deliveries", &vrusim::AoiTracker::deliveries)
        .def_property_readonly("stale_deliveries", &vrusim::AoiTracker::stale_deliveries)
        .def_property_readonly("peaks", &vrusim::AoiTracker::peaks);

    m.attr("__version__") = "0.1.0";
}

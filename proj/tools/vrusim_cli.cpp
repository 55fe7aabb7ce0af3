#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vrusim/engine.hpp"
#include "vrusim/errors.hpp"
#include "vrusim/io.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

vrusim::OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return vrusim::OutputFormat::Csv;
    if (name == "json") return vrusim::OutputFormat::Json;
    throw vrusim::ParseError("unknown output format '" + name + "' (expected csv or json)");
}

int do_run(const std::string& config_path, const std::string& arch, bool seed_set,
           std::uint64_t seed, bool log_packets, const std::string& out_path) {
    vrusim::ScenarioConfig cfg = vrusim::load_config(config_path);
    if (seed_set) cfg.seed = seed;

    vrusim::RunOptions options;
    options.log_packets = log_packets;

    std::vector<vrusim::Architecture> archs;
    if (arch == "both") {
        archs = {vrusim::Architecture::Conventional, vrusim::Architecture::Mec};
    } else if (arch == "conventional") {
        archs = {vrusim::Architecture::Conventional};
    } else if (arch == "mec") {
        archs = {vrusim::Architecture::Mec};
    } else if (arch.empty()) {
        archs = {cfg.architecture};
    } else {
        throw vrusim::ParseError("unknown architecture '" + arch +
                                 "' (expected mec, conventional or both)");
    }

    std::vector<std::string> outputs;
    for (vrusim::Architecture a : archs) {
        cfg.architecture = a;  // same seed for every architecture: paired runs
        const vrusim::SimResult result = vrusim::run(cfg, options);
        outputs.push_back(vrusim::sim_result_to_json(result));
    }

    if (outputs.size() == 1) {
        vrusim::write_text(out_path, outputs.front());
    } else {
        nlohmann::json array = nlohmann::json::array();
        for (const auto& text : outputs) array.push_back(nlohmann::json::parse(text));
        vrusim::write_text(out_path, array.dump(2) + "\n");
    }
    return 0;
}

int do_sweep(const std::string& config_path, const std::string& axis,
             const std::vector<double>& values, int reps, bool seed_set, std::uint64_t seed,
             const std::string& format_name, const std::string& out_path) {
    vrusim::ScenarioConfig cfg = vrusim::load_config(config_path);
    if (seed_set) cfg.seed = seed;
    const vrusim::OutputFormat format = parse_format(format_name);

    vrusim::SweepResult sweep;
    if (axis == "density") {
        std::vector<int> counts;
        counts.reserve(values.size());
        for (double v : values) {
            const long long k = std::llround(v);
            if (std::abs(v - static_cast<double>(k)) > 1e-9 || k < 1) {
                throw vrusim::ParseError("density values must be positive integers, got " +
                                         std::to_string(v));
            }
            counts.push_back(static_cast<int>(k));
        }
        sweep = vrusim::sweep_density(cfg, counts, reps);
    } else if (axis == "interarrival") {
        std::vector<double> periods_s;
        periods_s.reserve(values.size());
        for (double v : values) periods_s.push_back(v * 1e-3);  // CLI takes milliseconds
        sweep = vrusim::sweep_interarrival(cfg, periods_s, reps);
    } else {
        throw vrusim::ParseError("unknown sweep axis '" + axis +
                                 "' (expected density or interarrival)");
    }

    vrusim::write_results(vrusim::records_from_sweep(sweep), format, out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Slot-based simulator of the peak information age of periodic road-user "
                 "awareness messages, comparing edge and remote processing placements"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string arch;
    std::uint64_t seed = 0;
    bool log_packets = false;
    std::string out_path = "-";

    CLI::App* run_cmd = app.add_subcommand("run", "Run one scenario and print a JSON report");
    run_cmd->add_option("config", config_path, "Scenario JSON file")->required();
    auto* run_seed = run_cmd->add_option("--seed", seed, "Override the config seed");
    run_cmd->add_option("--arch", arch,
                        "Architecture override: mec, conventional or both (both runs the "
                        "two with one seed and prints a JSON array)");
    run_cmd->add_flag("--log-packets", log_packets,
                      "Include the per-packet latency log in the report");
    run_cmd->add_option("--out", out_path, "Output file, '-' for stdout (default)");

    std::string config_in;
    CLI::App* config_cmd = app.add_subcommand(
        "config", "Print the effective scenario after applying a config file to the defaults");
    config_cmd->add_option("config", config_in,
                           "Scenario JSON file (omit to print the built-in defaults)");
    config_cmd->add_option("--out", out_path, "Output file, '-' for stdout (default)");

    std::string axis;
    std::vector<double> values;
    int reps = 5;
    std::string format_name = "csv";

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Sweep one axis, running both architectures per point");
    sweep_cmd->add_option("config", config_path, "Scenario JSON file")->required();
    sweep_cmd->add_option("--axis", axis, "Sweep axis: density (VRU count) or interarrival "
                                          "(message period)")
        ->required();
    sweep_cmd->add_option("--values", values,
                          "Comma-separated axis values; VRU counts for density, "
                          "periods in milliseconds for interarrival")
        ->delimiter(',')
        ->required();
    sweep_cmd->add_option("--reps", reps, "Replications per point (default 5)");
    auto* sweep_seed = sweep_cmd->add_option("--seed", seed, "Override the config seed");
    sweep_cmd->add_option("--format", format_name, "Output format: csv (default) or json");
    sweep_cmd->add_option("--out", out_path, "Output file, '-' for stdout (default)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (run_cmd->parsed()) {
            return do_run(config_path, arch, !run_seed->empty(), seed, log_packets, out_path);
        }
        if (config_cmd->parsed()) {
            const vrusim::ScenarioConfig cfg = config_in.empty()
                                                   ? vrusim::default_config()
                                                   : vrusim::load_config(config_in);
            vrusim::write_text(out_path, vrusim::serialize_config(cfg));
            return 0;
        }
        return do_sweep(config_path, axis, values, reps, !sweep_seed->empty(), seed,
                        format_name, out_path);
    } catch (const vrusim::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const vrusim::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

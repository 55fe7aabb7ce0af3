#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vrusim/engine.hpp"

namespace vrusim {

enum class OutputFormat { Csv, Json };

// One sweep-result row: one architecture at one axis point. The axis value is
// the VRU count for density sweeps and the message period in milliseconds for
// inter-arrival sweeps; latency figures are in milliseconds throughout.
struct OutputRecord {
    double axis_value = 0.0;
    Architecture arch = Architecture::Mec;
    double paoi_ms_mean = 0.0;
    double paoi_ms_std = 0.0;
    double e2e_ms_mean = 0.0;
    double e2e_ms_std = 0.0;
    int reps = 0;
    std::uint64_t seed = 0;
    std::string config_digest;
};

// Flattens a sweep into rows sorted by axis value, conventional before MEC at
// each point. Inter-arrival axis values are converted from seconds to ms.
std::vector<OutputRecord> records_from_sweep(const SweepResult& sweep);

// CSV with the fixed header
//   axis,arch,paoi_ms_mean,paoi_ms_std,e2e_ms_mean,e2e_ms_std,reps,seed,config_digest
// and one row per record. Numbers are printed with full round-trip precision.
// Throws IoError on an empty record set.
std::string results_to_csv(const std::vector<OutputRecord>& records);

// The same rows as a JSON array of objects (keys match the CSV columns).
std::string results_to_json(const std::vector<OutputRecord>& records);

// Inverse of results_to_csv; used for round-trip checks and tooling.
std::vector<OutputRecord> parse_results_csv(const std::string& csv_text);

// Serializes one run for the CLI: latency figures in milliseconds, keys in
// alphabetical order, wall-clock runtime deliberately omitted so identical
// (config, seed) runs serialize identically.
std::string sim_result_to_json(const SimResult& result);

// Writes text to `path`, or to stdout when path is "-". Throws IoError when
// the file cannot be written.
void write_text(const std::string& path, const std::string& text);

// Convenience: records -> chosen format -> write_text.
void write_results(const std::vector<OutputRecord>& records, OutputFormat format,
                   const std::string& path);

}  // namespace vrusim

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vrusim {

enum class Architecture { Conventional, Mec };

enum class FadingModel { None, Rayleigh };

enum class OffsetMode { UniformInPeriod };

enum class DelayKind { Constant, Uniform, Exponential };

enum class ProcessingModel { Queue, Constant };

// One-way delay model for a wired network segment. Only the fields matching
// `kind` are meaningful; the others stay zero so value comparison works.
struct DelayDistribution {
    DelayKind kind = DelayKind::Constant;
    double seconds = 0.0;  // Constant
    double min_s = 0.0;    // Uniform lower bound
    double max_s = 0.0;    // Uniform upper bound
    double mean_s = 0.0;   // Exponential mean

    static DelayDistribution constant(double s) {
        DelayDistribution d;
        d.kind = DelayKind::Constant;
        d.seconds = s;
        return d;
    }
    static DelayDistribution uniform(double lo, double hi) {
        DelayDistribution d;
        d.kind = DelayKind::Uniform;
        d.min_s = lo;
        d.max_s = hi;
        return d;
    }
    static DelayDistribution exponential(double mean) {
        DelayDistribution d;
        d.kind = DelayKind::Exponential;
        d.mean_s = mean;
        return d;
    }

    bool operator==(const DelayDistribution&) const = default;
};

struct RadioParams {
    double carrier_freq_ghz = 2.0;
    double bandwidth_ul_hz = 1.0e5;
    double bandwidth_dl_hz = 5.0e7;
    double tx_power_ue_dbm = 10.0;
    double tx_power_enb_dbm = 36.0;
    double noise_density_dbm_hz = -174.0;
    double h_enb_m = 25.0;
    double h_ue_m = 1.5;
    double shadowing_sigma_db = 4.0;
    FadingModel fading = FadingModel::Rayleigh;

    bool operator==(const RadioParams&) const = default;
};

struct TrafficParams {
    int num_vrus = 100;
    double period_s = 0.1;
    std::int64_t packet_bits_min = 40000;
    std::int64_t packet_bits_max = 60000;
    OffsetMode offset_mode = OffsetMode::UniformInPeriod;

    bool operator==(const TrafficParams&) const = default;
};

struct MobilityParams {
    double road_length_m = 10000.0;
    double v_min_mps = 23.0;
    double v_max_mps = 33.0;
    int vehicles_per_direction = 60;
    double vru_area_position_m = 8000.0;

    bool operator==(const MobilityParams&) const = default;
};

struct LatencyParams {
    DelayDistribution backhaul = DelayDistribution::constant(0.010);
    DelayDistribution transport = DelayDistribution::constant(0.015);
    DelayDistribution core = DelayDistribution::constant(0.024);
    double mec_cycles_per_sec = 8.0e10;
    double cloud_cycles_per_sec = 8.0e11;
    double cycles_per_bit = 100.0;
    ProcessingModel processing = ProcessingModel::Queue;

    bool operator==(const LatencyParams&) const = default;
};

struct ScenarioConfig {
    double slot_duration_s = 1.0e-3;
    std::int64_t horizon_slots = 60000;
    std::int64_t warmup_slots = 500;
    std::uint64_t seed = 42;
    Architecture architecture = Architecture::Mec;
    double cluster_radius_m = 1500.0;
    RadioParams radio;
    TrafficParams traffic;
    MobilityParams mobility;
    LatencyParams latency;

    bool operator==(const ScenarioConfig&) const = default;
};

// The message period expressed in slots (period_s / slot_duration_s, rounded).
// validate() guarantees the ratio is integral for accepted configs.
std::int64_t period_slots(const ScenarioConfig& cfg);

// The eNB sits at the road midpoint by convention (it is not a config field).
double enb_position_m(const MobilityParams& mobility);

// Calibrated default scenario; identical to a config parsed from "{}".
ScenarioConfig default_config();

// Checks every constraint and returns one message per violation, each naming
// the offending field. Never throws; non-finite values are reported, not
// propagated.
std::vector<std::string> validate(const ScenarioConfig& cfg);

// Parses a JSON config text. Missing keys take defaults; unknown keys are a
// hard ParseError; constraint violations raise ValidationError listing the
// fields. If warmup_slots is absent it defaults to 5 * period_slots.
ScenarioConfig parse_config(const std::string& json_text);

// parse_config over the contents of `path` (IoError if unreadable).
ScenarioConfig load_config(const std::string& path);

// Canonical JSON serialization; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& cfg);

// Hex digest identifying the scenario. Seed and architecture are excluded:
// result records carry those in their own columns.
std::string config_digest(const ScenarioConfig& cfg);

const char* to_string(Architecture a);
const char* to_string(FadingModel f);
const char* to_string(DelayKind k);
const char* to_string(OffsetMode m);
const char* to_string(ProcessingModel p);

}  // namespace vrusim

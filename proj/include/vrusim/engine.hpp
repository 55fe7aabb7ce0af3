#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vrusim/aoi.hpp"
#include "vrusim/config.hpp"
#include "vrusim/latency.hpp"

namespace vrusim {

// Packet bookkeeping of one run.
struct RunCounters {
    std::int64_t generated = 0;
    std::int64_t delivered = 0;                 // reached a cluster inside the horizon
    std::int64_t delivered_post_warmup = 0;
    std::int64_t stale_ignored = 0;             // delivered but older than the freshest update
    std::int64_t unobserved = 0;                // delivered while the cluster was empty
    std::int64_t no_observer_at_generation = 0; // never broadcast, no cluster to target
    std::int64_t in_flight_at_end = 0;
};

// One delivered packet in the optional per-packet log.
struct PacketLogEntry {
    int vru = 0;
    std::int64_t seq = 0;
    std::int64_t gen_slot = 0;
    std::int64_t delivery_slot = 0;
    LatencyBreakdown breakdown;
};

struct SimResult {
    std::string config_digest;
    std::uint64_t seed = 0;
    Architecture architecture = Architecture::Mec;
    PaoiSummary paoi;
    RunCounters counters;
    double runtime_s = 0.0;  // wall clock; never serialized (outputs must be reproducible)
    std::optional<std::vector<PacketLogEntry>> packet_log;
};

struct RunOptions {
    bool log_packets = false;
};

// Runs one replication of the configured scenario: slot loop over mobility,
// message generation, radio scheduling, the latency pipeline, deliveries and
// the age recursion, with statistics collected after the warmup. Identical
// (config, seed) produce identical results.
SimResult run(const ScenarioConfig& cfg, const RunOptions& options = {});

// Replication statistics for one architecture at one sweep point. Std is the
// sample standard deviation (n-1), zero for a single replication.
struct ArchStats {
    double paoi_mean_s = 0.0;
    double paoi_std_s = 0.0;
    double e2e_mean_s = 0.0;
    double e2e_std_s = 0.0;
    int replications = 0;
};

enum class SweepAxis { Density, Interarrival };

struct SweepPoint {
    double axis_value = 0.0;  // VRU count, or message period in seconds
    ArchStats conventional;
    ArchStats mec;
};

struct SweepResult {
    SweepAxis axis = SweepAxis::Density;
    std::uint64_t seed = 0;
    std::string config_digest;
    std::vector<SweepPoint> points;  // sorted by axis value
};

// Sweeps the VRU count at fixed period. Every point/replication runs both
// architectures with the same derived seed (paired, common random numbers).
SweepResult sweep_density(const ScenarioConfig& base, const std::vector<int>& vru_counts,
                          int replications);

// Sweeps the message period at fixed VRU count; the warmup is re-derived as
// five periods for each point. Same pairing as sweep_density.
SweepResult sweep_interarrival(const ScenarioConfig& base,
                               const std::vector<double>& period_values_s, int replications);

}  // namespace vrusim

#pragma once

#include <cstdint>

#include "vrusim/config.hpp"
#include "vrusim/rng.hpp"

namespace vrusim {

// Per-packet latency decomposition, all in seconds. Wired-segment components
// (t_bh, t_tn, t_cn) hold ONE traversal; the end-to-end composition counts
// them twice (uplink and downlink legs) and they are zero under the MEC
// architecture. Every component is a whole multiple of the slot duration.
struct LatencyBreakdown {
    double t_ul_s = 0.0;
    double t_bh_s = 0.0;
    double t_tn_s = 0.0;
    double t_cn_s = 0.0;
    double t_exc_s = 0.0;
    double t_dl_s = 0.0;
    double e2e_s = 0.0;
};

// Air-interface transmission time of a packet at a fixed rate, rounded up to
// whole slots. Zero bits cost zero slots; a nonpositive rate for a nonempty
// packet is a configuration fault (DomainError).
std::int64_t transmission_latency_slots(std::int64_t packet_bits, double rate_bps,
                                        double slot_duration_s);

// Same, expressed in seconds (slots * slot_duration).
double transmission_latency(std::int64_t packet_bits, double rate_bps, double slot_duration_s);

// Single-server FCFS processing stage. Service time is
// bits * cycles_per_bit / capacity; a packet waits while the server is busy
// with earlier arrivals. Arrivals must be fed in nondecreasing time order.
class ProcessingQueue {
  public:
    explicit ProcessingQueue(double capacity_cycles_per_sec);

    // Admits a packet arriving at `arrival_s` and returns its total
    // processing latency t_exc = wait + service, in seconds.
    double process(double arrival_s, std::int64_t packet_bits, double cycles_per_bit);

    double capacity_cycles_per_sec() const { return capacity_; }
    // Time the server finishes its current backlog.
    double busy_until_s() const { return busy_until_; }
    // Total service time dispensed so far (work conservation accounting).
    double total_service_s() const { return total_service_; }
    std::int64_t packets_served() const { return served_; }

  private:
    double capacity_ = 0.0;
    double busy_until_ = 0.0;
    double total_service_ = 0.0;
    double last_arrival_ = 0.0;
    std::int64_t served_ = 0;
};

// Architecture composition of a breakdown:
//   Conventional: t_ul + 2*(t_bh + t_tn + t_cn) + t_exc + t_dl
//   MEC:          t_ul + t_exc + t_dl
double compose_e2e(Architecture arch, const LatencyBreakdown& parts);

// One draw from a configured delay model, in seconds.
double sample_delay(const DelayDistribution& dist, RngStream& rng);

// Seconds -> whole slots, rounding partial slots up.
std::int64_t ceil_slots(double seconds, double slot_duration_s);

}  // namespace vrusim

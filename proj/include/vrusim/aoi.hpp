#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "vrusim/config.hpp"

namespace vrusim {

// Discrete-time age trajectory of the information one VRU's messages carry,
// as seen at the farthest member of its vehicle cluster. Age counts slots
// since the generation of the freshest delivered message; it is undefined
// until the first delivery. On a delivery during slot t of a message
// generated at slot g the age becomes t - g + 1 (the generation slot itself
// counts), and the value the age held just before the delivery is recorded as
// a peak. Deliveries carrying a generation no fresher than what was already
// delivered are ignored: they reset nothing and record no peak.
class AoiTracker {
  public:
    struct StepResult {
        bool delivery_applied = false;
        bool delivery_stale = false;
        std::optional<std::int64_t> peak;  // set when a peak was recorded this step
    };

    explicit AoiTracker(int vru_id = 0) : vru_id_(vru_id) {}

    // Advances to slot `t` (exactly one past the previous call's slot; every
    // slot must be visited) and applies at most one delivery, identified by
    // its generation slot. Throws ContractError on a slot gap, an out-of-order
    // slot, or a generation from the future.
    StepResult step(std::int64_t t, std::optional<std::int64_t> delivered_generation);

    int vru_id() const { return vru_id_; }
    bool has_delivery() const { return deliveries_ > 0; }
    // Current age in slots; only meaningful once has_delivery() is true.
    std::int64_t current_age() const { return current_age_; }
    std::int64_t deliveries() const { return deliveries_; }
    std::int64_t stale_deliveries() const { return stale_; }
    std::int64_t last_delivered_generation() const { return last_generation_; }
    const std::vector<std::int64_t>& peaks() const { return peaks_; }

  private:
    int vru_id_ = 0;
    bool started_ = false;
    std::int64_t last_slot_ = 0;
    std::int64_t current_age_ = 0;
    std::int64_t last_generation_ = -1;
    std::int64_t deliveries_ = 0;
    std::int64_t stale_ = 0;
    std::vector<std::int64_t> peaks_;
};

// Peak age by its defining decomposition: message period plus the mean
// end-to-end latency of the delivered updates, in seconds.
double paoi_from_formula(double period_s, const std::vector<double>& e2e_samples_s);

// Mean of the recorded peaks, converted to seconds. Requires at least two
// applied deliveries (one complete peak); throws InsufficientDataError
// otherwise.
double paoi_from_peaks(const AoiTracker& tracker, double slot_duration_s);

// Arithmetic mean of per-VRU peak ages. Throws InsufficientDataError when the
// map is empty.
double network_paoi(const std::map<int, double>& per_vru_paoi_s);

// Aggregated age statistics of one simulation run.
struct PaoiSummary {
    std::map<int, double> per_vru_paoi_s;
    double network_paoi_s = 0.0;
    double mean_e2e_s = 0.0;
    Architecture architecture = Architecture::Mec;
};

}  // namespace vrusim

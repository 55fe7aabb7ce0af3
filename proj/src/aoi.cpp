#include "vrusim/aoi.hpp"

#include <string>

#include "vrusim/errors.hpp"

namespace vrusim {

AoiTracker::StepResult AoiTracker::step(std::int64_t t,
                                        std::optional<std::int64_t> delivered_generation) {
    if (started_ && t != last_slot_ + 1) {
        // The +1-per-slot recursion is only meaningful when every slot is
        // visited; skipping slots would silently undercount the age.
        throw ContractError("AoiTracker: slots must advance one at a time, got " +
                            std::to_string(t) + " after " + std::to_string(last_slot_));
    }
    StepResult result;
    if (delivered_generation) {
        const std::int64_t g = *delivered_generation;
        if (g > t) {
            throw ContractError("AoiTracker: delivery from the future (generation " +
                                std::to_string(g) + " at slot " + std::to_string(t) + ")");
        }
        if (g < 0) throw ContractError("AoiTracker: negative generation slot");
        if (deliveries_ > 0 && g <= last_generation_) {
            // Out-of-order arrival carrying stale information: ignored.
            result.delivery_stale = true;
            ++stale_;
            current_age_ += 1;
        } else {
            if (deliveries_ > 0) {
                result.peak = current_age_;
                peaks_.push_back(current_age_);
            }
            current_age_ = t - g + 1;
            last_generation_ = g;
            ++deliveries_;
            result.delivery_applied = true;
        }
    } else if (deliveries_ > 0) {
        current_age_ += 1;
    }
    started_ = true;
    last_slot_ = t;
    return result;
}

double paoi_from_formula(double period_s, const std::vector<double>& e2e_samples_s) {
    if (!(period_s > 0.0)) throw DomainError("paoi_from_formula: period must be > 0");
    if (e2e_samples_s.empty()) {
        throw InsufficientDataError("paoi_from_formula: no end-to-end latency samples");
    }
    double sum = 0.0;
    for (double s : e2e_samples_s) sum += s;
    return period_s + sum / static_cast<double>(e2e_samples_s.size());
}

double paoi_from_peaks(const AoiTracker& tracker, double slot_duration_s) {
    if (!(slot_duration_s > 0.0)) {
        throw DomainError("paoi_from_peaks: slot duration must be > 0");
    }
    if (tracker.deliveries() < 2) {
        throw InsufficientDataError(
            "paoi_from_peaks: needs at least two applied deliveries, VRU " +
            std::to_string(tracker.vru_id()) + " has " + std::to_string(tracker.deliveries()));
    }
    double sum = 0.0;
    for (std::int64_t p : tracker.peaks()) sum += static_cast<double>(p);
    return sum / static_cast<double>(tracker.peaks().size()) * slot_duration_s;
}

double network_paoi(const std::map<int, double>& per_vru_paoi_s) {
    if (per_vru_paoi_s.empty()) {
        throw InsufficientDataError("network_paoi: no per-VRU peak ages");
    }
    double sum = 0.0;
    for (const auto& [id, value] : per_vru_paoi_s) sum += value;
    return sum / static_cast<double>(per_vru_paoi_s.size());
}

}  // namespace vrusim

#include "vrusim/latency.hpp"

#include <cmath>
#include <string>

#include "vrusim/errors.hpp"

namespace vrusim {

std::int64_t ceil_slots(double seconds, double slot_duration_s) {
    if (!(slot_duration_s > 0.0)) throw DomainError("ceil_slots: slot duration must be > 0");
    if (seconds < 0.0) throw DomainError("ceil_slots: negative duration");
    if (seconds == 0.0) return 0;
    return static_cast<std::int64_t>(std::ceil(seconds / slot_duration_s));
}

std::int64_t transmission_latency_slots(std::int64_t packet_bits, double rate_bps,
                                        double slot_duration_s) {
    if (packet_bits < 0) throw DomainError("transmission_latency: packet_bits must be >= 0");
    if (packet_bits == 0) return 0;
    if (!(rate_bps > 0.0)) {
        throw DomainError("transmission_latency: rate must be > 0 bit/s, got " +
                          std::to_string(rate_bps) + " (unreachable link is a config fault)");
    }
    return ceil_slots(static_cast<double>(packet_bits) / rate_bps, slot_duration_s);
}

double transmission_latency(std::int64_t packet_bits, double rate_bps, double slot_duration_s) {
    return static_cast<double>(transmission_latency_slots(packet_bits, rate_bps,
                                                          slot_duration_s)) *
           slot_duration_s;
}

ProcessingQueue::ProcessingQueue(double capacity_cycles_per_sec)
    : capacity_(capacity_cycles_per_sec) {
    if (!(capacity_ > 0.0)) {
        throw DomainError("ProcessingQueue: capacity must be > 0 cycles/s");
    }
}

double ProcessingQueue::process(double arrival_s, std::int64_t packet_bits,
                                double cycles_per_bit) {
    if (packet_bits < 0) throw DomainError("ProcessingQueue: packet_bits must be >= 0");
    if (cycles_per_bit < 0.0) throw DomainError("ProcessingQueue: cycles_per_bit must be >= 0");
    if (served_ > 0 && arrival_s < last_arrival_) {
        throw ContractError("ProcessingQueue: arrivals must be fed in time order");
    }
    last_arrival_ = arrival_s;
    const double service =
        static_cast<double>(packet_bits) * cycles_per_bit / capacity_;
    const double start = arrival_s > busy_until_ ? arrival_s : busy_until_;
    busy_until_ = start + service;
    total_service_ += service;
    ++served_;
    return busy_until_ - arrival_s;
}

double compose_e2e(Architecture arch, const LatencyBreakdown& parts) {
    if (arch == Architecture::Mec) {
        return parts.t_ul_s + parts.t_exc_s + parts.t_dl_s;
    }
    return parts.t_ul_s + 2.0 * (parts.t_bh_s + parts.t_tn_s + parts.t_cn_s) + parts.t_exc_s +
           parts.t_dl_s;
}

double sample_delay(const DelayDistribution& dist, RngStream& rng) {
    switch (dist.kind) {
        case DelayKind::Constant: return dist.seconds;
        case DelayKind::Uniform: return rng.uniform(dist.min_s, dist.max_s);
        default: return rng.exponential(dist.mean_s);
    }
}

}  // namespace vrusim

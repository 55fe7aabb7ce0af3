#include "vrusim/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <map>
#include <thread>
#include <utility>

#include "vrusim/errors.hpp"
#include "vrusim/radio.hpp"
#include "vrusim/rng.hpp"
#include "vrusim/traffic.hpp"

namespace vrusim {

namespace {

// Substream identifiers: each stochastic subsystem draws from its own stream
// so that paired runs (same seed, different architecture) consume identical
// random sequences for traffic, radio and mobility.
constexpr std::uint64_t kStreamTraffic = 1;
constexpr std::uint64_t kStreamRadio = 2;
constexpr std::uint64_t kStreamNetDelay = 3;
constexpr std::uint64_t kStreamMobility = 4;

// Links are evaluated at a 1 m minimum range; the pathloss model is a
// far-field fit and degenerates as the distance approaches zero.
constexpr double kMinLinkRangeM = 1.0;

// A packet in the pipeline between generation and delivery.
struct FlightPacket {
    int vru = 0;
    std::int64_t seq = 0;
    std::int64_t gen_slot = 0;
    std::int64_t bits = 0;
    bool has_observer = false;
    LinkState dl_link;          // drawn at generation, fixed for the broadcast
    LatencyBreakdown parts;     // filled in as the packet advances
    std::int64_t ul_slots = 0;
    std::int64_t bh_slots = 0;
    std::int64_t tn_slots = 0;
    std::int64_t cn_slots = 0;
    std::int64_t exc_slots = 0;
    // Downlink progress.
    std::int64_t dl_start_slot = 0;
    double dl_bits_remaining = 0.0;
};

// A delivery scheduled for the next slot, consumed by the age recursion.
struct DeliveryEvent {
    int vru = 0;
    std::int64_t seq = 0;
    std::int64_t gen_slot = 0;
    std::int64_t delivery_slot = 0;
    LatencyBreakdown parts;
};

struct SlotEvents {
    std::vector<FlightPacket> ul_done;
    std::vector<FlightPacket> proc_arrival;
    std::vector<FlightPacket> dl_start;
};

// Schedules a packet into the given per-slot event list, or counts it as
// still in flight if the target slot falls outside the horizon.
template <typename Member>
void schedule(std::vector<SlotEvents>& timeline, std::int64_t slot, Member member,
              FlightPacket&& pkt, RunCounters& counters) {
    if (slot < 0 || slot >= static_cast<std::int64_t>(timeline.size())) {
        counters.in_flight_at_end += 1;
        return;
    }
    (timeline[static_cast<std::size_t>(slot)].*member).push_back(std::move(pkt));
}

double sample_stat_mean(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double sample_stat_std(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

SimResult run(const ScenarioConfig& cfg, const RunOptions& options) {
    const auto violations = validate(cfg);
    if (!violations.empty()) {
        std::string msg = "invalid scenario:";
        for (const auto& v : violations) msg += "\n  - " + v;
        throw ValidationError(msg);
    }

    const auto wall_start = std::chrono::steady_clock::now();

    const double slot_s = cfg.slot_duration_s;
    const std::int64_t horizon = cfg.horizon_slots;
    const std::int64_t warmup = cfg.warmup_slots;
    const std::int64_t period = period_slots(cfg);
    const double enb_pos = enb_position_m(cfg.mobility);
    const int n_vrus = cfg.traffic.num_vrus;

    RngStream traffic_rng = RngStream::substream(cfg.seed, kStreamTraffic);
    RngStream radio_rng = RngStream::substream(cfg.seed, kStreamRadio);
    RngStream netdelay_rng = RngStream::substream(cfg.seed, kStreamNetDelay);
    RngStream mobility_rng = RngStream::substream(cfg.seed, kStreamMobility);

    // VRUs: random generation offsets inside one period; all share a position.
    const std::vector<std::int64_t> offsets = draw_offsets(n_vrus, period, traffic_rng);
    std::vector<VruAgent> vrus(static_cast<std::size_t>(n_vrus));
    // Cohort size per offset: simultaneous generators share the uplink grant.
    std::vector<std::int64_t> cohort_size(static_cast<std::size_t>(period), 0);
    for (int i = 0; i < n_vrus; ++i) {
        auto& v = vrus[static_cast<std::size_t>(i)];
        v.id = i;
        v.offset_slots = offsets[static_cast<std::size_t>(i)];
        v.period_slots = period;
        v.packet_bits_min = cfg.traffic.packet_bits_min;
        v.packet_bits_max = cfg.traffic.packet_bits_max;
        v.position_m = cfg.mobility.vru_area_position_m;
        cohort_size[static_cast<std::size_t>(v.offset_slots)] += 1;
    }

    std::vector<VehicleAgent> vehicles = init_vehicles(cfg.mobility, mobility_rng);

    const double vru_link_dist = std::max(std::abs(cfg.mobility.vru_area_position_m - enb_pos),
                                          kMinLinkRangeM);

    std::vector<SlotEvents> timeline(static_cast<std::size_t>(horizon));
    std::vector<FlightPacket> dl_active;

    ProcessingQueue queue(cfg.architecture == Architecture::Mec
                              ? cfg.latency.mec_cycles_per_sec
                              : cfg.latency.cloud_cycles_per_sec);
    const double proc_capacity = queue.capacity_cycles_per_sec();

    // Deliveries land one slot after the downlink completes; double-buffer.
    std::vector<std::vector<DeliveryEvent>> deliveries_now(static_cast<std::size_t>(n_vrus));
    std::vector<std::vector<DeliveryEvent>> deliveries_next(static_cast<std::size_t>(n_vrus));

    std::vector<AoiTracker> trackers;
    trackers.reserve(static_cast<std::size_t>(n_vrus));
    for (int i = 0; i < n_vrus; ++i) trackers.emplace_back(i);

    std::vector<double> peak_sum(static_cast<std::size_t>(n_vrus), 0.0);
    std::vector<std::int64_t> peak_count(static_cast<std::size_t>(n_vrus), 0);
    double e2e_sum_s = 0.0;
    std::int64_t e2e_count = 0;
    std::vector<std::int64_t> next_seq(static_cast<std::size_t>(n_vrus), 0);

    RunCounters counters;
    std::vector<PacketLogEntry> packet_log;

    for (std::int64_t t = 0; t < horizon; ++t) {
        // 1. Vehicles move at slot granularity.
        if (t > 0) step_mobility(vehicles, slot_s, cfg.mobility, mobility_rng);

        // 2. Message generation. All draws for a packet happen here, in VRU id
        //    order, so paired runs consume the random streams identically.
        const std::int64_t residue = t % period;
        const std::int64_t cohort = cohort_size[static_cast<std::size_t>(residue)];
        for (const auto& v : vrus) {
            if (v.offset_slots != residue) continue;
            FlightPacket pkt;
            pkt.vru = v.id;
            pkt.seq = next_seq[static_cast<std::size_t>(v.id)]++;
            pkt.gen_slot = t;
            pkt.bits = traffic_rng.uniform_int(v.packet_bits_min, v.packet_bits_max);
            counters.generated += 1;

            // Uplink: simultaneous generators split the uplink band evenly and
            // keep that share for the whole transmission.
            const double ul_bw = equal_share(cfg.radio.bandwidth_ul_hz, cohort);
            const LinkState ul = sample_link(vru_link_dist, LinkDirection::Uplink, ul_bw,
                                             cfg.radio, radio_rng);
            pkt.ul_slots = transmission_latency_slots(pkt.bits, ul.rate_bps, slot_s);
            pkt.parts.t_ul_s = static_cast<double>(pkt.ul_slots) * slot_s;

            // Downlink target: the farthest approaching vehicle of the cluster,
            // chosen now. The link draw happens unconditionally to keep the
            // radio stream aligned across runs with different traffic outcomes.
            const Cluster cluster = compute_cluster(v, vehicles, cfg.cluster_radius_m);
            pkt.has_observer = cluster.farthest_member.has_value();
            const double obs_dist = pkt.has_observer
                ? std::max(std::abs(
                      vehicles[static_cast<std::size_t>(*cluster.farthest_member)].position_m -
                      enb_pos), kMinLinkRangeM)
                : kMinLinkRangeM;
            pkt.dl_link = sample_link(obs_dist, LinkDirection::Downlink,
                                      cfg.radio.bandwidth_dl_hz, cfg.radio, radio_rng);

            if (!pkt.has_observer) {
                counters.no_observer_at_generation += 1;
                continue;  // nothing to deliver the message to
            }
            const std::int64_t done = t + pkt.ul_slots;
            schedule(timeline, done, &SlotEvents::ul_done, std::move(pkt), counters);
        }

        auto& events = timeline[static_cast<std::size_t>(t)];

        // 3. Uplink completions hand the packet to the network. Only the
        //    conventional path traverses backhaul/transport/core; its delay
        //    draws come from a dedicated stream so the architectures stay
        //    aligned on every other stream.
        for (auto& pkt : events.ul_done) {
            if (cfg.architecture == Architecture::Conventional) {
                const double bh = sample_delay(cfg.latency.backhaul, netdelay_rng);
                const double tn = sample_delay(cfg.latency.transport, netdelay_rng);
                const double cn = sample_delay(cfg.latency.core, netdelay_rng);
                pkt.bh_slots = ceil_slots(bh, slot_s);
                pkt.tn_slots = ceil_slots(tn, slot_s);
                pkt.cn_slots = ceil_slots(cn, slot_s);
                pkt.parts.t_bh_s = static_cast<double>(pkt.bh_slots) * slot_s;
                pkt.parts.t_tn_s = static_cast<double>(pkt.tn_slots) * slot_s;
                pkt.parts.t_cn_s = static_cast<double>(pkt.cn_slots) * slot_s;
            }
            const std::int64_t legs = pkt.bh_slots + pkt.tn_slots + pkt.cn_slots;
            schedule(timeline, t + legs, &SlotEvents::proc_arrival, std::move(pkt), counters);
        }
        events.ul_done.clear();

        // 4. Processor arrivals, served first-come-first-served in event order.
        for (auto& pkt : events.proc_arrival) {
            double t_exc = 0.0;
            if (cfg.latency.processing == ProcessingModel::Queue) {
                t_exc = queue.process(static_cast<double>(t) * slot_s, pkt.bits,
                                      cfg.latency.cycles_per_bit);
            } else {
                t_exc = static_cast<double>(pkt.bits) * cfg.latency.cycles_per_bit /
                        proc_capacity;
            }
            pkt.exc_slots = ceil_slots(t_exc, slot_s);
            pkt.parts.t_exc_s = static_cast<double>(pkt.exc_slots) * slot_s;
            // The conventional path crosses the same network back down.
            const std::int64_t legs = pkt.bh_slots + pkt.tn_slots + pkt.cn_slots;
            schedule(timeline, t + pkt.exc_slots + legs, &SlotEvents::dl_start, std::move(pkt),
                     counters);
        }
        events.proc_arrival.clear();

        // 5. New broadcasts join the downlink.
        for (auto& pkt : events.dl_start) {
            pkt.dl_start_slot = t;
            pkt.dl_bits_remaining = static_cast<double>(pkt.bits);
            dl_active.push_back(std::move(pkt));
        }
        events.dl_start.clear();

        // 6. The downlink is shared evenly among the broadcasts in flight;
        //    the split is recomputed every slot as the set changes.
        if (!dl_active.empty()) {
            const double share =
                equal_share(cfg.radio.bandwidth_dl_hz,
                            static_cast<std::int64_t>(dl_active.size()));
            std::vector<FlightPacket> still_active;
            still_active.reserve(dl_active.size());
            for (auto& pkt : dl_active) {
                const double rate = link_rate_bps(pkt.dl_link, LinkDirection::Downlink, share,
                                                  cfg.radio);
                pkt.dl_bits_remaining -= rate * slot_s;
                if (pkt.dl_bits_remaining > 0.0) {
                    still_active.push_back(std::move(pkt));
                    continue;
                }
                const std::int64_t dl_slots = t - pkt.dl_start_slot + 1;
                pkt.parts.t_dl_s = static_cast<double>(dl_slots) * slot_s;
                pkt.parts.e2e_s = compose_e2e(cfg.architecture, pkt.parts);
                DeliveryEvent ev;
                ev.vru = pkt.vru;
                ev.seq = pkt.seq;
                ev.gen_slot = pkt.gen_slot;
                ev.delivery_slot = t + 1;
                ev.parts = pkt.parts;
                if (t + 1 >= horizon) {
                    counters.in_flight_at_end += 1;
                } else {
                    deliveries_next[static_cast<std::size_t>(ev.vru)].push_back(std::move(ev));
                }
            }
            dl_active = std::move(still_active);
        }

        // 7. Apply this slot's deliveries (completed last slot) and advance the
        //    age recursion for every VRU. Multiple arrivals in one slot
        //    coalesce to the freshest; the rest are stale by construction.
        for (int i = 0; i < n_vrus; ++i) {
            auto& pending = deliveries_now[static_cast<std::size_t>(i)];
            std::optional<std::int64_t> offered;
            if (!pending.empty()) {
                const Cluster cluster = compute_cluster(vrus[static_cast<std::size_t>(i)],
                                                        vehicles,
                                                        cfg.cluster_radius_m);
                if (cluster.member_ids.empty()) {
                    counters.unobserved += static_cast<std::int64_t>(pending.size());
                    pending.clear();
                } else {
                    for (const auto& ev : pending) {
                        counters.delivered += 1;
                        if (t >= warmup) {
                            counters.delivered_post_warmup += 1;
                            e2e_sum_s += ev.parts.e2e_s;
                            e2e_count += 1;
                        }
                        if (options.log_packets) {
                            PacketLogEntry entry;
                            entry.vru = ev.vru;
                            entry.seq = ev.seq;
                            entry.gen_slot = ev.gen_slot;
                            entry.delivery_slot = ev.delivery_slot;
                            entry.breakdown = ev.parts;
                            packet_log.push_back(entry);
                        }
                        if (!offered || ev.gen_slot > *offered) offered = ev.gen_slot;
                    }
                }
            }
            AoiTracker& tracker = trackers[static_cast<std::size_t>(i)];
            AoiTracker::StepResult step;
            try {
                step = tracker.step(t, offered);
            } catch (const ContractError& e) {
                throw SimulationError(std::string("age recursion contract violated: ") +
                                      e.what());
            }
            if (step.delivery_stale) counters.stale_ignored += 1;
            if (step.peak && t >= warmup) {
                peak_sum[static_cast<std::size_t>(i)] += static_cast<double>(*step.peak);
                peak_count[static_cast<std::size_t>(i)] += 1;
            }
            pending.clear();
        }
        std::swap(deliveries_now, deliveries_next);
    }

    counters.in_flight_at_end += static_cast<std::int64_t>(dl_active.size());
    for (const auto& pending : deliveries_now) {
        counters.in_flight_at_end += static_cast<std::int64_t>(pending.size());
    }

    SimResult result;
    result.config_digest = config_digest(cfg);
    result.seed = cfg.seed;
    result.architecture = cfg.architecture;
    result.counters = counters;
    result.paoi.architecture = cfg.architecture;
    for (int i = 0; i < n_vrus; ++i) {
        if (peak_count[static_cast<std::size_t>(i)] > 0) {
            result.paoi.per_vru_paoi_s[i] =
                peak_sum[static_cast<std::size_t>(i)] /
                static_cast<double>(peak_count[static_cast<std::size_t>(i)]) * slot_s;
        }
    }
    if (result.paoi.per_vru_paoi_s.empty()) {
        throw InsufficientDataError(
            "no age peaks recorded after warmup; extend the horizon or lower the warmup");
    }
    result.paoi.network_paoi_s = network_paoi(result.paoi.per_vru_paoi_s);
    result.paoi.mean_e2e_s = e2e_count > 0 ? e2e_sum_s / static_cast<double>(e2e_count) : 0.0;
    if (options.log_packets) result.packet_log = std::move(packet_log);
    result.runtime_s = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - wall_start).count();
    return result;
}

namespace {

// One sweep cell: both architectures at one axis point, one replication,
// sharing one derived seed so the comparison is paired.
struct CellResult {
    double paoi_conv_s = 0.0;
    double e2e_conv_s = 0.0;
    double paoi_mec_s = 0.0;
    double e2e_mec_s = 0.0;
};

CellResult run_cell(ScenarioConfig cfg) {
    CellResult cell;
    cfg.architecture = Architecture::Conventional;
    const SimResult conv = run(cfg);
    cell.paoi_conv_s = conv.paoi.network_paoi_s;
    cell.e2e_conv_s = conv.paoi.mean_e2e_s;
    cfg.architecture = Architecture::Mec;
    const SimResult mec = run(cfg);
    cell.paoi_mec_s = mec.paoi.network_paoi_s;
    cell.e2e_mec_s = mec.paoi.mean_e2e_s;
    return cell;
}

SweepResult sweep_generic(const ScenarioConfig& base, SweepAxis axis,
                          std::vector<double> values, int replications) {
    if (values.empty()) throw ValidationError("sweep needs at least one axis value");
    if (replications < 1) throw ValidationError("sweep needs at least one replication");
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    // Build the config for every cell up front. A cell's seed depends on the
    // base seed and the replication index only: replication r uses common
    // random numbers at every axis point (and across both architectures), so
    // trend estimates along the axis are paired rather than noise-limited.
    std::vector<ScenarioConfig> cells;
    cells.reserve(values.size() * static_cast<std::size_t>(replications));
    for (double value : values) {
        ScenarioConfig cfg = base;
        if (axis == SweepAxis::Density) {
            cfg.traffic.num_vrus = static_cast<int>(std::llround(value));
        } else {
            cfg.traffic.period_s = value;
            cfg.warmup_slots = 5 * period_slots(cfg);
        }
        const auto violations = validate(cfg);
        if (!violations.empty()) {
            std::string msg = "invalid sweep point:";
            for (const auto& v : violations) msg += "\n  - " + v;
            throw ValidationError(msg);
        }
        for (int rep = 0; rep < replications; ++rep) {
            ScenarioConfig cell = cfg;
            cell.seed = derive_seed(base.seed, static_cast<std::uint64_t>(rep));
            cells.push_back(std::move(cell));
        }
    }

    // Replications are independent; run them concurrently and merge in cell
    // order so the aggregate is identical to a serial execution.
    std::vector<CellResult> results(cells.size());
    const std::size_t workers =
        std::max<std::size_t>(1, std::thread::hardware_concurrency());
    for (std::size_t begin = 0; begin < cells.size(); begin += workers) {
        const std::size_t end = std::min(cells.size(), begin + workers);
        std::vector<std::future<CellResult>> batch;
        batch.reserve(end - begin);
        for (std::size_t i = begin; i < end; ++i) {
            batch.push_back(std::async(std::launch::async, run_cell, cells[i]));
        }
        for (std::size_t i = begin; i < end; ++i) {
            results[i] = batch[i - begin].get();
        }
    }

    SweepResult out;
    out.axis = axis;
    out.seed = base.seed;
    out.config_digest = config_digest(base);
    out.points.reserve(values.size());
    for (std::size_t vi = 0; vi < values.size(); ++vi) {
        std::vector<double> paoi_conv, e2e_conv, paoi_mec, e2e_mec;
        for (int rep = 0; rep < replications; ++rep) {
            const CellResult& cell = results[vi * static_cast<std::size_t>(replications) +
                                             static_cast<std::size_t>(rep)];
            paoi_conv.push_back(cell.paoi_conv_s);
            e2e_conv.push_back(cell.e2e_conv_s);
            paoi_mec.push_back(cell.paoi_mec_s);
            e2e_mec.push_back(cell.e2e_mec_s);
        }
        SweepPoint point;
        point.axis_value = values[vi];
        point.conventional.replications = replications;
        point.conventional.paoi_mean_s = sample_stat_mean(paoi_conv);
        point.conventional.paoi_std_s = sample_stat_std(paoi_conv, point.conventional.paoi_mean_s);
        point.conventional.e2e_mean_s = sample_stat_mean(e2e_conv);
        point.conventional.e2e_std_s = sample_stat_std(e2e_conv, point.conventional.e2e_mean_s);
        point.mec.replications = replications;
        point.mec.paoi_mean_s = sample_stat_mean(paoi_mec);
        point.mec.paoi_std_s = sample_stat_std(paoi_mec, point.mec.paoi_mean_s);
        point.mec.e2e_mean_s = sample_stat_mean(e2e_mec);
        point.mec.e2e_std_s = sample_stat_std(e2e_mec, point.mec.e2e_mean_s);
        out.points.push_back(point);
    }
    return out;
}

}  // namespace

SweepResult sweep_density(const ScenarioConfig& base, const std::vector<int>& vru_counts,
                          int replications) {
    std::vector<double> values;
    values.reserve(vru_counts.size());
    for (int k : vru_counts) values.push_back(static_cast<double>(k));
    return sweep_generic(base, SweepAxis::Density, std::move(values), replications);
}

SweepResult sweep_interarrival(const ScenarioConfig& base,
                               const std::vector<double>& period_values_s, int replications) {
    return sweep_generic(base, SweepAxis::Interarrival, period_values_s, replications);
}

}  // namespace vrusim

#include "vrusim/traffic.hpp"

#include <cmath>
#include <string>

#include "vrusim/errors.hpp"

namespace vrusim {

std::vector<std::int64_t> generation_times(const VruAgent& vru, std::int64_t horizon_slots) {
    if (vru.period_slots < 1) throw DomainError("generation_times: period_slots must be >= 1");
    if (vru.offset_slots < 0 || vru.offset_slots >= vru.period_slots) {
        throw DomainError("generation_times: offset must lie in [0, period)");
    }
    std::vector<std::int64_t> times;
    for (std::int64_t t = vru.offset_slots; t < horizon_slots; t += vru.period_slots) {
        times.push_back(t);
    }
    return times;
}

std::vector<std::int64_t> draw_offsets(int num_vrus, std::int64_t period_slots, RngStream& rng) {
    if (num_vrus < 0) throw DomainError("draw_offsets: num_vrus must be >= 0");
    if (period_slots < 1) throw DomainError("draw_offsets: period_slots must be >= 1");
    std::vector<std::int64_t> offsets(static_cast<std::size_t>(num_vrus));
    for (auto& beta : offsets) beta = rng.uniform_int(0, period_slots - 1);
    return offsets;
}

std::vector<VehicleAgent> init_vehicles(const MobilityParams& mobility, RngStream& rng) {
    std::vector<VehicleAgent> vehicles;
    vehicles.reserve(static_cast<std::size_t>(2 * mobility.vehicles_per_direction));
    int id = 0;
    for (int dir = 0; dir < 2; ++dir) {
        const double sign = dir == 0 ? 1.0 : -1.0;
        for (int i = 0; i < mobility.vehicles_per_direction; ++i) {
            VehicleAgent v;
            v.id = id++;
            v.position_m = rng.uniform(0.0, mobility.road_length_m);
            v.speed_mps = sign * rng.uniform(mobility.v_min_mps, mobility.v_max_mps);
            v.in_coverage = true;
            vehicles.push_back(v);
        }
    }
    return vehicles;
}

void step_mobility(std::vector<VehicleAgent>& vehicles, double dt_s,
                   const MobilityParams& mobility, RngStream& rng) {
    for (auto& v : vehicles) {
        v.position_m += v.speed_mps * dt_s;
        if (v.speed_mps > 0.0 && v.position_m > mobility.road_length_m) {
            v.position_m = 0.0;
            v.speed_mps = rng.uniform(mobility.v_min_mps, mobility.v_max_mps);
        } else if (v.speed_mps < 0.0 && v.position_m < 0.0) {
            v.position_m = mobility.road_length_m;
            v.speed_mps = -rng.uniform(mobility.v_min_mps, mobility.v_max_mps);
        }
        v.in_coverage = v.position_m >= 0.0 && v.position_m <= mobility.road_length_m;
    }
}

Cluster compute_cluster(const VruAgent& vru, const std::vector<VehicleAgent>& vehicles,
                        double radius_m) {
    if (radius_m < 0.0) throw DomainError("compute_cluster: radius must be >= 0");
    Cluster cluster;
    cluster.vru_id = vru.id;
    for (const auto& v : vehicles) {
        if (!v.in_coverage) continue;
        const double distance = std::abs(v.position_m - vru.position_m);
        if (distance > radius_m) continue;
        const bool approaching = (v.speed_mps > 0.0 && v.position_m < vru.position_m) ||
                                 (v.speed_mps < 0.0 && v.position_m > vru.position_m);
        if (!approaching) continue;
        cluster.member_ids.push_back(v.id);
        const bool closer_tie = distance == cluster.farthest_distance_m &&
                                cluster.farthest_member && v.id < *cluster.farthest_member;
        if (!cluster.farthest_member || distance > cluster.farthest_distance_m || closer_tie) {
            cluster.farthest_member = v.id;
            cluster.farthest_distance_m = distance;
        }
    }
    return cluster;
}

}  // namespace vrusim

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vrusim/config.hpp"
#include "vrusim/rng.hpp"

namespace vrusim {

// A stationary message source (pedestrian, cyclist, roadside area). All VRUs
// share one service-area position; what distinguishes them is the slot offset
// of their periodic transmissions.
struct VruAgent {
    int id = 0;
    std::int64_t offset_slots = 0;
    std::int64_t period_slots = 1;
    std::int64_t packet_bits_min = 1;
    std::int64_t packet_bits_max = 1;
    double position_m = 0.0;
};

struct VehicleAgent {
    int id = 0;
    double position_m = 0.0;
    double speed_mps = 0.0;  // signed; positive drives towards increasing position
    bool in_coverage = true;
};

// The set of in-coverage vehicles within the cluster radius that approach the
// VRU area. The farthest member's link budget governs broadcast delivery.
struct Cluster {
    int vru_id = 0;
    std::vector<int> member_ids;
    std::optional<int> farthest_member;
    double farthest_distance_m = 0.0;  // distance from the VRU area, 0 when empty
};

// Generation slots {offset + n*period : n >= 0} below `horizon_slots`. The
// first message goes out at the offset slot itself.
std::vector<std::int64_t> generation_times(const VruAgent& vru, std::int64_t horizon_slots);

// Independent uniform offsets over {0, ..., period_slots-1}, one per VRU.
std::vector<std::int64_t> draw_offsets(int num_vrus, std::int64_t period_slots, RngStream& rng);

// Initial vehicle population: per direction, positions uniform over the road
// and speeds uniform over [v_min, v_max]. Even ids drive forward from 0,
// odd-direction block drives backward from road_length.
std::vector<VehicleAgent> init_vehicles(const MobilityParams& mobility, RngStream& rng);

// Advances every vehicle by dt. A vehicle leaving the segment is replaced by a
// fresh entrant at the boundary of its direction with a newly drawn speed, so
// the population per direction is constant.
void step_mobility(std::vector<VehicleAgent>& vehicles, double dt_s,
                   const MobilityParams& mobility, RngStream& rng);

// Cluster of `vru` given current vehicle states: in coverage, within
// `radius_m` of the VRU position, and approaching it (driving towards it).
// Farthest-distance ties resolve to the lowest vehicle id.
Cluster compute_cluster(const VruAgent& vru, const std::vector<VehicleAgent>& vehicles,
                        double radius_m);

}  // namespace vrusim

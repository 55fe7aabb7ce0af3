#pragma once

#include <cstdint>

#include "vrusim/config.hpp"
#include "vrusim/rng.hpp"

namespace vrusim {

enum class LinkDirection { Uplink, Downlink };

// Snapshot of one radio link at a transmission attempt. Attenuation draws are
// stored separately from the derived SNR/rate so the rate can be re-evaluated
// when the allocated bandwidth changes mid-transmission (DL scheduler).
struct LinkState {
    double distance_m = 0.0;
    double pathloss_db = 0.0;
    double shadowing_db = 0.0;   // log-normal shadowing, dB
    double fading_power = 1.0;   // small-scale fading power gain, linear, mean 1
    double snr_db = 0.0;         // at the bandwidth used for the sample
    double rate_bps = 0.0;       // at the bandwidth used for the sample
};

// Urban macro pathloss in dB:
//   22.7 log10(d) - 17.3 log10(h_enb - 1) - 17.3 log10(h_ue - 1)
//   + 2.7 log10(f_c) - 7.56
// with d in metres and f_c in GHz. Antenna heights must exceed 1 m so the
// effective heights stay positive. Throws DomainError outside the domain.
double pathloss_db(double distance_m, double carrier_freq_ghz, double h_enb_m, double h_ue_m);

// Shannon capacity bandwidth * log2(1 + 10^(snr_db/10)) in bit/s.
// Zero bandwidth gives zero rate.
double shannon_rate(double bandwidth_hz, double snr_db);

// Equal split of a bandwidth pool over the entities contending in a slot.
// Throws DomainError when active_count < 1.
double equal_share(double total_bandwidth_hz, std::int64_t active_count);

// SNR in dB for the given budget terms; noise power is integrated over the
// allocated bandwidth.
double link_snr_db(double tx_power_dbm, double pathloss_db, double shadowing_db,
                   double fading_power, double noise_density_dbm_hz, double bandwidth_hz);

// Achievable rate of a sampled link at some allocated bandwidth.
double link_rate_bps(const LinkState& link, LinkDirection direction, double bandwidth_hz,
                     const RadioParams& radio);

// Draws shadowing (Normal(0, sigma^2) dB) and fading (unit-mean exponential
// power, or exactly 1 when fading is disabled) for one transmission attempt
// and evaluates SNR and rate at `bandwidth_hz`. Links are resampled per packet
// attempt, not per slot.
LinkState sample_link(double distance_m, LinkDirection direction, double bandwidth_hz,
                      const RadioParams& radio, RngStream& rng);

}  // namespace vrusim

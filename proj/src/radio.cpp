#include "vrusim/radio.hpp"

#include <cmath>
#include <string>

#include "vrusim/errors.hpp"

namespace vrusim {

double pathloss_db(double distance_m, double carrier_freq_ghz, double h_enb_m, double h_ue_m) {
    if (!(distance_m > 0.0)) {
        throw DomainError("pathloss_db: distance must be > 0, got " + std::to_string(distance_m));
    }
    if (!(carrier_freq_ghz > 0.0)) {
        throw DomainError("pathloss_db: carrier frequency must be > 0 GHz");
    }
    if (!(h_enb_m > 1.0) || !(h_ue_m > 1.0)) {
        throw DomainError("pathloss_db: antenna heights must exceed 1 m");
    }
    return 22.7 * std::log10(distance_m) - 17.3 * std::log10(h_enb_m - 1.0) -
           17.3 * std::log10(h_ue_m - 1.0) + 2.7 * std::log10(carrier_freq_ghz) - 7.56;
}

double shannon_rate(double bandwidth_hz, double snr_db) {
    if (bandwidth_hz < 0.0) throw DomainError("shannon_rate: bandwidth must be >= 0");
    if (bandwidth_hz == 0.0) return 0.0;
    const double snr_linear = std::pow(10.0, snr_db / 10.0);
    return bandwidth_hz * std::log2(1.0 + snr_linear);
}

double equal_share(double total_bandwidth_hz, std::int64_t active_count) {
    if (total_bandwidth_hz < 0.0) throw DomainError("equal_share: bandwidth must be >= 0");
    if (active_count < 1) {
        throw DomainError("equal_share: active_count must be >= 1, got " +
                          std::to_string(active_count));
    }
    return total_bandwidth_hz / static_cast<double>(active_count);
}

double link_snr_db(double tx_power_dbm, double pathloss_db, double shadowing_db,
                   double fading_power, double noise_density_dbm_hz, double bandwidth_hz) {
    if (!(bandwidth_hz > 0.0)) throw DomainError("link_snr_db: bandwidth must be > 0");
    if (!(fading_power > 0.0)) throw DomainError("link_snr_db: fading power must be > 0");
    const double noise_dbm = noise_density_dbm_hz + 10.0 * std::log10(bandwidth_hz);
    return tx_power_dbm - pathloss_db - shadowing_db + 10.0 * std::log10(fading_power) -
           noise_dbm;
}

double link_rate_bps(const LinkState& link, LinkDirection direction, double bandwidth_hz,
                     const RadioParams& radio) {
    if (bandwidth_hz == 0.0) return 0.0;
    const double tx_dbm = direction == LinkDirection::Uplink ? radio.tx_power_ue_dbm
                                                             : radio.tx_power_enb_dbm;
    const double snr = link_snr_db(tx_dbm, link.pathloss_db, link.shadowing_db,
                                   link.fading_power, radio.noise_density_dbm_hz, bandwidth_hz);
    return shannon_rate(bandwidth_hz, snr);
}

LinkState sample_link(double distance_m, LinkDirection direction, double bandwidth_hz,
                      const RadioParams& radio, RngStream& rng) {
    LinkState link;
    link.distance_m = distance_m;
    link.pathloss_db =
        pathloss_db(distance_m, radio.carrier_freq_ghz, radio.h_enb_m, radio.h_ue_m);
    link.shadowing_db = rng.normal(0.0, radio.shadowing_sigma_db);
    if (radio.fading == FadingModel::Rayleigh) {
        // Rayleigh amplitude = exponential power with mean 1. Floor the draw
        // at a -120 dB fade: a true zero (probability 2^-53) would make the
        // SNR singular, and no receiver resolves fades that deep anyway.
        link.fading_power = std::max(rng.exponential(1.0), 1e-12);
    } else {
        link.fading_power = 1.0;
    }
    const double tx_dbm = direction == LinkDirection::Uplink ? radio.tx_power_ue_dbm
                                                             : radio.tx_power_enb_dbm;
    link.snr_db = link_snr_db(tx_dbm, link.pathloss_db, link.shadowing_db, link.fading_power,
                              radio.noise_density_dbm_hz, bandwidth_hz);
    link.rate_bps = shannon_rate(bandwidth_hz, link.snr_db);
    return link;
}

}  // namespace vrusim

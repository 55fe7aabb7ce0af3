#include <cmath>

#include "doctest.h"
#include "vrusim/errors.hpp"
#include "vrusim/radio.hpp"
#include "vrusim/rng.hpp"

using namespace vrusim;

TEST_CASE("pathloss reduces to its constant term when every log vanishes") {
    // d = 1 m, f = 1 GHz and both effective heights equal to 1 m zero out all
    // four log terms, leaving exactly the -7.56 dB constant.
    CHECK(pathloss_db(1.0, 1.0, 2.0, 2.0) == doctest::Approx(-7.56).epsilon(1e-12));
}

TEST_CASE("pathloss at a reference urban geometry") {
    // Independently computed: 22.7*log10(100) - 17.3*log10(24) - 17.3*log10(0.5)
    //                         + 2.7*log10(2) - 7.56
    CHECK(pathloss_db(100.0, 2.0, 25.0, 1.5) ==
          doctest::Approx(19.98294543166884).epsilon(1e-12));
}

TEST_CASE("pathloss grows 22.7 dB per decade of distance") {
    const double base = pathloss_db(100.0, 2.0, 25.0, 1.5);
    CHECK(pathloss_db(1000.0, 2.0, 25.0, 1.5) - base == doctest::Approx(22.7).epsilon(1e-12));
    CHECK(pathloss_db(10000.0, 2.0, 25.0, 1.5) - base ==
          doctest::Approx(45.4).epsilon(1e-12));
    // and is monotone in between
    double prev = pathloss_db(10.0, 2.0, 25.0, 1.5);
    for (double d = 20.0; d <= 5000.0; d *= 2.0) {
        const double pl = pathloss_db(d, 2.0, 25.0, 1.5);
        CHECK(pl > prev);
        prev = pl;
    }
}

TEST_CASE("pathloss rejects out-of-domain geometry") {
    CHECK_THROWS_AS(pathloss_db(0.0, 2.0, 25.0, 1.5), DomainError);
    CHECK_THROWS_AS(pathloss_db(-5.0, 2.0, 25.0, 1.5), DomainError);
    CHECK_THROWS_AS(pathloss_db(100.0, 0.0, 25.0, 1.5), DomainError);
    CHECK_THROWS_AS(pathloss_db(100.0, 2.0, 1.0, 1.5), DomainError);
    CHECK_THROWS_AS(pathloss_db(100.0, 2.0, 25.0, 0.5), DomainError);
}

TEST_CASE("shannon rate at 10 dB over 1 MHz") {
    // 1e6 * log2(1 + 10) computed independently
    CHECK(shannon_rate(1.0e6, 10.0) == doctest::Approx(3.4594316186372973e6).epsilon(1e-12));
    CHECK(shannon_rate(0.0, 10.0) == 0.0);
    CHECK_THROWS_AS(shannon_rate(-1.0, 10.0), DomainError);
    // monotone in SNR
    CHECK(shannon_rate(1.0e6, 20.0) > shannon_rate(1.0e6, 10.0));
}

TEST_CASE("equal bandwidth sharing conserves the pool") {
    CHECK(equal_share(10.0e6, 4) == doctest::Approx(2.5e6));
    CHECK(equal_share(10.0e6, 1) == 10.0e6);
    CHECK(3 * equal_share(9.0e6, 3) == doctest::Approx(9.0e6));
    CHECK_THROWS_AS(equal_share(10.0e6, 0), DomainError);
    CHECK_THROWS_AS(equal_share(10.0e6, -2), DomainError);
}

TEST_CASE("snr budget adds powers and subtracts integrated noise") {
    // 10 dBm - 100 dB - 3 dB + 0 - (-174 + 10*log10(1e5)) = -93 + 124 = 31 dB
    CHECK(link_snr_db(10.0, 100.0, 3.0, 1.0, -174.0, 1.0e5) ==
          doctest::Approx(31.0).epsilon(1e-12));
    // a 10x fading power gain adds exactly 10 dB
    CHECK(link_snr_db(10.0, 100.0, 3.0, 10.0, -174.0, 1.0e5) ==
          doctest::Approx(41.0).epsilon(1e-12));
}

TEST_CASE("sampled links are internally consistent") {
    RadioParams radio;  // defaults
    RngStream rng(404);
    for (int i = 0; i < 100; ++i) {
        const LinkState link =
            sample_link(250.0, LinkDirection::Uplink, 1.0e5, radio, rng);
        CHECK(link.distance_m == 250.0);
        CHECK(link.pathloss_db ==
              doctest::Approx(pathloss_db(250.0, radio.carrier_freq_ghz, radio.h_enb_m,
                                          radio.h_ue_m)));
        CHECK(link.fading_power > 0.0);
        CHECK(link.snr_db ==
              doctest::Approx(link_snr_db(radio.tx_power_ue_dbm, link.pathloss_db,
                                          link.shadowing_db, link.fading_power,
                                          radio.noise_density_dbm_hz, 1.0e5)));
        CHECK(link.rate_bps == doctest::Approx(shannon_rate(1.0e5, link.snr_db)));
    }
}

TEST_CASE("downlink samples use the base station power") {
    RadioParams radio;
    RngStream rng(405);
    const LinkState link = sample_link(250.0, LinkDirection::Downlink, 1.0e6, radio, rng);
    CHECK(link.snr_db ==
          doctest::Approx(link_snr_db(radio.tx_power_enb_dbm, link.pathloss_db,
                                      link.shadowing_db, link.fading_power,
                                      radio.noise_density_dbm_hz, 1.0e6)));
}

TEST_CASE("disabling fading pins the power gain to one") {
    RadioParams radio;
    radio.fading = FadingModel::None;
    RngStream rng(406);
    for (int i = 0; i < 32; ++i) {
        CHECK(sample_link(100.0, LinkDirection::Uplink, 1.0e5, radio, rng).fading_power ==
              1.0);
    }
}

TEST_CASE("re-evaluating a link at another bandwidth") {
    RadioParams radio;
    RngStream rng(409);
    const LinkState link = sample_link(400.0, LinkDirection::Downlink, 2.0e6, radio, rng);
    // at the sampling bandwidth the stored rate is reproduced
    CHECK(link_rate_bps(link, LinkDirection::Downlink, 2.0e6, radio) ==
          doctest::Approx(link.rate_bps));
    // halving the bandwidth halves the noise too, so the rate stays above half
    const double half = link_rate_bps(link, LinkDirection::Downlink, 1.0e6, radio);
    CHECK(half < link.rate_bps);
    CHECK(half > 0.5 * link.rate_bps);
}

TEST_CASE("rayleigh fading power is unit mean") {
    RadioParams radio;  // rayleigh by default
    RngStream rng(407);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        sum += sample_link(100.0, LinkDirection::Uplink, 1.0e5, radio, rng).fading_power;
    }
    const double mean = sum / n;
    CHECK(mean > 0.99);
    CHECK(mean < 1.01);
}

TEST_CASE("shadowing spread follows the configured sigma") {
    RadioParams radio;
    radio.shadowing_sigma_db = 6.0;
    RngStream rng(408);
    const int n = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s =
            sample_link(100.0, LinkDirection::Uplink, 1.0e5, radio, rng).shadowing_db;
        sum += s;
        sumsq += s * s;
    }
    const double mean = sum / n;
    CHECK(mean == doctest::Approx(0.0).scale(6.0).epsilon(0.02));
    CHECK(std::sqrt(sumsq / n - mean * mean) == doctest::Approx(6.0).epsilon(0.02));
}

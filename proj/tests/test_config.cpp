#include <limits>
#include <string>
#include <vector>

#include "doctest.h"
#include "vrusim/config.hpp"
#include "vrusim/errors.hpp"

using namespace vrusim;

namespace {

bool any_contains(const std::vector<std::string>& messages, const std::string& needle) {
    for (const auto& m : messages) {
        if (m.find(needle) != std::string::npos) return true;
    }
    return false;
}

std::string what_of(const std::exception& e) { return e.what(); }

}  // namespace

TEST_CASE("an empty document yields exactly the defaults") {
    CHECK(parse_config("{}") == default_config());
    CHECK(validate(default_config()).empty());
}

TEST_CASE("serialization round-trips the full scenario") {
    ScenarioConfig cfg = default_config();
    cfg.seed = 1234;
    cfg.architecture = Architecture::Conventional;
    cfg.traffic.num_vrus = 37;
    cfg.traffic.period_s = 0.05;
    cfg.radio.fading = FadingModel::None;
    cfg.latency.backhaul = DelayDistribution::uniform(0.002, 0.004);
    cfg.latency.core = DelayDistribution::exponential(0.01);
    cfg.latency.processing = ProcessingModel::Constant;
    cfg.warmup_slots = 250;
    CHECK(parse_config(serialize_config(cfg)) == cfg);
}

TEST_CASE("unknown keys are rejected with their scoped name") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"no_such_key": 1})"),
                         doctest::Contains("no_such_key"), ParseError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"radio": {"bogus": 1}})"),
                         doctest::Contains("radio.bogus"), ParseError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"latency": {"backhaul": {"surprise": 1}}})"),
                         doctest::Contains("surprise"), ParseError);
}

TEST_CASE("type mismatches are parse errors") {
    CHECK_THROWS_AS(parse_config(R"({"horizon_slots": "many"})"), ParseError);
    CHECK_THROWS_AS(parse_config(R"({"traffic": {"num_vrus": 1.5}})"), ParseError);
    CHECK_THROWS_AS(parse_config(R"({"radio": "dense"})"), ParseError);
    CHECK_THROWS_AS(parse_config("not json at all"), ParseError);
}

TEST_CASE("delay models parse by kind and reject mixed keys") {
    const ScenarioConfig cfg = parse_config(
        R"({"latency": {"backhaul": {"kind": "uniform", "min_s": 0.001, "max_s": 0.002}}})");
    CHECK(cfg.latency.backhaul == DelayDistribution::uniform(0.001, 0.002));
    // a constant delay has no business carrying uniform bounds
    CHECK_THROWS_AS(
        parse_config(R"({"latency": {"backhaul": {"kind": "constant", "min_s": 1}}})"),
        ParseError);
    CHECK_THROWS_AS(parse_config(R"({"latency": {"backhaul": {"kind": "mystery"}}})"),
                    ParseError);
}

TEST_CASE("violations carry the offending field names") {
    ScenarioConfig cfg = default_config();
    cfg.mobility.v_min_mps = -1.0;
    cfg.radio.h_enb_m = 1.0;
    cfg.traffic.packet_bits_min = 0;
    const auto violations = validate(cfg);
    CHECK(any_contains(violations, "v_min"));
    CHECK(any_contains(violations, "h_enb_m"));
    CHECK(any_contains(violations, "packet_bits_min"));
    CHECK(violations.size() >= 3);
}

TEST_CASE("the message period must be an integer number of slots") {
    ScenarioConfig cfg = default_config();
    cfg.traffic.period_s = 0.0105;
    CHECK(any_contains(validate(cfg), "period_s"));
    cfg.traffic.period_s = 0.0004;  // below one slot
    CHECK(any_contains(validate(cfg), "period_s"));
    cfg.traffic.period_s = 0.1;
    CHECK(validate(cfg).empty());
    CHECK(period_slots(cfg) == 100);
}

TEST_CASE("warmup must leave measurable horizon") {
    ScenarioConfig cfg = default_config();
    cfg.warmup_slots = cfg.horizon_slots;
    CHECK(any_contains(validate(cfg), "warmup_slots"));
}

TEST_CASE("the service area must not sit on top of the base station") {
    ScenarioConfig cfg = default_config();
    cfg.mobility.vru_area_position_m = enb_position_m(cfg.mobility);
    CHECK(any_contains(validate(cfg), "vru_area_position_m"));
}

TEST_CASE("non-finite values are reported, not propagated") {
    ScenarioConfig cfg = default_config();
    cfg.radio.tx_power_ue_dbm = std::numeric_limits<double>::quiet_NaN();
    cfg.latency.cycles_per_bit = std::numeric_limits<double>::infinity();
    const auto violations = validate(cfg);
    CHECK(any_contains(violations, "tx_power_ue_dbm"));
    CHECK(any_contains(violations, "cycles_per_bit"));
}

TEST_CASE("parsing an invalid scenario lists every violation") {
    try {
        (void)parse_config(R"({"mobility": {"v_min_mps": -1}, "horizon_slots": 0})");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        const std::string what = what_of(e);
        CHECK(what.find("v_min_mps") != std::string::npos);
        CHECK(what.find("horizon_slots") != std::string::npos);
    }
}

TEST_CASE("warmup defaults to five periods when omitted") {
    const ScenarioConfig half = parse_config(R"({"traffic": {"period_s": 0.05}})");
    CHECK(half.warmup_slots == 250);
    const ScenarioConfig pinned =
        parse_config(R"({"traffic": {"period_s": 0.05}, "warmup_slots": 42})");
    CHECK(pinned.warmup_slots == 42);
}

TEST_CASE("the scenario digest ignores seed and architecture") {
    const ScenarioConfig base = default_config();
    ScenarioConfig reseeded = base;
    reseeded.seed = 999;
    reseeded.architecture = Architecture::Conventional;
    CHECK(config_digest(base) == config_digest(reseeded));
    ScenarioConfig denser = base;
    denser.traffic.num_vrus = 150;
    CHECK(config_digest(base) != config_digest(denser));
    CHECK(config_digest(base).size() == 16);  // fixed-width hex
}

TEST_CASE("the base station sits mid-segment") {
    MobilityParams mob;
    mob.road_length_m = 10000.0;
    CHECK(enb_position_m(mob) == 5000.0);
}

TEST_CASE("loading a missing file is an io error") {
    CHECK_THROWS_AS(load_config("/definitely/not/here.json"), IoError);
}

TEST_CASE("enum names round-trip through their string forms") {
    CHECK(std::string(to_string(Architecture::Mec)) == "mec");
    CHECK(std::string(to_string(Architecture::Conventional)) == "conventional");
    CHECK(std::string(to_string(FadingModel::Rayleigh)) == "rayleigh");
    CHECK(std::string(to_string(ProcessingModel::Queue)) == "queue");
}

#include "vrusim/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "vrusim/errors.hpp"

namespace vrusim {

using nlohmann::json;

std::int64_t period_slots(const ScenarioConfig& cfg) {
    return static_cast<std::int64_t>(std::llround(cfg.traffic.period_s / cfg.slot_duration_s));
}

double enb_position_m(const MobilityParams& mobility) { return mobility.road_length_m / 2.0; }

ScenarioConfig default_config() { return ScenarioConfig{}; }

const char* to_string(Architecture a) {
    return a == Architecture::Conventional ? "conventional" : "mec";
}

const char* to_string(FadingModel f) { return f == FadingModel::None ? "none" : "rayleigh"; }

const char* to_string(DelayKind k) {
    switch (k) {
        case DelayKind::Constant: return "constant";
        case DelayKind::Uniform: return "uniform";
        default: return "exponential";
    }
}

const char* to_string(OffsetMode m) {
    (void)m;
    return "uniform_in_period";
}

const char* to_string(ProcessingModel p) {
    return p == ProcessingModel::Queue ? "queue" : "constant";
}

namespace {

void check_keys(const json& obj, const std::string& scope,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ParseError("unknown key \"" + (scope.empty() ? "" : scope + ".") + item.key() +
                             "\" in config");
        }
    }
}

double get_number(const json& obj, const std::string& scope, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) {
        throw ParseError("config key \"" + scope + "." + key + "\" must be a number");
    }
    return v.get<double>();
}

std::int64_t get_integer(const json& obj, const std::string& scope, const char* key,
                         std::int64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
        throw ParseError("config key \"" + scope + "." + key + "\" must be an integer");
    }
    return v.get<std::int64_t>();
}

std::string get_string(const json& obj, const std::string& scope, const char* key,
                       const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) {
        throw ParseError("config key \"" + scope + "." + key + "\" must be a string");
    }
    return v.get<std::string>();
}

DelayDistribution parse_delay(const json& obj, const std::string& scope,
                              const DelayDistribution& fallback) {
    check_keys(obj, scope, {"kind", "seconds", "min_s", "max_s", "mean_s"});
    const std::string kind = get_string(obj, scope, "kind", to_string(fallback.kind));
    DelayDistribution out;
    if (kind == "constant") {
        out = DelayDistribution::constant(get_number(obj, scope, "seconds", fallback.seconds));
        if (obj.contains("min_s") || obj.contains("max_s") || obj.contains("mean_s")) {
            throw ParseError("config " + scope + ": constant delay takes only \"seconds\"");
        }
    } else if (kind == "uniform") {
        out = DelayDistribution::uniform(get_number(obj, scope, "min_s", fallback.min_s),
                                         get_number(obj, scope, "max_s", fallback.max_s));
        if (obj.contains("seconds") || obj.contains("mean_s")) {
            throw ParseError("config " + scope + ": uniform delay takes \"min_s\"/\"max_s\"");
        }
    } else if (kind == "exponential") {
        out = DelayDistribution::exponential(get_number(obj, scope, "mean_s", fallback.mean_s));
        if (obj.contains("seconds") || obj.contains("min_s") || obj.contains("max_s")) {
            throw ParseError("config " + scope + ": exponential delay takes only \"mean_s\"");
        }
    } else {
        throw ParseError("config " + scope + ".kind: unknown delay kind \"" + kind + "\"");
    }
    return out;
}

json delay_to_json(const DelayDistribution& d) {
    json out;
    out["kind"] = to_string(d.kind);
    switch (d.kind) {
        case DelayKind::Constant: out["seconds"] = d.seconds; break;
        case DelayKind::Uniform:
            out["min_s"] = d.min_s;
            out["max_s"] = d.max_s;
            break;
        case DelayKind::Exponential: out["mean_s"] = d.mean_s; break;
    }
    return out;
}

Architecture parse_architecture(const std::string& text, const std::string& scope) {
    if (text == "conventional") return Architecture::Conventional;
    if (text == "mec") return Architecture::Mec;
    throw ParseError("config " + scope + ": unknown architecture \"" + text +
                     "\" (expected \"conventional\" or \"mec\")");
}

FadingModel parse_fading(const std::string& text, const std::string& scope) {
    if (text == "none") return FadingModel::None;
    if (text == "rayleigh") return FadingModel::Rayleigh;
    throw ParseError("config " + scope + ": unknown fading model \"" + text +
                     "\" (expected \"none\" or \"rayleigh\")");
}

OffsetMode parse_offset_mode(const std::string& text, const std::string& scope) {
    if (text == "uniform_in_period") return OffsetMode::UniformInPeriod;
    throw ParseError("config " + scope + ": unknown offset mode \"" + text + "\"");
}

ProcessingModel parse_processing(const std::string& text, const std::string& scope) {
    if (text == "queue") return ProcessingModel::Queue;
    if (text == "constant") return ProcessingModel::Constant;
    throw ParseError("config " + scope + ": unknown processing model \"" + text +
                     "\" (expected \"queue\" or \"constant\")");
}

void require_finite(std::vector<std::string>& out, const char* field, double value) {
    if (!std::isfinite(value)) {
        out.push_back(std::string(field) + ": must be finite, got " +
                      (std::isnan(value) ? "NaN" : "infinity"));
    }
}

void validate_delay(std::vector<std::string>& out, const std::string& scope,
                    const DelayDistribution& d) {
    switch (d.kind) {
        case DelayKind::Constant:
            require_finite(out, (scope + ".seconds").c_str(), d.seconds);
            if (std::isfinite(d.seconds) && d.seconds < 0.0) {
                out.push_back(scope + ".seconds: must be >= 0");
            }
            break;
        case DelayKind::Uniform:
            require_finite(out, (scope + ".min_s").c_str(), d.min_s);
            require_finite(out, (scope + ".max_s").c_str(), d.max_s);
            if (std::isfinite(d.min_s) && std::isfinite(d.max_s)) {
                if (d.min_s < 0.0) out.push_back(scope + ".min_s: must be >= 0");
                if (d.min_s > d.max_s) out.push_back(scope + ": requires min_s <= max_s");
            }
            break;
        case DelayKind::Exponential:
            require_finite(out, (scope + ".mean_s").c_str(), d.mean_s);
            if (std::isfinite(d.mean_s) && d.mean_s < 0.0) {
                out.push_back(scope + ".mean_s: must be >= 0");
            }
            break;
    }
}

}  // namespace

std::vector<std::string> validate(const ScenarioConfig& cfg) {
    std::vector<std::string> v;

    require_finite(v, "slot_duration_s", cfg.slot_duration_s);
    if (std::isfinite(cfg.slot_duration_s) && cfg.slot_duration_s <= 0.0) {
        v.push_back("slot_duration_s: must be > 0");
    }
    if (cfg.horizon_slots < 1) v.push_back("horizon_slots: must be >= 1");
    if (cfg.warmup_slots < 0) v.push_back("warmup_slots: must be >= 0");
    if (cfg.warmup_slots >= cfg.horizon_slots) {
        v.push_back("warmup_slots: requires horizon_slots > warmup_slots");
    }
    require_finite(v, "cluster_radius_m", cfg.cluster_radius_m);
    if (std::isfinite(cfg.cluster_radius_m) && cfg.cluster_radius_m < 0.0) {
        v.push_back("cluster_radius_m: must be >= 0");
    }

    const RadioParams& r = cfg.radio;
    require_finite(v, "radio.carrier_freq_ghz", r.carrier_freq_ghz);
    require_finite(v, "radio.bandwidth_ul_hz", r.bandwidth_ul_hz);
    require_finite(v, "radio.bandwidth_dl_hz", r.bandwidth_dl_hz);
    require_finite(v, "radio.tx_power_ue_dbm", r.tx_power_ue_dbm);
    require_finite(v, "radio.tx_power_enb_dbm", r.tx_power_enb_dbm);
    require_finite(v, "radio.noise_density_dbm_hz", r.noise_density_dbm_hz);
    require_finite(v, "radio.h_enb_m", r.h_enb_m);
    require_finite(v, "radio.h_ue_m", r.h_ue_m);
    require_finite(v, "radio.shadowing_sigma_db", r.shadowing_sigma_db);
    if (std::isfinite(r.carrier_freq_ghz) && r.carrier_freq_ghz <= 0.0) {
        v.push_back("radio.carrier_freq_ghz: must be > 0");
    }
    if (std::isfinite(r.bandwidth_ul_hz) && r.bandwidth_ul_hz <= 0.0) {
        v.push_back("radio.bandwidth_ul_hz: must be > 0");
    }
    if (std::isfinite(r.bandwidth_dl_hz) && r.bandwidth_dl_hz <= 0.0) {
        v.push_back("radio.bandwidth_dl_hz: must be > 0");
    }
    if (std::isfinite(r.h_enb_m) && r.h_enb_m <= 1.0) {
        v.push_back("radio.h_enb_m: must be > 1.0 (effective antenna height h-1 must stay positive)");
    }
    if (std::isfinite(r.h_ue_m) && r.h_ue_m <= 1.0) {
        v.push_back("radio.h_ue_m: must be > 1.0 (effective antenna height h-1 must stay positive)");
    }
    if (std::isfinite(r.shadowing_sigma_db) && r.shadowing_sigma_db < 0.0) {
        v.push_back("radio.shadowing_sigma_db: must be >= 0");
    }

    const TrafficParams& t = cfg.traffic;
    if (t.num_vrus < 1) v.push_back("traffic.num_vrus: must be >= 1");
    require_finite(v, "traffic.period_s", t.period_s);
    if (std::isfinite(t.period_s) && std::isfinite(cfg.slot_duration_s) &&
        cfg.slot_duration_s > 0.0) {
        if (t.period_s < cfg.slot_duration_s) {
            v.push_back("traffic.period_s: must be >= slot_duration_s");
        } else {
            const double ratio = t.period_s / cfg.slot_duration_s;
            if (std::abs(ratio - std::llround(ratio)) > 1e-9 * ratio) {
                v.push_back("traffic.period_s: must be an integer multiple of slot_duration_s");
            }
        }
    }
    if (t.packet_bits_min <= 0) v.push_back("traffic.packet_bits_min: must be > 0");
    if (t.packet_bits_min > t.packet_bits_max) {
        v.push_back("traffic.packet_bits_min: requires packet_bits_min <= packet_bits_max");
    }

    const MobilityParams& m = cfg.mobility;
    require_finite(v, "mobility.road_length_m", m.road_length_m);
    require_finite(v, "mobility.v_min_mps", m.v_min_mps);
    require_finite(v, "mobility.v_max_mps", m.v_max_mps);
    require_finite(v, "mobility.vru_area_position_m", m.vru_area_position_m);
    if (std::isfinite(m.road_length_m) && m.road_length_m <= 0.0) {
        v.push_back("mobility.road_length_m: must be > 0");
    }
    if (std::isfinite(m.v_min_mps) && m.v_min_mps <= 0.0) {
        v.push_back("mobility.v_min_mps: must be > 0");
    }
    if (std::isfinite(m.v_min_mps) && std::isfinite(m.v_max_mps) && m.v_min_mps > m.v_max_mps) {
        v.push_back("mobility.v_min_mps: requires v_min_mps <= v_max_mps");
    }
    if (m.vehicles_per_direction < 0) {
        v.push_back("mobility.vehicles_per_direction: must be >= 0");
    }
    if (std::isfinite(m.vru_area_position_m) && std::isfinite(m.road_length_m)) {
        if (m.vru_area_position_m < 0.0 || m.vru_area_position_m > m.road_length_m) {
            v.push_back("mobility.vru_area_position_m: must lie within [0, road_length_m]");
        }
        if (m.vru_area_position_m == enb_position_m(m)) {
            v.push_back(
                "mobility.vru_area_position_m: must differ from the eNB position "
                "(road midpoint), zero link distance is singular");
        }
    }

    const LatencyParams& l = cfg.latency;
    validate_delay(v, "latency.backhaul", l.backhaul);
    validate_delay(v, "latency.transport", l.transport);
    validate_delay(v, "latency.core", l.core);
    require_finite(v, "latency.mec_cycles_per_sec", l.mec_cycles_per_sec);
    require_finite(v, "latency.cloud_cycles_per_sec", l.cloud_cycles_per_sec);
    require_finite(v, "latency.cycles_per_bit", l.cycles_per_bit);
    if (std::isfinite(l.mec_cycles_per_sec) && l.mec_cycles_per_sec <= 0.0) {
        v.push_back("latency.mec_cycles_per_sec: must be > 0");
    }
    if (std::isfinite(l.cloud_cycles_per_sec) && l.cloud_cycles_per_sec <= 0.0) {
        v.push_back("latency.cloud_cycles_per_sec: must be > 0");
    }
    if (std::isfinite(l.cycles_per_bit) && l.cycles_per_bit < 0.0) {
        v.push_back("latency.cycles_per_bit: must be >= 0");
    }

    return v;
}

ScenarioConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ParseError("config root must be a JSON object");

    ScenarioConfig cfg = default_config();

    check_keys(root, "",
               {"slot_duration_s", "horizon_slots", "warmup_slots", "seed", "architecture",
                "cluster_radius_m", "radio", "traffic", "mobility", "latency"});

    cfg.slot_duration_s = get_number(root, "", "slot_duration_s", cfg.slot_duration_s);
    cfg.horizon_slots = get_integer(root, "", "horizon_slots", cfg.horizon_slots);
    cfg.seed = static_cast<std::uint64_t>(
        get_integer(root, "", "seed", static_cast<std::int64_t>(cfg.seed)));
    cfg.architecture =
        parse_architecture(get_string(root, "", "architecture", to_string(cfg.architecture)), "architecture");
    cfg.cluster_radius_m = get_number(root, "", "cluster_radius_m", cfg.cluster_radius_m);

    if (root.contains("radio")) {
        const json& r = root.at("radio");
        if (!r.is_object()) throw ParseError("config key \"radio\" must be an object");
        check_keys(r, "radio",
                   {"carrier_freq_ghz", "bandwidth_ul_hz", "bandwidth_dl_hz", "tx_power_ue_dbm",
                    "tx_power_enb_dbm", "noise_density_dbm_hz", "h_enb_m", "h_ue_m",
                    "shadowing_sigma_db", "fading"});
        RadioParams& p = cfg.radio;
        p.carrier_freq_ghz = get_number(r, "radio", "carrier_freq_ghz", p.carrier_freq_ghz);
        p.bandwidth_ul_hz = get_number(r, "radio", "bandwidth_ul_hz", p.bandwidth_ul_hz);
        p.bandwidth_dl_hz = get_number(r, "radio", "bandwidth_dl_hz", p.bandwidth_dl_hz);
        p.tx_power_ue_dbm = get_number(r, "radio", "tx_power_ue_dbm", p.tx_power_ue_dbm);
        p.tx_power_enb_dbm = get_number(r, "radio", "tx_power_enb_dbm", p.tx_power_enb_dbm);
        p.noise_density_dbm_hz =
            get_number(r, "radio", "noise_density_dbm_hz", p.noise_density_dbm_hz);
        p.h_enb_m = get_number(r, "radio", "h_enb_m", p.h_enb_m);
        p.h_ue_m = get_number(r, "radio", "h_ue_m", p.h_ue_m);
        p.shadowing_sigma_db = get_number(r, "radio", "shadowing_sigma_db", p.shadowing_sigma_db);
        p.fading = parse_fading(get_string(r, "radio", "fading", to_string(p.fading)), "radio.fading");
    }

    std::int64_t default_warmup = 0;
    if (root.contains("traffic")) {
        const json& t = root.at("traffic");
        if (!t.is_object()) throw ParseError("config key \"traffic\" must be an object");
        check_keys(t, "traffic",
                   {"num_vrus", "period_s", "packet_bits_min", "packet_bits_max", "offset_mode"});
        TrafficParams& p = cfg.traffic;
        p.num_vrus = static_cast<int>(get_integer(t, "traffic", "num_vrus", p.num_vrus));
        p.period_s = get_number(t, "traffic", "period_s", p.period_s);
        p.packet_bits_min = get_integer(t, "traffic", "packet_bits_min", p.packet_bits_min);
        p.packet_bits_max = get_integer(t, "traffic", "packet_bits_max", p.packet_bits_max);
        p.offset_mode = parse_offset_mode(
            get_string(t, "traffic", "offset_mode", to_string(p.offset_mode)), "traffic.offset_mode");
    }
    // Warmup defaults to five message periods; compute it after traffic so a
    // file that sets period_s but not warmup_slots gets a matching warmup.
    if (cfg.slot_duration_s > 0.0 && std::isfinite(cfg.traffic.period_s)) {
        default_warmup = 5 * static_cast<std::int64_t>(
                                 std::llround(cfg.traffic.period_s / cfg.slot_duration_s));
    }
    cfg.warmup_slots = get_integer(root, "", "warmup_slots", default_warmup);

    if (root.contains("mobility")) {
        const json& m = root.at("mobility");
        if (!m.is_object()) throw ParseError("config key \"mobility\" must be an object");
        check_keys(m, "mobility",
                   {"road_length_m", "v_min_mps", "v_max_mps", "vehicles_per_direction",
                    "vru_area_position_m"});
        MobilityParams& p = cfg.mobility;
        p.road_length_m = get_number(m, "mobility", "road_length_m", p.road_length_m);
        p.v_min_mps = get_number(m, "mobility", "v_min_mps", p.v_min_mps);
        p.v_max_mps = get_number(m, "mobility", "v_max_mps", p.v_max_mps);
        p.vehicles_per_direction = static_cast<int>(
            get_integer(m, "mobility", "vehicles_per_direction", p.vehicles_per_direction));
        p.vru_area_position_m =
            get_number(m, "mobility", "vru_area_position_m", p.vru_area_position_m);
    }

    if (root.contains("latency")) {
        const json& l = root.at("latency");
        if (!l.is_object()) throw ParseError("config key \"latency\" must be an object");
        check_keys(l, "latency",
                   {"backhaul", "transport", "core", "mec_cycles_per_sec", "cloud_cycles_per_sec",
                    "cycles_per_bit", "processing"});
        LatencyParams& p = cfg.latency;
        if (l.contains("backhaul")) {
            p.backhaul = parse_delay(l.at("backhaul"), "latency.backhaul", p.backhaul);
        }
        if (l.contains("transport")) {
            p.transport = parse_delay(l.at("transport"), "latency.transport", p.transport);
        }
        if (l.contains("core")) p.core = parse_delay(l.at("core"), "latency.core", p.core);
        p.mec_cycles_per_sec =
            get_number(l, "latency", "mec_cycles_per_sec", p.mec_cycles_per_sec);
        p.cloud_cycles_per_sec =
            get_number(l, "latency", "cloud_cycles_per_sec", p.cloud_cycles_per_sec);
        p.cycles_per_bit = get_number(l, "latency", "cycles_per_bit", p.cycles_per_bit);
        p.processing = parse_processing(
            get_string(l, "latency", "processing", to_string(p.processing)), "latency.processing");
    }

    const std::vector<std::string> violations = validate(cfg);
    if (!violations.empty()) {
        std::string msg = "invalid config:";
        for (const auto& item : violations) msg += "\n  - " + item;
        throw ValidationError(msg);
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

namespace {

json config_to_json(const ScenarioConfig& cfg) {
    json root;
    root["slot_duration_s"] = cfg.slot_duration_s;
    root["horizon_slots"] = cfg.horizon_slots;
    root["warmup_slots"] = cfg.warmup_slots;
    root["seed"] = cfg.seed;
    root["architecture"] = to_string(cfg.architecture);
    root["cluster_radius_m"] = cfg.cluster_radius_m;

    json& r = root["radio"];
    r["carrier_freq_ghz"] = cfg.radio.carrier_freq_ghz;
    r["bandwidth_ul_hz"] = cfg.radio.bandwidth_ul_hz;
    r["bandwidth_dl_hz"] = cfg.radio.bandwidth_dl_hz;
    r["tx_power_ue_dbm"] = cfg.radio.tx_power_ue_dbm;
    r["tx_power_enb_dbm"] = cfg.radio.tx_power_enb_dbm;
    r["noise_density_dbm_hz"] = cfg.radio.noise_density_dbm_hz;
    r["h_enb_m"] = cfg.radio.h_enb_m;
    r["h_ue_m"] = cfg.radio.h_ue_m;
    r["shadowing_sigma_db"] = cfg.radio.shadowing_sigma_db;
    r["fading"] = to_string(cfg.radio.fading);

    json& t = root["traffic"];
    t["num_vrus"] = cfg.traffic.num_vrus;
    t["period_s"] = cfg.traffic.period_s;
    t["packet_bits_min"] = cfg.traffic.packet_bits_min;
    t["packet_bits_max"] = cfg.traffic.packet_bits_max;
    t["offset_mode"] = to_string(cfg.traffic.offset_mode);

    json& m = root["mobility"];
    m["road_length_m"] = cfg.mobility.road_length_m;
    m["v_min_mps"] = cfg.mobility.v_min_mps;
    m["v_max_mps"] = cfg.mobility.v_max_mps;
    m["vehicles_per_direction"] = cfg.mobility.vehicles_per_direction;
    m["vru_area_position_m"] = cfg.mobility.vru_area_position_m;

    json& l = root["latency"];
    l["backhaul"] = delay_to_json(cfg.latency.backhaul);
    l["transport"] = delay_to_json(cfg.latency.transport);
    l["core"] = delay_to_json(cfg.latency.core);
    l["mec_cycles_per_sec"] = cfg.latency.mec_cycles_per_sec;
    l["cloud_cycles_per_sec"] = cfg.latency.cloud_cycles_per_sec;
    l["cycles_per_bit"] = cfg.latency.cycles_per_bit;
    l["processing"] = to_string(cfg.latency.processing);

    return root;
}

}  // namespace

std::string serialize_config(const ScenarioConfig& cfg) { return config_to_json(cfg).dump(2); }

std::string config_digest(const ScenarioConfig& cfg) {
    json root = config_to_json(cfg);
    root.erase("seed");
    root.erase("architecture");
    const std::string canonical = root.dump();
    // FNV-1a 64-bit.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace vrusim

#include "vrusim/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "vrusim/errors.hpp"

namespace vrusim {

namespace {

using nlohmann::json;

constexpr const char* kCsvHeader =
    "axis,arch,paoi_ms_mean,paoi_ms_std,e2e_ms_mean,e2e_ms_std,reps,seed,config_digest";

// Shortest decimal representation that parses back to the same double, so
// output files are both readable and byte-reproducible. Integral values keep
// plain notation ("50", not "5e+01").
std::string format_double(double value) {
    char buf[64];
    if (value == std::floor(value) && std::fabs(value) < 1e15) {
        std::snprintf(buf, sizeof(buf), "%.0f", value);
        return buf;
    }
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, value);
        if (std::strtod(buf, nullptr) == value) break;
    }
    return buf;
}

Architecture parse_arch_token(const std::string& token) {
    if (token == "conventional") return Architecture::Conventional;
    if (token == "mec") return Architecture::Mec;
    throw ParseError("unknown architecture token '" + token + "'");
}

double parse_double_field(const std::string& token, const char* field) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0' || errno == ERANGE) {
        throw ParseError(std::string("bad numeric field '") + field + "': '" + token + "'");
    }
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(current);
    return fields;
}

double ms(double seconds) { return seconds * 1e3; }

}  // namespace

std::vector<OutputRecord> records_from_sweep(const SweepResult& sweep) {
    std::vector<OutputRecord> records;
    records.reserve(sweep.points.size() * 2);
    for (const auto& point : sweep.points) {
        const double axis = sweep.axis == SweepAxis::Interarrival ? ms(point.axis_value)
                                                                  : point.axis_value;
        for (Architecture arch : {Architecture::Conventional, Architecture::Mec}) {
            const ArchStats& stats =
                arch == Architecture::Conventional ? point.conventional : point.mec;
            OutputRecord rec;
            rec.axis_value = axis;
            rec.arch = arch;
            rec.paoi_ms_mean = ms(stats.paoi_mean_s);
            rec.paoi_ms_std = ms(stats.paoi_std_s);
            rec.e2e_ms_mean = ms(stats.e2e_mean_s);
            rec.e2e_ms_std = ms(stats.e2e_std_s);
            rec.reps = stats.replications;
            rec.seed = sweep.seed;
            rec.config_digest = sweep.config_digest;
            records.push_back(std::move(rec));
        }
    }
    return records;
}

std::string results_to_csv(const std::vector<OutputRecord>& records) {
    if (records.empty()) throw IoError("refusing to write an empty result set");
    std::string out = kCsvHeader;
    out.push_back('\n');
    for (const auto& rec : records) {
        out += format_double(rec.axis_value);
        out.push_back(',');
        out += to_string(rec.arch);
        out.push_back(',');
        out += format_double(rec.paoi_ms_mean);
        out.push_back(',');
        out += format_double(rec.paoi_ms_std);
        out.push_back(',');
        out += format_double(rec.e2e_ms_mean);
        out.push_back(',');
        out += format_double(rec.e2e_ms_std);
        out.push_back(',');
        out += std::to_string(rec.reps);
        out.push_back(',');
        out += std::to_string(rec.seed);
        out.push_back(',');
        out += rec.config_digest;
        out.push_back('\n');
    }
    return out;
}

std::string results_to_json(const std::vector<OutputRecord>& records) {
    if (records.empty()) throw IoError("refusing to write an empty result set");
    json rows = json::array();
    for (const auto& rec : records) {
        json row;
        row["axis"] = rec.axis_value;
        row["arch"] = to_string(rec.arch);
        row["paoi_ms_mean"] = rec.paoi_ms_mean;
        row["paoi_ms_std"] = rec.paoi_ms_std;
        row["e2e_ms_mean"] = rec.e2e_ms_mean;
        row["e2e_ms_std"] = rec.e2e_ms_std;
        row["reps"] = rec.reps;
        row["seed"] = rec.seed;
        row["config_digest"] = rec.config_digest;
        rows.push_back(std::move(row));
    }
    return rows.dump(2) + "\n";
}

std::vector<OutputRecord> parse_results_csv(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty results file");
    if (line == std::string(kCsvHeader) + "\r") line.pop_back();
    if (line != kCsvHeader) throw ParseError("unrecognized results header: '" + line + "'");
    std::vector<OutputRecord> records;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 9) {
            throw ParseError("expected 9 fields per row, got " +
                             std::to_string(fields.size()));
        }
        OutputRecord rec;
        rec.axis_value = parse_double_field(fields[0], "axis");
        rec.arch = parse_arch_token(fields[1]);
        rec.paoi_ms_mean = parse_double_field(fields[2], "paoi_ms_mean");
        rec.paoi_ms_std = parse_double_field(fields[3], "paoi_ms_std");
        rec.e2e_ms_mean = parse_double_field(fields[4], "e2e_ms_mean");
        rec.e2e_ms_std = parse_double_field(fields[5], "e2e_ms_std");
        rec.reps = static_cast<int>(parse_double_field(fields[6], "reps"));
        rec.seed = std::strtoull(fields[7].c_str(), nullptr, 10);
        rec.config_digest = fields[8];
        records.push_back(std::move(rec));
    }
    return records;
}

std::string sim_result_to_json(const SimResult& result) {
    json root;
    root["architecture"] = to_string(result.architecture);
    root["config_digest"] = result.config_digest;
    root["seed"] = result.seed;
    root["network_paoi_ms"] = ms(result.paoi.network_paoi_s);
    root["mean_e2e_ms"] = ms(result.paoi.mean_e2e_s);
    json counters;
    counters["generated"] = result.counters.generated;
    counters["delivered"] = result.counters.delivered;
    counters["delivered_post_warmup"] = result.counters.delivered_post_warmup;
    counters["stale_ignored"] = result.counters.stale_ignored;
    counters["unobserved"] = result.counters.unobserved;
    counters["no_observer_at_generation"] = result.counters.no_observer_at_generation;
    counters["in_flight_at_end"] = result.counters.in_flight_at_end;
    root["counters"] = std::move(counters);
    json per_vru = json::array();
    for (const auto& [vru, paoi_s] : result.paoi.per_vru_paoi_s) {
        json entry;
        entry["vru"] = vru;
        entry["paoi_ms"] = ms(paoi_s);
        per_vru.push_back(std::move(entry));
    }
    root["per_vru_paoi_ms"] = std::move(per_vru);
    if (result.packet_log) {
        json packets = json::array();
        for (const auto& p : *result.packet_log) {
            json entry;
            entry["vru"] = p.vru;
            entry["seq"] = p.seq;
            entry["gen_slot"] = p.gen_slot;
            entry["delivery_slot"] = p.delivery_slot;
            entry["t_ul_ms"] = ms(p.breakdown.t_ul_s);
            entry["t_bh_ms"] = ms(p.breakdown.t_bh_s);
            entry["t_tn_ms"] = ms(p.breakdown.t_tn_s);
            entry["t_cn_ms"] = ms(p.breakdown.t_cn_s);
            entry["t_exc_ms"] = ms(p.breakdown.t_exc_s);
            entry["t_dl_ms"] = ms(p.breakdown.t_dl_s);
            entry["e2e_ms"] = ms(p.breakdown.e2e_s);
            packets.push_back(std::move(entry));
        }
        root["packets"] = std::move(packets);
    }
    return root.dump(2) + "\n";
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

void write_results(const std::vector<OutputRecord>& records, OutputFormat format,
                   const std::string& path) {
    write_text(path, format == OutputFormat::Csv ? results_to_csv(records)
                                                 : results_to_json(records));
}

}  // namespace vrusim

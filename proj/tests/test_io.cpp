#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "vrusim/errors.hpp"
#include "vrusim/io.hpp"

using namespace vrusim;

namespace {

OutputRecord make_record(double axis, Architecture arch) {
    OutputRecord rec;
    rec.axis_value = axis;
    rec.arch = arch;
    rec.paoi_ms_mean = 148.48013156349265;
    rec.paoi_ms_std = 3.340992154044791;
    rec.e2e_ms_mean = 48.48019999859124;
    rec.e2e_ms_std = 3.341723372747878;
    rec.reps = 5;
    rec.seed = 42;
    rec.config_digest = "93086501de97322f";
    return rec;
}

SweepResult make_sweep() {
    SweepResult sweep;
    sweep.axis = SweepAxis::Density;
    sweep.seed = 42;
    sweep.config_digest = "93086501de97322f";
    for (double k : {50.0, 100.0}) {
        SweepPoint point;
        point.axis_value = k;
        point.conventional.paoi_mean_s = 0.2 + k * 1e-4;
        point.conventional.replications = 3;
        point.mec.paoi_mean_s = 0.1 + k * 1e-4;
        point.mec.replications = 3;
        sweep.points.push_back(point);
    }
    return sweep;
}

}  // namespace

TEST_CASE("csv output carries the fixed header and full precision") {
    const std::vector<OutputRecord> records{make_record(50, Architecture::Conventional),
                                            make_record(50, Architecture::Mec)};
    const std::string csv = results_to_csv(records);
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header ==
          "axis,arch,paoi_ms_mean,paoi_ms_std,e2e_ms_mean,e2e_ms_std,reps,seed,config_digest");
    std::string row;
    std::getline(lines, row);
    CHECK(row.find("50,conventional,") == 0);  // integral axis prints plain
    CHECK(row.find("e+") == std::string::npos);
    std::getline(lines, row);
    CHECK(row.find("50,mec,") == 0);
    CHECK_FALSE(std::getline(lines, row));  // nothing after the last record
}

TEST_CASE("csv round-trips bit-exactly") {
    std::vector<OutputRecord> records{make_record(50, Architecture::Conventional),
                                      make_record(100, Architecture::Mec)};
    records[1].paoi_ms_mean = 1.0 / 3.0;  // needs all 17 digits
    records[1].seed = 18446744073709551615ULL;
    const auto parsed = parse_results_csv(results_to_csv(records));
    REQUIRE(parsed.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(parsed[i].axis_value == records[i].axis_value);
        CHECK(parsed[i].arch == records[i].arch);
        CHECK(parsed[i].paoi_ms_mean == records[i].paoi_ms_mean);
        CHECK(parsed[i].paoi_ms_std == records[i].paoi_ms_std);
        CHECK(parsed[i].e2e_ms_mean == records[i].e2e_ms_mean);
        CHECK(parsed[i].e2e_ms_std == records[i].e2e_ms_std);
        CHECK(parsed[i].reps == records[i].reps);
        CHECK(parsed[i].seed == records[i].seed);
        CHECK(parsed[i].config_digest == records[i].config_digest);
    }
}

TEST_CASE("empty result sets are refused") {
    CHECK_THROWS_AS(results_to_csv({}), IoError);
    CHECK_THROWS_AS(results_to_json({}), IoError);
}

TEST_CASE("malformed csv is rejected") {
    CHECK_THROWS_AS(parse_results_csv(""), ParseError);
    CHECK_THROWS_AS(parse_results_csv("wrong,header\n"), ParseError);
    const std::string good = results_to_csv({make_record(50, Architecture::Mec)});
    CHECK_THROWS_AS(parse_results_csv(good + "1,2,3\n"), ParseError);
    CHECK_THROWS_AS(parse_results_csv(good + "1,alien,0,0,0,0,1,1,x\n"), ParseError);
}

TEST_CASE("sweep flattening orders rows by point, conventional first") {
    const auto records = records_from_sweep(make_sweep());
    REQUIRE(records.size() == 4);
    CHECK(records[0].axis_value == 50.0);
    CHECK(records[0].arch == Architecture::Conventional);
    CHECK(records[1].axis_value == 50.0);
    CHECK(records[1].arch == Architecture::Mec);
    CHECK(records[2].axis_value == 100.0);
    CHECK(records[2].arch == Architecture::Conventional);
    CHECK(records[3].arch == Architecture::Mec);
    CHECK(records[0].paoi_ms_mean == doctest::Approx(205.0));
    CHECK(records[1].paoi_ms_mean == doctest::Approx(105.0));
    CHECK(records[0].seed == 42);
    CHECK(records[0].config_digest == "93086501de97322f");
}

TEST_CASE("interarrival axis values are reported in milliseconds") {
    SweepResult sweep = make_sweep();
    sweep.axis = SweepAxis::Interarrival;
    sweep.points[0].axis_value = 0.05;
    sweep.points[1].axis_value = 0.1;
    const auto records = records_from_sweep(sweep);
    CHECK(records[0].axis_value == doctest::Approx(50.0));
    CHECK(records[2].axis_value == doctest::Approx(100.0));
}

TEST_CASE("json results mirror the csv columns") {
    const std::string json = results_to_json({make_record(50, Architecture::Mec)});
    for (const char* key : {"\"axis\"", "\"arch\"", "\"paoi_ms_mean\"", "\"paoi_ms_std\"",
                            "\"e2e_ms_mean\"", "\"e2e_ms_std\"", "\"reps\"", "\"seed\"",
                            "\"config_digest\""}) {
        CHECK(json.find(key) != std::string::npos);
    }
    CHECK(json.find("\"mec\"") != std::string::npos);
}

TEST_CASE("run reports never leak wall-clock time") {
    SimResult result;
    result.config_digest = "93086501de97322f";
    result.seed = 42;
    result.architecture = Architecture::Mec;
    result.paoi.per_vru_paoi_s[0] = 0.148;
    result.paoi.network_paoi_s = 0.148;
    result.paoi.mean_e2e_s = 0.048;
    result.runtime_s = 12.5;  // varies between machines; must not be serialized
    const std::string json = sim_result_to_json(result);
    CHECK(json.find("runtime") == std::string::npos);
    CHECK(json.find("12.5") == std::string::npos);
    CHECK(json.find("\"network_paoi_ms\": 148.0") != std::string::npos);
    CHECK(json.find("\"architecture\": \"mec\"") != std::string::npos);
    // the packet log appears only when it was collected
    CHECK(json.find("packets") == std::string::npos);
    result.packet_log.emplace();
    PacketLogEntry entry;
    entry.vru = 3;
    entry.seq = 1;
    entry.gen_slot = 100;
    entry.delivery_slot = 140;
    entry.breakdown.e2e_s = 0.040;
    result.packet_log->push_back(entry);
    const std::string with_log = sim_result_to_json(result);
    CHECK(with_log.find("\"packets\"") != std::string::npos);
    CHECK(with_log.find("\"delivery_slot\": 140") != std::string::npos);
}

TEST_CASE("text lands where it was pointed") {
    const std::string path = "/tmp/vrusim_io_test.txt";
    write_text(path, "payload\n");
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    CHECK(content == "payload\n");
    std::remove(path.c_str());
    CHECK_THROWS_AS(write_text("/nonexistent_dir_xyz/out.csv", "x"), IoError);
}

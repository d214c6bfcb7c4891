#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace perron {

using json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DirectionSpec {
    std::string kind = "power";  // "power" | "lacunary"
    double s = 1.0;              // power: u_k = k^s
    double lambda = 0.5;         // lacunary: slopes lambda^k
    int count = 64;
};

struct ExperimentConfig {
    std::string experiment;  // good | bad | lattice | trapezium | transfer | coboundary
    DirectionSpec directions;
    int block_from = 0;
    int block_to = 3;
    double delta_min = 16;
    double delta_max = 2048;
    std::vector<double> lambdas{0.01, 0.02};
    std::vector<double> ps{1.5, 2.0, 4.0};
    std::uint64_t seed = 0;
    std::string out_dir = "out";

    // good experiment
    int rect_count = 50;
    double l_min = 4;
    double l_max = 53;
    double aspect_min = 2;
    double aspect_max = 32;
    std::vector<std::int64_t> supports{10, 100, 1000};
    double bound_factor = 4.0;

    // trapezium experiment
    std::vector<std::pair<double, double>> trapezium_cases{{1, 0}, {2, 1}, {5, 0.5}};
    int trapezium_random_cases = 100;

    // transfer experiment
    int transfer_window = 50;

    // coboundary experiment
    int coboundary_instances = 200;

    std::vector<double> delta_grid() const;  // doubling grid [delta_min, delta_max]
};

ExperimentConfig parse_config(const json& j);

struct Verdict {
    std::string id;       // criterion identifier
    std::string anchor;   // statement being checked
    bool pass = false;
    std::string details;
};

struct ExperimentReport {
    json config_echo;
    json metrics;
    std::vector<Verdict> verdicts;
    std::vector<std::pair<std::string, std::string>> provenance;  // constant -> origin
    std::string csv;
    std::vector<std::pair<std::string, std::string>> figures;  // filename -> svg body
    bool partial_failure = false;  // some step could not complete

    bool all_pass() const;
    json to_json() const;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

ExperimentReport run_bad_experiment(const ExperimentConfig& cfg);
ExperimentReport run_good_experiment(const ExperimentConfig& cfg);
ExperimentReport run_lattice_suite(const ExperimentConfig& cfg);
ExperimentReport run_trapezium_suite(const ExperimentConfig& cfg);
ExperimentReport run_transfer_suite(const ExperimentConfig& cfg);
ExperimentReport run_coboundary_suite(const ExperimentConfig& cfg);

// Writes report.json, metrics.csv and figures/*.svg under out_dir.
void write_report(const ExperimentReport& rep, const std::string& out_dir);

std::string format_double(double v);  // fixed %.12g used everywhere in CSV

}  // namespace perron

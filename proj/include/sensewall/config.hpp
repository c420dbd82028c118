#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sensewall/fusion.hpp"
#include "sensewall/montecarlo.hpp"

#include <json.hpp>

namespace sensewall {

// Any problem with the experiment file: syntax, missing fields, bad values.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// SNR with its unit as written in the file, so a config round-trips verbatim.
// Exactly one of snr_db / snr_linear must appear per sensor.
struct SnrSpec {
    bool is_db = false;
    double value = 0.0;

    double linear() const;

    bool operator==(const SnrSpec&) const = default;
};

struct SensorEntry {
    double L_dB = 0.0;
    SnrSpec snr;
    double noise_power = 1.0;

    bool operator==(const SensorEntry&) const = default;
};

struct SweepSpec {
    double lambda_min = 1.0;
    double lambda_max = 1.5;
    int points = 100;

    bool operator==(const SweepSpec&) const = default;
};

struct OutputSpec {
    std::string path;  // empty: CSV goes to stdout
    std::string format = "csv";

    bool operator==(const OutputSpec&) const = default;
};

struct ExperimentConfig {
    DetectorParams detector;
    std::vector<SensorEntry> sensors;
    FusionRule rule;
    SweepSpec sweep;
    SimSpec sim;
    OutputSpec output;
    double validate_kp_scale = 1.0;  // testing hook for the validate moment check

    NetworkConfig network() const;
    std::vector<double> lambda_grid() const;

    bool operator==(const ExperimentConfig& other) const;
};

ExperimentConfig parse_experiment_config(const nlohmann::json& j);
ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);

nlohmann::ordered_json to_json(const ExperimentConfig& config);

}  // namespace sensewall

#include "sensewall/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "sensewall/wall.hpp"

namespace sensewall {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError("config error at " + where + ": " + what);
}

const json& member(const json& j, const std::string& where, const char* key) {
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where + "." + key, "missing required field");
    return *it;
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
}

long integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<long>();
}

bool boolean(const json& j, const std::string& where) {
    if (!j.is_boolean()) fail(where, "expected a boolean");
    return j.get<bool>();
}

std::string text(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

FusionRule parse_rule(const json& j, const std::string& where) {
    const std::string type = text(member(j, where, "type"), where + ".type");
    if (type == "or") return FusionRule::OR();
    if (type == "and") return FusionRule::AND();
    if (type == "soft_egc") return FusionRule::SoftEGC();
    if (type == "k_of_m") {
        const long k = integer(member(j, where, "k"), where + ".k");
        if (k < 1) fail(where + ".k", "k must be >= 1");
        return FusionRule::KofM(static_cast<int>(k));
    }
    fail(where + ".type", "expected one of \"or\", \"and\", \"k_of_m\", \"soft_egc\"");
}

SensorEntry parse_sensor(const json& j, const std::string& where) {
    SensorEntry sensor;
    sensor.L_dB = number(member(j, where, "L_dB"), where + ".L_dB");
    if (sensor.L_dB < 0.0) fail(where + ".L_dB", "must be >= 0");

    const bool has_db = j.contains("snr_db");
    const bool has_linear = j.contains("snr_linear");
    if (has_db == has_linear) {
        fail(where, "exactly one of snr_db / snr_linear is required");
    }
    sensor.snr.is_db = has_db;
    sensor.snr.value = number(j.at(has_db ? "snr_db" : "snr_linear"),
                              where + (has_db ? ".snr_db" : ".snr_linear"));
    if (!has_db && sensor.snr.value < 0.0) fail(where + ".snr_linear", "must be >= 0");

    if (j.contains("noise_power")) {
        sensor.noise_power = number(j.at("noise_power"), where + ".noise_power");
        if (!(sensor.noise_power > 0.0)) fail(where + ".noise_power", "must be > 0");
    }
    return sensor;
}

}  // namespace

double SnrSpec::linear() const { return is_db ? db_to_linear(value) : value; }

NetworkConfig ExperimentConfig::network() const {
    NetworkConfig net;
    net.params = detector;
    net.rule = rule;
    net.sensors.reserve(sensors.size());
    for (const auto& s : sensors) {
        net.sensors.push_back({UncertaintyBound{s.L_dB}, s.snr.linear(), s.noise_power});
    }
    net.validate();
    return net;
}

std::vector<double> ExperimentConfig::lambda_grid() const {
    std::vector<double> grid(static_cast<size_t>(sweep.points));
    if (sweep.points == 1) {
        grid[0] = sweep.lambda_min;
        return grid;
    }
    const double step = (sweep.lambda_max - sweep.lambda_min) / (sweep.points - 1);
    for (int i = 0; i < sweep.points; ++i) grid[static_cast<size_t>(i)] = sweep.lambda_min + i * step;
    return grid;
}

bool ExperimentConfig::operator==(const ExperimentConfig& other) const {
    return detector.p == other.detector.p && detector.N == other.detector.N &&
           sensors == other.sensors && rule == other.rule && sweep == other.sweep &&
           sim.trials == other.sim.trials && sim.seed == other.sim.seed &&
           sim.resample_beta_per_trial == other.sim.resample_beta_per_trial &&
           output == other.output && validate_kp_scale == other.validate_kp_scale;
}

ExperimentConfig parse_experiment_config(const json& j) {
    ExperimentConfig config;

    const json& det = member(j, "config", "detector");
    config.detector.p = number(member(det, "detector", "p"), "detector.p");
    config.detector.N = integer(member(det, "detector", "N"), "detector.N");
    if (!(config.detector.p > 0.0)) fail("detector.p", "must be > 0");
    if (config.detector.N < 1) fail("detector.N", "must be >= 1");

    const json& sensors = member(j, "config", "sensors");
    if (!sensors.is_array() || sensors.empty()) fail("sensors", "expected a non-empty array");
    for (size_t i = 0; i < sensors.size(); ++i) {
        config.sensors.push_back(
            parse_sensor(sensors[i], "sensors[" + std::to_string(i) + "]"));
    }

    config.rule = parse_rule(member(j, "config", "rule"), "rule");
    if (config.rule.kind == FusionRule::Kind::k_of_m &&
        config.rule.k > static_cast<int>(config.sensors.size())) {
        fail("rule.k", "k may not exceed the number of sensors");
    }

    const json& sweep = member(j, "config", "sweep");
    config.sweep.lambda_min = number(member(sweep, "sweep", "lambda_min"), "sweep.lambda_min");
    config.sweep.lambda_max = number(member(sweep, "sweep", "lambda_max"), "sweep.lambda_max");
    config.sweep.points =
        static_cast<int>(integer(member(sweep, "sweep", "points"), "sweep.points"));
    if (config.sweep.points < 1) fail("sweep.points", "must be >= 1");
    if (config.sweep.points > 1 && !(config.sweep.lambda_min < config.sweep.lambda_max)) {
        fail("sweep", "lambda_min must be < lambda_max when points > 1");
    }

    if (j.contains("sim")) {
        const json& sim = j.at("sim");
        if (sim.contains("trials")) {
            config.sim.trials = integer(sim.at("trials"), "sim.trials");
            if (config.sim.trials < 1) fail("sim.trials", "must be >= 1");
        }
        if (sim.contains("seed")) {
            if (!sim.at("seed").is_number_integer()) fail("sim.seed", "expected an integer");
            config.sim.seed = sim.at("seed").get<std::uint64_t>();
        }
        if (sim.contains("resample_beta")) {
            config.sim.resample_beta_per_trial = boolean(sim.at("resample_beta"), "sim.resample_beta");
        }
    }

    if (j.contains("output")) {
        const json& out = j.at("output");
        if (out.contains("path")) config.output.path = text(out.at("path"), "output.path");
        if (out.contains("format")) {
            config.output.format = text(out.at("format"), "output.format");
            if (config.output.format != "csv") fail("output.format", "only \"csv\" is supported");
        }
    }

    if (j.contains("validate")) {
        const json& v = j.at("validate");
        if (v.contains("kp_scale")) {
            config.validate_kp_scale = number(v.at("kp_scale"), "validate.kp_scale");
            if (!(config.validate_kp_scale > 0.0)) fail("validate.kp_scale", "must be > 0");
        }
    }

    config.network();  // surfaces any remaining invariant violation now
    return config;
}

ExperimentConfig parse_experiment_config(const std::string& textual) {
    json j;
    try {
        j = json::parse(textual);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config error: ") + e.what());
    }
    return parse_experiment_config(j);
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config error: cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment_config(buffer.str());
}

nlohmann::ordered_json to_json(const ExperimentConfig& config) {
    nlohmann::ordered_json j;
    j["detector"] = {{"p", config.detector.p}, {"N", config.detector.N}};
    j["sensors"] = nlohmann::ordered_json::array();
    for (const auto& s : config.sensors) {
        nlohmann::ordered_json sensor;
        sensor["L_dB"] = s.L_dB;
        sensor[s.snr.is_db ? "snr_db" : "snr_linear"] = s.snr.value;
        sensor["noise_power"] = s.noise_power;
        j["sensors"].push_back(sensor);
    }
    switch (config.rule.kind) {
        case FusionRule::Kind::logical_or: j["rule"] = {{"type", "or"}}; break;
        case FusionRule::Kind::logical_and: j["rule"] = {{"type", "and"}}; break;
        case FusionRule::Kind::k_of_m:
            j["rule"] = {{"type", "k_of_m"}, {"k", config.rule.k}};
            break;
        case FusionRule::Kind::soft_egc: j["rule"] = {{"type", "soft_egc"}}; break;
    }
    j["sweep"] = {{"lambda_min", config.sweep.lambda_min},
                  {"lambda_max", config.sweep.lambda_max},
                  {"points", config.sweep.points}};
    j["sim"] = {{"trials", config.sim.trials},
                {"seed", config.sim.seed},
                {"resample_beta", config.sim.resample_beta_per_trial}};
    j["output"] = {{"path", config.output.path}, {"format", config.output.format}};
    if (config.validate_kp_scale != 1.0) {
        j["validate"] = {{"kp_scale", config.validate_kp_scale}};
    }
    return j;
}

}  // namespace sensewall

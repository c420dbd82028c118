#include "sensewall/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

#include "sensewall/montecarlo.hpp"
#include "sensewall/wall.hpp"

namespace sensewall {

std::string format_double(double v) {
    char buffer[32];
    const auto res = std::to_chars(buffer, buffer + sizeof(buffer), v);
    return std::string(buffer, res.ptr);
}

double analytic_qf(const NetworkConfig& net, double lambda, const QuadratureSpec& quad) {
    return net.rule.is_hard() ? hard_qf(net, lambda, quad) : soft_qf_avg(lambda, net, quad);
}

double analytic_qd(const NetworkConfig& net, double lambda, const QuadratureSpec& quad) {
    return net.rule.is_hard() ? hard_qd(net, lambda, quad) : soft_qd_avg(lambda, net, quad);
}

namespace {

constexpr const char* kCsvHeader = "lambda,qf,qd,source,std_error\n";

const char* rule_name(const FusionRule& rule) {
    switch (rule.kind) {
        case FusionRule::Kind::logical_or: return "OR";
        case FusionRule::Kind::logical_and: return "AND";
        case FusionRule::Kind::k_of_m: return "k-of-M";
        case FusionRule::Kind::soft_egc: return "soft EGC";
    }
    return "?";
}

void print_advisories(const ExperimentConfig& config, std::ostream& report) {
    if (config.detector.clt_advisory()) {
        report << "advisory: N = " << config.detector.N
               << " < 100; the Gaussian approximation behind the analytics is unreliable "
                  "at this sample count\n";
    }
}

void report_feasible_interval(const NetworkConfig& net, std::ostream& report) {
    try {
        const LambdaInterval iv = feasible_lambda(net);
        report << "asymptotic lambda interval: [" << format_double(iv.lo) << ", "
               << format_double(iv.hi) << "] "
               << (iv.feasible ? "(feasible)" : "(infeasible: no threshold achieves "
                                                "qf -> 0 and qd -> 1)")
               << "\n";
    } catch (const UnsupportedClosedForm&) {
        report << "asymptotic lambda interval: no closed form for soft combining with p != 2; "
                  "inspect the sweep instead\n";
    }
}

struct CheckResult {
    std::string name;
    bool pass = false;
    double deviation = 0.0;  // what the check measured
    double limit = 0.0;      // largest acceptable deviation
    std::string detail;
};

void print_checks(const std::vector<CheckResult>& checks, std::ostream& report) {
    std::vector<std::string> failures;
    for (const auto& c : checks) {
        report << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(28) << c.name
               << " deviation=" << format_double(c.deviation)
               << " limit=" << format_double(c.limit);
        if (!c.detail.empty()) report << "  (" << c.detail << ")";
        report << "\n";
        if (!c.pass) failures.push_back(c.name);
    }
    report << "failures: [";
    for (size_t i = 0; i < failures.size(); ++i) {
        report << (i ? "," : "") << "\"" << failures[i] << "\"";
    }
    report << "]\n";
}

// Central moments m1..m4 of |z|^p for z standard complex normal; since
// |z|^2 is unit exponential, E|z|^{kp} = Gamma(kp/2 + 1).
struct PowerLawMoments {
    double mean;
    double variance;
    double central4;
};

PowerLawMoments power_law_moments(double p) {
    const double m1 = gamma_fn(0.5 * p + 1.0);
    const double m2 = gamma_fn(p + 1.0);
    const double m3 = gamma_fn(1.5 * p + 1.0);
    const double m4 = gamma_fn(2.0 * p + 1.0);
    const double var = m2 - m1 * m1;
    const double c4 = m4 - 4.0 * m3 * m1 + 6.0 * m2 * m1 * m1 - 3.0 * m1 * m1 * m1 * m1;
    return {m1, var, c4};
}

}  // namespace

int cmd_wall(const ExperimentConfig& config, std::ostream& report) {
    const NetworkConfig net = config.network();
    print_advisories(config, report);

    std::vector<UncertaintyBound> bounds;
    bounds.reserve(net.sensors.size());
    for (const auto& s : net.sensors) bounds.push_back(s.bound);

    report << "rule: " << rule_name(net.rule);
    if (net.rule.kind == FusionRule::Kind::k_of_m) report << " (k = " << net.rule.k << ")";
    report << ", sensors: " << net.size() << "\n";

    if (net.rule.is_hard()) {
        const WallReport walls = wall_hard(bounds, net.rule);
        for (size_t i = 0; i < walls.per_sensor_walls.size(); ++i) {
            const double w = walls.per_sensor_walls[i];
            report << "sensor " << i + 1 << ": L = " << format_double(bounds[i].L_dB)
                   << " dB, snr wall = " << format_double(w) << " linear ("
                   << format_double(linear_to_db(w)) << " dB)\n";
        }
        report << "sensors that must meet their wall: " << walls.required_count << "\n";
    } else {
        const double sum = wall_soft(bounds);
        report << "snr-sum wall: " << format_double(sum) << " linear ("
               << format_double(linear_to_db(sum)) << " dB); the constraint is on the "
               << "summed SNR, not on any single sensor\n";
    }
    report_feasible_interval(net, report);
    return kExitOk;
}

int cmd_sweep(const ExperimentConfig& config, std::ostream& csv, std::ostream& report) {
    const NetworkConfig net = config.network();
    print_advisories(config, report);
    report_feasible_interval(net, report);

    const auto grid = config.lambda_grid();
    csv << kCsvHeader;
    bool any_unconverged = false;
    for (double lambda : grid) {
        bool flagged = false;
        double qf;
        double qd;
        try {
            qf = analytic_qf(net, lambda);
        } catch (const ConvergenceError& e) {
            qf = e.partial();
            flagged = true;
        }
        try {
            qd = analytic_qd(net, lambda);
        } catch (const ConvergenceError& e) {
            qd = e.partial();
            flagged = true;
        }
        if (flagged) {
            any_unconverged = true;
            report << "warning: quadrature did not converge at lambda = "
                   << format_double(lambda) << "; row flagged\n";
        }
        csv << format_double(lambda) << ',' << format_double(qf) << ',' << format_double(qd)
            << ',' << (flagged ? "analytic_unconverged" : "analytic") << ",\n";
    }
    return any_unconverged ? kExitConvergence : kExitOk;
}

int cmd_roc(const ExperimentConfig& config, std::ostream& csv, std::ostream& report) {
    const NetworkConfig net = config.network();
    print_advisories(config, report);

    const auto grid = config.lambda_grid();
    const auto mc = roc_points(net, grid, config.sim);

    csv << kCsvHeader;
    bool any_unconverged = false;
    for (size_t j = 0; j < grid.size(); ++j) {
        bool flagged = false;
        double qf;
        double qd;
        try {
            qf = analytic_qf(net, grid[j]);
        } catch (const ConvergenceError& e) {
            qf = e.partial();
            flagged = true;
        }
        try {
            qd = analytic_qd(net, grid[j]);
        } catch (const ConvergenceError& e) {
            qd = e.partial();
            flagged = true;
        }
        any_unconverged |= flagged;
        csv << format_double(grid[j]) << ',' << format_double(qf) << ',' << format_double(qd)
            << ',' << (flagged ? "analytic_unconverged" : "analytic") << ",\n";
        // std_error column carries the larger of the two binomial errors.
        const double se = std::max(mc[j].qf.std_error, mc[j].qd.std_error);
        csv << format_double(grid[j]) << ',' << format_double(mc[j].qf.value) << ','
            << format_double(mc[j].qd.value) << ",mc," << format_double(se) << "\n";
    }
    report << "monte carlo: trials = " << config.sim.trials << ", seed = " << config.sim.seed
           << ", resample_beta = " << (config.sim.resample_beta_per_trial ? "true" : "false")
           << "\n";
    return any_unconverged ? kExitConvergence : kExitOk;
}

namespace {

CheckResult moment_mean_check(const ExperimentConfig& config) {
    const double p = config.detector.p;
    const PowerLawMoments model = power_law_moments(p);
    constexpr long kDraws = 1000000;
    Xoshiro256pp rng = Xoshiro256pp::for_stream(config.sim.seed, 101);
    double sum = 0.0;
    for (long i = 0; i < kDraws; ++i) {
        auto [re, im] = normal_pair(rng);
        const double power = 0.5 * (re * re + im * im);
        sum += std::pow(power, 0.5 * p);
    }
    const double mean = sum / kDraws;
    const double se = std::sqrt(model.variance / kDraws);
    const double dev = std::abs(mean - model.mean);
    return {"moment_mean", dev <= 3.0 * se, dev, 3.0 * se,
            "sample mean of |z|^p vs G_p at p=" + format_double(p)};
}

CheckResult moment_variance_check(const ExperimentConfig& config) {
    const double p = config.detector.p;
    const PowerLawMoments model = power_law_moments(p);
    const double expected_var = config.validate_kp_scale * model.variance;
    constexpr long kDraws = 1000000;
    Xoshiro256pp rng = Xoshiro256pp::for_stream(config.sim.seed, 102);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (long i = 0; i < kDraws; ++i) {
        auto [re, im] = normal_pair(rng);
        const double power = 0.5 * (re * re + im * im);
        const double x = std::pow(power, 0.5 * p);
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / kDraws;
    const double var = sum_sq / kDraws - mean * mean;
    const double se = std::sqrt((model.central4 - model.variance * model.variance) / kDraws);
    const double dev = std::abs(var - expected_var);
    return {"moment_variance", dev <= 3.0 * se, dev, 3.0 * se,
            "sample variance of |z|^p vs K_p at p=" + format_double(p)};
}

std::pair<CheckResult, CheckResult> statistic_moment_checks(const ExperimentConfig& config) {
    const NetworkConfig net = config.network();
    const DetectorParams& params = net.params;
    const double noise = net.sensors.front().nominal_noise_power;
    const double snr = net.sensors.front().snr;
    const long trials = std::clamp<long>(20000000 / params.N, 200, 4000);

    Xoshiro256pp rng = Xoshiro256pp::for_stream(config.sim.seed, 103);
    double sum0 = 0.0, sq0 = 0.0, sum1 = 0.0, sq1 = 0.0;
    for (long t = 0; t < trials; ++t) {
        const double t0 = simulate_statistic(params, noise, 0.0, Hypothesis::h0, rng);
        const double t1 = simulate_statistic(params, noise, snr, Hypothesis::h1, rng);
        sum0 += t0;
        sq0 += t0 * t0;
        sum1 += t1;
        sq1 += t1 * t1;
    }
    const GaussianMoments m0 = moments_h0(params, noise);
    const GaussianMoments m1 = moments_h1(params, noise, 1.0, snr);
    const PowerLawMoments pl = power_law_moments(params.p);
    const double excess =
        pl.central4 / (pl.variance * pl.variance) - 3.0;  // kurtosis of one sample term

    const double mean0 = sum0 / trials;
    const double var0 = sq0 / trials - mean0 * mean0;
    const double mean1 = sum1 / trials;
    const double var1 = sq1 / trials - mean1 * mean1;

    const double se_mean = std::sqrt(m0.variance / trials);
    const double var_se_factor = std::sqrt((2.0 + excess / params.N) / trials);
    const double dev_mean =
        std::max(std::abs(mean0 - m0.mean) / std::sqrt(m0.variance / trials),
                 std::abs(mean1 - m1.mean) / std::sqrt(m1.variance / trials));
    const double dev_var = std::max(std::abs(var0 - m0.variance) / (m0.variance * var_se_factor),
                                    std::abs(var1 - m1.variance) / (m1.variance * var_se_factor));
    (void)se_mean;
    CheckResult mean_check{"statistic_mean", dev_mean <= 3.0, dev_mean, 3.0,
                           "simulated statistic mean vs model, z-score, both hypotheses"};
    CheckResult var_check{"statistic_variance", dev_var <= 3.0, dev_var, 3.0,
                          "simulated statistic variance vs model, z-score, both hypotheses"};
    return {mean_check, var_check};
}

CheckResult analytic_vs_mc_check(const ExperimentConfig& config) {
    const NetworkConfig net = config.network();
    const double p = net.params.p;
    const double gp = g_p(p);
    double b_max = 1.0;
    double boost_max = 1.0;
    double a_min = 1.0;
    for (const auto& s : net.sensors) {
        const auto [a, b] = beta_bounds(s.bound);
        a_min = std::min(a_min, a);
        b_max = std::max(b_max, b);
        boost_max = std::max(boost_max, std::pow(1.0 + b * s.snr, 0.5 * p));
    }
    const double lo = 0.85 * gp * std::pow(a_min, 0.5 * p);
    const double hi = 1.1 * gp * std::pow(b_max, 0.5 * p) * boost_max;
    constexpr int kPoints = 7;
    std::vector<double> grid(kPoints);
    for (int i = 0; i < kPoints; ++i) grid[i] = lo + (hi - lo) * i / (kPoints - 1);

    SimSpec sim = config.sim;
    const long budget = 200000000 / (net.params.N * std::max(1, net.size()));
    sim.trials = std::clamp<long>(std::min(sim.trials, budget), 500, 20000);

    const auto mc = roc_points(net, grid, sim);
    double worst = 0.0;
    double worst_limit = 1.0;
    for (int i = 0; i < kPoints; ++i) {
        const double qf = analytic_qf(net, grid[i]);
        const double qd = analytic_qd(net, grid[i]);
        const double dev_f = std::abs(qf - mc[i].qf.value);
        const double dev_d = std::abs(qd - mc[i].qd.value);
        const double lim_f = std::max(0.02, 3.0 * mc[i].qf.std_error);
        const double lim_d = std::max(0.02, 3.0 * mc[i].qd.std_error);
        if (dev_f - lim_f > worst - worst_limit) {
            worst = dev_f;
            worst_limit = lim_f;
        }
        if (dev_d - lim_d > worst - worst_limit) {
            worst = dev_d;
            worst_limit = lim_d;
        }
    }
    return {"analytic_vs_mc", worst <= worst_limit, worst, worst_limit,
            "max |analytic - monte carlo| over " + std::to_string(kPoints) +
                " thresholds, trials=" + std::to_string(sim.trials)};
}

CheckResult wall_consistency_check(const ExperimentConfig& config) {
    const NetworkConfig net = config.network();
    std::vector<UncertaintyBound> bounds;
    for (const auto& s : net.sensors) bounds.push_back(s.bound);

    bool feasible_by_walls;
    if (net.rule.is_hard()) {
        const WallReport walls = wall_hard(bounds, net.rule);
        int meeting = 0;
        for (size_t i = 0; i < bounds.size(); ++i) {
            if (net.sensors[i].snr >= walls.per_sensor_walls[i] - 1e-12) ++meeting;
        }
        feasible_by_walls = meeting >= walls.required_count;
    } else {
        if (net.params.p != 2.0) {
            return {"wall_consistency", true, 0.0, 0.0,
                    "skipped: no closed form for soft combining with p != 2"};
        }
        double sum = 0.0;
        for (const auto& s : net.sensors) sum += s.snr;
        feasible_by_walls = sum >= wall_soft(bounds) - 1e-12;
    }
    const bool feasible_by_interval = feasible_lambda(net).feasible;
    const bool agree = feasible_by_walls == feasible_by_interval;
    return {"wall_consistency", agree, agree ? 0.0 : 1.0, 0.0,
            std::string("wall comparison says ") + (feasible_by_walls ? "feasible" : "infeasible") +
                ", lambda interval says " + (feasible_by_interval ? "feasible" : "infeasible")};
}

CheckResult pf_pd_identity_check(const ExperimentConfig& config) {
    NetworkConfig net = config.network();
    for (auto& s : net.sensors) s.snr = 0.0;  // no signal: detection must equal false alarm
    const double gp = g_p(net.params.p);
    double worst = 0.0;
    for (double lambda : {0.9 * gp, gp, 1.05 * gp, 1.2 * gp}) {
        const double qf = analytic_qf(net, lambda);
        const double qd = analytic_qd(net, lambda);
        worst = std::max(worst, std::abs(qf - qd));
    }
    return {"pf_pd_identity", worst <= 1e-12, worst, 1e-12,
            "qd with zero SNR must equal qf"};
}

CheckResult fixed_beta_check(const ExperimentConfig& config) {
    const NetworkConfig net = config.network();
    NetworkConfig certain = net;  // the analytic side with uncertainty switched off
    for (auto& s : certain.sensors) s.bound = UncertaintyBound{0.0};

    SimSpec sim = config.sim;
    sim.resample_beta_per_trial = false;
    const long budget = 200000000 / (net.params.N * std::max(1, net.size()));
    sim.trials = std::clamp<long>(std::min(sim.trials, budget), 500, 20000);

    const double gp = g_p(net.params.p);
    std::vector<double> grid = {0.97 * gp, gp, 1.03 * gp};
    const auto mc = roc_points(net, grid, sim);
    double worst = 0.0;
    double worst_limit = 1.0;
    for (size_t i = 0; i < grid.size(); ++i) {
        const double qf = analytic_qf(certain, grid[i]);
        const double qd = analytic_qd(certain, grid[i]);
        const double dev_f = std::abs(qf - mc[i].qf.value);
        const double dev_d = std::abs(qd - mc[i].qd.value);
        const double lim_f = std::max(0.02, 3.0 * mc[i].qf.std_error);
        const double lim_d = std::max(0.02, 3.0 * mc[i].qd.std_error);
        if (dev_f - lim_f > worst - worst_limit) {
            worst = dev_f;
            worst_limit = lim_f;
        }
        if (dev_d - lim_d > worst - worst_limit) {
            worst = dev_d;
            worst_limit = lim_d;
        }
    }
    return {"fixed_beta_agreement", worst <= worst_limit, worst, worst_limit,
            "resampling off reproduces the fixed-beta formulas"};
}

}  // namespace

int cmd_validate(const ExperimentConfig& config, std::ostream& report) {
    print_advisories(config, report);
    std::vector<CheckResult> checks;
    checks.push_back(moment_mean_check(config));
    checks.push_back(moment_variance_check(config));
    const auto [stat_mean, stat_var] = statistic_moment_checks(config);
    checks.push_back(stat_mean);
    checks.push_back(stat_var);
    checks.push_back(analytic_vs_mc_check(config));
    checks.push_back(wall_consistency_check(config));
    checks.push_back(pf_pd_identity_check(config));
    checks.push_back(fixed_beta_check(config));

    print_checks(checks, report);
    const bool all_pass =
        std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
    return all_pass ? kExitOk : kExitValidation;
}

}  // namespace sensewall

#include "sensewall/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace sensewall {

double simulate_statistic(const DetectorParams& params, double noise_power, double snr,
                          Hypothesis hypothesis, Xoshiro256pp& rng) {
    params.validate();
    if (!(noise_power > 0.0)) throw std::domain_error("simulate_statistic: noise_power must be > 0");
    if (snr < 0.0) throw std::domain_error("simulate_statistic: snr must be >= 0");

    const double sd_w = std::sqrt(0.5 * noise_power);           // per real component
    const double sd_s = std::sqrt(0.5 * snr * noise_power);
    const bool occupied = hypothesis == Hypothesis::h1;
    const bool square_law = params.p == 2.0;
    const double half_p = 0.5 * params.p;

    double acc = 0.0;
    for (long n = 0; n < params.N; ++n) {
        auto [w_re, w_im] = normal_pair(rng);
        double re = sd_w * w_re;
        double im = sd_w * w_im;
        if (occupied) {
            auto [s_re, s_im] = normal_pair(rng);
            re += sd_s * s_re;
            im += sd_s * s_im;
        }
        const double power = re * re + im * im;
        acc += square_law ? power : std::pow(power, half_p);
    }
    return acc / static_cast<double>(params.N);
}

namespace {

constexpr long kBlockTrials = 1024;

int resolve_threads(const SimSpec& spec) {
    int threads = spec.threads > 0 ? spec.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (const char* env = std::getenv("SENSEWALL_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1 && cap < threads) threads = cap;
    }
    return threads;
}

struct GridCounts {
    std::vector<long> false_alarms;  // one per lambda
    std::vector<long> detections;
};

// Runs the trials of one block against every grid threshold.
void run_block(const NetworkConfig& config, std::span<const double> lambda_grid,
               const SimSpec& spec, long block, GridCounts& out) {
    const size_t m = config.sensors.size();
    const size_t grid = lambda_grid.size();
    const long first = block * kBlockTrials;
    const long last = std::min(spec.trials, first + kBlockTrials);

    Xoshiro256pp rng = Xoshiro256pp::for_stream(spec.seed, static_cast<std::uint64_t>(block));

    std::vector<double> nominal_pow(m);  // nominal_noise_power^{p/2}
    for (size_t i = 0; i < m; ++i) {
        nominal_pow[i] = std::pow(config.sensors[i].nominal_noise_power, 0.5 * config.params.p);
    }
    double nominal_pow_mean = 0.0;
    for (double v : nominal_pow) nominal_pow_mean += v;
    nominal_pow_mean /= static_cast<double>(m);

    out.false_alarms.assign(grid, 0);
    out.detections.assign(grid, 0);

    std::vector<double> stat_h0(m);
    std::vector<double> stat_h1(m);
    const bool soft = !config.rule.is_hard();
    const int votes_needed = soft ? 0 : config.rule.required_votes(static_cast<int>(m));

    for (long t = first; t < last; ++t) {
        for (size_t i = 0; i < m; ++i) {
            const auto& sensor = config.sensors[i];
            const double beta =
                spec.resample_beta_per_trial ? sample_beta(sensor.bound, rng) : 1.0;
            const double true_noise = sensor.nominal_noise_power / beta;
            const double effective_snr = beta * sensor.snr;  // signal power stays nominal-referenced
            stat_h0[i] = simulate_statistic(config.params, true_noise, 0.0, Hypothesis::h0, rng);
            stat_h1[i] =
                simulate_statistic(config.params, true_noise, effective_snr, Hypothesis::h1, rng);
        }
        if (soft) {
            double fused_h0 = 0.0;
            double fused_h1 = 0.0;
            for (size_t i = 0; i < m; ++i) {
                fused_h0 += stat_h0[i];
                fused_h1 += stat_h1[i];
            }
            fused_h0 /= static_cast<double>(m);
            fused_h1 /= static_cast<double>(m);
            for (size_t j = 0; j < grid; ++j) {
                const double tau = lambda_grid[j] * nominal_pow_mean;
                if (fused_h0 > tau) ++out.false_alarms[j];
                if (fused_h1 > tau) ++out.detections[j];
            }
        } else {
            for (size_t j = 0; j < grid; ++j) {
                const double lambda = lambda_grid[j];
                int votes_h0 = 0;
                int votes_h1 = 0;
                for (size_t i = 0; i < m; ++i) {
                    const double tau = lambda * nominal_pow[i];
                    votes_h0 += stat_h0[i] > tau;
                    votes_h1 += stat_h1[i] > tau;
                }
                if (votes_h0 >= votes_needed) ++out.false_alarms[j];
                if (votes_h1 >= votes_needed) ++out.detections[j];
            }
        }
    }
}

std::vector<RocEstimate> run_grid(const NetworkConfig& config,
                                  std::span<const double> lambda_grid, const SimSpec& spec) {
    config.validate();
    if (spec.trials < 1) throw std::domain_error("SimSpec: trials must be >= 1");
    if (lambda_grid.empty()) throw std::domain_error("roc_points: empty lambda grid");
    for (size_t j = 1; j < lambda_grid.size(); ++j) {
        if (!(lambda_grid[j] >= lambda_grid[j - 1])) {
            throw std::domain_error("roc_points: lambda grid must be ascending");
        }
    }

    const long blocks = (spec.trials + kBlockTrials - 1) / kBlockTrials;
    std::vector<GridCounts> per_block(static_cast<size_t>(blocks));

    const int threads = std::min<long>(resolve_threads(spec), blocks);
    if (threads <= 1) {
        for (long b = 0; b < blocks; ++b) {
            run_block(config, lambda_grid, spec, b, per_block[static_cast<size_t>(b)]);
        }
    } else {
        std::atomic<long> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(threads));
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (long b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
                    run_block(config, lambda_grid, spec, b, per_block[static_cast<size_t>(b)]);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    const double n = static_cast<double>(spec.trials);
    std::vector<RocEstimate> result(lambda_grid.size());
    for (size_t j = 0; j < lambda_grid.size(); ++j) {
        long cf = 0;
        long cd = 0;
        for (const auto& block : per_block) {
            cf += block.false_alarms[j];
            cd += block.detections[j];
        }
        const double qf = static_cast<double>(cf) / n;
        const double qd = static_cast<double>(cd) / n;
        result[j] = {lambda_grid[j],
                     {qf, std::sqrt(qf * (1.0 - qf) / n)},
                     {qd, std::sqrt(qd * (1.0 - qd) / n)}};
    }
    return result;
}

}  // namespace

std::pair<EstimateWithError, EstimateWithError> estimate_network(const NetworkConfig& config,
                                                                 double lambda,
                                                                 const SimSpec& spec) {
    const double grid[1] = {lambda};
    const auto points = run_grid(config, grid, spec);
    return {points[0].qf, points[0].qd};
}

std::vector<RocEstimate> roc_points(const NetworkConfig& config,
                                    std::span<const double> lambda_grid, const SimSpec& spec) {
    return run_grid(config, lambda_grid, spec);
}

}  // namespace sensewall

#include "sensewall/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "sensewall/rng.hpp"

namespace sensewall {

double poisson_binomial_tail(std::span<const double> probs, int k) {
    const int m = static_cast<int>(probs.size());
    if (m == 0) throw std::domain_error("poisson_binomial_tail: empty probability list");
    if (k < 1 || k > m) throw std::domain_error("poisson_binomial_tail: requires 1 <= k <= M");
    for (double q : probs) {
        if (!(q >= 0.0 && q <= 1.0)) {
            throw std::domain_error("poisson_binomial_tail: probabilities must be in [0, 1]");
        }
    }
    // count[j] = P(j successes among the sensors absorbed so far)
    std::vector<double> count(static_cast<size_t>(m) + 1, 0.0);
    count[0] = 1.0;
    int absorbed = 0;
    for (double q : probs) {
        ++absorbed;
        for (int j = absorbed; j >= 1; --j) count[j] = count[j] * (1.0 - q) + count[j - 1] * q;
        count[0] *= (1.0 - q);
    }
    double tail = 0.0;
    for (int j = m; j >= k; --j) tail += count[j];
    return tail;
}

namespace {

void require_hard(const NetworkConfig& config, const char* where) {
    if (!config.rule.is_hard()) {
        throw std::invalid_argument(std::string(where) + ": soft rule passed to a hard-combining path");
    }
}

void require_soft(const NetworkConfig& config, const char* where) {
    if (config.rule.is_hard()) {
        throw std::invalid_argument(std::string(where) + ": hard rule passed to a soft-combining path");
    }
}

}  // namespace

double hard_qf(const NetworkConfig& config, double lambda, const QuadratureSpec& quad) {
    config.validate();
    require_hard(config, "hard_qf");
    std::vector<double> per_sensor;
    per_sensor.reserve(config.sensors.size());
    for (const auto& s : config.sensors) {
        per_sensor.push_back(pf_avg(lambda, s.bound, config.params, quad));
    }
    return poisson_binomial_tail(per_sensor, config.rule.required_votes(config.size()));
}

double hard_qd(const NetworkConfig& config, double lambda, const QuadratureSpec& quad) {
    config.validate();
    require_hard(config, "hard_qd");
    std::vector<double> per_sensor;
    per_sensor.reserve(config.sensors.size());
    for (const auto& s : config.sensors) {
        per_sensor.push_back(pd_avg(lambda, s.bound, s.snr, config.params, quad));
    }
    return poisson_binomial_tail(per_sensor, config.rule.required_votes(config.size()));
}

namespace {

// Shared core of the soft-combining decision probability at fixed betas.
// boosts[i] = (1 + beta_i snr_i)^{p/2}; all ones gives the false-alarm form.
double soft_fixed_core(double lambda, std::span<const double> betas,
                       std::span<const double> boosts, const NetworkConfig& config) {
    const int m = config.size();
    const double p = config.params.p;
    std::vector<double> bp(betas.size());
    double prod_all = 1.0;
    for (size_t i = 0; i < betas.size(); ++i) {
        if (!(betas[i] > 0.0)) throw std::domain_error("soft combining: betas must be > 0");
        bp[i] = std::pow(betas[i], 0.5 * p);
        prod_all *= bp[i];
    }
    const double gp = g_p(config.params.p);
    double mean_term = 0.0;
    double var_term = 0.0;
    for (size_t i = 0; i < bp.size(); ++i) {
        const double others = prod_all / bp[i];  // prod_{j != i} beta_j^{p/2}
        mean_term += gp * boosts[i] * others;
        var_term += boosts[i] * boosts[i] * others * others;
    }
    const double noise_scale =
        std::sqrt(k_p(p) / static_cast<double>(config.params.N)) * std::sqrt(var_term);
    return q_function((m * lambda * prod_all - mean_term) / noise_scale);
}

}  // namespace

double soft_qf_fixed(double lambda, std::span<const double> betas, const NetworkConfig& config) {
    config.validate();
    require_soft(config, "soft_qf_fixed");
    if (betas.size() != config.sensors.size()) {
        throw std::domain_error("soft_qf_fixed: one beta per sensor required");
    }
    std::vector<double> boosts(betas.size(), 1.0);
    return soft_fixed_core(lambda, betas, boosts, config);
}

double soft_qd_fixed(double lambda, std::span<const double> betas,
                     std::span<const double> snrs, const NetworkConfig& config) {
    config.validate();
    require_soft(config, "soft_qd_fixed");
    if (betas.size() != config.sensors.size() || snrs.size() != config.sensors.size()) {
        throw std::domain_error("soft_qd_fixed: one beta and one snr per sensor required");
    }
    std::vector<double> boosts(betas.size());
    for (size_t i = 0; i < betas.size(); ++i) {
        if (snrs[i] < 0.0) throw std::domain_error("soft_qd_fixed: snrs must be >= 0");
        boosts[i] = std::pow(1.0 + betas[i] * snrs[i], 0.5 * config.params.p);
    }
    return soft_fixed_core(lambda, betas, boosts, config);
}

namespace {

constexpr std::uint64_t kSoftSampleSeed = 0x5eedb0a7u;
constexpr long kSoftSampleDraws = 100000;

// Average of f(betas) over the joint density, integrating only the sensors
// with nonzero uncertainty; beta is pinned to 1 where L = 0.
double soft_average(double lambda, const NetworkConfig& config, const QuadratureSpec& quad,
                    bool detection) {
    config.validate();
    require_soft(config, detection ? "soft_qd_avg" : "soft_qf_avg");
    const int m = config.size();

    std::vector<double> betas(static_cast<size_t>(m), 1.0);
    std::vector<double> snrs(static_cast<size_t>(m), 0.0);
    std::vector<int> free_dims;
    for (int i = 0; i < m; ++i) {
        if (detection) snrs[static_cast<size_t>(i)] = config.sensors[static_cast<size_t>(i)].snr;
        if (!config.sensors[static_cast<size_t>(i)].bound.exact()) free_dims.push_back(i);
    }

    auto eval = [&]() {
        return detection ? soft_qd_fixed(lambda, betas, snrs, config)
                         : soft_qf_fixed(lambda, betas, config);
    };

    if (free_dims.empty()) return eval();

    if (free_dims.size() > 3) {
        const auto est = detection
                             ? soft_qd_avg_sampled(lambda, config, kSoftSampleDraws, kSoftSampleSeed)
                             : soft_qf_avg_sampled(lambda, config, kSoftSampleDraws, kSoftSampleSeed);
        return est.value;
    }

    QuadratureSpec level_quad = quad;
    level_quad.abs_tol = quad.abs_tol / static_cast<double>(free_dims.size());

    std::function<double(size_t)> nest = [&](size_t level) -> double {
        const int dim = free_dims[level];
        const auto& bound = config.sensors[static_cast<size_t>(dim)].bound;
        const auto [a, b] = beta_bounds(bound);
        return integrate(
            [&](double x) {
                betas[static_cast<size_t>(dim)] = x;
                const double inner = (level + 1 < free_dims.size()) ? nest(level + 1) : eval();
                return inner * detail::beta_pdf_unchecked(x, bound.L_dB);
            },
            a, b, level_quad);
    };
    return std::min(1.0, std::max(0.0, nest(0)));
}

SampledAverage soft_sampled(double lambda, const NetworkConfig& config, long draws,
                            std::uint64_t seed, bool detection) {
    config.validate();
    require_soft(config, detection ? "soft_qd_avg_sampled" : "soft_qf_avg_sampled");
    if (draws < 1) throw std::domain_error("soft sampling: draws must be >= 1");
    const size_t m = config.sensors.size();
    std::vector<double> betas(m, 1.0);
    std::vector<double> snrs(m, 0.0);
    if (detection) {
        for (size_t i = 0; i < m; ++i) snrs[i] = config.sensors[i].snr;
    }
    Xoshiro256pp rng = Xoshiro256pp::for_stream(seed, 0);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (long d = 0; d < draws; ++d) {
        for (size_t i = 0; i < m; ++i) betas[i] = sample_beta(config.sensors[i].bound, rng);
        const double v = detection ? soft_qd_fixed(lambda, betas, snrs, config)
                                   : soft_qf_fixed(lambda, betas, config);
        sum += v;
        sum_sq += v * v;
    }
    const double n = static_cast<double>(draws);
    const double mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - mean * mean);
    return {mean, std::sqrt(var / n)};
}

}  // namespace

double soft_qf_avg(double lambda, const NetworkConfig& config, const QuadratureSpec& quad) {
    return soft_average(lambda, config, quad, /*detection=*/false);
}

double soft_qd_avg(double lambda, const NetworkConfig& config, const QuadratureSpec& quad) {
    return soft_average(lambda, config, quad, /*detection=*/true);
}

SampledAverage soft_qf_avg_sampled(double lambda, const NetworkConfig& config, long draws,
                                   std::uint64_t seed) {
    return soft_sampled(lambda, config, draws, seed, /*detection=*/false);
}

SampledAverage soft_qd_avg_sampled(double lambda, const NetworkConfig& config, long draws,
                                   std::uint64_t seed) {
    return soft_sampled(lambda, config, draws, seed, /*detection=*/true);
}

}  // namespace sensewall

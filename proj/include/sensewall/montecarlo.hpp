#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sensewall/fusion.hpp"
#include "sensewall/rng.hpp"

namespace sensewall {

enum class Hypothesis { h0, h1 };

// Monte Carlo run parameters. Trials are partitioned into fixed-size blocks;
// each block draws from a stream derived from (seed, block index), and the
// tallies reduce in block order, so results do not depend on the worker count.
struct SimSpec {
    long trials = 100000;
    std::uint64_t seed = 0;
    bool resample_beta_per_trial = true;
    int threads = 0;  // 0 = hardware concurrency; SENSEWALL_THREADS caps either way
};

struct EstimateWithError {
    double value = 0.0;
    double std_error = 0.0;  // sqrt(value (1 - value) / trials)
};

struct RocEstimate {
    double lambda = 0.0;
    EstimateWithError qf;
    EstimateWithError qd;
};

// One detector statistic (1/N) sum |y(n)|^p. Under h0 the samples are pure
// complex Gaussian noise of the given power; under h1 an independent complex
// Gaussian signal of power snr * noise_power is added per sample.
double simulate_statistic(const DetectorParams& params, double noise_power, double snr,
                          Hypothesis hypothesis, Xoshiro256pp& rng);

// Empirical (qf, qd) for the network at one normalized threshold.
std::pair<EstimateWithError, EstimateWithError> estimate_network(const NetworkConfig& config,
                                                                 double lambda,
                                                                 const SimSpec& spec);

// Empirical ROC over an ascending lambda grid. All grid points share each
// trial's statistics (common random numbers), so the curves are monotone up
// to the shared noise.
std::vector<RocEstimate> roc_points(const NetworkConfig& config,
                                    std::span<const double> lambda_grid, const SimSpec& spec);

}  // namespace sensewall

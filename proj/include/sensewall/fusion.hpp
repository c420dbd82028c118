#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "sensewall/detector.hpp"

namespace sensewall {

// How the fusion center combines the M sensors. OR and AND are the k = 1 and
// k = M instances of the k-of-M vote; SoftEGC averages the raw statistics.
struct FusionRule {
    enum class Kind { logical_or, logical_and, k_of_m, soft_egc };

    Kind kind = Kind::logical_or;
    int k = 1;  // only meaningful for k_of_m

    static FusionRule OR() { return {Kind::logical_or, 1}; }
    static FusionRule AND() { return {Kind::logical_and, 1}; }
    static FusionRule KofM(int k) { return {Kind::k_of_m, k}; }
    static FusionRule SoftEGC() { return {Kind::soft_egc, 1}; }

    bool is_hard() const { return kind != Kind::soft_egc; }

    // Votes needed to declare the channel occupied.
    int required_votes(int sensors) const {
        switch (kind) {
            case Kind::logical_or: return 1;
            case Kind::logical_and: return sensors;
            case Kind::k_of_m: return k;
            case Kind::soft_egc:
                throw std::invalid_argument("required_votes: soft combining has no vote count");
        }
        throw std::logic_error("unreachable");
    }

    bool operator==(const FusionRule& other) const {
        if (kind != other.kind) return false;
        return kind != Kind::k_of_m || k == other.k;
    }
};

struct NetworkConfig {
    std::vector<SensorProfile> sensors;
    DetectorParams params;
    FusionRule rule;

    int size() const { return static_cast<int>(sensors.size()); }

    void validate() const {
        if (sensors.empty()) throw std::domain_error("NetworkConfig: need at least one sensor");
        params.validate();
        for (const auto& s : sensors) s.validate();
        if (rule.kind == FusionRule::Kind::k_of_m && (rule.k < 1 || rule.k > size())) {
            throw std::domain_error("NetworkConfig: k-of-M requires 1 <= k <= M");
        }
    }
};

// P(at least k of M independent Bernoulli trials succeed), exact dynamic
// program over the success-count distribution.
double poisson_binomial_tail(std::span<const double> probs, int k);

// Hard-combining probabilities at the fusion center: per-sensor averaged
// probabilities fed through the k-of-M vote (k = 1 for OR, M for AND).
double hard_qf(const NetworkConfig& config, double lambda, const QuadratureSpec& quad = {});
double hard_qd(const NetworkConfig& config, double lambda, const QuadratureSpec& quad = {});

// Soft equal-gain combining with fixed uncertainty factors. The fusion
// statistic is the plain average of the per-sensor statistics and the
// threshold is tau = (lambda / M) sum_i nominal_i^{p/2}; with the equal
// nominal powers the config requires, the decision reduces to
//   Q((M lambda prod_i b_i - G_p sum_i prod_{j != i} b_j) /
//     (sqrt(K_p / N) sqrt(sum_i prod_{j != i} b_j^2))),   b_i = beta_i^{p/2}
// and the detection variant scales each sensor's term by (1 + beta_i snr_i)^{p/2}.
double soft_qf_fixed(double lambda, std::span<const double> betas, const NetworkConfig& config);
double soft_qd_fixed(double lambda, std::span<const double> betas,
                     std::span<const double> snrs, const NetworkConfig& config);

// Averages of the fixed-beta soft probabilities over the independent joint
// beta density. When at most three sensors have nonzero uncertainty the
// average is a tensor-product quadrature; above that it falls back to a
// seeded 1e5-draw sampling average.
double soft_qf_avg(double lambda, const NetworkConfig& config, const QuadratureSpec& quad = {});
double soft_qd_avg(double lambda, const NetworkConfig& config, const QuadratureSpec& quad = {});

struct SampledAverage {
    double value = 0.0;
    double std_error = 0.0;
};

// Sampling estimators of the soft averages (also the M > 3 backend).
SampledAverage soft_qf_avg_sampled(double lambda, const NetworkConfig& config, long draws,
                                   std::uint64_t seed);
SampledAverage soft_qd_avg_sampled(double lambda, const NetworkConfig& config, long draws,
                                   std::uint64_t seed);

}  // namespace sensewall

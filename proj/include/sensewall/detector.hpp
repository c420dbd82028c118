#pragma once

#include <stdexcept>

#include "sensewall/numerics.hpp"
#include "sensewall/uncertainty.hpp"

namespace sensewall {

// Generalized energy detector: T = (1/N) sum |y(n)|^p over N complex samples.
struct DetectorParams {
    double p = 2.0;  // statistic exponent; p = 2 is the conventional detector
    long N = 1000;   // samples per sensing interval

    // The analytics rest on a Gaussian approximation of T; below ~100 samples
    // that approximation is shaky. Advisory only, never an error.
    bool clt_advisory() const { return N < 100; }

    void validate() const {
        if (!(p > 0.0)) throw std::domain_error("DetectorParams: p must be > 0");
        if (N < 1) throw std::domain_error("DetectorParams: N must be >= 1");
    }
};

// One cooperating secondary user.
struct SensorProfile {
    UncertaintyBound bound;            // L_i
    double snr = 0.0;                  // average SNR (linear), relative to nominal noise power
    double nominal_noise_power = 1.0;  // expected noise variance; true power is nominal/beta

    void validate() const {
        if (bound.L_dB < 0.0) throw std::domain_error("SensorProfile: L_dB must be >= 0");
        if (snr < 0.0) throw std::domain_error("SensorProfile: snr must be >= 0");
        if (!(nominal_noise_power > 0.0)) {
            throw std::domain_error("SensorProfile: nominal_noise_power must be > 0");
        }
    }
};

struct GaussianMoments {
    double mean = 0.0;
    double variance = 0.0;
};

// Statistic moments with no signal present: mean = G_p sigma_w^p,
// variance = (K_p / N) sigma_w^{2p}.
GaussianMoments moments_h0(const DetectorParams& params, double noise_power);

// Statistic moments with the signal present, for noise-uncertainty factor
// beta and average SNR gamma: the occupied-channel sample power is
// (1 + beta gamma) times the true noise power.
GaussianMoments moments_h1(const DetectorParams& params, double noise_power,
                           double beta, double snr);

// False-alarm probability at fixed beta for the normalized threshold lambda
// (tau = lambda * nominal_noise_power^{p/2}). The nominal power cancels:
//   Q((lambda beta^{p/2} - G_p) sqrt(N / K_p)).
double pf_fixed(double lambda, double beta, const DetectorParams& params);

// Detection probability at fixed beta and SNR:
//   Q((lambda beta^{p/2} - G_p u) / u * sqrt(N / K_p)),  u = (1 + beta snr)^{p/2}.
double pd_fixed(double lambda, double beta, double snr, const DetectorParams& params);

// Averages of the fixed-beta probabilities over the beta density. L = 0
// collapses to the fixed value at beta = 1.
double pf_avg(double lambda, const UncertaintyBound& bound, const DetectorParams& params,
              const QuadratureSpec& quad = {});
double pd_avg(double lambda, const UncertaintyBound& bound, double snr,
              const DetectorParams& params, const QuadratureSpec& quad = {});

}  // namespace sensewall

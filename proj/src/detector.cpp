#include "sensewall/detector.hpp"

#include <algorithm>
#include <cmath>

namespace sensewall {

GaussianMoments moments_h0(const DetectorParams& params, double noise_power) {
    params.validate();
    if (!(noise_power > 0.0)) throw std::domain_error("moments_h0: noise_power must be > 0");
    const double sp = std::pow(noise_power, 0.5 * params.p);
    return {g_p(params.p) * sp, k_p(params.p) / static_cast<double>(params.N) * sp * sp};
}

GaussianMoments moments_h1(const DetectorParams& params, double noise_power,
                           double beta, double snr) {
    params.validate();
    if (!(noise_power > 0.0)) throw std::domain_error("moments_h1: noise_power must be > 0");
    if (!(beta > 0.0)) throw std::domain_error("moments_h1: beta must be > 0");
    if (snr < 0.0) throw std::domain_error("moments_h1: snr must be >= 0");
    const double boost = std::pow(1.0 + beta * snr, 0.5 * params.p);
    const double sp = std::pow(noise_power, 0.5 * params.p);
    return {g_p(params.p) * boost * sp,
            k_p(params.p) / static_cast<double>(params.N) * boost * boost * sp * sp};
}

double pf_fixed(double lambda, double beta, const DetectorParams& params) {
    params.validate();
    if (!(beta > 0.0)) throw std::domain_error("pf_fixed: beta must be > 0");
    const double scale = std::sqrt(static_cast<double>(params.N) / k_p(params.p));
    return q_function((lambda * std::pow(beta, 0.5 * params.p) - g_p(params.p)) * scale);
}

double pd_fixed(double lambda, double beta, double snr, const DetectorParams& params) {
    params.validate();
    if (!(beta > 0.0)) throw std::domain_error("pd_fixed: beta must be > 0");
    if (snr < 0.0) throw std::domain_error("pd_fixed: snr must be >= 0");
    const double u = std::pow(1.0 + beta * snr, 0.5 * params.p);
    const double scale = std::sqrt(static_cast<double>(params.N) / k_p(params.p));
    return q_function((lambda * std::pow(beta, 0.5 * params.p) - g_p(params.p) * u) / u * scale);
}

namespace {

// Quadrature error within abs_tol can land a breath outside [0, 1].
double clamp_probability(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

double pf_avg(double lambda, const UncertaintyBound& bound, const DetectorParams& params,
              const QuadratureSpec& quad) {
    if (bound.exact()) return pf_fixed(lambda, 1.0, params);
    const auto [a, b] = beta_bounds(bound);
    const double L = bound.L_dB;
    return clamp_probability(integrate(
        [&](double x) { return pf_fixed(lambda, x, params) * detail::beta_pdf_unchecked(x, L); },
        a, b, quad));
}

double pd_avg(double lambda, const UncertaintyBound& bound, double snr,
              const DetectorParams& params, const QuadratureSpec& quad) {
    if (bound.exact()) return pd_fixed(lambda, 1.0, snr, params);
    const auto [a, b] = beta_bounds(bound);
    const double L = bound.L_dB;
    return clamp_probability(integrate(
        [&](double x) {
            return pd_fixed(lambda, x, snr, params) * detail::beta_pdf_unchecked(x, L);
        },
        a, b, quad));
}

}  // namespace sensewall

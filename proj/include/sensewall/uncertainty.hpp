#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "sensewall/rng.hpp"

namespace sensewall {

// Bound on the noise-uncertainty factor beta = nominal/true noise power:
// |10 log10 beta| <= L_dB. L_dB = 0 means beta is exactly 1.
struct UncertaintyBound {
    double L_dB = 0.0;

    bool exact() const { return L_dB == 0.0; }
};

// Support endpoints (a, b) of beta: a = 10^{-L/10}, b = 10^{L/10}.
std::pair<double, double> beta_bounds(const UncertaintyBound& bound);

// Density of beta, uniform in dB: 5 / (ln(10) L x) on the open support,
// zero outside. L = 0 is a point mass and has no density.
double beta_pdf(double x, const UncertaintyBound& bound);

// CDF of beta on [a, b]; clamps outside the support.
double beta_cdf(double x, const UncertaintyBound& bound);

namespace detail {
double beta_pdf_unchecked(double x, double L_dB);  // formula only, no support guard
}

// Inverse-transform sample in the dB domain: 10^{u/10}, u ~ U[-L, L].
template <class Urbg>
double sample_beta(const UncertaintyBound& bound, Urbg& rng) {
    if (bound.L_dB < 0.0) throw std::domain_error("sample_beta: L_dB must be >= 0");
    if (bound.exact()) return 1.0;
    const double u = bound.L_dB * (2.0 * uniform01(rng) - 1.0);
    return std::pow(10.0, u / 10.0);
}

}  // namespace sensewall

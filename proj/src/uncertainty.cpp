#include "sensewall/uncertainty.hpp"

#include <cmath>

namespace sensewall {

namespace {
constexpr double kLn10 = 2.302585092994045684017991454684;
}

std::pair<double, double> beta_bounds(const UncertaintyBound& bound) {
    if (bound.L_dB < 0.0) throw std::domain_error("beta_bounds: L_dB must be >= 0");
    const double b = std::pow(10.0, bound.L_dB / 10.0);
    return {1.0 / b, b};
}

namespace detail {
double beta_pdf_unchecked(double x, double L_dB) {
    return 5.0 / (kLn10 * L_dB * x);
}
}  // namespace detail

double beta_pdf(double x, const UncertaintyBound& bound) {
    if (bound.L_dB < 0.0) throw std::domain_error("beta_pdf: L_dB must be >= 0");
    if (bound.exact()) {
        throw std::domain_error("beta_pdf: L_dB = 0 is a point mass at beta = 1, no density");
    }
    const auto [a, b] = beta_bounds(bound);
    if (x <= a || x >= b) return 0.0;
    return detail::beta_pdf_unchecked(x, bound.L_dB);
}

double beta_cdf(double x, const UncertaintyBound& bound) {
    if (bound.L_dB < 0.0) throw std::domain_error("beta_cdf: L_dB must be >= 0");
    if (bound.exact()) return x < 1.0 ? 0.0 : 1.0;
    const auto [a, b] = beta_bounds(bound);
    if (x <= a) return 0.0;
    if (x >= b) return 1.0;
    return 5.0 * std::log(x / a) / (bound.L_dB * kLn10);
}

}  // namespace sensewall

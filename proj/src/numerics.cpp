#include "sensewall/numerics.hpp"

#include <cmath>

namespace sensewall {

namespace {

// Lanczos g=7, n=9 coefficients (Godfrey).
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr double kPi = 3.141592653589793238462643383279502884;

double lanczos_gamma(double a) {
    if (a < 0.5) {
        // Reflection: Gamma(a) Gamma(1-a) = pi / sin(pi a).
        return kPi / (std::sin(kPi * a) * lanczos_gamma(1.0 - a));
    }
    a -= 1.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (a + i);
    const double t = a + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, a + 0.5) * std::exp(-t) * acc;
}

}  // namespace

double gamma_fn(double a) {
    if (!(a > 0.0)) throw std::domain_error("gamma_fn: requires a > 0");
    return lanczos_gamma(a);
}

double g_p(double p) {
    if (!(p > 0.0)) throw std::domain_error("g_p: requires p > 0");
    return gamma_fn(0.5 * (p + 2.0));
}

double k_p(double p) {
    if (!(p > 0.0)) throw std::domain_error("k_p: requires p > 0");
    const double g = g_p(p);
    return gamma_fn(p + 1.0) - g * g;
}

double q_function(double t) {
    if (!std::isfinite(t)) throw std::domain_error("q_function: requires finite t");
    // Q(t) = erfc(t / sqrt(2)) / 2; erfc keeps full accuracy deep in the tail.
    return 0.5 * std::erfc(t * 0.7071067811865475244);
}

}  // namespace sensewall

#include "sensewall/wall.hpp"

#include <algorithm>
#include <cmath>

namespace sensewall {

namespace {

void check_bounds(std::span<const UncertaintyBound> bounds, const char* where) {
    if (bounds.empty()) throw std::domain_error(std::string(where) + ": empty sensor list");
    for (const auto& b : bounds) {
        if (b.L_dB < 0.0) throw std::domain_error(std::string(where) + ": L_dB must be >= 0");
    }
}

void check_hard(const FusionRule& rule, size_t m, const char* where) {
    if (!rule.is_hard()) {
        throw std::invalid_argument(std::string(where) + ": soft rule has no per-sensor wall");
    }
    if (rule.kind == FusionRule::Kind::k_of_m &&
        (rule.k < 1 || rule.k > static_cast<int>(m))) {
        throw std::domain_error(std::string(where) + ": k-of-M requires 1 <= k <= M");
    }
}

// n-th largest (1-based) element of values.
double nth_largest(std::vector<double> values, int n) {
    std::sort(values.begin(), values.end(), std::greater<>());
    return values[static_cast<size_t>(n - 1)];
}

double l_plus(std::span<const UncertaintyBound> bounds, const FusionRule& rule) {
    std::vector<double> ls;
    ls.reserve(bounds.size());
    for (const auto& b : bounds) ls.push_back(b.L_dB);
    const int m = static_cast<int>(ls.size());
    switch (rule.kind) {
        case FusionRule::Kind::logical_or: return nth_largest(ls, 1);
        case FusionRule::Kind::logical_and: return nth_largest(ls, m);
        case FusionRule::Kind::k_of_m: return nth_largest(ls, rule.k);
        default: break;
    }
    throw std::logic_error("unreachable");
}

double l_minus(std::span<const UncertaintyBound> bounds, const FusionRule& rule) {
    std::vector<double> ls;
    ls.reserve(bounds.size());
    for (const auto& b : bounds) ls.push_back(b.L_dB);
    const int m = static_cast<int>(ls.size());
    switch (rule.kind) {
        case FusionRule::Kind::logical_or: return nth_largest(ls, m);
        case FusionRule::Kind::logical_and: return nth_largest(ls, 1);
        case FusionRule::Kind::k_of_m: return nth_largest(ls, m - rule.k + 1);  // k-th smallest
        default: break;
    }
    throw std::logic_error("unreachable");
}

}  // namespace

double linear_to_db(double x) { return 10.0 * std::log10(x); }
double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

WallReport wall_hard(std::span<const UncertaintyBound> bounds, const FusionRule& rule) {
    check_bounds(bounds, "wall_hard");
    check_hard(rule, bounds.size(), "wall_hard");
    const double up = db_to_linear(l_plus(bounds, rule));
    WallReport report;
    report.rule = rule;
    report.required_count = rule.required_votes(static_cast<int>(bounds.size()));
    report.per_sensor_walls.reserve(bounds.size());
    for (const auto& b : bounds) {
        report.per_sensor_walls.push_back(up - db_to_linear(-b.L_dB));
    }
    return report;
}

double wall_equal_snr(std::span<const UncertaintyBound> bounds, const FusionRule& rule) {
    check_bounds(bounds, "wall_equal_snr");
    check_hard(rule, bounds.size(), "wall_equal_snr");
    return db_to_linear(l_plus(bounds, rule)) - db_to_linear(-l_minus(bounds, rule));
}

double wall_soft(std::span<const UncertaintyBound> bounds) {
    check_bounds(bounds, "wall_soft");
    double sum = 0.0;
    for (const auto& b : bounds) {
        sum += db_to_linear(b.L_dB) - db_to_linear(-b.L_dB);
    }
    return sum;
}

LambdaInterval feasible_lambda(const NetworkConfig& config) {
    config.validate();
    const double p = config.params.p;
    const double gp = g_p(p);
    const int m = config.size();

    if (!config.rule.is_hard()) {
        if (p != 2.0) {
            throw UnsupportedClosedForm(
                "feasible_lambda: soft combining has a closed form only for p = 2; "
                "use the numeric sweep");
        }
        double sum_b = 0.0;
        double sum_a_plus_snr = 0.0;
        for (const auto& s : config.sensors) {
            const auto [a, b] = beta_bounds(s.bound);
            sum_b += b;
            sum_a_plus_snr += a + s.snr;
        }
        LambdaInterval iv;
        iv.lo = gp * sum_b / m;
        iv.hi = gp * sum_a_plus_snr / m;
        iv.feasible = iv.lo <= iv.hi;
        return iv;
    }

    // False-alarm side: at least M - k + 1 sensors need lambda >= their
    // endpoint, so lambda >= the k-th largest endpoint seen from above.
    // Detection side: at least k sensors need lambda <= their endpoint.
    const int k = config.rule.required_votes(m);
    std::vector<double> f_ends;
    std::vector<double> d_ends;
    f_ends.reserve(config.sensors.size());
    d_ends.reserve(config.sensors.size());
    for (const auto& s : config.sensors) {
        const auto [a, b] = beta_bounds(s.bound);
        f_ends.push_back(gp * std::pow(b, 0.5 * p));
        d_ends.push_back(gp * std::pow(a + s.snr, 0.5 * p));
    }
    std::sort(f_ends.begin(), f_ends.end());
    std::sort(d_ends.begin(), d_ends.end(), std::greater<>());
    LambdaInterval iv;
    iv.lo = f_ends[static_cast<size_t>(m - k)];       // (M-k+1)-th smallest
    iv.hi = d_ends[static_cast<size_t>(k - 1)];       // k-th largest
    iv.feasible = iv.lo <= iv.hi;
    return iv;
}

}  // namespace sensewall

#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sensewall/fusion.hpp"

namespace sensewall {

// SNR-wall summary for one fusion rule. Hard rules get one wall per sensor
// plus the number of sensors that must meet theirs; soft combining constrains
// only the SNR sum.
struct WallReport {
    FusionRule rule;
    std::vector<double> per_sensor_walls;  // hard rules only
    std::optional<double> sum_wall;        // soft combining only
    int required_count = 0;                // 1 (OR), M (AND), k (k-of-M); 0 for soft
};

// Normalized-threshold interval for which false alarm -> 0 and detection -> 1
// in the large-sample limit. Closed interval: the wall itself is feasible.
struct LambdaInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool feasible = false;
};

// Thrown where a closed form only exists for p = 2 (soft combining).
class UnsupportedClosedForm : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Per-sensor walls gamma_i = 10^{L+/10} - 10^{-L_i/10}, where L+ is max(L)
// for OR, min(L) for AND, and the k-th largest L for k-of-M.
WallReport wall_hard(std::span<const UncertaintyBound> bounds, const FusionRule& rule);

// Wall when every sensor sees the same SNR: 10^{L+/10} - 10^{-L-/10} with the
// rule's order statistics (k-of-M: L+ = k-th largest, L- = k-th smallest).
double wall_equal_snr(std::span<const UncertaintyBound> bounds, const FusionRule& rule);

// Soft-combining constraint on the SNR sum:
//   sum_i gamma_i >= sum_i 10^{L_i/10} - sum_i 10^{-L_i/10}.
double wall_soft(std::span<const UncertaintyBound> bounds);

// The asymptotic lambda interval for the config's rule. Soft combining has a
// closed form only at p = 2; other p throw UnsupportedClosedForm (use the
// numeric sweep instead).
LambdaInterval feasible_lambda(const NetworkConfig& config);

// dB <-> linear conversion helpers for reporting.
double linear_to_db(double x);
double db_to_linear(double x_db);

}  // namespace sensewall

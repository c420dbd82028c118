#pragma once

#include <iosfwd>

#include "sensewall/config.hpp"

namespace sensewall {

// Process exit codes shared by the command implementations and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitConvergence = 3;
inline constexpr int kExitValidation = 4;

// Locale-independent shortest round-trip formatting ('.' decimal separator).
std::string format_double(double v);

// Analytic (qf, qd) for the config's rule at one normalized threshold.
double analytic_qf(const NetworkConfig& net, double lambda, const QuadratureSpec& quad = {});
double analytic_qd(const NetworkConfig& net, double lambda, const QuadratureSpec& quad = {});

// SNR walls for the configured rule, human-readable report.
int cmd_wall(const ExperimentConfig& config, std::ostream& report);

// Analytic threshold sweep as CSV; reports the closed-form feasible lambda
// interval when one exists. Rows that hit a quadrature failure carry the
// partial estimate, are flagged in the source column, and the run continues.
int cmd_sweep(const ExperimentConfig& config, std::ostream& csv, std::ostream& report);

// Interleaved analytic and Monte Carlo rows over the lambda grid.
int cmd_roc(const ExperimentConfig& config, std::ostream& csv, std::ostream& report);

// Self-check suite: analytic-vs-MC agreement, moment checks, wall
// consistency. Prints one margin line per check plus a machine-readable
// failure list; returns kExitValidation if anything fails.
int cmd_validate(const ExperimentConfig& config, std::ostream& report);

}  // namespace sensewall

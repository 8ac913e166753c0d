#pragma once

#include "dmojc/io.hpp"

namespace dmojc::commands {

/// Exit codes shared by every command: 0 success, 1 validation failure,
/// 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailure = 1;
inline constexpr int kExitUsage = 2;

/// Table of block spectra (analytic and numeric) up to the max-n cutoff.
int cmd_spectrum(const io::RunConfig& config);

/// Time series of populations, purities and concurrence for the extended
/// model, with closed-form columns and residuals on the resonant
/// normalization (1+1, eta = chi = 1, mc2 = gamma).
int cmd_evolve(const io::RunConfig& config);

/// Concurrence-purity trajectory plus frontier samples.
int cmd_cpplane(const io::RunConfig& config);

/// Full validation grid; writes the JSON report. Exit 0 iff all checks pass.
int cmd_validate(const io::RunConfig& config);

/// Parameter identification table for all dimensionalities.
int cmd_map(const io::RunConfig& config);

} // namespace dmojc::commands

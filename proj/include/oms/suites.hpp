#pragma once

#include "oms/calibration.hpp"
#include "oms/config.hpp"
#include "oms/report.hpp"

namespace oms {

/// Runs one verification suite. Module errors are captured per case. Frozen
/// constants come from `calibration` (keys `<suite>.*`); they only apply when
/// the stored `<suite>.config` signature equals the resolved config.
SuiteReport run_suite(const SuiteConfig& config, const Calibration& calibration);
/// Same with the calibration file named by config.calibration (or the default one).
SuiteReport run_suite(const SuiteConfig& config);

/// Measures the frozen quantities of a suite at base resolution and replaces
/// the suite's entries of `calibration` with them. Suites without frozen
/// constants leave it unchanged apart from the signature.
SuiteReport calibrate_suite(const SuiteConfig& config, Calibration& calibration);

}  // namespace oms

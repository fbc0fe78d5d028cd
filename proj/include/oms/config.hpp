#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace oms {

/// Names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// Flat `key = value` configuration. Empty builder strings select the suite's
/// built-in configuration family; a non-empty one replaces the family by that
/// single configuration.
struct SuiteConfig {
    std::string suite;
    /// 0 selects the suite default (256 / 20 for bargmann-isometry, 128 / 16 otherwise).
    std::size_t n = 0;
    double length = 0.0;
    std::size_t time_step = 16;
    std::size_t freq_step = 4;
    /// Lattice step of the semi-discrete convolutions (a multiple of h).
    double eps = 0.5;
    std::string phi1, phi2, inner;
    std::string omega, v, omega1, omega2;
    std::uint64_t seed = 7;
    /// 0 selects the suite default.
    std::size_t probes = 0;
    /// Overrides the suite's primary tolerance when positive.
    double tol = 0.0;
    /// Restricts a suite to one of its parts (convolution: young, wiener-conv, sampling).
    std::string part;
    std::string calibration;

    double h() const { return length / static_cast<double>(n); }
    /// Canonical `key = value` text; the signature stored beside frozen constants.
    std::string to_text() const;
    std::map<std::string, std::string> to_map() const;
};

SuiteConfig parse_config(const std::string& text);
SuiteConfig load_config(const std::string& path);

/// Fills n and length with the suite defaults where unset.
SuiteConfig resolve_defaults(SuiteConfig config);

/// Checks the alignment constraints of the chosen suite before any computation.
/// Throws DomainError naming the first violated constraint.
void validate(const SuiteConfig& config);

}  // namespace oms

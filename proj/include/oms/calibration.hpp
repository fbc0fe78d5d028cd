#pragma once

#include <map>
#include <optional>
#include <string>

namespace oms {

/// Frozen constants for the "<=, up to a constant" claims. One `key = value`
/// per line, `#` comments. Keys are `<suite>.<group>.<lo|hi>` for numbers and
/// `<suite>.config` for the signature of the configuration that produced them
/// (newlines in the signature are written as `;`).
class Calibration {
public:
    static Calibration load(const std::string& path);
    /// Missing file gives an empty calibration.
    static Calibration load_or_empty(const std::string& path);
    void save(const std::string& path) const;

    std::optional<double> number(const std::string& key) const;
    std::optional<std::string> text(const std::string& key) const;
    void set(const std::string& key, double value);
    void set(const std::string& key, const std::string& value);
    /// Drops every key starting with `<suite>.`.
    void clear_suite(const std::string& suite);

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

/// data/calibration.txt of the source tree.
std::string default_calibration_path();

}  // namespace oms

#include "oms/calibration.hpp"

#include "oms/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace oms {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

Calibration Calibration::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("calibration: cannot open " + path);
    Calibration c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw DomainError("calibration " + path + ":" + std::to_string(lineno) + ": expected key = value");
        c.entries_[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return c;
}

Calibration Calibration::load_or_empty(const std::string& path) {
    std::ifstream probe(path);
    if (!probe) return {};
    return load(path);
}

void Calibration::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw DomainError("calibration: cannot write " + path);
    out << "# Frozen constants; regenerate with `oms calibrate --suite <name>`.\n";
    for (const auto& [k, v] : entries_) out << k << " = " << v << "\n";
    if (!out) throw DomainError("calibration: write failed for " + path);
}

std::optional<double> Calibration::number(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw DomainError("calibration: " + key + " is not a number");
    }
}

std::optional<std::string> Calibration::text(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void Calibration::set(const std::string& key, double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    entries_[key] = buf;
}

void Calibration::set(const std::string& key, const std::string& value) {
    std::string v = value;
    for (auto& ch : v)
        if (ch == '\n') ch = ';';
    entries_[key] = v;
}

void Calibration::clear_suite(const std::string& suite) {
    const std::string prefix = suite + ".";
    for (auto it = entries_.begin(); it != entries_.end();) {
        if (it->first.compare(0, prefix.size(), prefix) == 0)
            it = entries_.erase(it);
        else
            ++it;
    }
}

std::string default_calibration_path() { return std::string(OMS_DATA_DIR) + "/calibration.txt"; }

}  // namespace oms

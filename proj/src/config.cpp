#include "oms/config.hpp"

#include "oms/errors.hpp"
#include "oms/weights.hpp"
#include "oms/young.hpp"

#include <algorithm>
#include <cmath>
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

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != v.size()) throw DomainError("config: " + key + " expects a number, got '" + v + "'");
    return x;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
        throw DomainError("config: " + key + " expects a nonnegative integer, got '" + v + "'");
    return std::stoull(v);
}

bool is_unit_fraction(double h) {
    const double m = 1.0 / h;
    return std::abs(m - std::round(m)) <= 1e-12 * m;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "orlicz-axioms",  "gabor-reconstruct", "norm-equivalence", "window-invariance", "analysis-synthesis",
        "wiener-stft",    "convolution",       "bargmann-isometry", "embedding",        "compactness-indicator"};
    return names;
}

std::map<std::string, std::string> SuiteConfig::to_map() const {
    return {{"suite", suite},        {"n", std::to_string(n)},
            {"length", fmt(length)}, {"time_step", std::to_string(time_step)},
            {"freq_step", std::to_string(freq_step)}, {"eps", fmt(eps)},
            {"phi1", phi1},          {"phi2", phi2},
            {"inner", inner},        {"omega", omega},
            {"v", v},                {"omega1", omega1},
            {"omega2", omega2},      {"seed", std::to_string(seed)},
            {"probes", std::to_string(probes)}, {"tol", fmt(tol)},
            {"part", part}};
}

std::string SuiteConfig::to_text() const {
    std::string out;
    for (const auto& [k, v] : to_map()) out += k + " = " + v + "\n";
    return out;
}

SuiteConfig parse_config(const std::string& text) {
    SuiteConfig c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "suite") c.suite = val;
        else if (key == "n") c.n = to_uint(key, val);
        else if (key == "length" || key == "L") c.length = to_double(key, val);
        else if (key == "time_step") c.time_step = to_uint(key, val);
        else if (key == "freq_step") c.freq_step = to_uint(key, val);
        else if (key == "eps") c.eps = to_double(key, val);
        else if (key == "phi1") c.phi1 = val;
        else if (key == "phi2") c.phi2 = val;
        else if (key == "inner") c.inner = val;
        else if (key == "omega") c.omega = val;
        else if (key == "v") c.v = val;
        else if (key == "omega1") c.omega1 = val;
        else if (key == "omega2") c.omega2 = val;
        else if (key == "seed") c.seed = to_uint(key, val);
        else if (key == "probes") c.probes = to_uint(key, val);
        else if (key == "tol") c.tol = to_double(key, val);
        else if (key == "part") c.part = val;
        else if (key == "calibration") c.calibration = val;
        else throw DomainError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    return c;
}

SuiteConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

SuiteConfig resolve_defaults(SuiteConfig c) {
    const bool fock = c.suite == "bargmann-isometry";
    if (c.n == 0) c.n = fock ? 256 : 128;
    if (c.length == 0.0) c.length = fock ? 20.0 : 16.0;
    return c;
}

void validate(const SuiteConfig& c) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), c.suite) == names.end())
        throw DomainError("config: unknown suite '" + c.suite + "'");
    if (c.n < 8 || c.n % 2 != 0) throw DomainError("config: n must be even and >= 8");
    if (!(c.length > 0.0) || !std::isfinite(c.length)) throw DomainError("config: length must be positive");
    if (c.time_step == 0 || c.n % c.time_step != 0) throw DomainError("config: time_step must divide n");
    if (c.freq_step == 0 || c.n % c.freq_step != 0) throw DomainError("config: freq_step must divide n");
    if (c.tol < 0.0) throw DomainError("config: tol must be nonnegative");
    if (!c.part.empty() && c.suite != "convolution") throw DomainError("config: part applies to the convolution suite only");
    if (!c.part.empty() && c.part != "young" && c.part != "wiener-conv" && c.part != "sampling")
        throw DomainError("config: unknown convolution part '" + c.part + "'");

    // Builders fail here rather than mid-suite.
    for (const auto* s : {&c.phi1, &c.phi2, &c.inner})
        if (!s->empty()) (void)parse_quasi_young(*s);
    for (const auto* s : {&c.omega, &c.v, &c.omega1, &c.omega2})
        if (!s->empty()) (void)parse_weight(*s);

    const bool needs_unit_cells = c.suite == "wiener-stft" || c.suite == "convolution";
    if (needs_unit_cells) {
        if (!is_unit_fraction(c.h())) throw DomainError("config: " + c.suite + " needs h = length / n = 1/m");
        const double m = std::round(1.0 / c.h());
        if (static_cast<double>(c.n / 2) / m != std::floor(static_cast<double>(c.n / 2) / m))
            throw DomainError("config: the grid must consist of whole unit cells (n/2 divisible by 1/h)");
    }
    if (c.suite == "convolution") {
        const double q = c.eps / c.h();
        if (!(c.eps > 0.0) || std::abs(q - std::round(q)) > 1e-9 * q || std::round(q) < 1.0)
            throw DomainError("config: eps must be a positive multiple of h");
    }
}

}  // namespace oms

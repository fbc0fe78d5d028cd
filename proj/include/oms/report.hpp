#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace oms {

inline constexpr const char* kReportSchema = "oms-report/1";

struct CaseRecord {
    std::string id;
    /// FNV-1a of the case inputs, hex.
    std::string inputs_hash;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool pass = false;
    std::string detail;
    /// Non-empty when a module error was captured for this case.
    std::string error;

    bool operator==(const CaseRecord&) const = default;
};

/// One frozen quantity re-measured at h/2.
struct DriftRow {
    std::string key;
    double base = 0.0;
    double refined = 0.0;
    double drift = 0.0;
    double limit = 0.05;
    bool pass = false;

    bool operator==(const DriftRow&) const = default;
};

struct SuiteReport {
    std::string schema = kReportSchema;
    std::string suite;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> config;
    std::vector<CaseRecord> cases;
    std::map<std::string, double> constants;
    std::vector<DriftRow> drift;
    bool verdict = false;

    /// Sorts cases and drift rows by id; verdict = every case and drift row passes.
    void finalize();
    std::size_t failures() const;

    bool operator==(const SuiteReport&) const = default;
};

enum class ReportFormat { json, csv, markdown };

ReportFormat parse_format(const std::string& name);
std::string render(const SuiteReport& report, ReportFormat format);
/// Writes render(report, format); DomainError naming the path on failure.
void emit(const SuiteReport& report, ReportFormat format, const std::string& path);
/// Inverse of render(.., json).
SuiteReport parse_report_json(const std::string& text);

/// FNV-1a over raw bytes, 16 hex digits.
std::string hash_bytes(std::span<const unsigned char> bytes);
template <class T>
std::string hash_values(std::span<const T> values) {
    return hash_bytes({reinterpret_cast<const unsigned char*>(values.data()), values.size_bytes()});
}

}  // namespace oms
